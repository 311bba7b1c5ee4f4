"""Executable binomial identities behind the gamma evaluation.

Each identity is evaluated twice: the left side by enumerating
compositions (through :func:`block_sum` and friends), the right side from a
closed alternating sum. Agreement of the two is the check; neither side is
ever derived from the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .combinatorics import binom, block_sum, composition_product_sum, compositions, is_prime
from .errors import ParamsOutOfDomain, UnknownIdentity


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    params: dict[str, int]
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "params": dict(self.params),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
        }


@dataclass(frozen=True)
class _Identity:
    params: tuple[str, ...]
    check: Callable[..., None]
    lhs: Callable[..., int]
    rhs: Callable[..., int]
    grid: Callable[[int, int, int], Iterator[dict[str, int]]]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParamsOutOfDomain(msg)


def _prime(p: int) -> None:
    _require(is_prime(p), f"p={p} is not prime")


def _residue(name: str, value: int, p: int) -> None:
    _require(0 <= value < p, f"{name}={value} must satisfy 0 <= {name} < p={p}")


def _alt(d: int, term: Callable[[int], int]) -> int:
    return sum((-1) ** i * binom(d, i) * term(i) for i in range(d + 1))


# -- Chu-Vandermonde ---------------------------------------------------------

def _chu_check(r: int, s: int, n: int) -> None:
    _require(r >= 0 and s >= 0, "r and s must be non-negative")


def _chu_lhs(r: int, s: int, n: int) -> int:
    return sum(binom(r, i) * binom(s, n - i) for i in range(0, r + 1))


def _chu_rhs(r: int, s: int, n: int) -> int:
    return binom(r + s, n)


def _chu_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    top = max(max_k, 2 * max_d)
    for r in range(top + 1):
        for s in range(top + 1):
            for n in range(r + s + 2):
                yield {"r": r, "s": s, "n": n}


# -- compositions into d parts -----------------------------------------------

def _pdr_check(p: int, d: int, r: int) -> None:
    _prime(p)
    _require(d >= 1, "d must be >= 1")
    _require(r >= 0, "r must be non-negative")


def _unconstrained_lhs(p: int, d: int, r: int) -> int:
    return composition_product_sum(p, r, d, positive=False)


def _unconstrained_rhs(p: int, d: int, r: int) -> int:
    return binom(d * p, r)


def _d_parts_lhs(p: int, d: int, r: int) -> int:
    return block_sum(p, 0, r, d)


def _d_parts_rhs(p: int, d: int, r: int) -> int:
    return _alt(d, lambda i: binom((d - i) * p, r))


def _pdr_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for d in range(1, max_d + 1):
        for r in range(d * p + 2):
            yield {"p": p, "d": d, "r": r}


def _tail_check(p: int, d: int, r: int, a0: int) -> None:
    _pdr_check(p, d, r)
    _residue("a0", a0, p)


def _tail_lhs(p: int, d: int, r: int, a0: int) -> int:
    return block_sum(p, a0, r, d, with_tail=True)


def _tail_rhs(p: int, d: int, r: int, a0: int) -> int:
    return _alt(d, lambda i: binom((d - i) * p + a0, r) - binom((d - i) * p, r))


def _combined_lhs(p: int, d: int, r: int, a0: int) -> int:
    return block_sum(p, a0, r, d) + block_sum(p, a0, r, d, with_tail=True)


def _combined_rhs(p: int, d: int, r: int, a0: int) -> int:
    return _alt(d, lambda i: binom((d - i) * p + a0, r))


def _tail_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for d in range(1, max_d + 1):
        for a0 in range(p):
            for r in range(d * p + a0 + 2):
                yield {"p": p, "d": d, "r": r, "a0": a0}


# -- parts bounded by p ------------------------------------------------------

def _bounded_check(p: int, d: int, j: int, b0: int, a0: int) -> None:
    _prime(p)
    _require(d >= 0, "d must be non-negative")
    _require(0 <= j <= d, "j must satisfy 0 <= j <= d")
    _residue("b0", b0, p)
    _residue("a0", a0, p)


def _bounded_lhs(p: int, d: int, j: int, b0: int, a0: int) -> int:
    total = j * p + b0
    return block_sum(p, a0, total, d, bounded=True) + block_sum(
        p, a0, total, d, with_tail=True, bounded=True
    )


def _bounded_rhs(p: int, d: int, j: int, b0: int, a0: int) -> int:
    acc = 0
    for h in range(j + 1):
        e = d - h
        inner = sum(
            (-1) ** i * binom(e, i) * binom((e - i) * p + a0, (j - h) * p + b0)
            for i in range(e + 1)
        )
        acc += (-1) ** h * binom(d, h) * inner
    return acc


def _bounded_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for d in range(max_d + 1):
        for j in range(d + 1):
            for b0 in range(p):
                for a0 in range(p):
                    yield {"p": p, "d": d, "j": j, "b0": b0, "a0": a0}


# -- alternating sums ----------------------------------------------------------

def _delta_check(n: int, m: int) -> None:
    _require(n >= 0 and m >= 0, "n and m must be non-negative")


def _delta_lhs(n: int, m: int) -> int:
    return _alt(n, lambda i: binom(n - i, m))


def _delta_rhs(n: int, m: int) -> int:
    return 1 if m == n else 0


def _delta_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for n in range(max_k + 1):
        for m in range(max_k + 2):
            yield {"n": n, "m": m}


def _coeff_check(k: int, m: int, r: int) -> None:
    _require(k >= 1, "k must be >= 1")
    _require(m >= 0, "m must be non-negative")


def _coeff_lhs(k: int, m: int, r: int) -> int:
    acc = 0
    for i in range(m, k):
        inner = sum(binom(i - m, j) * binom(k - i, r - j) for j in range(i - m + 1))
        acc += (-1) ** i * binom(k - 1, i) * binom(i, m) * inner
    return (-1) ** m * acc


def _coeff_rhs(k: int, m: int, r: int) -> int:
    return 1 if m == k - 1 and r in (0, 1) else 0


def _coeff_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for k in range(1, max_k + 1):
        for m in range(k + 1):
            for r in range(-1, k + 2):
                yield {"k": k, "m": m, "r": r}


# -- the three case evaluations ----------------------------------------------

def _rp_check(p: int, k: int, a0: int) -> None:
    _prime(p)
    _require(k >= 1, "k must be >= 1")
    _residue("a0", a0, p)


def _rp_lhs(p: int, k: int, a0: int) -> int:
    two_parts = sum(binom(p, m1) * binom(a0, m2) for m1, m2 in compositions(p, 2))
    acc = k + (k - 1) * two_parts
    for d in range(2, k):
        acc += binom(k - 1, d) * (block_sum(p, a0, p, d) + block_sum(p, a0, p, d, with_tail=True))
    return acc


def _rp_rhs(p: int, k: int, a0: int) -> int:
    return 1 + binom((k - 1) * p + a0, p)


def _rp_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for k in range(1, max_k + 1):
        for a0 in range(p):
            yield {"p": p, "k": k, "a0": a0}


def _rlt_check(p: int, k: int, a0: int, r: int) -> None:
    _rp_check(p, k, a0)
    _residue("r", r, p)


def _rlt_lhs(p: int, k: int, a0: int, r: int) -> int:
    acc = binom(a0, r)
    for d in range(1, k):
        acc += binom(k - 1, d) * (block_sum(p, a0, r, d) + block_sum(p, a0, r, d, with_tail=True))
    return acc


def _rlt_rhs(p: int, k: int, a0: int, r: int) -> int:
    return binom((k - 1) * p + a0, r)


def _rlt_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for k in range(1, max_k + 1):
        for a0 in range(p):
            for r in range(p):
                yield {"p": p, "k": k, "a0": a0, "r": r}


def _rgt_check(p: int, k: int, a0: int, q: int, b0: int) -> None:
    _rp_check(p, k, a0)
    _residue("b0", b0, p)
    _require(q * p + b0 > p, "r = q*p + b0 must exceed p")
    _require(q * p + b0 <= k * p + a0, "r = q*p + b0 must not exceed n = k*p + a0")


def _rgt_lhs(p: int, k: int, a0: int, q: int, b0: int) -> int:
    acc = binom(k, q) * binom(a0, b0)
    for d in range(1, k):
        inner = 0
        for j in range(d + 1):
            total = j * p + b0
            inner += binom(k - d, q - j) * (
                block_sum(p, a0, total, d, bounded=True)
                + block_sum(p, a0, total, d, with_tail=True, bounded=True)
            )
        acc += binom(k - 1, d) * inner
    return acc


def _rgt_rhs(p: int, k: int, a0: int, q: int, b0: int) -> int:
    top = (k - 1) * p + a0
    return binom(top, q * p + b0) + binom(top, (q - 1) * p + b0)


def _rgt_grid(p: int, max_d: int, max_k: int) -> Iterator[dict[str, int]]:
    for k in range(1, max_k + 1):
        for a0 in range(p):
            for q in range(1, k + 1):
                for b0 in range(p):
                    r = q * p + b0
                    if p < r <= k * p + a0:
                        yield {"p": p, "k": k, "a0": a0, "q": q, "b0": b0}


IDENTITIES: dict[str, _Identity] = {
    "chu-vandermonde": _Identity(("r", "s", "n"), _chu_check, _chu_lhs, _chu_rhs, _chu_grid),
    "unconstrained-compositions": _Identity(
        ("p", "d", "r"), _pdr_check, _unconstrained_lhs, _unconstrained_rhs, _pdr_grid
    ),
    "into-d-parts": _Identity(("p", "d", "r"), _pdr_check, _d_parts_lhs, _d_parts_rhs, _pdr_grid),
    "into-d-plus-one-parts": _Identity(
        ("p", "d", "r", "a0"), _tail_check, _tail_lhs, _tail_rhs, _tail_grid
    ),
    "combined-parts": _Identity(
        ("p", "d", "r", "a0"), _tail_check, _combined_lhs, _combined_rhs, _tail_grid
    ),
    "bounded-parts": _Identity(
        ("p", "d", "j", "b0", "a0"), _bounded_check, _bounded_lhs, _bounded_rhs, _bounded_grid
    ),
    "alternating-delta": _Identity(("n", "m"), _delta_check, _delta_lhs, _delta_rhs, _delta_grid),
    "alternating-coefficient": _Identity(
        ("k", "m", "r"), _coeff_check, _coeff_lhs, _coeff_rhs, _coeff_grid
    ),
    "case-r-equals-p": _Identity(("p", "k", "a0"), _rp_check, _rp_lhs, _rp_rhs, _rp_grid),
    "case-r-less-than-p": _Identity(
        ("p", "k", "a0", "r"), _rlt_check, _rlt_lhs, _rlt_rhs, _rlt_grid
    ),
    "case-r-greater-than-p": _Identity(
        ("p", "k", "a0", "q", "b0"), _rgt_check, _rgt_lhs, _rgt_rhs, _rgt_grid
    ),
}


def _lookup(name: str) -> _Identity:
    try:
        return IDENTITIES[name]
    except KeyError:
        raise UnknownIdentity(name) from None


def verify_identity(name: str, **params: int) -> IdentityCheck:
    """Evaluate both sides of identity ``name`` at ``params``."""
    ident = _lookup(name)
    missing = set(ident.params) - set(params)
    extra = set(params) - set(ident.params)
    if missing or extra:
        raise ParamsOutOfDomain(
            f"{name} takes parameters {', '.join(ident.params)}; "
            f"missing {sorted(missing)}, unexpected {sorted(extra)}"
        )
    ident.check(**params)
    return IdentityCheck(name, dict(params), ident.lhs(**params), ident.rhs(**params))


def identity_grid(name: str, p: int, max_d: int = 6, max_k: int = 8) -> Iterator[dict[str, int]]:
    """Admissible parameter points for ``name`` at prime ``p``.

    Identities that do not involve p yield the same grid for every p.
    """
    return _lookup(name).grid(p, max_d, max_k)


def sweep_identities(
    primes: list[int], max_d: int = 6, max_k: int = 8, names: list[str] | None = None
) -> Iterator[IdentityCheck]:
    seen: set[tuple[str, tuple]] = set()
    for name in names or list(IDENTITIES):
        for p in primes:
            for params in identity_grid(name, p, max_d, max_k):
                key = (name, tuple(sorted(params.items())))
                if key in seen:
                    continue
                seen.add(key)
                yield verify_identity(name, **params)
