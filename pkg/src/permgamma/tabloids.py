"""Two-part tabloids and the decomposition of M^(n-r,r) restricted to E.

A tabloid is identified with its second row, an r-subset of {1..n}. The
restriction of the permutation module to an elementary abelian group E is
a direct sum of transitive permutation modules, one per E-orbit of
tabloids; each is indecomposable (E is a p-group) of dimension p^d.

Two routes produce the multiplicities:

* :func:`decompose_enumerated` walks every tabloid and splits the set into
  genuine orbits;
* :func:`decompose_formula` uses only the composition sums, for the group
  P generated by disjoint p-cycles.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .combinatorics import binom, block_sum
from .errors import InstanceTooLarge, InvalidParameters, NonIntegralMultiplicity
from .groups import ElementaryGroup, Perm, build_group, check_prime_degree, cycle_type

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class PartitionPair:
    """lambda = (n - r, r) with r the smaller part."""

    n: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 0 or self.r > self.n:
            raise InvalidParameters(f"need 0 <= r <= n, got n={self.n}, r={self.r}")
        if 2 * self.r > self.n:
            object.__setattr__(self, "r", self.n - self.r)

    @classmethod
    def from_parts(cls, lam1: int, lam2: int) -> "PartitionPair":
        if lam1 < 0 or lam2 < 0:
            raise InvalidParameters(f"partition parts must be non-negative: ({lam1},{lam2})")
        return cls(lam1 + lam2, min(lam1, lam2))

    @property
    def lam1(self) -> int:
        return self.n - self.r

    @property
    def lam2(self) -> int:
        return self.r

    def prime_data(self, p: int) -> tuple[int, int, int, int]:
        """(k, a0, q, b0) with n = kp + a0 and r = qp + b0."""
        k, a0 = divmod(self.n, p)
        q, b0 = divmod(self.r, p)
        return k, a0, q, b0

    def num_tabloids(self) -> int:
        return binom(self.n, self.r)


@dataclass(frozen=True, order=True)
class SummandSignature:
    """Isomorphism label of a cyclic summand.

    ``blocks`` are the 1-based indices of the non-singleton blocks on which
    the generating tabloid has a non-trivial orbit; the summand has
    dimension p^d. For the cycle group P, d = len(blocks).
    """

    d: int
    blocks: tuple[int, ...]

    @classmethod
    def of(cls, blocks: Sequence[int], d: int | None = None) -> "SummandSignature":
        blocks = tuple(sorted(blocks))
        return cls(len(blocks) if d is None else d, blocks)

    def dim(self, p: int) -> int:
        return p**self.d


EMPTY_SIGNATURE = SummandSignature(0, ())


class UniformMultiplicities(Mapping):
    """Multiplicities that depend only on the number of blocks used.

    Maps every d-subset of {1..k} to ``per_size[d]`` without materializing
    the up to 2^k keys unless iterated.
    """

    def __init__(self, k: int, per_size: Mapping[int, int]):
        self.k = k
        self.per_size = {d: m for d, m in per_size.items() if m}

    def __getitem__(self, sig: SummandSignature) -> int:
        if (
            sig.d == len(sig.blocks)
            and sig.d in self.per_size
            and all(1 <= b <= self.k for b in sig.blocks)
            and len(set(sig.blocks)) == sig.d
        ):
            return self.per_size[sig.d]
        raise KeyError(sig)

    def __iter__(self) -> Iterator[SummandSignature]:
        for d in sorted(self.per_size):
            for blocks in itertools.combinations(range(1, self.k + 1), d):
                yield SummandSignature(d, blocks)

    def __len__(self) -> int:
        return sum(binom(self.k, d) for d in self.per_size)


@dataclass(frozen=True)
class Decomposition:
    """Summand multiplicities of M restricted to an elementary abelian group."""

    pp: PartitionPair
    p: int
    rank: int
    multiplicities: Mapping[SummandSignature, int]
    orbit_type_label: str = field(default="")

    def total_dimension(self) -> int:
        if isinstance(self.multiplicities, UniformMultiplicities):
            u = self.multiplicities
            return sum(binom(u.k, d) * m * self.p**d for d, m in u.per_size.items())
        return sum(m * sig.dim(self.p) for sig, m in self.multiplicities.items())

    def dimension_excluding(self, block: int) -> int:
        """Total dimension of summands whose signature avoids ``block``."""
        if isinstance(self.multiplicities, UniformMultiplicities):
            u = self.multiplicities
            return sum(binom(u.k - 1, d) * m * self.p**d for d, m in u.per_size.items())
        return sum(
            m * sig.dim(self.p) for sig, m in self.multiplicities.items() if block not in sig.blocks
        )

    def as_dict(self) -> dict[SummandSignature, int]:
        return {sig: m for sig, m in self.multiplicities.items() if m}

    def is_projective(self) -> bool:
        return all(sig.d == self.rank for sig, m in self.multiplicities.items() if m)

    def rows(self) -> list[dict]:
        return [
            {
                "signature": list(sig.blocks),
                "d": sig.d,
                "dim": sig.dim(self.p),
                "mult": str(m),
                "projective": sig.d == self.rank,
            }
            for sig, m in sorted(self.as_dict().items())
        ]


# -- tabloid enumeration -------------------------------------------------------

def enumerate_tabloids(pp: PartitionPair) -> Iterator[tuple[int, ...]]:
    """Second rows of all tabloids, lexicographically."""
    return itertools.combinations(range(1, pp.n + 1), pp.r)


def _mask_of(points: Sequence[int]) -> int:
    mask = 0
    for x in points:
        mask |= 1 << (x - 1)
    return mask


def _masks(n: int, r: int) -> Iterator[int]:
    """All r-bit masks below 2^n in increasing order (Gosper's hack)."""
    if r == 0:
        yield 0
        return
    mask = (1 << r) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


class MaskPermuter:
    """Applies a permutation of {0..n-1} to bitmasks a byte at a time."""

    def __init__(self, perm: Perm):
        n = len(perm)
        self.chunks = (n + 7) // 8
        self.tables = []
        for c in range(self.chunks):
            table = []
            for byte in range(256):
                out = 0
                for bit in range(8):
                    x = 8 * c + bit
                    if byte >> bit & 1 and x < n:
                        out |= 1 << perm[x]
                table.append(out)
            self.tables.append(table)

    def __call__(self, mask: int) -> int:
        out = 0
        for table in self.tables:
            out |= table[mask & 255]
            mask >>= 8
        return out


def _check_budget(pp: PartitionPair, budget: int) -> None:
    size = pp.num_tabloids()
    if size > budget:
        raise InstanceTooLarge(f"M^({pp.lam1},{pp.lam2}) tabloids", size, budget)


# -- signatures ----------------------------------------------------------------

def _factor_orbit_size(E: ElementaryGroup, block: int, members: frozenset[int]) -> int:
    gens = E.factor_generators(block)
    p = E.p
    seen = set()
    for exps in itertools.product(range(p), repeat=len(gens)):
        g = [0] * E.rank
        for gen, e in zip(gens, exps):
            g[gen] = e
        seen.add(frozenset(E.apply(g, x) for x in members))
    return len(seen)


def signature_of(t: Sequence[int], E: ElementaryGroup) -> SummandSignature:
    """Signature of the summand generated by tabloid ``t`` (second row)."""
    row = set(t)
    if any(not 1 <= x <= E.n for x in row) or len(row) != len(t):
        raise InvalidParameters(f"tabloid {tuple(t)} is not a subset of 1..{E.n}")
    used: list[int] = []
    d = 0
    p = E.p
    for b in range(E.num_blocks):
        block = E.blocks[b]
        members = row.intersection(block)
        if not members or len(members) == len(block):
            continue
        if E.orbit_type.is_cycle_type:
            size = p  # a proper non-empty subset of a p-cycle's support
        else:
            size = _factor_orbit_size(E, b, frozenset(members))
            if size == 1:
                continue
        used.append(b + 1)
        d += _log_p(size, p)
    return SummandSignature(d, tuple(used))


def _log_p(x: int, p: int) -> int:
    e = 0
    while x > 1:
        x, rem = divmod(x, p)
        if rem:
            raise NonIntegralMultiplicity(f"orbit size is not a power of {p}")
        e += 1
    return e


# -- decompositions --------------------------------------------------------------

def tabloid_orbits(pp: PartitionPair, E: ElementaryGroup, budget: int = DEFAULT_BUDGET) -> Iterator[list[int]]:
    """Yield the E-orbits on tabloids as lists of bitmasks."""
    if pp.n != E.n:
        raise InvalidParameters(f"partition of {pp.n} but group acts on {E.n} points")
    _check_budget(pp, budget)
    movers = [MaskPermuter(g) for g in E.generators]
    seen: set[int] = set()
    for mask in _masks(pp.n, pp.r):
        if mask in seen:
            continue
        orbit = [mask]
        seen.add(mask)
        i = 0
        while i < len(orbit):
            cur = orbit[i]
            i += 1
            for move in movers:
                nxt = move(cur)
                if nxt not in seen:
                    seen.add(nxt)
                    orbit.append(nxt)
        yield orbit


def _points(mask: int) -> tuple[int, ...]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def decompose_enumerated(
    pp: PartitionPair, E: ElementaryGroup, budget: int = DEFAULT_BUDGET
) -> Decomposition:
    """Multiplicities obtained by splitting the tabloids into E-orbits."""
    counts: dict[SummandSignature, int] = {}
    p = E.p
    for orbit in tabloid_orbits(pp, E, budget):
        sig = signature_of(_points(orbit[0]), E)
        if len(orbit) != p**sig.d:
            raise NonIntegralMultiplicity(
                f"orbit of size {len(orbit)} disagrees with signature dimension {p**sig.d}"
            )
        counts[sig] = counts.get(sig, 0) + 1
    return Decomposition(pp, p, E.rank, counts, E.orbit_type.label())


def block_multiplicity(pp: PartitionPair, p: int, d: int) -> int:
    """Multiplicity of each signature using exactly d of the p-cycle blocks."""
    k, a0, q, b0 = pp.prime_data(p)
    if d == 0:
        return binom(k, q) * binom(a0, b0)
    count = 0
    for j in range(d + 1):
        total = j * p + b0
        count += binom(k - d, q - j) * (
            block_sum(p, a0, total, d, bounded=True)
            + block_sum(p, a0, total, d, with_tail=True, bounded=True)
        )
    mult, rem = divmod(count, p**d)
    if rem:
        raise NonIntegralMultiplicity(
            f"{count} tabloids on {d} blocks not divisible by {p}^{d} (n={pp.n}, r={pp.r})"
        )
    return mult


def decompose_formula(pp: PartitionPair, p: int) -> Decomposition:
    """Multiplicities for the p-cycle group P from the closed composition sums."""
    check_prime_degree(pp.n, p)
    k = pp.n // p
    per_size = {d: block_multiplicity(pp, p, d) for d in range(k + 1)}
    return Decomposition(pp, p, k, UniformMultiplicities(k, per_size), f"1:{k}")


# -- fixed points ----------------------------------------------------------------

def fixed_count(
    E: ElementaryGroup, line: Sequence[int], pp: PartitionPair, budget: int = DEFAULT_BUDGET
) -> int:
    """Number of tabloids fixed by the order-p subgroup spanned by ``line``."""
    if pp.n != E.n:
        raise InvalidParameters(f"partition of {pp.n} but group acts on {E.n} points")
    if not any(v % E.p for v in line):
        raise InvalidParameters("line must be a non-zero vector")
    if pp.num_tabloids() <= budget:
        move = MaskPermuter(E.element_permutation(line))
        return sum(1 for mask in _masks(pp.n, pp.r) if move(mask) == mask)
    if E.orbit_type.is_cycle_type and E.is_coordinate_line(line):
        p = E.p
        return binom(pp.n - p, pp.r) + binom(pp.n - p, pp.r - p)
    raise InstanceTooLarge("fixed-point enumeration", pp.num_tabloids(), budget)


def cycle_group(n: int, p: int) -> ElementaryGroup:
    return build_group(cycle_type(n, p))
