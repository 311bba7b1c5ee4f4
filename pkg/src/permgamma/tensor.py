"""Cores of tensor powers of M restricted to the p-cycle group P.

Summands of M_P are labelled by block subsets. Tensoring the summands on
subsets S and T gives copies of the summand on S | T:

    p^|S| * p^|T| = mult * p^|S | T|

and a summand is projective exactly when its subset is all k blocks. So the
core of a tensor power is tracked as a map from non-full subsets to
multiplicities.

Two steppers are provided. :func:`tensor_step` convolves explicit states
pair by pair. :func:`symmetric_step` works on states invariant under block
relabelling (those coming from M itself) and keeps one number per subset
size; :func:`growth` uses it by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .combinatorics import binom, compositions, multinomial
from .errors import InstanceTooLarge, InvalidParameters
from .tabloids import (
    Decomposition,
    PartitionPair,
    SummandSignature,
    UniformMultiplicities,
    decompose_formula,
)

DEFAULT_M_MAX = 200
DEFAULT_MAX_BLOCKS = 16


class _Projective:
    def __repr__(self) -> str:
        return "Projective"


PROJECTIVE = _Projective()


@dataclass(frozen=True)
class CoreState:
    """Non-projective summand classes and their multiplicities."""

    k: int
    p: int
    multiplicities: Mapping[SummandSignature, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for sig, m in self.multiplicities.items():
            if m < 0:
                raise InvalidParameters(f"negative multiplicity for {sig}")
            if sig.d >= self.k:
                raise InvalidParameters(f"projective class {sig} cannot be stored in a core")
            if m:
                clean[sig] = m
        object.__setattr__(self, "multiplicities", clean)

    def dimension(self) -> int:
        return sum(m * sig.dim(self.p) for sig, m in self.multiplicities.items())

    def is_empty(self) -> bool:
        return not self.multiplicities

    def per_size(self) -> dict[int, int]:
        """Multiplicity of each size, assuming the state is relabelling-invariant."""
        sizes: dict[int, int] = {}
        for sig, m in self.multiplicities.items():
            if sizes.setdefault(sig.d, m) != m:
                raise InvalidParameters("state is not invariant under block relabelling")
        return sizes


def core_of(dec: Decomposition) -> CoreState:
    """Drop the projective summands (those using all k blocks)."""
    return CoreState(
        dec.rank,
        dec.p,
        {sig: m for sig, m in dec.multiplicities.items() if sig.d < dec.rank},
    )


def tensor_product(s1: SummandSignature, s2: SummandSignature, p: int) -> tuple[SummandSignature, int]:
    """Class and multiplicity of s1 (x) s2, projective or not."""
    union = SummandSignature.of(set(s1.blocks) | set(s2.blocks))
    mult, rem = divmod(p ** (s1.d + s2.d), p**union.d)
    assert rem == 0
    return union, mult


def tensor_classes(s1: SummandSignature, s2: SummandSignature, k: int, p: int):
    """Like :func:`tensor_product`, but ``PROJECTIVE`` when the union is full."""
    union, mult = tensor_product(s1, s2, p)
    if union.d >= k:
        return PROJECTIVE
    return union, mult


def tensor_step(state: CoreState, m_core: CoreState) -> CoreState:
    """Core of state (x) M, by explicit pairwise convolution."""
    if (state.k, state.p) != (m_core.k, m_core.p):
        raise InvalidParameters("states live over different block universes")
    out: dict[SummandSignature, int] = {}
    for s1, m1 in state.multiplicities.items():
        for s2, m2 in m_core.multiplicities.items():
            res = tensor_classes(s1, s2, state.k, state.p)
            if res is PROJECTIVE:
                continue
            sig, mult = res
            out[sig] = out.get(sig, 0) + m1 * m2 * mult
    return CoreState(state.k, state.p, out)


def symmetric_step(state: Sequence[int], m_core: Sequence[int], k: int, p: int) -> list[int]:
    """Per-size version of :func:`tensor_step` for relabelling-invariant states.

    ``state[s]`` is the multiplicity of each s-subset class, for s < k. A
    fixed u-subset U arises as S | T with |S| = s, |T| = t in
    C(u, s) * C(s, s + t - u) ways.
    """
    out = [0] * k
    for u in range(k):
        acc = 0
        for s, a in enumerate(state):
            if not a or s > u:
                continue
            for t, b in enumerate(m_core):
                if not b or t > u or s + t < u:
                    continue
                overlap = s + t - u
                acc += a * b * binom(u, s) * binom(s, overlap) * p**overlap
        out[u] = acc
    return out


@dataclass
class GrowthEstimate:
    p: int
    k: int
    c_values: list[int]
    target: int | None = None

    @property
    def ratio_estimates(self) -> list[Fraction | None]:
        """c_{j+1} / c_j for j = 1..m-1 (None once the core has vanished)."""
        c = self.c_values
        return [Fraction(c[j + 1], c[j]) if c[j] else None for j in range(len(c) - 1)]

    @property
    def root_estimates(self) -> list[float]:
        return [math.exp(math.log(c) / j) if c else 0.0 for j, c in enumerate(self.c_values, 1)]

    def relative_errors(self) -> list[Fraction | None]:
        if not self.target:
            return [None] * (len(self.c_values) - 1)
        return [
            None if r is None else abs(r - self.target) / self.target
            for r in self.ratio_estimates
        ]

    def rows(self) -> Iterable[dict]:
        """One row per power m; ``ratio`` is c_m / c_{m-1} (null at m = 1)."""
        ratios = [None] + self.ratio_estimates
        for j, (c, root) in enumerate(zip(self.c_values, self.root_estimates), 1):
            ratio = ratios[j - 1]
            yield {
                "m": j,
                "c": str(c),
                "ratio": None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
                "root": float(f"{root:.12g}"),
            }


def growth(
    pp: PartitionPair,
    p: int,
    m_max: int = DEFAULT_M_MAX,
    target: int | None = None,
    method: str = "symmetric",
    max_blocks: int = DEFAULT_MAX_BLOCKS,
) -> GrowthEstimate:
    """Dimensions c_1..c_{m_max} of the cores of M^(x)j restricted to P."""
    if m_max < 2:
        raise InvalidParameters("m_max must be at least 2")
    dec = decompose_formula(pp, p)
    k = dec.rank
    c_values = []
    if method == "symmetric":
        u = dec.multiplicities
        assert isinstance(u, UniformMultiplicities)
        base = [u.per_size.get(d, 0) for d in range(k)]
        state = base
        for j in range(m_max):
            if j:
                state = symmetric_step(state, base, k, p)
            c_values.append(sum(binom(k, d) * m * p**d for d, m in enumerate(state)))
    elif method == "pairwise":
        if k > max_blocks:
            raise InstanceTooLarge("signature universe 2^k", 2**k, 2**max_blocks)
        core = core_of(dec)
        state = core
        for j in range(m_max):
            if j:
                state = tensor_step(state, core)
            c_values.append(state.dimension())
    else:
        raise InvalidParameters(f"unknown growth method {method!r}")
    return GrowthEstimate(p, k, c_values, target)


# -- multiplicity of a fixed tensor word ---------------------------------------

def coefficient_formula(dims: Sequence[int], m: int, p: int) -> int:
    """Coefficient of (x)_{a in J} A_a in the m-th power, by summing compositions.

    ``dims`` lists the exponents d_a of the classes in J.
    """
    w = len(dims)
    acc = 0
    for nu in compositions(m, w, positive=True):
        acc += multinomial(nu) * p ** sum(d * (v - 1) for d, v in zip(dims, nu))
    return acc


def coefficient_by_iteration(classes: Sequence[SummandSignature], m: int, p: int) -> int:
    """Same coefficient, by folding tensor products over length-m words.

    Every class in ``classes`` is a distinct letter. The state tracks which
    letters a partial word has used and the summand class it produced; after
    m steps the words using every letter give a multiple of
    (x)_{a in J} A_a, which is divided out.
    """
    w = len(classes)
    full = (1 << w) - 1
    state: dict[tuple[int, SummandSignature], int] = {(0, SummandSignature(0, ())): 1}
    for _ in range(m):
        nxt: dict[tuple[int, SummandSignature], int] = {}
        for (used, sig), mult in state.items():
            for i, cls in enumerate(classes):
                out, factor = tensor_product(sig, cls, p)
                key = (used | 1 << i, out)
                nxt[key] = nxt.get(key, 0) + mult * factor
        state = nxt
    word_class = SummandSignature(0, ())
    word_mult = 1
    for cls in classes:
        word_class, f = tensor_product(word_class, cls, p)
        word_mult *= f
    total = state.get((full, word_class), 0)
    coeff, rem = divmod(total, word_mult)
    assert rem == 0
    return coeff
