"""Maximal elementary abelian p-subgroups of S_n, built concretely.

A conjugacy class of maximal elementary abelian subgroups is labelled by
how n splits as a0 + sum_j i_j p^j. For each part p^j we realize
(Z/p)^j acting regularly on a block of p^j points: a point's local index is
read in base p and the j generators of that factor each add 1 to one digit.
For j = 1 this is just the p-cycle on the block.

Points are 1-based in the public API; permutations are stored as 0-based
image tuples.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .combinatorics import is_prime
from .errors import InvalidParameters, PrimeTooLarge

Perm = tuple[int, ...]


def check_prime_degree(n: int, p: int) -> None:
    if not is_prime(p):
        raise InvalidParameters(f"p={p} is not prime")
    if n < 1:
        raise InvalidParameters(f"n={n} must be positive")
    if p > n:
        raise PrimeTooLarge(p, n)


@dataclass(frozen=True, order=True)
class OrbitType:
    """Orbit-size data of a maximal elementary abelian subgroup.

    ``counts[j-1]`` is i_j, the number of regular (Z/p)^j factors. Trailing
    zeros are stripped so equal types compare equal.
    """

    p: int
    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(self.counts)
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise InvalidParameters(f"negative factor count in {counts}")
        moved = sum(c * self.p**j for j, c in enumerate(counts, start=1))
        if moved > self.n or self.n - moved != self.n % self.p:
            raise InvalidParameters(
                f"counts {self.label()} do not decompose n={self.n} with a0 = n mod p"
            )
        if self.rank < 1:
            raise InvalidParameters("orbit type must have rank >= 1")

    @property
    def a0(self) -> int:
        return self.n % self.p

    @property
    def rank(self) -> int:
        return sum(j * c for j, c in enumerate(self.counts, start=1))

    @property
    def is_cycle_type(self) -> bool:
        """True for the type generated by disjoint p-cycles (the group P)."""
        return len(self.counts) == 1

    def block_exponents(self) -> list[int]:
        """Exponent c of each non-trivial block (size p^c), in block order."""
        return [j for j, c in enumerate(self.counts, start=1) for _ in range(c)]

    def label(self) -> str:
        return ",".join(f"{j}:{c}" for j, c in enumerate(self.counts, start=1) if c)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "a0": self.a0,
            "counts": {str(j): c for j, c in enumerate(self.counts, start=1) if c},
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "OrbitType":
        if isinstance(data, str):
            data = json.loads(data)
        counts_map = {int(j): int(c) for j, c in data["counts"].items()}
        top = max(counts_map, default=0)
        counts = tuple(counts_map.get(j, 0) for j in range(1, top + 1))
        t = cls(int(data["p"]), int(data["n"]), counts)
        if "a0" in data and int(data["a0"]) != t.a0:
            raise InvalidParameters(f"a0={data['a0']} inconsistent with n mod p = {t.a0}")
        return t

    @classmethod
    def parse(cls, n: int, p: int, selector: str) -> "OrbitType":
        """Parse a selector like ``"1:2"`` or ``"1:1,2:1"`` (j:i_j pairs)."""
        counts_map: dict[int, int] = {}
        try:
            for item in selector.split(","):
                j, c = item.split(":")
                counts_map[int(j)] = counts_map.get(int(j), 0) + int(c)
        except ValueError:
            raise InvalidParameters(f"bad orbit-type selector {selector!r}") from None
        if any(j < 1 for j in counts_map):
            raise InvalidParameters(f"orbit-type exponents must be >= 1: {selector!r}")
        top = max(counts_map, default=0)
        return cls(p, n, tuple(counts_map.get(j, 0) for j in range(1, top + 1)))


def cycle_type(n: int, p: int) -> OrbitType:
    check_prime_degree(n, p)
    return OrbitType(p, n, (n // p,))


def enumerate_orbit_types(n: int, p: int) -> list[OrbitType]:
    """All decompositions n = a0 + sum_j i_j p^j, cycle type first."""
    check_prime_degree(n, p)
    units = n // p  # n - a0 measured in units of p
    top = 1
    while p**top <= units:
        top += 1
    # exponent j uses p^(j-1) units
    out: list[OrbitType] = []

    def rec(j: int, remaining: int, acc: list[int]) -> None:
        if j == 0:
            if remaining == 0:
                out.append(OrbitType(p, n, tuple(reversed(acc))))
            return
        size = p ** (j - 1)
        for c in range(remaining // size, -1, -1):
            rec(j - 1, remaining - c * size, acc + [c])

    rec(top, units, [])
    out.sort(key=lambda t: t.counts + (0,) * (top - len(t.counts)), reverse=True)
    return out


def compose(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` then ``b``."""
    return tuple(b[x] for x in a)


def perm_order(a: Perm) -> int:
    ident = tuple(range(len(a)))
    cur, k = a, 1
    while cur != ident:
        cur, k = compose(cur, a), k + 1
    return k


def to_cycles(a: Perm) -> list[tuple[int, ...]]:
    """Non-trivial cycles of ``a`` with 1-based points."""
    seen = set()
    cycles = []
    for start in range(len(a)):
        if start in seen or a[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = a[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = a[x]
        cycles.append(tuple(v + 1 for v in cyc))
    return cycles


def canonical_line(vec: Sequence[int], p: int) -> tuple[int, ...]:
    """Scale a non-zero F_p vector so its first non-zero entry is 1."""
    vec = [v % p for v in vec]
    lead = next((v for v in vec if v), 0)
    if not lead:
        raise InvalidParameters("the zero vector does not span a line")
    inv = pow(lead, -1, p)
    return tuple(v * inv % p for v in vec)


@dataclass(frozen=True)
class ElementaryGroup:
    """Concrete elementary abelian p-subgroup for one orbit type.

    ``blocks`` lists the non-trivial orbits in construction order (each a
    tuple of 1-based points), followed by the a0 fixed points as singletons.
    Generator ``g`` acts on block ``gen_block[g]`` by adding 1 to digit
    ``gen_digit[g]`` of the local index.
    """

    orbit_type: OrbitType
    blocks: tuple[tuple[int, ...], ...] = field(init=False)
    gen_block: tuple[int, ...] = field(init=False)
    gen_digit: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        t = self.orbit_type
        blocks: list[tuple[int, ...]] = []
        gen_block: list[int] = []
        gen_digit: list[int] = []
        start = 1
        for b, c in enumerate(t.block_exponents()):
            size = t.p**c
            blocks.append(tuple(range(start, start + size)))
            start += size
            for digit in range(c):
                gen_block.append(b)
                gen_digit.append(digit)
        for x in range(start, t.n + 1):
            blocks.append((x,))
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "gen_block", tuple(gen_block))
        object.__setattr__(self, "gen_digit", tuple(gen_digit))

    @property
    def p(self) -> int:
        return self.orbit_type.p

    @property
    def n(self) -> int:
        return self.orbit_type.n

    @property
    def rank(self) -> int:
        return len(self.gen_block)

    @property
    def num_blocks(self) -> int:
        """Number m of non-singleton blocks."""
        return len(self.orbit_type.block_exponents())

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        """0-based point -> block index."""
        owner = [0] * self.n
        for b, pts in enumerate(self.blocks):
            for x in pts:
                owner[x - 1] = b
        return tuple(owner)

    @cached_property
    def generators(self) -> tuple[Perm, ...]:
        return tuple(self.element_permutation(self.unit(g)) for g in range(self.rank))

    def unit(self, g: int) -> tuple[int, ...]:
        return tuple(int(i == g) for i in range(self.rank))

    def factor_generators(self, block: int) -> list[int]:
        return [g for g, b in enumerate(self.gen_block) if b == block]

    def _image0(self, g: Sequence[int], x: int) -> int:
        p = self.p
        b = self.block_of[x]
        if b >= self.num_blocks:
            return x
        first = self.blocks[b][0] - 1
        local = x - first
        for gen in self.factor_generators(b):
            e = g[gen] % p
            if e:
                w = p ** self.gen_digit[gen]
                digit = (local // w) % p
                local += (((digit + e) % p) - digit) * w
        return first + local

    def apply(self, g: Sequence[int], point: int) -> int:
        """Image of a 1-based ``point`` under the element with exponents ``g``."""
        if len(g) != self.rank:
            raise InvalidParameters(f"element has {len(g)} exponents, group rank is {self.rank}")
        if not 1 <= point <= self.n:
            raise InvalidParameters(f"point {point} outside 1..{self.n}")
        return self._image0(g, point - 1) + 1

    def element_permutation(self, g: Sequence[int]) -> Perm:
        return tuple(self._image0(g, x) for x in range(self.n))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.p), repeat=self.rank)

    def order_p_subgroups(self) -> Iterator[tuple[int, ...]]:
        """Canonical generators of the (p^rank - 1)/(p - 1) order-p subgroups."""
        for vec in self.elements():
            lead = next((v for v in vec if v), 0)
            if lead == 1:
                yield vec

    def is_coordinate_line(self, line: Sequence[int]) -> bool:
        return sum(1 for v in line if v) == 1

    def generator_cycles(self) -> list[list[tuple[int, ...]]]:
        return [to_cycles(g) for g in self.generators]

    def to_json(self) -> dict:
        return {
            "orbit_type": self.orbit_type.to_json(),
            "rank": self.rank,
            "blocks": [list(b) for b in self.blocks],
            "generators": [[list(c) for c in cyc] for cyc in self.generator_cycles()],
        }


def build_group(t: OrbitType) -> ElementaryGroup:
    return ElementaryGroup(t)


def order_p_subgroups(E: ElementaryGroup) -> Iterator[tuple[int, ...]]:
    return E.order_p_subgroups()


def apply(g: Sequence[int], E: ElementaryGroup, point: int) -> int:
    return E.apply(g, point)
