"""The gamma invariant of M^(n-r,r) in characteristic p, three ways.

* closed:     C(n-p, n-r) + C(n-p, r)
* structural: total dimension of the summands of M_P whose block set avoids
              the last block, from the formula decomposition
* oracle:     for a given elementary abelian E, the largest number of
              tabloids fixed by an order-p subgroup of E, by enumeration

The oracle is exact for any E: the core of the m-th tensor power counts
m-tuples of tabloids with non-trivial stabilizer, and a stabilizer is
non-trivial iff it contains some order-p subgroup Z, so its dimension lies
between max_Z fix(Z)^m and (#lines) * max_Z fix(Z)^m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import binom
from .errors import InstanceTooLarge, InvalidParameters
from .groups import OrbitType, build_group, check_prime_degree, cycle_type, enumerate_orbit_types
from .tabloids import (
    DEFAULT_BUDGET,
    PartitionPair,
    decompose_formula,
    fixed_count,
)


def gamma_closed(pp: PartitionPair, p: int) -> int:
    check_prime_degree(pp.n, p)
    return binom(pp.n - p, pp.lam1) + binom(pp.n - p, pp.lam2)


def gamma_structural(pp: PartitionPair, p: int) -> tuple[int, int]:
    """(gamma, witness block): summand dimensions avoiding the last block."""
    check_prime_degree(pp.n, p)
    dec = decompose_formula(pp, p)
    last = dec.rank
    return dec.dimension_excluding(last), last


def gamma_oracle(
    pp: PartitionPair, t: OrbitType, budget: int = DEFAULT_BUDGET
) -> tuple[int, tuple[int, ...]]:
    """(max fixed-tabloid count over order-p subgroups of E, achieving line)."""
    if pp.n != t.n:
        raise InvalidParameters(f"partition of {pp.n} but orbit type for n={t.n}")
    size = pp.num_tabloids()
    if size > budget:
        raise InstanceTooLarge("fixed-point oracle", size, budget)
    E = build_group(t)
    best, witness = -1, ()
    for line in E.order_p_subgroups():
        count = fixed_count(E, line, pp, budget)
        if count > best:
            best, witness = count, line
    return best, witness


@dataclass
class OrbitTypeGamma:
    orbit_type: OrbitType
    gamma: int
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "orbit_type": self.orbit_type.to_json(),
            "label": self.orbit_type.label(),
            "gamma": str(self.gamma),
            "witness_line": list(self.witness),
        }


@dataclass
class GammaReport:
    pp: PartitionPair
    p: int
    gamma_closed: int
    gamma_structural: int
    witness_block: int
    gamma_oracle: int | None = None
    oracle_witness: tuple[int, ...] | None = None
    per_orbit_type: list[OrbitTypeGamma] = field(default_factory=list)
    oracle_computed: bool = False

    @property
    def gamma(self) -> int:
        return self.gamma_closed

    @property
    def agree(self) -> bool:
        values = {self.gamma_closed, self.gamma_structural}
        if self.gamma_oracle is not None:
            values.add(self.gamma_oracle)
        return len(values) == 1

    @property
    def dominated(self) -> bool:
        """Every orbit type's value is at most the cycle type's."""
        if self.gamma_oracle is None:
            return True
        return all(entry.gamma <= self.gamma_oracle for entry in self.per_orbit_type)

    @property
    def ok(self) -> bool:
        return self.agree and self.dominated and self.gamma_closed >= 0

    def to_json(self) -> dict:
        return {
            "n": self.pp.n,
            "lambda": [self.pp.lam1, self.pp.lam2],
            "p": self.p,
            "gamma": str(self.gamma),
            "gamma_closed": str(self.gamma_closed),
            "gamma_structural": str(self.gamma_structural),
            "witness_block": self.witness_block,
            "gamma_oracle": None if self.gamma_oracle is None else str(self.gamma_oracle),
            "oracle_witness_line": None if self.oracle_witness is None else list(self.oracle_witness),
            "oracle_computed": self.oracle_computed,
            "per_orbit_type": [e.to_json() for e in self.per_orbit_type],
            "agree": self.agree,
            "dominated": self.dominated,
        }


def gamma_symmetric_group(
    pp: PartitionPair, p: int, budget: int = DEFAULT_BUDGET, oracle: bool = True
) -> GammaReport:
    """Reconcile all routes; the oracle is skipped (and flagged) over budget."""
    closed = gamma_closed(pp, p)
    structural, block = gamma_structural(pp, p)
    report = GammaReport(pp, p, closed, structural, block)
    if not oracle or pp.num_tabloids() > budget:
        return report
    for t in enumerate_orbit_types(pp.n, p):
        value, line = gamma_oracle(pp, t, budget)
        report.per_orbit_type.append(OrbitTypeGamma(t, value, line))
        if t == cycle_type(pp.n, p):
            report.gamma_oracle, report.oracle_witness = value, line
    report.oracle_computed = True
    return report


def young_gamma_first_hook(n: int, p: int) -> tuple[int, int]:
    """(dim Y, gamma(Y)) for the Young module Y^(n-1,1).

    M^(n-1,1) is Y when p | n and k (+) Y otherwise, and adding a trivial
    summand raises gamma by exactly one.
    """
    check_prime_degree(n, p)
    if n < 2:
        raise InvalidParameters("lambda = (n-1, 1) needs n >= 2")
    divides = n % p == 0
    dim_y = n if divides else n - 1
    gamma = n - p if divides else n - p - 1
    from_module = gamma_closed(PartitionPair(n, 1), p) - (0 if divides else 1)
    if from_module != gamma or gamma != dim_y - p:
        raise AssertionError(
            f"Young module check failed at n={n}, p={p}: {gamma=} {from_module=} {dim_y=}"
        )
    return dim_y, gamma
