import itertools

import pytest

from bruteforce import orbits, p_cycles
from permgamma.combinatorics import binom
from permgamma.errors import InstanceTooLarge, InvalidParameters
from permgamma.groups import OrbitType, build_group, enumerate_orbit_types
from permgamma.tabloids import (
    EMPTY_SIGNATURE,
    PartitionPair,
    SummandSignature,
    block_multiplicity,
    cycle_group,
    decompose_enumerated,
    decompose_formula,
    enumerate_tabloids,
    fixed_count,
    signature_of,
)

S = SummandSignature.of


def pairs(p, n_max):
    return [(n, r) for n in range(p, n_max + 1) for r in range(n // 2 + 1)]


@pytest.mark.parametrize("n,r,count", [(4, 2, 6), (4, 0, 1), (7, 2, 21)])
def test_tabloid_counts(n, r, count):
    pp = PartitionPair(n, r)
    assert len(list(enumerate_tabloids(pp))) == count == pp.num_tabloids()


def test_partition_pair_normalizes():
    assert PartitionPair(7, 5) == PartitionPair(7, 2) == PartitionPair.from_parts(2, 5)
    assert PartitionPair(7, 2).prime_data(3) == (2, 1, 0, 2)
    with pytest.raises(InvalidParameters):
        PartitionPair(3, 4)


@pytest.mark.parametrize(
    "n,p,t,expected",
    [(4, 2, (1, 2), EMPTY_SIGNATURE), (4, 2, (1, 3), S([1, 2])), (7, 3, (1, 7), S([1]))],
)
def test_signature_examples(n, p, t, expected):
    assert signature_of(t, cycle_group(n, p)) == expected


def test_signature_rejects_bad_tabloid():
    with pytest.raises(InvalidParameters):
        signature_of((1, 9), cycle_group(4, 2))


def test_decompose_n4():
    pp = PartitionPair(4, 2)
    enum = decompose_enumerated(pp, cycle_group(4, 2))
    assert enum.as_dict() == {EMPTY_SIGNATURE: 2, S([1, 2]): 1}
    assert decompose_formula(pp, 2).as_dict() == enum.as_dict()


def test_decompose_n7_p3():
    expected = {S([1]): 2, S([2]): 2, S([1, 2]): 1}
    pp = PartitionPair(7, 2)
    assert decompose_enumerated(pp, cycle_group(7, 3)).as_dict() == expected
    assert decompose_formula(pp, 3).as_dict() == expected


def test_decompose_n6_p2():
    expected = {EMPTY_SIGNATURE: 3, S([1, 2]): 1, S([1, 3]): 1, S([2, 3]): 1}
    assert decompose_enumerated(PartitionPair(6, 2), cycle_group(6, 2)).as_dict() == expected


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_two_blocks_half_filled(p):
    assert decompose_formula(PartitionPair(2 * p, p), p).as_dict()[EMPTY_SIGNATURE] == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_formula_matches_enumeration(p):
    for n, r in pairs(p, 12):
        pp = PartitionPair(n, r)
        assert decompose_formula(pp, p).as_dict() == decompose_enumerated(pp, cycle_group(n, p)).as_dict(), (n, r)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_dimension_audit(p):
    for n, r in pairs(p, 12):
        pp = PartitionPair(n, r)
        assert decompose_formula(pp, p).total_dimension() == binom(n, r)
        for t in enumerate_orbit_types(n, p):
            assert decompose_enumerated(pp, build_group(t)).total_dimension() == binom(n, r)


@pytest.mark.parametrize("n,r,p", [(4, 2, 2), (7, 2, 3), (6, 2, 2), (5, 2, 2), (5, 2, 5), (6, 3, 2), (9, 4, 3)])
def test_orbit_sizes_match_independent_brute_force(n, r, p):
    expected = sorted(len(o) for o in orbits(n, r, p_cycles(n, p)))
    dec = decompose_enumerated(PartitionPair(n, r), cycle_group(n, p))
    got = sorted(p**sig.d for sig, m in dec.as_dict().items() for _ in range(m))
    assert got == expected


def test_general_orbit_type_intermediate_stabilizer():
    # two regular (Z/2)^2 factors on 8 points; some tabloids have orbit size
    # 8 while touching both blocks
    E = build_group(OrbitType.parse(8, 2, "2:2"))
    dec = decompose_enumerated(PartitionPair(8, 3), E)
    assert dec.as_dict()[SummandSignature(3, (1, 2))] > 0
    assert dec.total_dimension() == 56


@pytest.mark.parametrize("p", [3, 5, 7])
def test_case_r_below_p(p):
    for k in range(1, 5):
        for a0 in range(p):
            n = k * p + a0
            for r in range(1, min(p, n // 2 + 1)):
                assert block_multiplicity(PartitionPair(n, r), p, 0) == binom(a0, r)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_case_r_equals_p(p):
    for k in range(2, 6):
        for a0 in range(p):
            assert block_multiplicity(PartitionPair(k * p + a0, p), p, 0) == k


@pytest.mark.parametrize("p", [2, 3])
def test_multiplicity_independent_of_block_choice(p):
    for n, r in pairs(p, 11):
        dec = decompose_enumerated(PartitionPair(n, r), cycle_group(n, p))
        k = n // p
        for d in range(k + 1):
            values = {dec.as_dict().get(S(c), 0) for c in itertools.combinations(range(1, k + 1), d)}
            assert len(values) == 1


def test_projective_criterion():
    dec = decompose_enumerated(PartitionPair(5, 2), cycle_group(5, 5))
    assert dec.is_projective()
    assert not decompose_formula(PartitionPair(4, 2), 2).is_projective()


@pytest.mark.parametrize("n,p,line,expected", [(4, 2, (1, 0), 2), (4, 2, (1, 1), 2), (6, 2, (0, 0, 1), 7)])
def test_fixed_count_examples(n, p, line, expected):
    assert fixed_count(cycle_group(n, p), line, PartitionPair(n, 2)) == expected


def test_fixed_count_closed_fallback_over_budget():
    E = cycle_group(30, 3)
    pp = PartitionPair(30, 14)
    line = (0,) * 9 + (1,)
    assert fixed_count(E, line, pp, budget=10**4) == binom(27, 14) + binom(27, 11)
    with pytest.raises(InstanceTooLarge):
        fixed_count(E, (1,) * 10, pp, budget=10**4)


def test_fixed_count_closed_matches_enumeration():
    for n in range(3, 12):
        E = cycle_group(n, 3)
        for r in range(n // 2 + 1):
            pp = PartitionPair(n, r)
            assert fixed_count(E, E.unit(0), pp) == binom(n - 3, r) + binom(n - 3, r - 3)


def test_enumeration_budget():
    with pytest.raises(InstanceTooLarge):
        decompose_enumerated(PartitionPair(30, 15), cycle_group(30, 2), budget=10**6)


def test_rows_format():
    rows = decompose_formula(PartitionPair(4, 2), 2).rows()
    assert rows == [
        {"signature": [], "d": 0, "dim": 1, "mult": "2", "projective": False},
        {"signature": [1, 2], "d": 2, "dim": 4, "mult": "1", "projective": True},
    ]


def test_formula_handles_many_blocks():
    dec = decompose_formula(PartitionPair(64, 30), 2)
    assert dec.total_dimension() == binom(64, 30)
    assert len(dec.multiplicities) > 10**6  # lazy: not materialized
