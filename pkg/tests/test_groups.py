import json

import pytest

from bruteforce import closure
from permgamma.errors import InvalidParameters, PrimeTooLarge
from permgamma.groups import (
    OrbitType,
    apply,
    build_group,
    compose,
    cycle_type,
    enumerate_orbit_types,
    order_p_subgroups,
    perm_order,
    to_cycles,
)

SMALL = [(n, p) for p in (2, 3, 5) for n in range(p, 13)]


def test_orbit_types_n4_p2():
    assert [t.counts for t in enumerate_orbit_types(4, 2)] == [(2,), (0, 1)]


def test_orbit_types_n5_p2():
    types = enumerate_orbit_types(5, 2)
    assert [t.counts for t in types] == [(2,), (0, 1)]
    assert {t.a0 for t in types} == {1}


def test_orbit_types_n3_p3():
    assert [t.counts for t in enumerate_orbit_types(3, 3)] == [(1,)]


def test_orbit_types_count_p2_n8():
    # 8 = 2a + 4b + 8c in units: partitions of 4 into 1, 2, 4
    assert len(enumerate_orbit_types(8, 2)) == 4


@pytest.mark.parametrize("n,p", SMALL)
def test_cycle_type_listed_first_and_types_distinct(n, p):
    types = enumerate_orbit_types(n, p)
    assert types[0] == cycle_type(n, p)
    assert len(set(types)) == len(types)


@pytest.mark.parametrize("n,p", SMALL)
def test_rank_bound(n, p):
    for t in enumerate_orbit_types(n, p):
        assert t.rank <= n // p
    assert cycle_type(n, p).rank == n // p


def test_rank_tie_for_p2():
    t = OrbitType.parse(4, 2, "2:1")
    assert t.rank == cycle_type(4, 2).rank == 2
    assert not t.is_cycle_type


@pytest.mark.parametrize("p", [3, 5])
def test_rank_strict_for_odd_p(p):
    for n in range(p, 30):
        for t in enumerate_orbit_types(n, p)[1:]:
            assert t.rank < n // p


def test_generators_n4_cycle_type():
    E = build_group(OrbitType.parse(4, 2, "1:2"))
    assert E.generator_cycles() == [[(1, 2)], [(3, 4)]]


def test_generators_n4_regular_v2():
    E = build_group(OrbitType.parse(4, 2, "2:1"))
    cycles = E.generator_cycles()
    assert all(len(c) == 2 and all(len(x) == 2 for x in c) for c in cycles)
    a, b = E.generators
    assert compose(a, b) == compose(b, a)
    assert len(closure(E.generators, 4)) == 4


def test_generator_n3():
    assert build_group(cycle_type(3, 3)).generator_cycles() == [[(1, 2, 3)]]


@pytest.mark.parametrize("rank,p,expected", [(1, 2, 1), (2, 2, 3), (2, 3, 4)])
def test_line_count_examples(rank, p, expected):
    E = build_group(cycle_type(rank * p, p))
    assert len(list(order_p_subgroups(E))) == expected


def test_apply_examples():
    E = build_group(cycle_type(4, 2))
    assert [apply((0, 0), E, x) for x in range(1, 5)] == [1, 2, 3, 4]
    assert apply((1, 0), E, 1) == 2
    assert apply((1, 1), E, 3) == 4


def test_apply_rejects_bad_point():
    E = build_group(cycle_type(4, 2))
    with pytest.raises(InvalidParameters):
        apply((1, 0), E, 5)


@pytest.mark.parametrize("n,p", SMALL)
def test_group_structure(n, p):
    for t in enumerate_orbit_types(n, p):
        E = build_group(t)
        gens = E.generators
        for g in gens:
            assert perm_order(g) == p
        for a in gens:
            for b in gens:
                assert compose(a, b) == compose(b, a)
        group = closure(gens, n)
        assert len(group) == p**E.rank
        # orbits are exactly the declared blocks
        orbits = {frozenset(g[x] for g in group) for x in range(n)}
        declared = {frozenset(x - 1 for x in blk) for blk in E.blocks}
        assert orbits == declared
        sizes = sorted(len(b) for b in E.blocks if len(b) > 1)
        assert sizes == sorted(p**c for c in t.block_exponents())
        # each factor is regular on its block
        for b in range(E.num_blocks):
            gs = [gens[g] for g in E.factor_generators(b)]
            assert len(closure(gs, n)) == len(E.blocks[b])


@pytest.mark.parametrize("n,p", [(4, 2), (8, 2), (9, 3), (7, 3), (6, 2)])
def test_lines_distinct_and_counted(n, p):
    for t in enumerate_orbit_types(n, p):
        E = build_group(t)
        lines = list(E.order_p_subgroups())
        assert len(lines) == (p**E.rank - 1) // (p - 1)
        subgroups = {frozenset(closure([E.element_permutation(v)], n)) for v in lines}
        assert len(subgroups) == len(lines)


def test_orbit_type_json_round_trip():
    for t in enumerate_orbit_types(12, 2):
        data = json.loads(json.dumps(t.to_json()))
        assert OrbitType.from_json(data) == t
    assert OrbitType.from_json('{"p": 3, "n": 7, "counts": {"1": 2}}') == cycle_type(7, 3)


def test_orbit_type_validation():
    with pytest.raises(InvalidParameters):
        OrbitType(2, 5, (1,))
    with pytest.raises(InvalidParameters):
        OrbitType.parse(4, 2, "x")
    with pytest.raises(InvalidParameters):
        OrbitType.from_json({"p": 3, "n": 7, "a0": 0, "counts": {"1": 2}})
    with pytest.raises(PrimeTooLarge):
        cycle_type(4, 5)
    with pytest.raises(InvalidParameters):
        cycle_type(6, 4)


def test_label_and_to_cycles():
    assert OrbitType(2, 5, (0, 1, 0, 0)).label() == "2:1"
    assert to_cycles((1, 0, 2, 4, 3)) == [(1, 2), (4, 5)]
