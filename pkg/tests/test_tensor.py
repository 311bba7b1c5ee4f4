import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruteforce import core_dimensions, p_cycles
from permgamma.errors import InstanceTooLarge, InvalidParameters
from permgamma.tabloids import EMPTY_SIGNATURE, PartitionPair, SummandSignature, decompose_formula
from permgamma.tensor import (
    PROJECTIVE,
    CoreState,
    coefficient_by_iteration,
    coefficient_formula,
    core_of,
    growth,
    symmetric_step,
    tensor_classes,
    tensor_product,
    tensor_step,
)

S = SummandSignature.of


def test_core_of_examples():
    assert core_of(decompose_formula(PartitionPair(4, 2), 2)).multiplicities == {EMPTY_SIGNATURE: 2}
    core = core_of(decompose_formula(PartitionPair(6, 2), 2))
    assert core.multiplicities == {EMPTY_SIGNATURE: 3, S([1, 2]): 1, S([1, 3]): 1, S([2, 3]): 1}
    assert CoreState(3, 2, {}).is_empty()


def test_core_state_rejects_projective_key():
    with pytest.raises(InvalidParameters):
        CoreState(2, 2, {S([1, 2]): 1})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tensor_classes_examples(p):
    assert tensor_classes(S([1]), S([1]), 3, p) == (S([1]), p)
    assert tensor_classes(EMPTY_SIGNATURE, S([2, 3]), 3, p) == (S([2, 3]), 1)
    assert tensor_classes(S([1, 2]), S([2, 3]), 3, p) is PROJECTIVE


def test_tensor_step_examples():
    k, p = 3, 2
    assert tensor_step(CoreState(k, p, {EMPTY_SIGNATURE: 2}), CoreState(k, p, {EMPTY_SIGNATURE: 2})).multiplicities == {EMPTY_SIGNATURE: 4}
    assert tensor_step(CoreState(k, p, {S([1]): 1}), CoreState(k, p, {S([2]): 1})).multiplicities == {S([1, 2]): 1}
    assert tensor_step(CoreState(k, p, {S([1, 2]): 1}), CoreState(k, p, {S([2, 3]): 1})).is_empty()


def test_growth_examples():
    est = growth(PartitionPair(4, 2), 2, m_max=12)
    assert est.c_values == [2**j for j in range(1, 13)]
    assert set(est.ratio_estimates) == {2}
    assert growth(PartitionPair(5, 0), 3, m_max=5).c_values == [1] * 5
    assert abs(growth(PartitionPair(6, 2), 2, m_max=60).ratio_estimates[-1] - 7) < Fraction(1, 10**20)


def test_growth_rejects_small_m_and_large_pairwise():
    with pytest.raises(InvalidParameters):
        growth(PartitionPair(4, 2), 2, m_max=1)
    with pytest.raises(InstanceTooLarge):
        growth(PartitionPair(40, 3), 2, method="pairwise")
    with pytest.raises(InvalidParameters):
        growth(PartitionPair(4, 2), 2, method="other")


FROZEN_CORES = [
    (4, 2, 2, [2, 4, 8, 16]),
    (6, 2, 2, [15, 129, 975, 7041]),
    (5, 2, 2, [6, 28, 120, 496]),
    (7, 3, 2, [12, 72]),
    (7, 3, 3, [8, 46, 242]),
    (8, 2, 3, [56, 1984, 60800]),
    (6, 2, 3, [12, 144, 1344]),
    (9, 3, 4, [45, 1215]),
]


@pytest.mark.parametrize("n,p,r,expected", FROZEN_CORES)
def test_core_dimensions_frozen(n, p, r, expected):
    for method in ("symmetric", "pairwise"):
        assert growth(PartitionPair(n, r), p, m_max=max(2, len(expected)), method=method).c_values[: len(expected)] == expected


@pytest.mark.parametrize("n,p,r,m", [(4, 2, 2, 3), (5, 2, 2, 3), (7, 3, 2, 2), (6, 2, 3, 2)])
def test_core_dimensions_match_brute_force(n, p, r, m):
    assert growth(PartitionPair(n, r), p, m_max=max(m, 2)).c_values[:m] == core_dimensions(n, r, p_cycles(n, p), m)


@pytest.mark.parametrize("n,p,r", [(6, 2, 2), (8, 2, 3), (9, 3, 4), (7, 3, 2), (10, 2, 4), (11, 5, 3)])
def test_symmetric_and_pairwise_agree(n, p, r):
    pp = PartitionPair(n, r)
    assert growth(pp, p, 25).c_values == growth(pp, p, 25, method="pairwise").c_values


def _states(k, p):
    sig = st.lists(st.integers(1, k), unique=True, max_size=k - 1).map(lambda b: S(b))
    return st.dictionaries(sig, st.integers(1, 5), max_size=6).map(lambda m: CoreState(k, p, m))


@settings(max_examples=60, deadline=None)
@given(data=st.data(), k=st.integers(2, 5), p=st.sampled_from([2, 3]))
def test_tensor_step_associative_and_commutative(data, k, p):
    a, b, c = (data.draw(_states(k, p)) for _ in range(3))
    assert tensor_step(a, b).multiplicities == tensor_step(b, a).multiplicities
    left = tensor_step(tensor_step(a, b), c)
    right = tensor_step(a, tensor_step(b, c))
    assert left.multiplicities == right.multiplicities


@pytest.mark.parametrize("k,p", [(3, 2), (4, 3), (5, 2)])
def test_dimension_bookkeeping(k, p):
    subsets = [S(c) for d in range(k + 1) for c in itertools.combinations(range(1, k + 1), d)]
    for s1 in subsets:
        for s2 in subsets:
            union, mult = tensor_product(s1, s2, p)
            assert p**s1.d * p**s2.d == mult * p**union.d
            assert (tensor_classes(s1, s2, k, p) is PROJECTIVE) == (union.d == k)


def test_chain_projective_iff_union_full():
    k, p = 4, 3
    subsets = [S(c) for d in range(1, k) for c in itertools.combinations(range(1, k + 1), d)]
    for chain in itertools.product(subsets, repeat=3):
        state = CoreState(k, p, {chain[0]: 1})
        for s in chain[1:]:
            state = tensor_step(state, CoreState(k, p, {s: 1}))
        union = set().union(*(s.blocks for s in chain))
        assert state.is_empty() == (len(union) == k)


def test_symmetric_step_matches_pairwise_on_uniform_states():
    k, p = 4, 2
    base = [3, 1, 2, 5]
    explicit = CoreState(
        k, p, {S(c): base[d] for d in range(k) for c in itertools.combinations(range(1, k + 1), d)}
    )
    out = symmetric_step(base, base, k, p)
    assert tensor_step(explicit, explicit).per_size() == {d: m for d, m in enumerate(out) if m}


def test_growth_rows_and_errors():
    est = growth(PartitionPair(6, 2), 2, m_max=4, target=7)
    rows = list(est.rows())
    assert rows[0] == {"m": 1, "c": "15", "ratio": None, "root": 15.0}
    assert rows[1]["ratio"] == "43/5"
    assert est.relative_errors()[0] == Fraction(43, 5) / 7 - 1


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("dims", [(0,), (1,), (0, 2), (1, 1), (0, 1, 2)])
def test_coefficient_formula_simple(p, dims):
    classes = [S(range(1, d + 1)) if d else EMPTY_SIGNATURE for d in dims]
    # distinct letters are needed; shift blocks to make them distinct
    classes = [SummandSignature(c.d, tuple(b + 10 * i for b in c.blocks)) for i, c in enumerate(classes)]
    for m in range(len(dims), 7):
        assert coefficient_formula(dims, m, p) == coefficient_by_iteration(classes, m, p)


def test_coefficient_formula_empty_word():
    assert coefficient_formula([], 0, 2) == 1
    assert coefficient_formula([1], 0, 2) == 0
