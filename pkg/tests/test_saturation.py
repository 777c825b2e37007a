import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import apply_matrix, brute_force_representable, brute_force_saturated, random_unimodular
from torusnormal.rootsystem import RootSystem, Weight, fundamental_weight, weight_set, weyl_group_arrays
from torusnormal.saturation import (
    BudgetExceeded, StrategyNotApplicable, VectorSet, dump_vector_set, is_hereditarily_normal, is_saturated,
    iter_subsets, load_vector_set, minimal_nss, minimal_nss_search, nonneg_integer_membership, permutation_action)

small_vec = lambda d: st.lists(st.integers(-2, 2), min_size=d, max_size=d).map(tuple)
small_set = st.integers(1, 3).flatmap(lambda d: st.lists(small_vec(d), min_size=1, max_size=5))


def scaled(fam, n, k):
    rs = RootSystem(fam, n)
    return rs, VectorSet.of(weight_set(rs, fundamental_weight(rs, k)).integer_members)


def check_witness(vecs, w):
    """The witness claims, re-derived directly."""
    dim = len(w.v0)
    assert any(w.v0)
    assert all(0 <= q < 1 for q in w.q)
    assert tuple(sum(q * vecs[i][k] for q, i in zip(w.q, w.indep_indices)) for k in range(dim)) == w.v0
    assert tuple(sum(z * vecs[i][k] for z, i in zip(w.z, w.set_indices)) for k in range(dim)) == w.v0
    assert not brute_force_representable([vecs[i] for i in w.set_indices], w.v0)


def test_vector_set_normalisation():
    vs = VectorSet.of([(1, 0), (0, 0), (1, 0), (0, 1)])
    assert vs.vectors == ((1, 0), (0, 1))
    assert vs.dropped_zero and vs.duplicates == 1
    with pytest.raises(ValueError):
        VectorSet.of([(1, 0), (1, 0, 0)])


def test_vector_set_file_round_trip(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(dump_vector_set([(1, 1), (1, -1)], 2))
    vs, den = load_vector_set(p)
    assert vs.vectors == ((1, 1), (1, -1)) and den == 2
    p.write_text(json.dumps({"denominator": 3, "vectors": [[1]]}))
    with pytest.raises(ValueError):
        load_vector_set(p)
    p.write_text(json.dumps({"vectors": [[1, "a"]]}))
    with pytest.raises(ValueError):
        load_vector_set(p)


def test_membership_examples():
    assert nonneg_integer_membership([(1, 0), (0, 1)], (3, 0)) == (3, 0)
    assert nonneg_integer_membership([(2, 0), (1, 1), (0, 1)], (1, 0)) is None
    rows = [(2, 1, 0), (0, 2, 1), (1, 0, 2), (1, 2, 0)]
    assert nonneg_integer_membership(rows, (1, 1, 1)) is None


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(st.lists(small_vec(d), min_size=1, max_size=4), small_vec(d))))
@settings(max_examples=200, deadline=None)
def test_membership_matches_reachability(case):
    gens, v = case
    got = nonneg_integer_membership(gens, v)
    assert (got is not None) == brute_force_representable(gens, v)
    if got is not None:
        assert all(c >= 0 for c in got)
        assert tuple(sum(c * g[k] for c, g in zip(got, gens)) for k in range(len(v))) == v


def test_membership_with_a_line_in_the_cone():
    gens = [(1, 0), (-1, 0), (0, 2), (1, 1)]
    assert nonneg_integer_membership(gens, (-5, 1)) is not None
    assert nonneg_integer_membership([(1, 0), (-1, 0), (0, 2)], (3, 1)) is None


def test_is_saturated_examples():
    assert is_saturated([(1, 0), (0, 1)]) is None
    w = is_saturated([(2, 0), (1, 1), (0, 1)])
    assert w is not None and w.v0 == (1, 0)
    check_witness([(2, 0), (1, 1), (0, 1)], w)
    square = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
    assert is_saturated(square) is None


@given(small_set)
@settings(max_examples=500, deadline=None)
def test_is_saturated_agrees_with_brute_force(vecs):
    vs = VectorSet.of(vecs)
    w = is_saturated(vs) if len(vs) else None
    assert (w is None) == brute_force_saturated(vecs)
    if w is not None:
        check_witness(vs.vectors, w)


@given(small_set, st.integers(0, 10 ** 6))
@settings(max_examples=200, deadline=None)
def test_saturation_invariances(vecs, seed):
    rng = random.Random(seed)
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return
    base = is_saturated(vecs) is None
    assert (is_saturated([tuple(-x for x in v) for v in vecs]) is None) == base
    u = random_unimodular(rng, len(vecs[0]))
    assert (is_saturated([apply_matrix(u, v) for v in vecs]) is None) == base
    assert (is_saturated([tuple(v) + (0, 0) for v in vecs]) is None) == base
    c = rng.randint(2, 5)
    assert (is_saturated([tuple(c * x for x in v) for v in vecs]) is None) == base


def test_minimal_nss_examples():
    sub = minimal_nss(VectorSet.of([(2, 0), (1, 1), (0, 1)]))
    assert sub is not None and set(sub.vectors) == {(2, 0), (1, 1), (0, 1)}
    assert minimal_nss(VectorSet.of([(1, 2, 0), (0, 1, 5), (3, 0, 1)])) is None


def test_subset_orbits_cover_every_subset():
    rs, vs = scaled("B", 3, 3)
    act = permutation_action(vs, weyl_group_arrays(rs))
    n = len(vs)
    seen = set()
    for sub in iter_subsets(vs, weyl_group_arrays(rs)):
        orbit = {tuple(sorted(int(g[i]) for i in sub)) for g in act}
        assert tuple(sub) == min(orbit)
        assert not orbit & seen
        seen |= orbit
    assert len(seen) == 2 ** n


def test_permutation_action_rejects_non_symmetries():
    vs = VectorSet.of([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(ValueError):
        permutation_action(vs, weyl_group_arrays(RootSystem("B", 2)))


@pytest.mark.parametrize("fam,n,k", [("B", 2, 1), ("B", 3, 1), ("C", 3, 1), ("D", 4, 1), ("B", 3, 3), ("C", 3, 2)])
def test_unimodular_sets(fam, n, k):
    rs, vs = scaled(fam, n, k)
    v = is_hereditarily_normal(vs, "unimodular")
    assert v.normal and v.method == "Unimodular"


@pytest.mark.parametrize("fam,n,k,size", [("B", 2, 2, 4), ("B", 3, 3, 8), ("C", 3, 2, 12)])
def test_small_sets_are_normal_by_exhaustion(fam, n, k, size):
    rs, vs = scaled(fam, n, k)
    assert len(vs) == size
    v = is_hereditarily_normal(vs, "exhaustive", weyl_group_arrays(rs))
    assert v.normal and v.method == "Exhaustive"
    # the unreduced search agrees
    assert is_hereditarily_normal(vs, "exhaustive").normal


def test_b2_double_weight_is_normal():
    rs = RootSystem("B", 2)
    vs = VectorSet.of(weight_set(rs, Weight((2, 2))).integer_members)
    assert len(vs) == 8
    assert is_hereditarily_normal(vs, "exhaustive", weyl_group_arrays(rs)).normal
    assert is_hereditarily_normal(vs, "exhaustive").normal


@pytest.mark.parametrize("fam,n,k", [("B", 3, 2), ("C", 3, 3), ("B", 5, 5)])
def test_negative_sets_yield_checked_witnesses(fam, n, k):
    rs, vs = scaled(fam, n, k)
    v = is_hereditarily_normal(vs, "auto", weyl_group_arrays(rs))
    assert not v.normal
    check_witness(vs.vectors, v.witness)


def test_symmetry_reduced_and_plain_searches_agree_on_first_size():
    rs, vs = scaled("C", 3, 3)
    plain, _, _ = minimal_nss_search(vs)
    reduced, _, _ = minimal_nss_search(vs, weyl_group_arrays(rs))
    assert len(plain) == len(reduced)


def test_strategy_errors_and_budget():
    rs, vs = scaled("D", 5, 5)
    with pytest.raises(StrategyNotApplicable):
        is_hereditarily_normal(vs, "unimodular")
    with pytest.raises(StrategyNotApplicable):
        is_hereditarily_normal(vs, "structural", weyl_group_arrays(rs))
    with pytest.raises(BudgetExceeded):
        is_hereditarily_normal(vs, "exhaustive", None, budget=50)
    with pytest.raises(ValueError):
        is_hereditarily_normal(vs, "fast")
