import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from torusnormal.rootsystem import (
    RootSystem, SignedPermutation, Weight, dominant_members, dominant_rep, dual_weight, fundamental_weight,
    fundamental_weights, group_closure, in_root_lattice, in_weight_set, is_dominant, precedes, shift_B, shift_CD,
    signed_stabilizer, simple_reflections, simple_roots, table_name, weight_set, weyl_elements, weyl_group_arrays,
    weyl_orbit)


def W(*coords):
    return Weight.from_coords(coords)


def test_weight_parsing():
    assert Weight.parse("3/2,1/2") == Weight((3, 1))
    assert Weight.parse("d2:3,1") == Weight((3, 1))
    assert str(Weight((3, -1))) == "(3/2,-1/2)"
    with pytest.raises(ValueError):
        Weight.parse("1/3,0")


def test_rank_bounds():
    with pytest.raises(ValueError):
        RootSystem("C", 2)
    with pytest.raises(ValueError):
        RootSystem("A", 3)


def test_simple_roots():
    assert simple_roots(RootSystem("B", 2)) == [W(1, -1), W(0, 1)]
    assert simple_roots(RootSystem("C", 3)) == [W(1, -1, 0), W(0, 1, -1), W(0, 0, 2)]
    assert simple_roots(RootSystem("D", 4)) == [W(1, -1, 0, 0), W(0, 1, -1, 0), W(0, 0, 1, -1), W(0, 0, 1, 1)]


@pytest.mark.parametrize("fam,n", [("B", 3), ("C", 4), ("D", 5)])
def test_fundamental_weights_are_dual_to_coroots(fam, n):
    rs = RootSystem(fam, n)
    for i, a in enumerate(simple_roots(rs)):
        aa = sum(x * x for x in a.doubled)
        for j, p in enumerate(fundamental_weights(rs)):
            pairing = 2 * sum(x * y for x, y in zip(p.doubled, a.doubled))
            assert pairing == (aa if i == j else 0)


def test_root_lattice_membership():
    assert in_root_lattice(RootSystem("B", 2), W(1, 0))
    assert not in_root_lattice(RootSystem("C", 3), W(1, 0, 0))
    assert in_root_lattice(RootSystem("D", 4), W(1, 1, 0, 0))


def test_dominance():
    assert is_dominant(RootSystem("B", 3), W(2, 1, 0))
    assert is_dominant(RootSystem("D", 4), Weight((1, 1, 1, -1)))
    assert not is_dominant(RootSystem("C", 3), W(1, 2, 0))


def test_dominant_rep_examples():
    assert dominant_rep(RootSystem("B", 2), W(-2, 1)) == W(2, 1)
    assert dominant_rep(RootSystem("D", 4), W(-1, -2, 3, 4)) == W(4, 3, 2, 1)
    assert dominant_rep(RootSystem("D", 4), W(-1, 2, 3, 4)) == W(4, 3, 2, -1)


def test_orbits():
    assert weyl_orbit(RootSystem("B", 2), W(1, 0)) == {W(1, 0), W(-1, 0), W(0, 1), W(0, -1)}
    half = weyl_orbit(RootSystem("D", 4), Weight((1, 1, 1, 1)))
    assert len(half) == 8 and all(sum(x < 0 for x in w.doubled) % 2 == 0 for w in half)
    assert len(weyl_orbit(RootSystem("C", 3), W(1, 1, 0))) == 12


def test_weyl_group_orders():
    for fam, n in [("B", 2), ("B", 3), ("C", 3), ("D", 4), ("D", 5)]:
        rs = RootSystem(fam, n)
        assert len(weyl_elements(rs)) == rs.weyl_order == len(weyl_group_arrays(rs))


def test_in_weight_set_examples():
    assert in_weight_set(RootSystem("B", 3), W(2, 1, 0), W(1, 1, 0))
    assert in_weight_set(RootSystem("B", 2), W(2, 0), W(1, 0))
    assert not in_weight_set(RootSystem("C", 3), W(1, 1, 0), W(1, 0, 0))


def test_weight_set_examples():
    b2 = weight_set(RootSystem("B", 2), fundamental_weight(RootSystem("B", 2), 2))
    assert len(b2) == 4 and b2.denominator == 2
    assert set(b2.integer_members) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    b21 = weight_set(RootSystem("B", 2), W(1, 0))
    assert set(b21.integer_members) == {(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)}
    d6 = weight_set(RootSystem("D", 6), fundamental_weight(RootSystem("D", 6), 6))
    assert len(d6) == 32
    assert all(sum(x < 0 for x in v) % 2 == 0 and all(abs(x) == 1 for x in v) for v in d6.integer_members)
    assert len(weight_set(RootSystem("C", 3), W(1, 1, 0))) == 13


def brute_weight_set(rs, lam):
    """Points of the weight lattice in the hull of the orbit, congruent to lam mod roots."""
    orbit = weyl_orbit(rs, lam)
    top = max(abs(x) for x in lam.doubled)
    out = set()
    for d in itertools.product(range(-top, top + 1), repeat=rs.n):
        mu = Weight(d)
        diff = Weight(tuple(a - b for a, b in zip(lam.doubled, d)))
        if not in_root_lattice(rs, diff):
            continue
        # hull test: the dominant representative is below lam in the dominance order
        if precedes(rs, dominant_rep(rs, mu), lam):
            out.add(d)
    return out


@pytest.mark.parametrize("fam,n,coords", [
    ("B", 2, (2, 0)), ("B", 3, (1, 1, 0)), ("B", 3, ("3/2", "1/2", "1/2")),
    ("C", 3, (2, 1, 0)), ("C", 3, (1, 1, 1)), ("D", 4, (2, 0, 0, 0)), ("D", 4, ("3/2", "1/2", "1/2", "-1/2")),
])
def test_weight_set_matches_box_enumeration(fam, n, coords):
    rs = RootSystem(fam, n)
    lam = Weight.from_coords(coords)
    assert set(weight_set(rs, lam).scaled_members) == brute_weight_set(rs, lam)


def test_dual_weights():
    for n in (2, 3, 4):
        rs = RootSystem("B", n)
        for k in range(1, n + 1):
            assert dual_weight(rs, fundamental_weight(rs, k)) == fundamental_weight(rs, k)
    d5 = RootSystem("D", 5)
    assert dual_weight(d5, fundamental_weight(d5, 4)) == fundamental_weight(d5, 5)
    d6 = RootSystem("D", 6)
    assert dual_weight(d6, fundamental_weight(d6, 6)) == fundamental_weight(d6, 6)


def test_shifts():
    assert shift_B(W(2, 0), 1) == W(1, 0)
    assert shift_B(Weight((3, 1)), 1) == Weight((1, 1))
    assert shift_B(W(1, 1), 2) == W(1, 0)
    assert shift_CD(W(2, 1, 0), 1, 3) == W(1, 1, 1)
    assert shift_CD(W(2, 0, 0), 1, 2) == W(1, 1, 0)
    assert shift_CD(W(3, -1, 0), 1, 2) == W(2, 0, 0)
    with pytest.raises(ValueError):
        shift_CD(W(1, 0, 0), 1, 2)
    rs = RootSystem("C", 3)
    assert in_weight_set(rs, W(2, 1, 0), shift_CD(W(2, 1, 0), 1, 3))


def test_table_names():
    rs = RootSystem("B", 2)
    assert table_name(rs, W(1, 1)) == "2pi_2"
    assert table_name(RootSystem("D", 4), Weight((1, 1, 1, -1))) == "pi_3"


def test_signed_permutation_json_and_compose():
    g = SignedPermutation((1, 2, 0), frozenset({0}))
    h = SignedPermutation((0, 2, 1), frozenset({2}))
    assert SignedPermutation.from_json(g.to_json()) == g
    v = (1, 2, 3)
    assert g.compose(h)(v) == g(h(v))


def test_signed_stabilizer_of_weight_sets_is_the_signed_group():
    half6 = weight_set(RootSystem("D", 6), fundamental_weight(RootSystem("D", 6), 6)).integer_members
    # even-parity sign vectors: the full D6 Weyl group
    assert len(signed_stabilizer(half6)) == RootSystem("D", 6).weyl_order
    square = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    assert len(signed_stabilizer(square)) == 8
    assert signed_stabilizer([(1,)]) is None


# ---------------------------------------------------------------------------
# properties

FAMS = [("B", 2), ("B", 3), ("C", 3), ("D", 4), ("D", 5)]


def random_dominant(rng, rs, top=5):
    while True:
        half = rs.family != "C" and rng.random() < 0.4
        vals = sorted((rng.randint(0, top) * 2 + (1 if half else 0) for _ in range(rs.n)), reverse=True)
        if rs.family == "D" and rng.random() < 0.5:
            vals[-1] = -vals[-1]
        w = Weight(tuple(vals))
        if any(vals) and is_dominant(rs, w):
            return w


@given(st.sampled_from(FAMS), st.integers(0, 10 ** 6))
@settings(max_examples=200, deadline=None)
def test_weight_set_membership_is_weyl_invariant(fam_n, seed):
    rng = random.Random(seed)
    rs = RootSystem(*fam_n)
    lam = random_dominant(rng, rs, 3)
    mu = Weight(tuple(rng.randint(-6, 6) for _ in range(rs.n)))
    elems = weyl_elements(rs)
    g = elems[rng.randrange(len(elems))]
    assert in_weight_set(rs, lam, mu) == in_weight_set(rs, lam, Weight(g(mu.doubled)))
    rep = dominant_rep(rs, mu)
    assert is_dominant(rs, rep)
    assert dominant_rep(rs, rep) == rep
    assert dominant_rep(rs, Weight(g(mu.doubled))) == rep


@given(st.sampled_from(FAMS), st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_weight_sets_are_nested(fam_n, seed):
    rng = random.Random(seed)
    rs = RootSystem(*fam_n)
    lam = random_dominant(rng, rs, 2)
    members = dominant_members(rs, lam)
    lower = members[rng.randrange(len(members))]
    if not any(lower.doubled):
        return
    assert set(weight_set(rs, lower).scaled_members) <= set(weight_set(rs, lam).scaled_members)
