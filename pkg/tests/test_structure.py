import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from torusnormal import linalg
from torusnormal.rootsystem import RootSystem, fundamental_weight, weight_set, weyl_group_arrays
from torusnormal.saturation import VectorSet, is_hereditarily_normal
from torusnormal.structure import (
    halfcoord_classes, half_spin_set, is_unimodular, primitive_subsets, structural_hn_check, structure_checks,
    subset_determinants, subsets_with_det, volume_profile)

SIGNS4 = VectorSet.of(itertools.product((1, -1), repeat=4))
HADAMARD = [(1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)]


def doubled(fam, n, k):
    rs = RootSystem(fam, n)
    return rs, VectorSet.of(weight_set(rs, fundamental_weight(rs, k)).scaled_members)


def test_profile_of_sign_vectors():
    p = volume_profile(SIGNS4)
    assert p.m == 8 and p.ratios == {1, 2} and set(p.values) == {8, 16}
    assert not p.is_unimodular


def test_profiles_of_half_spin_sets():
    p5 = volume_profile(doubled("D", 5, 5)[1])
    assert p5.m == 16 and set(p5.values) == {16, 32, 48}
    assert p5.counts[16] and p5.counts[48]
    p6 = volume_profile(doubled("D", 6, 6)[1])
    assert p6.m == 64 and p6.ratios == {1, 2}


def test_profile_matches_direct_determinants():
    rng = random.Random(3)
    _, vs = doubled("D", 5, 5)
    idx, dets = subset_determinants(vs)
    for r in rng.sample(range(len(idx)), 200):
        rows = [vs.vectors[i] for i in idx[r]]
        assert abs(linalg.det(rows)) == abs(int(dets[r]))


def test_profile_of_lower_rank_set_uses_its_span():
    vs = VectorSet.of([(1, 1, 0), (1, -1, 0), (2, 0, 0)])
    p = volume_profile(vs)
    assert p.rank == 2
    assert set(p.values) == {2}


def test_unimodular_examples():
    for n in (2, 3, 5):
        axes = [tuple(s * int(i == j) for j in range(n)) for i in range(n) for s in (1, -1)]
        assert is_unimodular(VectorSet.of(axes))
    assert is_unimodular(VectorSet.of(itertools.product((1, -1), repeat=3)))
    assert not is_unimodular(SIGNS4)


def test_primitive_subsets_and_determinant_queries():
    axes = VectorSet.of([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert sorted(primitive_subsets(axes)) == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert len(subsets_with_det(axes, 2, {1})) == 4
    assert subsets_with_det(axes, 3, {1}) == []
    with pytest.raises(ValueError):
        list(primitive_subsets(VectorSet.of([(1, 0), (0, 2), (1, 3)])))


def test_halfcoord_classes_of_sign_vectors():
    rep = halfcoord_classes(SIGNS4, HADAMARD)
    assert not rep.menu_violations and not rep.conflicting_pairs
    for c in rep.classes:
        assert c.half_support in (frozenset(), frozenset({0, 1, 2, 3}))
        assert tuple(sum(x * b[k] for x, b in zip(c.coefficients, HADAMARD)) for k in range(4)) == SIGNS4.vectors[c.index]


def test_halfcoord_classes_small_example():
    vs = VectorSet.of([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)])
    rep = halfcoord_classes(vs, [(1, 1), (1, -1)])
    by_vec = {vs.vectors[c.index]: c for c in rep.classes}
    assert by_vec[(1, 0)].half_support == {0, 1}
    assert by_vec[(1, 0)].coefficients == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        halfcoord_classes(vs, [(1, 0), (0, 1)])


def test_halfcoord_classes_rank6_supports_coincide():
    _, vs = doubled("D", 6, 6)
    idx, dets = subset_determinants(vs)
    rows = idx[np.abs(dets) == 128]
    for r in rows[:: max(1, len(rows) // 20)]:
        rep = halfcoord_classes(vs, [vs.vectors[i] for i in r])
        assert not rep.conflicting_pairs and not rep.menu_violations


def _check_exchanges(vs, cert):
    """Each recorded element maps the set onto itself and swaps the recorded lines."""
    vecs = set(vs.vectors)
    for rep, ex in zip(cert.representatives, cert.exchanges):
        lines = [frozenset({vs.vectors[i], tuple(-x for x in vs.vectors[i])}) for i in rep]
        for (a, b), (src, sign) in ex.items():
            act = lambda v: tuple(s * v[j] for j, s in zip(src, sign))
            assert {act(v) for v in vecs} == vecs
            img = [frozenset(act(v) for v in line) for line in lines]
            assert img[a] == lines[b] and img[b] == lines[a]
            assert set(img) == set(lines)


@pytest.mark.parametrize("fam,n,k,bases", [
    ("B", 4, 4, 32), ("C", 4, 2, 48), ("D", 4, 2, 48), ("D", 6, 6, 1024), ("D", 6, 5, 1024)])
def test_structural_certificates(fam, n, k, bases):
    rs, vs = doubled(fam, n, k)
    cert = structural_hn_check(vs, weyl_group_arrays(rs))
    assert cert is not None and cert.bases_checked == bases
    _check_exchanges(vs, cert)


def test_structural_check_declines():
    rs, vs = doubled("D", 5, 5)
    assert structural_hn_check(vs, weyl_group_arrays(rs)) is None
    # sign vectors satisfy the profile condition, but the trivial group has no exchanges
    from torusnormal.rootsystem import SignedPermutation
    assert structural_hn_check(SIGNS4, [SignedPermutation((0, 1, 2, 3))]) is None


def test_structural_and_exhaustive_agree_on_b4():
    rs, vs = doubled("B", 4, 4)
    assert is_hereditarily_normal(vs, "exhaustive", weyl_group_arrays(rs)).normal


def test_half_spin_sets():
    assert len(half_spin_set(5)) == 16 and len(half_spin_set(6, 1)) == 32
    assert all(v.count(-1) % 2 == 1 for v in half_spin_set(5, 1).vectors)


def test_structure_checks_all_pass():
    results = structure_checks()
    assert len(results) == 12
    failed = [r for r in results if not r.passed]
    assert not failed, failed
