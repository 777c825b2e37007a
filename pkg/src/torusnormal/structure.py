"""Determinant structure of vector sets.

Unimodular and almost unimodular sets, the half-coordinate classes of a
double-volume basis, the ratio-2 structural criterion for hereditary
normality, and the exhaustive determinant sweeps over the rank-5 and rank-6
half-spin weight sets.

Determinants are taken after projecting onto the pivot coordinates of the
set (the standard coordinates when the set has full rank), so volumes are
reported on the same scale as the input vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterator, Optional, Sequence

import numpy as np

from . import linalg
from .linalg import IntVector
from .saturation import SemigroupMembership, VectorSet, permutation_action


@dataclass(frozen=True)
class VolumeProfile:
    """Absolute values of all nonzero maximal minors of a set.

    ``m`` is the smallest nonzero absolute determinant.  When every other
    value is a multiple of ``m`` the set is almost unimodular and ``ratios``
    is the set ``K`` of quotients; otherwise ``ratios`` is empty.
    """

    rank: int
    m: int
    values: frozenset
    counts: dict = field(compare=False, default_factory=dict)

    @property
    def almost_unimodular(self) -> bool:
        return self.m > 0 and all(v % self.m == 0 for v in self.values)

    @property
    def ratios(self) -> frozenset:
        if not self.almost_unimodular:
            return frozenset()
        return frozenset(v // self.m for v in self.values)

    @property
    def is_unimodular(self) -> bool:
        return len(self.values) <= 1


def _projection(m: VectorSet) -> tuple[np.ndarray, int]:
    vecs = list(m.vectors)
    if not vecs:
        return np.zeros((0, 0), dtype=np.int64), 0
    cols = linalg.pivot_columns(vecs)
    arr = np.array([[v[c] for c in cols] for v in vecs], dtype=object)
    if all(abs(int(x)) < 2 ** 31 for x in arr.flat):
        arr = arr.astype(np.int64)
    return arr, len(cols)


def combinations_array(n: int, k: int) -> np.ndarray:
    """All k-subsets of ``range(n)`` in lexicographic order, one per row."""
    count = comb(n, k)
    flat = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), k)),
                       dtype=np.int64, count=count * k)
    return flat.reshape(count, k)


@lru_cache(maxsize=8)
def _sweep_cached(vectors: tuple, dim: int):
    m = VectorSet(vectors, dim)
    proj, d = _projection(m)
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64), np.ones(1, dtype=np.int64), 0
    idx = combinations_array(len(vectors), d)
    dets = np.empty(len(idx), dtype=object if proj.dtype == object else np.int64)
    step = 250_000
    for s in range(0, len(idx), step):
        part = idx[s:s + step]
        dets[s:s + step] = linalg.batch_det(proj[part])
    idx.setflags(write=False)
    dets.setflags(write=False)
    return idx, dets, d


def subset_determinants(m: VectorSet) -> tuple[np.ndarray, np.ndarray]:
    """``(subsets, dets)`` over every ``rank(m)``-subset, lexicographically."""
    idx, dets, _ = _sweep_cached(m.vectors, m.dim)
    return idx, dets


def volume_profile(m: VectorSet) -> VolumeProfile:
    idx, dets, d = _sweep_cached(m.vectors, m.dim)
    absd = np.abs(dets)
    nz = absd[absd != 0]
    if d == 0 or not len(nz):
        return VolumeProfile(d, 1 if d == 0 else 0, frozenset({1}) if d == 0 else frozenset())
    vals, cnt = np.unique(nz, return_counts=True)
    counts = {int(v): int(c) for v, c in zip(vals, cnt)}
    return VolumeProfile(d, int(vals.min()), frozenset(counts), counts)


def is_unimodular(m: VectorSet) -> bool:
    return volume_profile(m).is_unimodular


def primitive_subsets(m: VectorSet) -> Iterator[tuple[int, ...]]:
    """Rank-size subsets whose determinant has the minimal absolute value."""
    prof = volume_profile(m)
    if not prof.almost_unimodular:
        raise ValueError("the set is not almost unimodular")
    idx, dets = subset_determinants(m)
    for row in idx[np.abs(dets) == prof.m].tolist():
        yield tuple(row)


def subsets_with_det(m: VectorSet, size: int, targets) -> list[tuple[int, ...]]:
    """Subsets of the given size whose absolute determinant lies in ``targets``."""
    targets = {abs(int(t)) for t in targets}
    if size > len(m):
        raise ValueError("subset size exceeds the number of vectors")
    idx, dets, d = _sweep_cached(m.vectors, m.dim)
    if size != d:
        return [] if targets - {0} else [tuple(c) for c in itertools.combinations(range(len(m)), size)]
    mask = np.isin(np.abs(dets).astype(np.int64), sorted(targets))
    return [tuple(r) for r in idx[mask].tolist()]


# ---------------------------------------------------------------------------
# half-coordinate classes


@dataclass(frozen=True)
class HalfCoordClass:
    index: int
    coefficients: tuple[Fraction, ...]
    half_support: frozenset


@dataclass(frozen=True)
class HalfCoordReport:
    classes: tuple[HalfCoordClass, ...]
    menu_violations: tuple[int, ...]
    conflicting_pairs: tuple[tuple[int, int], ...]

    @property
    def supports(self) -> set[frozenset]:
        return {c.half_support for c in self.classes if c.half_support}


def halfcoord_classes(m: VectorSet, basis: Sequence[Sequence[int]]) -> HalfCoordReport:
    """Coordinates of every vector of ``m`` in a basis of twice the minimal volume.

    Collects, per vector, the positions holding ``+-1/2``.  Coefficients
    outside ``{0, +-1/2, +-1}`` and pairs of distinct nonempty half-supports
    are reported, not raised.
    """
    basis = [tuple(int(x) for x in b) for b in basis]
    prof = volume_profile(m)
    if linalg.rank(basis) != len(basis) or len(basis) != prof.rank:
        raise ValueError("basis must be linearly independent of full rank")
    if linalg.rank(list(m.vectors) + basis) != prof.rank:
        raise ValueError("basis does not span the set")
    cols = linalg.pivot_columns(list(m.vectors))
    vol = abs(linalg.det([[b[c] for c in cols] for b in basis]))
    if vol != 2 * prof.m:
        raise ValueError(f"basis volume {vol} is not twice the minimal volume {prof.m}")
    half = Fraction(1, 2)
    menu = {0, half, -half, 1, -1}
    classes, bad = [], []
    for i, v in enumerate(m.vectors):
        coeff = linalg.solve_in_basis(basis, v)
        if any(c not in menu for c in coeff):
            bad.append(i)
        s = frozenset(k for k, c in enumerate(coeff) if abs(c) == half)
        classes.append(HalfCoordClass(i, coeff, s))
    nonempty = [c for c in classes if c.half_support]
    conflicts = [(a.index, b.index) for a, b in itertools.combinations(nonempty, 2)
                 if a.half_support != b.half_support]
    return HalfCoordReport(tuple(classes), tuple(bad), tuple(conflicts))


# ---------------------------------------------------------------------------
# the ratio-2 structural criterion


@dataclass(frozen=True)
class StructuralCertificate:
    """Evidence that every double-volume basis admits all line exchanges.

    ``representatives`` lists one basis (vector indices) per group orbit of
    double-volume line sets; ``exchanges[r][(a, b)]`` is a group element,
    as ``(src, sign)`` lists, that permutes the lines of representative
    ``r`` and swaps its lines ``a`` and ``b``.
    """

    m: int
    rank: int
    bases_checked: int
    line_sets: int
    representatives: tuple[tuple[int, ...], ...]
    exchanges: tuple[dict, ...]


def _as_group(group):
    from .rootsystem import GroupArrays, group_arrays_from_generators

    if isinstance(group, GroupArrays):
        return group
    return group_arrays_from_generators(list(group))


def _mask(bits) -> int:
    out = 0
    for b in bits:
        out |= 1 << int(b)
    return out


def structural_hn_check(m: VectorSet, group) -> Optional[StructuralCertificate]:
    """Check the ratio-2 sufficient condition for hereditary normality.

    Requires (a) nonzero determinants only ``+-m`` and ``+-2m`` with ``2m``
    attained, (b) the group maps the set onto itself, and (c) for every basis
    of volume ``2m`` and every pair of its lines, a group element permuting
    those lines and exchanging the pair.  Condition (c) is invariant under
    the group, so it is tested on one basis per orbit of line sets; every
    basis is still enumerated.  Returns None when any condition fails.
    """
    prof = volume_profile(m)
    if not prof.almost_unimodular or not prof.ratios <= {1, 2} or 2 not in prof.ratios:
        return None
    ga = _as_group(group)
    try:
        perm = permutation_action(m, ga)
    except ValueError:
        return None
    vecs = list(m.vectors)
    lookup = {v: i for i, v in enumerate(vecs)}
    rep_line = [min(i, lookup.get(tuple(-x for x in v), i)) for i, v in enumerate(vecs)]
    line_ids = sorted(set(rep_line))
    line_of = np.array([line_ids.index(r) for r in rep_line], dtype=np.int64)
    pl = line_of[perm[:, line_ids]]  # action of each element on lines

    idx, dets = subset_determinants(m)
    bases = idx[np.abs(dets) == 2 * prof.m]
    line_sets = {}
    for row in bases.tolist():
        key = _mask(line_of[row])
        line_sets.setdefault(key, row)
    remaining = set(line_sets)
    reps, exchanges = [], []
    d = prof.rank
    while remaining:
        key = min(remaining)
        lines = [b for b in range(len(line_ids)) if key >> b & 1]
        imgs = pl[:, lines]
        img_masks = np.zeros(len(pl), dtype=object)
        for c in range(d):
            img_masks = img_masks | np.left_shift(1, imgs[:, c]).astype(object)
        orbit = set(img_masks.tolist())
        if not orbit <= set(line_sets):
            raise AssertionError("group image of a double-volume basis is not one")
        remaining -= orbit
        stab = np.nonzero(img_masks == key)[0]
        found = {}
        for a, b in itertools.combinations(range(d), 2):
            la, lb = lines[a], lines[b]
            hit = stab[(pl[stab, la] == lb) & (pl[stab, lb] == la)]
            if not len(hit):
                return None
            g = int(hit[0])
            found[(a, b)] = (ga.src[g].tolist(), ga.sign[g].tolist())
        reps.append(tuple(line_sets[key]))
        exchanges.append(found)
    return StructuralCertificate(prof.m, d, len(bases), len(line_sets), tuple(reps), tuple(exchanges))


# ---------------------------------------------------------------------------
# equivalence of subsets under a signed-permutation group


def _orbit_masks(m: VectorSet, group, subset: Sequence[int], lines: bool) -> set[int]:
    """Masks (over indices, or over lines) of all group images of ``subset``."""
    perm = permutation_action(m, _as_group(group))
    key = _line_key(m) if lines else np.arange(len(m))
    imgs = key[perm[:, list(subset)]]
    out = set()
    for row in imgs.tolist():
        out.add(_mask(row))
    return out


def _line_key(m: VectorSet) -> np.ndarray:
    lookup = {v: i for i, v in enumerate(m.vectors)}
    return np.array([min(i, lookup.get(tuple(-x for x in v), i)) for i, v in enumerate(m.vectors)], dtype=np.int64)


def equivalent_to(m: VectorSet, group, subsets, model: Sequence[Sequence[int]], per_vector_sign=False):
    """Split ``subsets`` of ``m`` into those equivalent to ``model`` and the rest.

    Two subsets are equivalent when a group element maps one onto the
    other (as sets of lines when ``per_vector_sign``).  ``model`` rows must
    lie in ``m`` up to sign.
    """
    lookup = {v: i for i, v in enumerate(m.vectors)}
    idx = []
    for r in model:
        r = tuple(int(x) for x in r)
        j = lookup.get(r)
        if j is None and per_vector_sign:
            j = lookup.get(tuple(-x for x in r))
        if j is None:
            raise ValueError(f"model row {r} is not in the set")
        idx.append(j)
    orbit = _orbit_masks(m, group, idx, per_vector_sign)
    key = _line_key(m) if per_vector_sign else np.arange(len(m))
    good, bad = [], []
    for s in subsets:
        (good if _mask(key[list(s)]) in orbit else bad).append(tuple(s))
    return good, bad


# ---------------------------------------------------------------------------
# exhaustive sweeps over the rank-5 and rank-6 half-spin sets


def half_spin_set(n: int, parity: int = 0) -> VectorSet:
    """All ``(+-1)^n`` with a number of minus signs of the given parity."""
    out = [v for v in itertools.product((1, -1), repeat=n) if v.count(-1) % 2 == parity]
    out.sort(reverse=True)
    return VectorSet.of(out)


def ordered_det_table(m: VectorSet) -> np.ndarray:
    """``T[i_1, ..., i_d] = det(v_{i_1}, ..., v_{i_d})`` for every index tuple."""
    proj, d = _projection(m)
    n = len(m)
    idx, dets = subset_determinants(m)
    table = np.zeros((n,) * d, dtype=np.int64)
    for p in itertools.permutations(range(d)):
        sgn = linalg.det([[int(i == j) for j in p] for i in range(d)])
        table[tuple(idx[:, list(p)].T)] = sgn * dets.astype(np.int64)
    return table


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


_TRIPLE_MODEL = ((1, 1, 1, 1, 1), (-1, -1, 1, 1, 1), (-1, 1, -1, 1, 1), (-1, 1, 1, -1, 1), (-1, 1, 1, 1, -1))
_RANK6_MODEL = tuple(tuple(-1 if j == i else 1 for j in range(6)) for i in range(6))
_COMPLETION_IDENTITIES = (
    ((-1, 1, 1, 1, 1), [(1, (1, 1, 1, -1, -1)), (1, (-1, -1, 1, 1, 1)), (1, (-1, 1, -1, 1, 1))]),
    ((-1, 1, 1, 1, 1), [(2, (1, -1, -1, -1, -1)), (1, (1, 1, 1, 1, 1)), (1, (-1, -1, 1, 1, 1)),
                        (1, (-1, 1, -1, 1, 1)), (1, (-1, 1, 1, -1, 1)), (1, (-1, 1, 1, 1, -1))]),
    ((-1, 1, 1, 1, 1), [(1, (-1, -1, -1, -1, 1)), (1, (1, 1, 1, 1, 1)), (1, (-1, 1, 1, 1, -1))]),
)


def _rank5_checks() -> list[CheckResult]:
    from .rootsystem import RootSystem, weyl_group_arrays

    m5 = half_spin_set(5)
    vecs = np.array(m5.vectors, dtype=np.int64)
    n = len(m5)
    unit = 16
    idx, dets = subset_determinants(m5)
    absd = np.abs(dets)
    out = []

    prof = volume_profile(m5)
    out.append(CheckResult(
        "rank-5 volume profile", prof.m == unit and prof.values == {16, 32, 48},
        f"m={prof.m}, values={sorted(prof.values)}"))

    # a pair with scalar product -3 caps the volume below 3m
    gram = vecs @ vecs.T
    obtuse = np.zeros(len(idx), dtype=bool)
    for a, b in itertools.combinations(range(5), 2):
        obtuse |= gram[idx[:, a], idx[:, b]] == -3
    worst = int(absd[obtuse].max()) if obtuse.any() else 0
    out.append(CheckResult("obtuse pair bounds the volume", worst < 3 * unit,
                           f"{int(obtuse.sum())} subsets with an obtuse pair, max |det| {worst}"))

    triple = [tuple(r) for r in idx[absd == 3 * unit].tolist()]
    good, bad = equivalent_to(m5, weyl_group_arrays(RootSystem("D", 5)), triple, _TRIPLE_MODEL)
    out.append(CheckResult("triple-volume subsets are all equivalent", bool(triple) and not bad,
                           f"{len(triple)} subsets of volume 3m, {len(bad)} inequivalent"))

    shared = 0
    tset = set(triple)
    for t in triple:
        for drop in range(5):
            rest = t[:drop] + t[drop + 1:]
            for j in range(n):
                if j in t:
                    continue
                if tuple(sorted(rest + (j,))) in tset:
                    shared += 1
    out.append(CheckResult("no two triple-volume subsets share four vectors", shared == 0,
                           f"{shared} sharing pairs"))

    # six vectors whose nonzero 5-minors all exceed m have every minor equal to 2m
    pos = {tuple(r): k for k, r in enumerate(idx.tolist())}
    viol = 0
    considered = 0
    for six in itertools.combinations(range(n), 6):
        vals = [abs(int(dets[pos[six[:k] + six[k + 1:]]])) for k in range(6)]
        nz = [v for v in vals if v]
        if nz and min(nz) > unit:
            considered += 1
            if any(v != 2 * unit for v in nz):
                viol += 1
    out.append(CheckResult("six vectors without a primitive minor have only double minors", viol == 0,
                           f"{considered} qualifying 6-subsets, {viol} violations"))

    table = ordered_det_table(m5)
    # det(w1..w5) and det(w5,w2,w3,w4,w6) equal to +-2m with opposite signs, det(w1..w4,w6) = +-m
    found = 0
    ar = np.arange(n)
    w1, w5, w6 = np.meshgrid(ar, ar, ar, indexing="ij")
    w1, w5, w6 = w1.ravel(), w5.ravel(), w6.ravel()
    for w2, w3, w4 in itertools.combinations(range(n), 3):
        a = table[w1, w2, w3, w4, w5]
        b = table[w5, w2, w3, w4, w6]
        c = table[w1, w2, w3, w4, w6]
        ok = (np.abs(a) == 2 * unit) & (np.abs(b) == 2 * unit) & (a * b < 0) & (np.abs(c) == unit)
        found += int(ok.sum())
    out.append(CheckResult("no opposite double-volume exchange through a primitive minor", found == 0,
                           f"{found} tuples"))

    found = 0
    w5, w6 = np.meshgrid(ar, ar, indexing="ij")
    w5, w6 = w5.ravel(), w6.ravel()
    for w1, w2, w3, w4 in itertools.combinations(range(n), 4):
        a = table[w1, w2, w3, w4, w5]
        b = table[w1, w2, w3, w4, w6]
        # reordering w1..w4 flips both signs together
        ok = ((a == -2 * unit) & (b == -3 * unit)) | ((a == 2 * unit) & (b == 3 * unit))
        found += int(ok.sum())
    out.append(CheckResult("no double-volume minor beside a same-sign triple-volume minor", found == 0,
                           f"{found} tuples"))

    ident_ok = all(
        tuple(sum(c * v[k] for c, v in terms) for k in range(5)) == target
        for target, terms in _COMPLETION_IDENTITIES)
    in_set = all(v in set(m5.vectors) for _, terms in _COMPLETION_IDENTITIES for _, v in terms)
    out.append(CheckResult("completion identities", ident_ok and in_set,
                           "three explicit nonnegative combinations"))

    bad6 = []
    for v6 in m5.vectors:
        if v6 in _TRIPLE_MODEL:
            continue
        if SemigroupMembership(list(_TRIPLE_MODEL) + [v6]).find((-1, 1, 1, 1, 1)) is None:
            bad6.append(v6)
    out.append(CheckResult("every completion of the triple-volume set represents (-1,1,1,1,1)",
                           not bad6, f"{n - 5} completions, {len(bad6)} failures"))
    return out


def _rank6_checks() -> list[CheckResult]:
    from .rootsystem import RootSystem, weyl_group_arrays

    out = []
    for parity in (0, 1):
        prof = volume_profile(half_spin_set(6, parity))
        out.append(CheckResult(
            f"rank-6 volume profile ({'even' if parity == 0 else 'odd'} sign count)",
            prof.m == 64 and prof.values == {64, 128},
            f"m={prof.m}, values={sorted(prof.values)}"))
    # the model rows have one minus sign each, so they live in the odd set
    m6 = half_spin_set(6, 1)
    idx, dets = subset_determinants(m6)
    hits = [tuple(r) for r in idx[np.abs(dets) == 128].tolist()]
    good, bad = equivalent_to(m6, weyl_group_arrays(RootSystem("D", 6)), hits, _RANK6_MODEL,
                              per_vector_sign=True)
    out.append(CheckResult("rank-6 double-volume subsets are all equivalent", bool(hits) and not bad,
                           f"{len(hits)} subsets of volume 128, {len(bad)} inequivalent"))
    return out


def structure_checks() -> list[CheckResult]:
    """Exhaustive determinant checks over the rank-5 and rank-6 half-spin sets."""
    return _rank5_checks() + _rank6_checks()
