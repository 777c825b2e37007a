"""Saturation and hereditary normality of finite sets of integer vectors.

A set ``M`` is saturated when every lattice point of ``Z(M)`` inside the cone
``Q>=0(M)`` is a nonnegative integer combination of ``M``.  Non-saturation
is always witnessed by a point in the half-open parallelepiped of a
linearly independent subset, which is what :func:`is_saturated` scans.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import linalg
from .linalg import IntVector, LatticeBasis, RationalVector

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2 ** 24


class BudgetExceeded(RuntimeError):
    """The exhaustive search hit its subset budget before reaching a verdict."""

    def __init__(self, examined: int, budget: int):
        super().__init__(f"undecided: budget of {budget} subsets exceeded")
        self.examined = examined
        self.budget = budget


class StrategyNotApplicable(ValueError):
    """A requested hereditary-normality strategy does not apply to the set."""


@dataclass(frozen=True)
class VectorSet:
    """Distinct nonzero integer vectors, first-occurrence order kept."""

    vectors: tuple[IntVector, ...]
    dim: int
    dropped_zero: bool = False
    duplicates: int = 0

    @classmethod
    def of(cls, vecs: Iterable[Sequence[int]], dim: Optional[int] = None) -> "VectorSet":
        seen = set()
        out = []
        zero = False
        dups = 0
        for v in vecs:
            v = tuple(int(x) for x in v)
            if dim is None:
                dim = len(v)
            elif len(v) != dim:
                raise ValueError("vectors of different dimensions")
            if not any(v):
                zero = True
                continue
            if v in seen:
                dups += 1
                continue
            seen.add(v)
            out.append(v)
        if dim is None:
            raise ValueError("cannot infer the dimension of an empty set")
        return cls(tuple(out), dim, zero, dups)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def subset(self, idx: Sequence[int]) -> "VectorSet":
        return VectorSet(tuple(self.vectors[i] for i in idx), self.dim)


def load_vector_set(path) -> tuple[VectorSet, int]:
    """Read ``{"denominator": 1|2, "vectors": [[...], ...]}``.

    Returns the numerators as a :class:`VectorSet` and the denominator;
    saturation does not depend on the common scale.
    """
    data = json.loads(Path(path).read_text())
    den = data.get("denominator", 1)
    if den not in (1, 2):
        raise ValueError("denominator must be 1 or 2")
    vecs = data["vectors"]
    if not isinstance(vecs, list) or not all(isinstance(v, list) and all(isinstance(x, int) for x in v) for v in vecs):
        raise ValueError("vectors must be a list of integer lists")
    dim = data.get("dim")
    return VectorSet.of(vecs, dim), den


def dump_vector_set(vecs: Sequence[Sequence[int]], denominator: int = 1) -> str:
    return json.dumps({"denominator": denominator, "vectors": [list(v) for v in vecs]}, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class EnssWitness:
    """``v0 = sum q_i M[indep_i] = sum z_j M[set_j]`` but ``v0`` is not in ``Z>=0(M[set])``."""

    v0: IntVector
    set_indices: tuple[int, ...]
    indep_indices: tuple[int, ...]
    q: RationalVector
    z: tuple[int, ...]

    def remap(self, idx: Sequence[int]) -> "EnssWitness":
        return EnssWitness(self.v0, tuple(idx[i] for i in self.set_indices),
                           tuple(idx[i] for i in self.indep_indices), self.q, self.z)


@dataclass(frozen=True)
class HnVerdict:
    normal: bool
    witness: Optional[EnssWitness] = None
    method: Optional[str] = None
    detail: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if (self.witness is None) == (self.method is None):
            raise ValueError("exactly one of witness and method must be given")


# ---------------------------------------------------------------------------
# nonnegative integer membership


class SemigroupMembership:
    """Decides ``v in Z>=0(gens)`` exactly, for repeated queries on one set.

    Generators that take part in a nonnegative relation summing to zero
    form the lineality part ``G0``; ``Z>=0(G0)`` is then the group ``Z(G0)``.
    The rest, ``G1``, admits an integer functional ``h`` vanishing on
    ``G0`` and positive on ``G1``, which bounds every representation:
    ``sum n_i h(g_i) == h(v)``.
    """

    def __init__(self, gens: Sequence[Sequence[int]]):
        self.gens = [tuple(int(x) for x in g) for g in gens]
        self.dim = len(self.gens[0]) if self.gens else 0
        h = linalg.positive_functional(self.gens) if self.gens else None
        if h is not None or not self.gens:
            g0 = []
        else:
            g0 = [j for j, g in enumerate(self.gens)
                  if linalg.solve_nonneg_rational(self.gens, [-x for x in g]) is not None]
        self.lineality = g0
        g0set = set(g0)
        self.pointed = [j for j in range(len(self.gens)) if j not in g0set]
        self.relation = self._positive_relation(g0) if g0 else None
        if g0:
            self.lattice = linalg.hnf([self.gens[j] for j in g0], self.dim)
            h = linalg.positive_functional([self.gens[j] for j in self.pointed],
                                           [self.gens[j] for j in g0]) if self.pointed else None
        else:
            self.lattice = None
        self.functional = h
        self.values = [linalg.dot(h, self.gens[j]) for j in self.pointed] if h is not None else []
        # suffix gcds prune the bounded search
        self._suffix_gcd = [0] * (len(self.values) + 1)
        for k in range(len(self.values) - 1, -1, -1):
            self._suffix_gcd[k] = gcd(self._suffix_gcd[k + 1], self.values[k])

    def _positive_relation(self, g0):
        total = [Fraction(0)] * len(self.gens)
        for j in g0:
            y = linalg.solve_nonneg_rational(self.gens, [-x for x in self.gens[j]])
            for i, yi in enumerate(y):
                total[i] += yi
            total[j] += 1
        den = 1
        for x in total:
            den = den * x.denominator // gcd(den, x.denominator)
        return [int(x * den) for x in total]

    def find(self, v: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Nonnegative integer coefficients for ``v``, or None."""
        v = tuple(int(x) for x in v)
        if not self.gens:
            return () if not any(v) else None
        if self.pointed:
            target = linalg.dot(self.functional, v)
        else:
            target = 0
        if target < 0:
            return None
        counts = [0] * len(self.pointed)
        res = self._search(0, target, list(v), counts)
        if res is None:
            return None
        coeffs, rest = res
        out = [0] * len(self.gens)
        for j, c in zip(self.pointed, coeffs):
            out[j] = c
        if self.lineality:
            sub = linalg.integer_combination([self.gens[j] for j in self.lineality], rest)
            k = 0
            for zj, j in zip(sub, self.lineality):
                r = self.relation[j]
                if zj < 0:
                    k = max(k, -(zj // r))
            for zj, j in zip(sub, self.lineality):
                out[j] = zj + k * self.relation[j]
            assert all(x >= 0 for x in out)
        return tuple(out)

    def _search(self, k, remaining, resid, counts):
        if k == len(self.pointed):
            if remaining:
                return None
            if self.lattice is None:
                return (list(counts), resid) if not any(resid) else None
            return (list(counts), resid) if linalg.in_lattice(self.lattice, resid) else None
        g_rest = self._suffix_gcd[k]
        if (remaining % g_rest) if g_rest else remaining:
            return None
        val = self.values[k]
        g = self.gens[self.pointed[k]]
        top = remaining // val
        if k == len(self.pointed) - 1:
            if remaining % val:
                return None
            choices = (top,)
        else:
            choices = range(top, -1, -1)
        for c in choices:
            counts[k] = c
            r = [x - c * y for x, y in zip(resid, g)] if c else resid
            found = self._search(k + 1, remaining - c * val, r, counts)
            if found is not None:
                return found
        counts[k] = 0
        return None


def nonneg_integer_membership(gens: VectorSet | Sequence[Sequence[int]], v0: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Coefficients ``n >= 0`` with ``sum n_i gens_i == v0``, or None."""
    vecs = gens.vectors if isinstance(gens, VectorSet) else gens
    return SemigroupMembership(vecs).find(v0)


# ---------------------------------------------------------------------------
# saturation


def _chunked_subset_dets(proj: np.ndarray, d: int, chunk: int = 200_000):
    """Yield ``(index_tuples, dets)`` over all d-subsets in lexicographic order."""
    n = len(proj)
    combos = itertools.combinations(range(n), d)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            return
        idx = np.array(block, dtype=np.int64)
        yield idx, linalg.batch_det(proj[idx])


def is_saturated(m: VectorSet | Sequence[Sequence[int]]) -> Optional[EnssWitness]:
    """None if the set is saturated, otherwise the first ENSS witness found.

    Scans linearly independent subsets of size ``rank(M)`` in lexicographic
    order and the nonzero lattice points of their half-open parallelepipeds
    in coefficient order.
    """
    if not isinstance(m, VectorSet):
        m = VectorSet.of(m)
    vecs = list(m.vectors)
    if len(vecs) <= 1:
        return None
    lat = linalg.hnf(vecs, m.dim)
    d = lat.rank
    if d == len(vecs):
        return None
    cols = lat.pivots()
    covol = linalg.covolume_in_coords(lat, cols)
    proj = np.array([[v[c] for c in cols] for v in vecs], dtype=np.int64)
    kp = np.array([[r[c] for c in cols] for r in lat.rows], dtype=np.int64)
    member = None
    cache: dict[IntVector, bool] = {}
    for idx, dets in _chunked_subset_dets(proj, d):
        hits = np.nonzero((dets != 0) & (np.abs(dets) != covol))[0]
        if not len(hits):
            continue
        # rows of kp @ adj(P) / det(P) generate the lattice points modulo Z(P)
        adj = linalg.batch_adjugate(proj[idx[hits]])
        if adj.dtype != object and int(np.abs(adj).max()) * int(np.abs(kp).max()) * d >= 2 ** 62:
            adj = adj.astype(object)
        gens = np.einsum("ij,njk->nik", kp.astype(adj.dtype), adj)
        for h, g in zip(hits.tolist(), gens):
            sub = tuple(idx[h].tolist())
            det_p = int(dets[h])
            den = abs(det_p)
            sgn = 1 if det_p > 0 else -1
            for a in linalg.coset_numerators((sgn * g).tolist(), den):
                if not any(a):
                    continue
                v0 = tuple(sum(ai * vecs[i][k] for ai, i in zip(a, sub)) // den for k in range(m.dim))
                ok = cache.get(v0)
                if ok is None:
                    if member is None:
                        member = SemigroupMembership(vecs)
                    ok = member.find(v0) is not None
                    cache[v0] = ok
                if not ok:
                    z = linalg.integer_combination(vecs, v0)
                    q = tuple(Fraction(ai, den) for ai in a)
                    return EnssWitness(v0, tuple(range(len(vecs))), sub, q, z)
    return None


# ---------------------------------------------------------------------------
# exhaustive subset search


class _MaskCanonizer:
    """Canonical forms of subsets under a permutation group of the indices.

    A subset is a bitmask in which index ``i`` occupies bit ``N-1-i``; the
    numerically largest image is then the lexicographically least index
    tuple, and it is taken as the canonical representative.
    """

    def __init__(self, perm_idx: np.ndarray, n: int):
        if n > 63:
            raise ValueError("symmetry reduction supports at most 63 vectors")
        self.n = n
        g = len(perm_idx)
        nchunks = (n + 7) // 8
        # bit at position p belongs to index n-1-p
        img_bit = np.zeros((g, nchunks * 8), dtype=np.uint64)
        for p in range(n):
            i = n - 1 - p
            img_bit[:, p] = np.left_shift(np.uint64(1), (n - 1 - perm_idx[:, i]).astype(np.uint64))
        tables = np.zeros((g, nchunks, 256), dtype=np.uint64)
        for c in range(nchunks):
            for byte in range(1, 256):
                low = byte & -byte
                b = low.bit_length() - 1
                tables[:, c, byte] = tables[:, c, byte ^ low] | img_bit[:, 8 * c + b]
        self.tables = tables
        self.nchunks = nchunks

    def canon(self, masks: np.ndarray) -> np.ndarray:
        masks = masks.astype(np.uint64)
        out = np.zeros((len(self.tables), len(masks)), dtype=np.uint64)
        for c in range(self.nchunks):
            byte = ((masks >> np.uint64(8 * c)) & np.uint64(255)).astype(np.int64)
            out |= self.tables[:, c, byte]
        return out.max(axis=0)


def permutation_action(m: VectorSet, group) -> np.ndarray:
    """Index permutations induced on ``m`` by a signed-permutation group.

    ``group`` is a :class:`~torusnormal.rootsystem.GroupArrays` or a list of
    generators, which is closed into a group first.
    """
    from .rootsystem import GroupArrays, group_arrays_from_generators

    if not isinstance(group, GroupArrays):
        group = group_arrays_from_generators(list(group))
    arr = np.array(m.vectors, dtype=np.int64)
    imgs = group.apply(arr)  # (G, N, n)
    shift = int(np.abs(arr).max()) if arr.size else 0
    base = 2 * shift + 1
    if base ** m.dim < 2 ** 62:
        weights = base ** np.arange(m.dim, dtype=np.int64)
        codes = (arr + shift) @ weights
        order = np.argsort(codes)
        img_codes = (imgs + shift) @ weights
        pos = np.searchsorted(codes[order], img_codes).clip(0, len(codes) - 1)
        out = order[pos]
        if not np.array_equal(codes[out], img_codes):
            raise ValueError("symmetry group does not preserve the vector set")
        return out
    lookup = {v: i for i, v in enumerate(m.vectors)}
    flat = imgs.reshape(-1, m.dim)
    out = np.empty(len(flat), dtype=np.int64)
    for k, row in enumerate(map(tuple, flat.tolist())):
        j = lookup.get(row)
        if j is None:
            raise ValueError("symmetry group does not preserve the vector set")
        out[k] = j
    return out.reshape(len(group), len(m))


def _mask_to_indices(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if (mask >> (n - 1 - i)) & 1)


def iter_subsets(m: VectorSet, group=None, max_size: Optional[int] = None):
    """Subsets of ``m`` by increasing size, then lexicographically.

    With a symmetry group, only the lexicographically least member of each
    orbit is produced (canonical augmentation, level by level).
    """
    n = len(m)
    top = n if max_size is None else min(n, max_size)
    if group is None:
        for k in range(top + 1):
            yield from itertools.combinations(range(n), k)
        return
    canon = _MaskCanonizer(permutation_action(m, group), n)
    level = np.array([0], dtype=np.uint64)
    yield ()
    for k in range(1, top + 1):
        cand = []
        for rep in level.tolist():
            for i in range(n):
                bit = 1 << (n - 1 - i)
                if not rep & bit:
                    cand.append(rep | bit)
        if not cand:
            return
        reps = np.unique(canon.canon(np.array(cand, dtype=np.uint64)))[::-1]
        level = reps
        for r in reps.tolist():
            yield _mask_to_indices(r, n)


def minimal_nss_search(m: VectorSet, group=None, budget: int = DEFAULT_BUDGET):
    """First non-saturated subset in the search order, with its witness.

    Returns ``(indices, witness, examined)``; ``indices`` is None when every
    subset is saturated.  Linearly independent subsets are skipped.
    """
    examined = 0
    for sub in iter_subsets(m, group):
        vecs = [m.vectors[i] for i in sub]
        if linalg.rank(vecs) == len(sub):
            continue
        examined += 1
        if examined > budget:
            raise BudgetExceeded(examined - 1, budget)
        w = is_saturated(VectorSet(tuple(vecs), m.dim))
        if w is not None:
            return sub, w.remap(sub), examined
    return None, None, examined


def minimal_nss(m: VectorSet, group=None, budget: int = DEFAULT_BUDGET) -> Optional[VectorSet]:
    """A smallest non-saturated subset (lexicographically least), or None."""
    sub, _, _ = minimal_nss_search(m, group, budget)
    return None if sub is None else m.subset(sub)


STRATEGIES = ("auto", "unimodular", "structural", "exhaustive")


def is_hereditarily_normal(m: VectorSet, strategy: str = "auto", symmetry=None,
                           budget: int = DEFAULT_BUDGET) -> HnVerdict:
    """Decide whether every subset of ``m`` is saturated.

    ``symmetry`` is a group of signed permutations preserving ``m`` (a
    :class:`~torusnormal.rootsystem.GroupArrays` or a list of generators).  It
    is required by the structural strategy and speeds up the exhaustive one.
    """
    from . import structure

    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy in ("auto", "unimodular"):
        prof = structure.volume_profile(m)
        if prof.is_unimodular:
            return HnVerdict(True, method="Unimodular", detail={"m": prof.m})
        if strategy == "unimodular":
            raise StrategyNotApplicable("the set is not unimodular")
    if strategy in ("auto", "structural"):
        cert = structure.structural_hn_check(m, symmetry) if symmetry is not None else None
        if cert is not None:
            return HnVerdict(True, method="Ratio2Structural", detail={"m": cert.m, "bases_checked": cert.bases_checked, "certificate": cert})
        if strategy == "structural":
            raise StrategyNotApplicable("the ratio-2 structural criterion does not apply")
    sub, w, examined = minimal_nss_search(m, symmetry, budget)
    if sub is None:
        return HnVerdict(True, method="Exhaustive", detail={"examined": examined, "symmetry": symmetry is not None})
    return HnVerdict(False, witness=w, detail={"examined": examined, "subset": sub})
