"""Certificates of non-saturation and hereditary normality.

A non-saturation certificate lists the vectors of a non-saturated set, a
violating point ``v0`` with its two combinations (rational coefficients in
``[0, 1)`` over an independent subfamily, and integer coefficients over the
whole set), and a proof that ``v0`` is not a nonnegative integer
combination: a discriminating functional, or a positive functional whose
level set is searched exhaustively.

The verifier below re-derives every claim with plain integer arithmetic and
its own one-dimensional membership test; it does not call the search code.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import linalg
from .linalg import IntVector
from .rootsystem import RootSystem, SignedPermutation, Weight, in_weight_set
from .saturation import EnssWitness, VectorSet

DEFAULT_COEFF_BOUND = 100
# group marker: all signed coordinate permutations preserving the vectors
STABILIZER = "signed-stabilizer"
# candidate functionals examined before falling back to an exhaustive proof
SEARCH_LIMIT = 2_000_000


@dataclass(frozen=True)
class DiscriminatingFunction:
    f: IntVector


@dataclass(frozen=True)
class ExhaustiveProof:
    """``g`` is positive on every vector; ``bound`` caps each coefficient."""

    g: IntVector
    bound: int


Discriminator = Union[DiscriminatingFunction, ExhaustiveProof]


@dataclass(frozen=True)
class NssCertificate:
    context: str
    vectors: tuple[IntVector, ...]
    v0: IntVector
    indep: tuple[int, ...]
    q: tuple[Fraction, ...]
    z: tuple[int, ...]
    discriminator: Discriminator
    denominator: int = 1

    @property
    def witness(self) -> EnssWitness:
        return EnssWitness(self.v0, tuple(range(len(self.vectors))), self.indep, self.q, self.z)

    def to_json(self) -> dict:
        if isinstance(self.discriminator, DiscriminatingFunction):
            disc = {"f": list(self.discriminator.f)}
        else:
            disc = {"g": list(self.discriminator.g), "bound": self.discriminator.bound}
        return {
            "kind": "nss",
            "context": self.context,
            "denominator": self.denominator,
            "vectors": [list(v) for v in self.vectors],
            "v0": list(self.v0),
            "indep": list(self.indep),
            "q": [f"{x.numerator}/{x.denominator}" for x in self.q],
            "z": list(self.z),
            "discriminator": disc,
        }

    def transformed(self, fn: Callable[[IntVector], IntVector], context: Optional[str] = None) -> "NssCertificate":
        """Apply a linear map preserving integrality to every vector (and ``v0``)."""
        disc = self.discriminator
        return NssCertificate(context or self.context, tuple(fn(v) for v in self.vectors), fn(self.v0),
                              self.indep, self.q, self.z, _transform_disc(disc, fn), self.denominator)


def _transform_disc(disc: Discriminator, fn) -> Discriminator:
    # only involutive signed coordinate maps are used, so f o fn^-1 = f o fn
    if isinstance(disc, DiscriminatingFunction):
        return DiscriminatingFunction(fn(disc.f))
    return ExhaustiveProof(fn(disc.g), disc.bound)


@dataclass(frozen=True)
class HnCertificate:
    """How hereditary normality was established.

    ``method`` is ``"Unimodular"``, ``"Ratio2Structural"`` or ``"Exhaustive"``;
    ``data`` holds ``m``, the group generators, and sweep counts.
    """

    context: str
    vectors: tuple[IntVector, ...]
    method: str
    data: dict = field(default_factory=dict)
    denominator: int = 1

    def to_json(self) -> dict:
        return {
            "kind": "hn",
            "context": self.context,
            "denominator": self.denominator,
            "vectors": [list(v) for v in self.vectors],
            "method": dict(self.data, name=self.method),
        }


Certificate = Union[NssCertificate, HnCertificate]


def dumps(cert: Certificate) -> str:
    """Canonical JSON: sorted keys, no optional whitespace."""
    return json.dumps(cert.to_json(), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Certificate:
    data = json.loads(text)
    kind = data.get("kind")
    vectors = tuple(tuple(int(x) for x in v) for v in data["vectors"])
    den = int(data.get("denominator", 1))
    if kind == "nss":
        disc = data["discriminator"]
        if "f" in disc:
            d = DiscriminatingFunction(tuple(int(x) for x in disc["f"]))
        else:
            d = ExhaustiveProof(tuple(int(x) for x in disc["g"]), int(disc["bound"]))
        return NssCertificate(
            data["context"], vectors, tuple(int(x) for x in data["v0"]),
            tuple(int(i) for i in data["indep"]), tuple(Fraction(x) for x in data["q"]),
            tuple(int(x) for x in data["z"]), d, den)
    if kind == "hn":
        method = dict(data["method"])
        name = method.pop("name")
        return HnCertificate(data["context"], vectors, name, method, den)
    raise ValueError(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------
# discriminating functionals


def _dp_representable(values: Sequence[int], target: int) -> bool:
    """Positive ``values``: is ``target`` a nonnegative integer combination?"""
    if target < 0:
        return False
    reach = bytearray(target + 1)
    reach[0] = 1
    vals = sorted(set(values))
    for s in range(1, target + 1):
        for v in vals:
            if v > s:
                break
            if reach[s - v]:
                reach[s] = 1
                break
    return bool(reach[target])


def representable_1d(values: Sequence[int], target: int) -> bool:
    """Exact membership of ``target`` in the semigroup generated by ``values``.

    Zeros are ignored.  With both signs present the semigroup is the group
    ``gZ``: if ``p > 0`` and ``-k < 0`` are in it, so is
    ``(k - 1) p + p (-k) = -p``, and symmetrically.
    """
    vals = [int(v) for v in values if v]
    if not vals:
        return target == 0
    if any(v > 0 for v in vals) and any(v < 0 for v in vals):
        g = 0
        for v in vals:
            g = gcd(g, v)
        return target % g == 0
    if vals[0] < 0:
        vals = [-v for v in vals]
        target = -target
    return _dp_representable(vals, target)


def _level_candidates(k: int, level: int) -> np.ndarray:
    """Integer vectors of length ``k`` with max-norm exactly ``level``, lexicographic."""
    rng = np.arange(-level, level + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([rng] * k), indexing="ij"), axis=-1).reshape(-1, k)
    return grid[np.abs(grid).max(axis=1) == level]


def discriminating_function(vectors: Sequence[Sequence[int]], v0: Sequence[int],
                            coeff_bound: int = DEFAULT_COEFF_BOUND,
                            limit: int = SEARCH_LIMIT) -> Optional[DiscriminatingFunction]:
    """Search integer functionals by increasing max-norm, lexicographically.

    Functionals are supported on the pivot coordinates of ``vectors``, which
    loses nothing: every functional on their span is a positive rational
    multiple of one of these, and scaling preserves discrimination.
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    v0 = tuple(int(x) for x in v0)
    dim = len(v0)
    cols = linalg.pivot_columns(vecs) if vecs else []
    k = len(cols)
    if k == 0:
        return None
    va = np.array([[v[c] for c in cols] for v in vecs], dtype=np.int64)
    ta = np.array([v0[c] for c in cols], dtype=np.int64)
    examined = 0
    for level in range(1, coeff_bound + 1):
        if (2 * level + 1) ** k > 4 * limit:
            break
        cand = _level_candidates(k, level)
        vals = cand @ va.T
        tgt = cand @ ta
        pos = (vals > 0).any(axis=1)
        neg = (vals < 0).any(axis=1)
        g = np.gcd.reduce(np.abs(vals), axis=1)
        mixed = pos & neg
        gz = np.where(g == 0, 1, g)
        sure = np.where(mixed, tgt % gz != 0, False)
        one = ~mixed & (pos | neg)
        # same sign after orientation: impossible when the sign or residue is wrong
        sgn = np.where(pos, 1, -1)
        t_or = tgt * sgn
        sure |= one & ((t_or < 0) | (t_or % gz != 0))
        maybe = one & ~sure & (t_or > 0)
        for i in np.nonzero(sure | maybe)[0].tolist():
            examined += 1
            if examined > limit:
                return None
            if sure[i] or not representable_1d(vals[i].tolist(), int(tgt[i])):
                f = [0] * dim
                for c, x in zip(cols, cand[i].tolist()):
                    f[c] = x
                return DiscriminatingFunction(tuple(f))
    return None


def find_discriminating_function(witness: EnssWitness, m: VectorSet | Sequence[Sequence[int]],
                                 coeff_bound: int = DEFAULT_COEFF_BOUND) -> Optional[DiscriminatingFunction]:
    vecs = m.vectors if isinstance(m, VectorSet) else m
    return discriminating_function([vecs[i] for i in witness.set_indices], witness.v0, coeff_bound)


def exhaustive_proof(vectors: Sequence[Sequence[int]], v0: Sequence[int]) -> Optional[ExhaustiveProof]:
    g = linalg.positive_functional(vectors)
    if g is None:
        return None
    vals = [linalg.dot(g, v) for v in vectors]
    return ExhaustiveProof(tuple(g), max(0, linalg.dot(g, v0)) // min(vals))


def certificate_from_witness(witness: EnssWitness, m: VectorSet, context: str = "",
                             denominator: int = 1, coeff_bound: int = DEFAULT_COEFF_BOUND) -> NssCertificate:
    vecs = tuple(m.vectors[i] for i in witness.set_indices)
    pos = {j: k for k, j in enumerate(witness.set_indices)}
    kept = [(pos[j], q) for j, q in zip(witness.indep_indices, witness.q) if q]
    indep = tuple(i for i, _ in kept)
    qs = tuple(q for _, q in kept)
    disc = discriminating_function(vecs, witness.v0, coeff_bound)
    if disc is None:
        disc = exhaustive_proof(vecs, witness.v0)
    if disc is None:
        raise RuntimeError("no discriminating functional and the cone is not pointed")
    return NssCertificate(context, vecs, witness.v0, indep, qs, witness.z, disc, denominator)


# ---------------------------------------------------------------------------
# independent verification


def _semigroup_contains_1d(values: Sequence[int], target: int) -> bool:
    """Breadth-first reachability; kept separate from the search-side test."""
    vals = [v for v in values if v != 0]
    if not vals:
        return target == 0
    g = 0
    for v in vals:
        g = gcd(g, abs(v))
    if target % g:
        return False
    if min(vals) < 0 < max(vals):
        return True
    if max(vals) < 0:
        vals, target = [-v for v in vals], -target
    if target < 0:
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for v in vals:
                t = s + v
                if t == target:
                    return True
                if t < target and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return target == 0


def _level_set_hits(vals: Sequence[int], vecs, target: int, v0) -> bool:
    """Any ``n >= 0`` with ``sum n_i vals_i == target`` and ``sum n_i vecs_i == v0``?"""
    r = len(vals)
    dim = len(v0)

    def rec(i, left, acc):
        if i == r:
            return left == 0 and acc == list(v0)
        for c in range(left // vals[i] + 1):
            nxt = [a + c * b for a, b in zip(acc, vecs[i])]
            if rec(i + 1, left - c * vals[i], nxt):
                return True
        return False

    return rec(0, target, [0] * dim)


def nss_certificate_problems(cert: NssCertificate, m: Optional[VectorSet | Sequence[Sequence[int]]] = None) -> list[str]:
    """Every failed check, as text; empty when the certificate is valid."""
    problems = []
    vecs = [tuple(v) for v in cert.vectors]
    dim = len(cert.v0)
    if not vecs:
        return ["no vectors"]
    if any(len(v) != dim for v in vecs):
        return ["dimension mismatch"]
    if m is not None:
        ambient = set(map(tuple, m.vectors if isinstance(m, VectorSet) else m))
        missing = [v for v in vecs if v not in ambient]
        if missing:
            problems.append(f"{len(missing)} certificate vectors are not in the set")
    if not any(cert.v0):
        problems.append("v0 is zero")
    # integer span
    if len(cert.z) != len(vecs):
        problems.append("z has the wrong length")
    elif tuple(sum(z * v[k] for z, v in zip(cert.z, vecs)) for k in range(dim)) != tuple(cert.v0):
        problems.append("integer combination does not give v0")
    # cone, with coefficients in [0, 1) over an independent subfamily
    if len(cert.q) != len(cert.indep) or len(set(cert.indep)) != len(cert.indep):
        problems.append("q and indep do not match")
    elif any(not 0 <= i < len(vecs) for i in cert.indep):
        problems.append("indep index out of range")
    else:
        if any(not (0 <= q < 1) for q in cert.q):
            problems.append("a rational coefficient is outside [0, 1)")
        sub = [vecs[i] for i in cert.indep]
        if linalg.rank(sub) != len(sub):
            problems.append("indep vectors are linearly dependent")
        if tuple(sum(q * v[k] for q, v in zip(cert.q, sub)) for k in range(dim)) != tuple(cert.v0):
            problems.append("rational combination does not give v0")
    # exclusion from the semigroup
    disc = cert.discriminator
    if isinstance(disc, DiscriminatingFunction):
        if len(disc.f) != dim:
            problems.append("functional has the wrong dimension")
        else:
            vals = [sum(a * b for a, b in zip(disc.f, v)) for v in vecs]
            t = sum(a * b for a, b in zip(disc.f, cert.v0))
            if _semigroup_contains_1d(vals, t):
                problems.append(f"functional does not discriminate: {t} is generated by {vals}")
    elif isinstance(disc, ExhaustiveProof):
        vals = [sum(a * b for a, b in zip(disc.g, v)) for v in vecs]
        t = sum(a * b for a, b in zip(disc.g, cert.v0))
        if min(vals) <= 0:
            problems.append("g is not positive on every vector")
        elif t >= 0 and t // min(vals) > disc.bound:
            problems.append("recorded bound is too small")
        elif t >= 0 and _level_set_hits(vals, vecs, t, cert.v0):
            problems.append("v0 is a nonnegative integer combination")
    else:
        problems.append("unknown discriminator")
    return problems


def verify_nss_certificate(cert: NssCertificate, m: Optional[VectorSet | Sequence[Sequence[int]]] = None) -> bool:
    return not nss_certificate_problems(cert, m)


def verify_hn_certificate(cert: HnCertificate, m: Optional[VectorSet] = None, budget: Optional[int] = None) -> bool:
    """Re-run the recorded method on the certificate's vectors.

    Raises :class:`~torusnormal.saturation.BudgetExceeded` when an exhaustive
    re-check does not finish within ``budget``.
    """
    from . import structure
    from .saturation import DEFAULT_BUDGET, minimal_nss_search

    vs = VectorSet.of(cert.vectors) if cert.vectors else None
    if vs is None:
        return False
    if m is not None and set(vs.vectors) != set(m.vectors):
        return False
    if cert.method == "Unimodular":
        prof = structure.volume_profile(vs)
        return prof.is_unimodular and prof.m == cert.data.get("m", prof.m)
    group = _group_from_data(cert.data.get("group"), cert.vectors)
    if cert.method == "Ratio2Structural":
        if group is None:
            return False
        sc = structure.structural_hn_check(vs, group)
        return sc is not None and sc.m == cert.data.get("m", sc.m)
    if cert.method == "Exhaustive":
        sub, _, _ = minimal_nss_search(vs, group, budget or DEFAULT_BUDGET)
        return sub is None
    return False


def _group_from_data(data, vectors):
    from .rootsystem import signed_stabilizer

    if not data:
        return None
    if data == STABILIZER:
        return signed_stabilizer(vectors)
    return [SignedPermutation.from_json(g) for g in data]


def verify(cert: Certificate, m: Optional[VectorSet] = None) -> bool:
    if isinstance(cert, NssCertificate):
        return verify_nss_certificate(cert, m)
    return verify_hn_certificate(cert, m)


# ---------------------------------------------------------------------------
# library of explicit non-saturated sets


@dataclass(frozen=True)
class Counterexample:
    """A non-saturated set in a weight set, instantiable across ranks.

    Vectors, ``v0`` and the printed functional are given at the base rank
    ``base`` and extended by ``padding``: ``"zero"`` appends zero
    coordinates, ``"copy"`` repeats the last coordinate, ``"ones"`` appends
    the first coordinate (all first coordinates are one).
    """

    name: str
    family: str
    min_rank: int
    max_rank: Optional[int]
    highest: tuple  # doubled coordinates at the base rank
    vectors: tuple
    v0: tuple
    indep: tuple
    q: tuple
    z: tuple
    f: Optional[tuple]
    denominator: int
    padding: str = "zero"
    parametric: bool = False

    @property
    def base(self) -> int:
        return len(self.v0)

    def _pad(self, v, n, fill_from=None):
        extra = n - len(v)
        if self.padding == "zero":
            return tuple(v) + (0,) * extra
        if self.padding == "copy":
            return tuple(v) + (v[-1],) * extra
        if self.padding == "ones":
            return tuple(v) + (v[0],) * extra
        raise ValueError(self.padding)

    def weight(self, n: int, tail: Sequence[int] = ()) -> Weight:
        """The smallest highest weight at rank ``n`` containing the vectors."""
        if self.parametric:
            return Weight(self.highest + tuple(tail))
        if self.padding == "zero":
            return Weight(self.highest + (0,) * (n - len(self.highest)))
        return Weight(self.highest + (self.highest[-1],) * (n - len(self.highest)))

    def instantiate(self, n: int, tail: Sequence[int] = ()) -> NssCertificate:
        """Certificate at rank ``n``.  ``tail`` (doubled, odd entries) fixes the
        last ``n - 3`` coordinates of the parametric family."""
        if n < self.min_rank or (self.max_rank is not None and n > self.max_rank):
            raise ValueError(f"{self.name} is valid for ranks {self.min_rank}..{self.max_rank or 'any'}")
        if self.parametric:
            tail = tuple(int(t) for t in tail)
            if len(tail) != n - 3 or any(t % 2 == 0 for t in tail):
                raise ValueError("tail must hold n - 3 odd doubled coordinates")
            vecs = tuple(tuple(v) + tail for v in self.vectors)
            v0 = tuple(self.v0) + tail
            f = None
        else:
            vecs = tuple(self._pad(v, n) for v in self.vectors)
            v0 = self._pad(self.v0, n)
            f = None if self.f is None else tuple(self.f) + (0,) * (n - len(self.f))
        if f is not None:
            disc: Discriminator = DiscriminatingFunction(f)
        else:
            disc = _searched_discriminator(vecs, v0)
        lam = self.weight(n, tail)
        ctx = f"{self.name} {self.family}{n} lambda={lam}"
        q = tuple(Fraction(x) for x in self.q)
        return NssCertificate(ctx, vecs, v0, tuple(self.indep), q, tuple(self.z), disc, self.denominator)


_DISC_CACHE: dict = {}


def _searched_discriminator(vecs, v0) -> Discriminator:
    key = (vecs, v0)
    if key not in _DISC_CACHE:
        d = discriminating_function(vecs, v0)
        if d is None:
            d = exhaustive_proof(vecs, v0)
        _DISC_CACHE[key] = d
    return _DISC_CACHE[key]


def _h(*xs):
    return tuple(xs)


_Q2 = ("1/2", "1/2")

_LIBRARY = (
    Counterexample("B-(2,0)", "B", 2, 2, _h(4, 0),
                   ((2, 0), (1, 1), (0, 1)), (1, 0), (0,), ("1/2",), (0, 1, -1), (3, 4), 1),
    Counterexample("B-(1,1)", "B", 3, None, _h(2, 2, 0),
                   ((1, 1, 0), (1, -1, 0), (0, 1, -1), (0, 0, -1)), (1, 0, 0), (0, 1), _Q2,
                   (0, 1, 1, -1), (3, 1, -5), 1),
    Counterexample("B-(3/2,1/2,...)", "B", 2, None, _h(3, 1),
                   ((3, 1), (3, -1), (1, 1)), (2, 0), (0, 1), ("1/3", "1/3"), (1, 0, -1), None, 2,
                   padding="copy"),
    Counterexample("B-(1/2,...)", "B", 5, None, _h(1, 1, 1, 1, 1),
                   ((1, 1, 1, 1, -1), (1, 1, 1, -1, 1), (1, 1, -1, 1, 1), (1, -1, 1, 1, 1),
                    (-1, 1, 1, 1, 1), (1, 1, 1, -1, -1)),
                   (1, 1, 1, 1, 1), (0, 1, 2, 3, 4), ("1/3",) * 5, (1, 1, 0, 0, 0, -1),
                   (3, 3, 3, 2, 2), 2, padding="copy"),
    Counterexample("C-(2,1)", "C", 3, None, _h(4, 2, 0),
                   ((2, 1, 0), (0, 2, 1), (1, 0, 2), (1, 2, 0)), (1, 1, 1), (0, 1, 2), ("1/3",) * 3,
                   (1, 1, 0, -1), (100, 10, 1), 1),
    Counterexample("C-(2,0)", "C", 3, None, _h(4, 0, 0),
                   ((2, 0, 0), (0, 2, 0), (1, 0, 1), (0, -1, 1)), (1, 1, 0), (0, 1), _Q2,
                   (0, 0, 1, -1), (5, 3, 9), 1),
    Counterexample("C-(1,1,1)", "C", 3, None, _h(2, 2, 2),
                   ((1, 1, 1), (1, -1, -1), (0, 1, 0), (0, 0, -1)), (1, 0, 0), (0, 1), _Q2,
                   (1, 0, -1, 1), (11, 6, -14), 1),
    Counterexample("C-(1,1,1,1)", "C", 4, None, _h(2, 2, 2, 2),
                   ((1, 1, 1, 1), (1, 1, -1, -1), (1, 0, 1, 0), (0, -1, 1, 0)), (1, 1, 0, 0), (0, 1), _Q2,
                   (0, 0, 1, -1), (5, 5, 8, -1), 1),
    Counterexample("C-(1,1)", "C", 5, None, _h(2, 2, 0, 0, 0),
                   ((1, 0, 1, 0, 0), (1, 0, -1, 0, 0), (0, 1, 0, 1, 0), (0, 1, 0, -1, 0),
                    (0, 0, 1, 0, 1), (0, 0, 0, 1, 1)),
                   (1, 1, 0, 0, 0), (0, 1, 2, 3), ("1/2",) * 4, (0, 1, 1, 0, 1, -1), (5, 6, 1, 2, 20), 1),
)


def _as_family(ce: Counterexample, family: str, name: str, min_rank: int, max_rank=None) -> Counterexample:
    pad = (0,) * max(0, min_rank - ce.base)
    return Counterexample(
        name, family, min_rank, max_rank, ce.highest + pad,
        tuple(tuple(v) + pad for v in ce.vectors), tuple(ce.v0) + pad, ce.indep, ce.q, ce.z,
        None if ce.f is None else tuple(ce.f) + pad, ce.denominator)


_C = {ce.name: ce for ce in _LIBRARY}

_LIBRARY = _LIBRARY + (
    _as_family(_C["C-(2,1)"], "D", "D-(2,1)", 4),
    _as_family(_C["C-(2,0)"], "D", "D-(2,0)", 4),
    _as_family(_C["C-(1,1,1)"], "D", "D-(1,1,1)", 4),
    _as_family(_C["C-(1,1)"], "D", "D-(1,1)", 5),
    _as_family(_C["C-(1,1,1,1)"], "D", "D-(1,1,1,1)", 4),
    Counterexample("D-(3/2,1/2,1/2,...)", "D", 4, None, _h(3, 1, 1),
                   ((3, 1, 1), (-1, -3, 1), (1, 3, 1), (-1, 1, 1)), (1, -1, 1), (0, 1), _Q2,
                   (1, 0, -1, 1), None, 2, parametric=True),
    Counterexample("D-(1/2,...)", "D", 7, None, _h(1, 1, 1, 1, 1, 1, 1),
                   ((1, 1, 1, 1, 1, 1, 1), (1, 1, 1, -1, -1, -1, -1), (1, -1, -1, 1, 1, -1, -1),
                    (1, -1, -1, -1, -1, 1, 1), (1, 1, -1, -1, 1, 1, 1), (1, 1, 1, 1, -1, -1, 1),
                    (1, -1, 1, 1, 1, 1, -1)),
                   (2, 0, 0, 0, 0, 0, 0), (0, 1, 2, 3), ("1/2",) * 4, (-1, 0, 0, 0, 1, 1, 1), None, 2,
                   padding="ones"),
)


def counterexample_library() -> tuple[Counterexample, ...]:
    return _LIBRARY


def counterexample(name: str) -> Counterexample:
    for ce in _LIBRARY:
        if ce.name == name:
            return ce
    raise KeyError(name)


def membership_problems(cert: NssCertificate, rs: RootSystem, lam: Weight) -> list[IntVector]:
    """Certificate vectors (at the certificate's scale) that are not in M(lam)."""
    bad = []
    for v in cert.vectors:
        mu = Weight(tuple(x * (2 // cert.denominator) for x in v))
        if not in_weight_set(rs, lam, mu):
            bad.append(v)
    return bad
