"""Root systems B_n, C_n, D_n: weights, Weyl group, and weight sets M(lambda).

Weights are stored doubled (``2 * l_i`` as integers) so half-integer weights
of B_n and D_n are exact.  Membership in M(lambda) goes through the dominant
representative: ``mu`` is a weight of V(lambda) iff ``mu - lambda`` lies in
the root lattice and ``lambda - dom(mu)`` is a nonnegative integer
combination of simple roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .linalg import IntVector, inverse

FAMILIES = ("B", "C", "D")
_MIN_RANK = {"B": 2, "C": 3, "D": 4}


@dataclass(frozen=True, order=True)
class RootSystem:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < _MIN_RANK[self.family]:
            raise ValueError(f"{self.family}_n needs n >= {_MIN_RANK[self.family]}")

    def __str__(self):
        return f"{self.family}{self.n}"

    @property
    def weyl_order(self) -> int:
        fact = 1
        for k in range(2, self.n + 1):
            fact *= k
        return fact * 2 ** (self.n - (self.family == "D"))


@dataclass(frozen=True, order=True)
class Weight:
    """A weight given by its doubled coordinates ``(2*l_1, ..., 2*l_n)``."""

    doubled: IntVector

    @classmethod
    def from_coords(cls, coords: Iterable) -> "Weight":
        out = []
        for x in coords:
            x2 = Fraction(x) * 2
            if x2.denominator != 1:
                raise ValueError(f"coordinate {x} is not a half-integer")
            out.append(int(x2))
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse ``"3/2,1/2,1/2"`` or the doubled form ``"d2:3,1,1"``."""
        text = text.strip()
        if text.startswith("d2:"):
            return cls(tuple(int(x) for x in text[3:].split(",")))
        return cls.from_coords(Fraction(x.strip()) for x in text.split(","))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    @property
    def n(self) -> int:
        return len(self.doubled)

    @property
    def is_integral(self) -> bool:
        return all(x % 2 == 0 for x in self.doubled)

    def __neg__(self):
        return Weight(tuple(-x for x in self.doubled))

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class SignedPermutation:
    """Coordinate ``i`` is sent to position ``perm[i]``, negated if ``i in flips``."""

    perm: tuple[int, ...]
    flips: frozenset = field(default_factory=frozenset)

    def __call__(self, v: Sequence[int]) -> IntVector:
        out = [0] * len(v)
        for i, x in enumerate(v):
            out[self.perm[i]] = -x if i in self.flips else x
        return tuple(out)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """``self`` after ``other``."""
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        flips = frozenset(i for i in range(len(self.perm)) if (i in other.flips) != (other.perm[i] in self.flips))
        return SignedPermutation(perm, flips)

    def to_json(self):
        return [list(self.perm), sorted(self.flips)]

    @classmethod
    def from_json(cls, obj) -> "SignedPermutation":
        return cls(tuple(obj[0]), frozenset(obj[1]))


@dataclass(frozen=True)
class WeightSet:
    root_system: RootSystem
    highest: Weight
    members: tuple[Weight, ...]

    @property
    def scaled_members(self) -> tuple[IntVector, ...]:
        """Doubled coordinates, i.e. the weights multiplied by two."""
        return tuple(w.doubled for w in self.members)

    @property
    def denominator(self) -> int:
        return 1 if self.highest.is_integral else 2

    @property
    def integer_members(self) -> tuple[IntVector, ...]:
        """Plain coordinates for integral weights, doubled ones otherwise."""
        if self.denominator == 2:
            return self.scaled_members
        return tuple(tuple(x // 2 for x in w.doubled) for w in self.members)

    def __len__(self):
        return len(self.members)


def _check_dim(rs: RootSystem, w: Weight):
    if w.n != rs.n:
        raise ValueError(f"weight {w} has {w.n} coordinates, {rs} needs {rs.n}")


def _e(n, i, scale=2):
    v = [0] * n
    v[i] = scale
    return v


def simple_roots(rs: RootSystem) -> list[Weight]:
    n = rs.n
    roots = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 2, -2
        roots.append(Weight(tuple(v)))
    last = [0] * n
    if rs.family == "B":
        last[n - 1] = 2
    elif rs.family == "C":
        last[n - 1] = 4
    else:
        last[n - 2], last[n - 1] = 2, 2
    roots.append(Weight(tuple(last)))
    return roots


def fundamental_weights(rs: RootSystem) -> list[Weight]:
    n = rs.n
    out = []
    for k in range(1, n + 1):
        if rs.family == "B" and k == n:
            out.append(Weight((1,) * n))
        elif rs.family == "D" and k == n - 1:
            out.append(Weight((1,) * (n - 1) + (-1,)))
        elif rs.family == "D" and k == n:
            out.append(Weight((1,) * n))
        else:
            out.append(Weight((2,) * k + (0,) * (n - k)))
    return out


def fundamental_weight(rs: RootSystem, k: int) -> Weight:
    return fundamental_weights(rs)[k - 1]


def in_weight_lattice(rs: RootSystem, w: Weight) -> bool:
    if rs.family == "C":
        return w.is_integral
    return len({x % 2 for x in w.doubled}) <= 1


def in_root_lattice(rs: RootSystem, w: Weight) -> bool:
    if not w.is_integral:
        return False
    if rs.family == "B":
        return True
    return (sum(w.doubled) // 2) % 2 == 0


def is_dominant(rs: RootSystem, w: Weight) -> bool:
    _check_dim(rs, w)
    d = w.doubled
    if any(d[i] < d[i + 1] for i in range(rs.n - 1)):
        return False
    if rs.family == "D":
        return d[-2] + d[-1] >= 0
    return d[-1] >= 0


def dominant_rep(rs: RootSystem, w: Weight) -> Weight:
    _check_dim(rs, w)
    d = sorted((abs(x) for x in w.doubled), reverse=True)
    if rs.family == "D" and sum(1 for x in w.doubled if x < 0) % 2 == 1:
        d[-1] = -d[-1]
    return Weight(tuple(d))


def _signed_images(rs: RootSystem, w: Weight) -> set[IntVector]:
    out = set()
    abs_vals = [abs(x) for x in w.doubled]
    neg = sum(1 for x in w.doubled if x < 0) % 2
    has_zero = 0 in abs_vals
    for perm in set(itertools.permutations(abs_vals)):
        nzpos = [i for i, x in enumerate(perm) if x]
        for signs in itertools.product((1, -1), repeat=len(nzpos)):
            if rs.family == "D" and not has_zero and (signs.count(-1) % 2) != neg:
                continue
            v = list(perm)
            for i, s in zip(nzpos, signs):
                v[i] *= s
            out.add(tuple(v))
    return out


def weyl_orbit(rs: RootSystem, w: Weight) -> set[Weight]:
    _check_dim(rs, w)
    return {Weight(v) for v in _signed_images(rs, w)}


@lru_cache(maxsize=None)
def _root_coordinate_inverse(rs: RootSystem):
    return inverse([list(a.doubled) for a in simple_roots(rs)])


def root_coordinates(rs: RootSystem, w: Weight) -> tuple[Fraction, ...]:
    """Coefficients of ``w`` over the simple roots."""
    inv = _root_coordinate_inverse(rs)
    n = rs.n
    return tuple(sum((w.doubled[k] * inv[k][j] for k in range(n)), Fraction(0)) for j in range(n))


def precedes(rs: RootSystem, mu: Weight, lam: Weight) -> bool:
    """Dominance order: ``lam - mu`` is a nonnegative integer sum of simple roots."""
    diff = Weight(tuple(a - b for a, b in zip(lam.doubled, mu.doubled)))
    c = root_coordinates(rs, diff)
    return all(x.denominator == 1 and x >= 0 for x in c)


def in_weight_set(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """True iff ``mu`` belongs to M(lam)."""
    _check_dim(rs, lam)
    _check_dim(rs, mu)
    diff = Weight(tuple(a - b for a, b in zip(lam.doubled, mu.doubled)))
    if not in_root_lattice(rs, diff):
        return False
    return precedes(rs, dominant_rep(rs, mu), lam)


def _dominant_candidates(rs: RootSystem, top: int, parity: int):
    """Dominant doubled vectors with entries bounded by ``top`` in absolute value."""
    vals = [x for x in range(top, -1, -1) if x % 2 == parity]
    n = rs.n
    for combo in itertools.combinations_with_replacement(vals, n):
        yield combo
        if rs.family == "D" and combo[-1] != 0:
            yield combo[:-1] + (-combo[-1],)


def dominant_members(rs: RootSystem, lam: Weight) -> list[Weight]:
    """Dominant weights of M(lam), highest first."""
    if not is_dominant(rs, lam):
        raise ValueError(f"{lam} is not dominant for {rs}")
    parity = lam.doubled[0] % 2
    out = []
    for d in _dominant_candidates(rs, lam.doubled[0], parity):
        mu = Weight(d)
        if in_weight_set(rs, lam, mu):
            out.append(mu)
    return out


def weight_set(rs: RootSystem, lam: Weight) -> WeightSet:
    """M(lam) = (lam + root lattice) intersected with the weight polytope."""
    if not in_weight_lattice(rs, lam):
        raise ValueError(f"{lam} is not in the weight lattice of {rs}")
    members: set[IntVector] = set()
    for mu in dominant_members(rs, lam):
        members |= _signed_images(rs, mu)
    return WeightSet(rs, lam, tuple(Weight(v) for v in sorted(members, reverse=True)))


def dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    return dominant_rep(rs, -lam)


def shift_B(lam: Weight, i: int) -> Weight:
    """Lower the ``i``-th coordinate (1-based) by one."""
    d = list(lam.doubled)
    if d[i - 1] < 2:
        raise ValueError(f"shift needs coordinate {i} of {lam} to be at least 1")
    d[i - 1] -= 2
    return Weight(tuple(d))


def shift_CD(lam: Weight, i: int, j: int) -> Weight:
    """Move one unit from coordinate ``i`` to coordinate ``j`` (1-based)."""
    d = list(lam.doubled)
    if d[i - 1] - d[j - 1] < 4:
        raise ValueError(f"shift needs l_{i} - l_{j} >= 2 in {lam}")
    d[i - 1] -= 2
    d[j - 1] += 2
    return Weight(tuple(d))


# ---------------------------------------------------------------------------
# Weyl group as explicit signed permutations


def simple_reflections(rs: RootSystem) -> list[SignedPermutation]:
    n = rs.n
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = i + 1, i
        gens.append(SignedPermutation(tuple(p)))
    if rs.family == "D":
        p = list(range(n))
        p[n - 2], p[n - 1] = n - 1, n - 2
        gens.append(SignedPermutation(tuple(p), frozenset({n - 2, n - 1})))
    else:
        gens.append(SignedPermutation(tuple(range(n)), frozenset({n - 1})))
    return gens


def group_closure(gens: Sequence[SignedPermutation], limit: int = 10 ** 6) -> list[SignedPermutation]:
    """All elements generated by ``gens`` (breadth first, identity first)."""
    if not gens:
        return []
    n = len(gens[0].perm)
    ident = SignedPermutation(tuple(range(n)))
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s.compose(g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
                    if len(order) > limit:
                        raise ValueError("group too large")
        frontier = nxt
    return order


@dataclass(frozen=True)
class GroupArrays:
    """A signed-permutation group stored as arrays for vectorised action.

    ``image[g, j] = sign[g, j] * v[src[g, j]]``.
    """

    src: np.ndarray
    sign: np.ndarray

    def __len__(self):
        return len(self.src)

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        """Images of ``vecs`` (shape ``(k, n)``) under every element: ``(G, k, n)``."""
        vecs = np.asarray(vecs)
        return vecs[:, self.src].transpose(1, 0, 2) * self.sign[:, None, :]

    @classmethod
    def from_elements(cls, elems: Sequence[SignedPermutation]) -> "GroupArrays":
        n = len(elems[0].perm)
        src = np.empty((len(elems), n), dtype=np.int64)
        sign = np.empty((len(elems), n), dtype=np.int64)
        for g, e in enumerate(elems):
            for i in range(n):
                src[g, e.perm[i]] = i
                sign[g, e.perm[i]] = -1 if i in e.flips else 1
        return cls(src, sign)


@lru_cache(maxsize=16)
def weyl_group_arrays(rs: RootSystem) -> GroupArrays:
    """The full Weyl group of ``rs`` (all signed permutations, even flips for D)."""
    n = rs.n
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    signs = np.array(list(itertools.product((1, -1), repeat=n)), dtype=np.int64)
    if rs.family == "D":
        signs = signs[(signs == -1).sum(axis=1) % 2 == 0]
    src = np.repeat(perms, len(signs), axis=0)
    sign = np.tile(signs, (len(perms), 1))
    return GroupArrays(src, sign)


def group_arrays_from_generators(gens: Sequence[SignedPermutation]) -> GroupArrays:
    return GroupArrays.from_elements(group_closure(gens))


def weyl_elements(rs: RootSystem) -> list[SignedPermutation]:
    return group_closure(simple_reflections(rs))


def table_name(rs: RootSystem, lam: Weight) -> Optional[str]:
    """Express ``lam`` as ``a1*pi_1 + ...`` for display."""
    fw = fundamental_weights(rs)
    basis = [list(w.doubled) for w in fw]
    inv = inverse(basis)
    coeff = [sum((lam.doubled[k] * inv[k][j] for k in range(rs.n)), Fraction(0)) for j in range(rs.n)]
    if any(c.denominator != 1 or c < 0 for c in coeff):
        return None
    parts = []
    for k, c in enumerate(coeff, start=1):
        if c == 1:
            parts.append(f"pi_{k}")
        elif c > 1:
            parts.append(f"{c}pi_{k}")
    return " + ".join(parts) if parts else "0"


# the search runs over all n! 2^n signed permutations
MAX_STABILIZER_DIM = 6


def signed_stabilizer(vectors: Sequence[Sequence[int]]) -> Optional[GroupArrays]:
    """All signed coordinate permutations mapping ``vectors`` onto itself.

    None when the dimension is below 2 or above :data:`MAX_STABILIZER_DIM`.
    """
    arr = np.array([tuple(v) for v in vectors], dtype=np.int64)
    if arr.ndim != 2 or not len(arr):
        return None
    n = arr.shape[1]
    if n < 2 or n > MAX_STABILIZER_DIM:
        return None
    full = weyl_group_arrays(RootSystem("B", n))
    shift = int(np.abs(arr).max())
    weights = (2 * shift + 1) ** np.arange(n, dtype=np.int64)
    codes = np.unique((arr + shift) @ weights)
    keep = np.ones(len(full), dtype=bool)
    for start in range(0, len(full), 4096):
        sl = slice(start, start + 4096)
        imgs = GroupArrays(full.src[sl], full.sign[sl]).apply(arr)
        keep[sl] = np.isin((imgs + shift) @ weights, codes).all(axis=1)
    return GroupArrays(full.src[keep], full.sign[keep])
