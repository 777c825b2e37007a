"""Exact integer and rational linear algebra.

Everything here works on plain tuples of Python ints (or ``Fraction``) so the
results are exact.  The only numpy code is :func:`batch_det`, which sweeps
many small determinants at once with fraction-free integer elimination and
falls back to Python integers whenever int64 could overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

import numpy as np

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def _as_rows(vs: Iterable[Sequence[int]]) -> list[list[int]]:
    return [[int(x) for x in v] for v in vs]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def transpose(rows: Sequence[Sequence]) -> list[list]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


# ---------------------------------------------------------------------------
# determinants and rank


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = _as_rows(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (piv * ri[j] - aik * rk[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def _echelon_pivots(rows: Sequence[Sequence]) -> list[int]:
    """Pivot columns of a row echelon form (fraction-free)."""
    a = [list(r) for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                a[i] = [piv * x - f * y for x, y in zip(a[i], a[r])]
                g = 0
                for x in a[i]:
                    g = gcd(g, x)
                if g > 1:
                    a[i] = [x // g for x in a[i]]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return pivots


def rank(vs: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    vs = [tuple(v) for v in vs]
    if not vs:
        return 0
    if any(isinstance(x, Fraction) for v in vs for x in v):
        vs = [_clear_denominators(v) for v in vs]
    return len(_echelon_pivots(vs))


def pivot_columns(vs: Sequence[Sequence[int]]) -> list[int]:
    """Coordinate indices on which the projection of ``vs`` keeps full rank."""
    return _echelon_pivots(vs)


def _clear_denominators(v: Sequence) -> IntVector:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return tuple(int(Fraction(x) * den) for x in v)


# ---------------------------------------------------------------------------
# Hermite normal form and lattices


@dataclass(frozen=True)
class LatticeBasis:
    """Row Hermite normal form basis of an integer lattice."""

    rows: tuple[IntVector, ...]
    dim: int

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x != 0) for r in self.rows]


def hnf_with_transform(vs: Sequence[Sequence[int]]):
    """Return ``(H, U)`` with ``U @ vs == H`` and ``U`` unimodular.

    ``H`` is in row Hermite normal form (positive pivots, entries above a
    pivot reduced into ``[0, pivot)``), zero rows moved to the bottom.
    """
    a = _as_rows(vs)
    m = len(a)
    ncols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            if p != r:
                a[r], a[p] = a[p], a[r]
                u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            piv = a[r][c]
            for i in range(r):
                q = a[i][c] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            pivots.append(c)
            r += 1
    return a, u


def hnf(vs: Sequence[Sequence[int]], dim: Optional[int] = None) -> LatticeBasis:
    """Hermite basis of the integer span of ``vs``."""
    vs = [tuple(v) for v in vs]
    if dim is None:
        if not vs:
            raise ValueError("dimension needed for an empty generating set")
        dim = len(vs[0])
    if not vs:
        return LatticeBasis((), dim)
    h, _ = hnf_with_transform(vs)
    rows = tuple(tuple(r) for r in h if any(r))
    return LatticeBasis(rows, dim)


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> list[IntVector]:
    """Basis of ``{c in Z^m : sum_i c_i rows_i == 0}``."""
    if not rows:
        return []
    h, u = hnf_with_transform(rows)
    return [tuple(u[i]) for i in range(len(h)) if not any(h[i])]


def lattice_coords(lat: LatticeBasis, v: Sequence[int]) -> Optional[IntVector]:
    """Integer coordinates of ``v`` in the basis ``lat.rows``, if any."""
    v = [int(x) for x in v]
    if len(v) != lat.dim:
        raise ValueError("dimension mismatch")
    coeffs = []
    for row in lat.rows:
        p = next(i for i, x in enumerate(row) if x != 0)
        q, rem = divmod(v[p], row[p])
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        return None
    return tuple(coeffs)


def in_lattice(lat: LatticeBasis, v: Sequence[int]) -> bool:
    """True iff ``v`` is an integer combination of the basis rows."""
    return lattice_coords(lat, v) is not None


def integer_combination(vs: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[IntVector]:
    """Some ``z`` in ``Z^len(vs)`` with ``sum z_i vs_i == v``, or None."""
    vs = _as_rows(vs)
    if not vs:
        return () if not any(v) else None
    h, u = hnf_with_transform(vs)
    nz = [i for i in range(len(h)) if any(h[i])]
    lat = LatticeBasis(tuple(tuple(h[i]) for i in nz), len(vs[0]))
    c = lattice_coords(lat, v)
    if c is None:
        return None
    z = [0] * len(vs)
    for ci, i in zip(c, nz):
        if ci:
            z = [a + ci * b for a, b in zip(z, u[i])]
    return tuple(z)


def covolume_in_coords(lat: LatticeBasis, cols: Sequence[int]) -> int:
    """|det| of the lattice basis projected onto the coordinates ``cols``."""
    return abs(det([[r[c] for c in cols] for r in lat.rows]))


# ---------------------------------------------------------------------------
# rational solving


def solve_in_basis(basis: Sequence[Sequence[int]], v: Sequence) -> Optional[RationalVector]:
    """Coefficients of ``v`` over linearly independent ``basis``, or None."""
    d = len(basis)
    if d == 0:
        return () if not any(v) else None
    n = len(basis[0])
    # augmented system: columns are basis vectors
    a = [[Fraction(basis[j][i]) for j in range(d)] + [Fraction(v[i])] for i in range(n)]
    r = 0
    where = []
    for c in range(d):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("basis is linearly dependent")
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        where.append(r)
        r += 1
    if any(a[i][d] != 0 for i in range(r, n)):
        return None
    return tuple(a[where[c]][d] for c in range(d))


def inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _simplex_feasible(a: list[list[Fraction]], b: list[Fraction]) -> Optional[list[Fraction]]:
    """A basic feasible solution of ``a x = b, x >= 0`` or None.

    Phase one of the simplex method with Bland's rule, in exact arithmetic.
    The returned point is basic, so its support is linearly independent.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in a[i]] + [-b[i]])
        else:
            rows.append(list(a[i]) + [b[i]])
    # tableau: n real columns, m artificial columns, rhs
    t = [rows[i][:n] + [Fraction(int(i == j)) for j in range(m)] + [rows[i][n]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(n):
            cost[j] -= t[i][j]
        cost[width] -= t[i][width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if t[i][enter] > 0:
                ratio = t[i][width] / t[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # cannot happen in phase one (objective bounded below)
        _pivot(t, cost, best[1], enter)
        basis[best[1]] = enter
    if cost[width] != 0:
        return None
    # drive remaining artificial variables out of the basis
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if t[i][j] != 0), None)
            if j is not None:
                _pivot(t, cost, i, j)
                basis[i] = j
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = t[i][width]
    return x


def _pivot(t, cost, r, c):
    piv = t[r][c]
    if piv != 1:
        t[r] = [x / piv for x in t[r]]
    row = t[r]
    for i in range(len(t)):
        if i != r:
            f = t[i][c]
            if f:
                t[i] = [x - f * y for x, y in zip(t[i], row)]
    f = cost[c]
    if f:
        cost[:] = [x - f * y for x, y in zip(cost, row)]


def solve_nonneg_rational(gens: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[RationalVector]:
    """Nonnegative rational ``x`` with ``sum x_i gens_i == v``, or None.

    The solution is a vertex of the feasible polyhedron, so the generators
    with nonzero coefficients are linearly independent.
    """
    v = [Fraction(x) for x in v]
    if not gens:
        return () if not any(v) else None
    n = len(v)
    a = [[Fraction(g[i]) for g in gens] for i in range(n)]
    x = _simplex_feasible(a, v)
    return None if x is None else tuple(x)


def positive_functional(vecs: Sequence[Sequence[int]], vanish: Sequence[Sequence[int]] = ()) -> Optional[IntVector]:
    """Integer functional ``h`` with ``h . g > 0`` on ``vecs`` and ``h . b == 0`` on ``vanish``."""
    if not vecs:
        return None
    n = len(vecs[0])
    k = len(vecs)
    a = []
    b = []
    for j, g in enumerate(vecs):
        row = [Fraction(x) for x in g] + [Fraction(-x) for x in g]
        row += [Fraction(-int(i == j)) for i in range(k)]
        a.append(row)
        b.append(Fraction(1))
    for w in vanish:
        a.append([Fraction(x) for x in w] + [Fraction(-x) for x in w] + [Fraction(0)] * k)
        b.append(Fraction(0))
    x = _simplex_feasible(a, b)
    if x is None:
        return None
    h = [x[i] - x[n + i] for i in range(n)]
    return _clear_denominators(h)


# ---------------------------------------------------------------------------
# half-open parallelepipeds


def sublattice_in_span(lat: LatticeBasis, indep: Sequence[Sequence[int]]) -> LatticeBasis:
    """Basis of ``lat`` intersected with the rational span of ``indep``."""
    rows = [list(r) for r in lat.rows]
    d = len(indep)
    if rank(list(lat.rows) + [tuple(v) for v in indep]) == d and len(rows) == d:
        return lat
    normals = integer_left_kernel(transpose(indep))  # vectors orthogonal to span(indep)
    if not normals:
        return lat
    c = [[dot(r, nrm) for nrm in normals] for r in rows]
    ker = integer_left_kernel(c)
    gens = []
    for k in ker:
        vec = [0] * lat.dim
        for ki, r in zip(k, rows):
            if ki:
                vec = [x + ki * y for x, y in zip(vec, r)]
        gens.append(vec)
    return hnf(gens, lat.dim)


def coset_numerators(gens: Sequence[Sequence[int]], modulus: int) -> list[IntVector]:
    """Subgroup of ``(Z/modulus)^d`` generated by ``gens``, sorted."""
    zero = (0,) * (len(gens[0]) if gens else 0)
    gens = [tuple(x % modulus for x in g) for g in gens]
    gens = [g for g in gens if any(g)]
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple((x + y) % modulus for x, y in zip(a, g))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def coset_coefficients(t: Sequence[Sequence[int]]) -> list[RationalVector]:
    """Coefficient vectors in ``[0,1)^d`` of all points of ``Z^d`` in the
    half-open parallelepiped spanned by the rows of ``t``.

    Sorted lexicographically; the count equals ``|det t|``.  The points are
    the subgroup generated by the rows of ``t^-1`` modulo one, computed on
    integer numerators over ``|det t|``.
    """
    t = [[int(x) for x in row] for row in t]
    d = len(t)
    arr = np.array([t], dtype=object)
    dt = int(batch_det(arr)[0])
    if dt == 0:
        raise ValueError("rows are linearly dependent")
    adj = batch_adjugate(arr)[0]
    sgn = 1 if dt > 0 else -1
    gens = [[sgn * int(adj[i][j]) for j in range(d)] for i in range(d)]
    den = abs(dt)
    return [tuple(Fraction(x, den) for x in a) for a in coset_numerators(gens, den)]


def parallelepiped_points(indep: Sequence[Sequence[int]], lat: LatticeBasis) -> list[tuple[IntVector, RationalVector]]:
    """Lattice points ``sum q_i indep_i`` with every ``q_i`` in ``[0, 1)``.

    ``lat`` must contain ``Z(indep)``; only its part inside the span of
    ``indep`` matters.  Points come with their coefficient vectors, sorted by
    coefficient vector.
    """
    indep = [tuple(int(x) for x in v) for v in indep]
    d = len(indep)
    if d == 0:
        return [((0,) * lat.dim, ())]
    if rank(indep) != d:
        raise ValueError("vectors are linearly dependent")
    sub = sublattice_in_span(lat, indep)
    t = []
    for v in indep:
        c = lattice_coords(sub, v)
        if c is None:
            raise ValueError("lattice does not contain the given vectors")
        t.append(c)
    out = []
    for q in coset_coefficients(t):
        p = tuple(sum(qi * v[k] for qi, v in zip(q, indep)) for k in range(lat.dim))
        out.append((tuple(int(x) for x in p), q))
    return out


# ---------------------------------------------------------------------------
# batched determinants


def _hadamard_ok(arr: np.ndarray) -> bool:
    d = arr.shape[-1]
    if arr.size == 0:
        return True
    mx = int(np.abs(arr).max())
    # every Bareiss intermediate is a minor, bounded by (sqrt(d) * max)^d
    bound = (isqrt(d) + 1) ** d * mx ** d
    return bound * bound < 2 ** 62


def batch_det(arr) -> np.ndarray:
    """Exact determinants of a stack of square integer matrices.

    Fraction-free elimination with per-matrix row pivoting, vectorised over
    the leading axis.  Uses int64 when the Hadamard bound allows it and
    Python integers (object arrays) otherwise.
    """
    arr = np.asarray(arr)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("expected an array of square matrices")
    n, d, _ = arr.shape
    if d == 0:
        return np.ones(n, dtype=np.int64)
    dtype = np.int64 if _hadamard_ok(arr) else object
    a = arr.astype(dtype, copy=True)
    sign = np.ones(n, dtype=dtype)
    prev = np.ones(n, dtype=dtype)
    dead = np.zeros(n, dtype=bool)
    idx = np.arange(n)
    for k in range(d - 1):
        nz = a[:, k:, k] != 0
        has = nz.any(axis=1)
        dead |= ~has
        p = nz.argmax(axis=1) + k
        swap = (p != k) & has
        if swap.any():
            s = idx[swap]
            rk = a[s, k].copy()
            a[s, k] = a[s, p[swap]]
            a[s, p[swap]] = rk
            sign[swap] = -sign[swap]
        piv = a[:, k, k].copy()
        piv[dead] = 1
        a[dead] = 0
        sub = piv[:, None, None] * a[:, k + 1:, k + 1:] - a[:, k + 1:, k, None] * a[:, k, None, k + 1:]
        a[:, k + 1:, k + 1:] = sub // prev[:, None, None]
        prev = piv
    out = sign * a[:, d - 1, d - 1]
    out[dead] = 0
    return out


def batch_adjugate(arr) -> np.ndarray:
    """Adjugates of a stack of square integer matrices (``A @ adj == det * I``)."""
    arr = np.asarray(arr)
    n, d, _ = arr.shape
    dtype = np.int64 if _hadamard_ok(arr) else object
    out = np.empty((n, d, d), dtype=dtype)
    if d == 1:
        out[:] = 1
        return out
    rows = list(range(d))
    for i in range(d):
        ri = rows[:i] + rows[i + 1:]
        for j in range(d):
            cj = rows[:j] + rows[j + 1:]
            minor = arr[:, ri][:, :, cj]
            cof = batch_det(minor)
            out[:, j, i] = cof if (i + j) % 2 == 0 else -cof
    return out
