"""Rational vectors and matrices, elimination, subspaces, reflections.

Vectors are tuples and matrices are tuples of row tuples.  In exact mode the
entries are ``Fraction``; in float mode they are ``float`` and every zero test
goes through the mode's tolerance.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import kernels
from .errors import BadParams, DimensionMismatch, IrrationalInput, NotOrthogonal, NotPsd, ZeroNormal


@dataclass(frozen=True)
class ScalarMode:
    """Exact rational arithmetic, or floats with a relative tolerance."""

    exact: bool = True
    tol: float = 1e-9

    def __post_init__(self):
        if not self.exact and not self.tol > 0:
            raise BadParams("float tolerance must be positive")

    @classmethod
    def float(cls, tol=1e-9):
        return cls(False, tol)

    def scalar(self, x):
        if self.exact:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, bool):
                raise IrrationalInput(f"not a number: {x!r}")
            if isinstance(x, (int, np.integer)):
                return Fraction(int(x))
            if isinstance(x, str):
                return Fraction(x)
            raise IrrationalInput(f"exact mode needs int, Fraction or 'p/q' strings, got {x!r}")
        if isinstance(x, str):
            return float(Fraction(x))
        return float(x)

    def is_zero(self, x, scale=1.0):
        if self.exact:
            return x == 0
        return abs(x) <= self.tol * max(1.0, scale)

    def sign(self, x, scale=1.0):
        if self.is_zero(x, scale):
            return 0
        return 1 if x > 0 else -1

    def close(self, a, b, scale=1.0):
        return self.is_zero(a - b, scale)


EXACT = ScalarMode()
FLOAT = ScalarMode.float()


def vector(xs, mode=EXACT):
    return tuple(mode.scalar(x) for x in xs)


def matrix(rows, mode=EXACT):
    return tuple(vector(row, mode) for row in rows)


def mode_of(*vectors):
    """Float mode if any entry is a float, exact otherwise."""
    for v in vectors:
        for x in v:
            if isinstance(x, float):
                return FLOAT
    return EXACT


def zero_vector(n, mode=EXACT):
    return (Fraction(0),) * n if mode.exact else (0.0,) * n


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def norm2(v):
    return dot(v, v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def is_zero_vector(v, mode=EXACT):
    s = max((abs(x) for x in v), default=0)
    return all(mode.is_zero(x, 1.0) for x in v) if mode.exact else s <= mode.tol


def vectors_close(u, v, mode=EXACT):
    if mode.exact:
        return tuple(u) == tuple(v)
    sc = max([1.0] + [abs(x) for x in u] + [abs(x) for x in v])
    return all(abs(a - b) <= mode.tol * sc for a, b in zip(u, v))


def primitive(v):
    """Positive rescaling of a rational vector to coprime integer entries."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(a // g) for a in ints)


def identity(n, mode=EXACT):
    one, zero = (Fraction(1), Fraction(0)) if mode.exact else (1.0, 0.0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(M, ncols=None):
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def mat_vec(A, v):
    return tuple(dot(row, v) for row in A)


def mat_sub(A, B):
    return tuple(sub(a, b) for a, b in zip(A, B))


# --- elimination -----------------------------------------------------------

def _integer_rows(M):
    out = []
    for row in M:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rref(M, ncols=None, mode=EXACT):
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    n = len(M[0]) if M else (ncols or 0)
    if ncols is not None and M and ncols != n:
        raise DimensionMismatch(f"expected {ncols} columns, got {n}")
    if not M or n == 0:
        return (), []
    if mode.exact:
        rows, pivots, det = kernels.rref(_integer_rows(M), n)
        reduced = tuple(tuple(Fraction(x, det) for x in rows[k]) for k in range(len(pivots)))
        return reduced, pivots
    return _rref_float(M, n, mode.tol)


def _rref_float(M, n, tol):
    a = np.array(M, dtype=float)
    m = a.shape[0]
    thresh = tol * max(1.0, float(np.abs(a).max()))
    pivots = []
    k = 0
    for c in range(n):
        if k == m:
            break
        s = k + int(np.argmax(np.abs(a[k:, c])))
        if abs(a[s, c]) <= thresh:
            a[k:, c] = 0.0
            continue
        a[[k, s]] = a[[s, k]]
        a[k] /= a[k, c]
        for i in range(m):
            if i != k:
                a[i] -= a[i, c] * a[k]
        a[:, c] = 0.0
        a[k, c] = 1.0
        pivots.append(c)
        k += 1
    return tuple(tuple(float(x) for x in a[i]) for i in range(k)), pivots


def rank(M, ncols=None, mode=EXACT):
    return len(rref(M, ncols, mode)[1])


def kernel(M, ncols=None, mode=EXACT):
    """Basis of ``{x : M x = 0}`` as a ``LinearSubspace``."""
    n = len(M[0]) if M else ncols
    if n is None:
        raise DimensionMismatch("kernel of an empty matrix needs ncols")
    R, pivots = rref(M, n, mode)
    free = [c for c in range(n) if c not in set(pivots)]
    zero, one = (Fraction(0), Fraction(1)) if mode.exact else (0.0, 1.0)
    basis = []
    for f in free:
        x = [zero] * n
        x[f] = one
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(primitive(x) if mode.exact else tuple(x))
    return LinearSubspace(n, tuple(basis), mode)


def solve(M, b, mode=EXACT):
    """One solution of ``M x = b`` (free variables set to zero), or None."""
    if not M:
        return None if any(not mode.is_zero(x) for x in b) else ()
    n = len(M[0])
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(M, b))
    R, pivots = rref(aug, n + 1, mode)
    if pivots and pivots[-1] == n:
        return None
    zero = Fraction(0) if mode.exact else 0.0
    x = [zero] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    if not mode.exact:
        sc = max([1.0] + [abs(v) for v in b])
        resid = max((abs(r) for r in sub(mat_vec(M, x), b)), default=0.0)
        if resid > 1e3 * mode.tol * sc:
            return None
    return tuple(x)


@dataclass(frozen=True, eq=False)
class LinearSubspace:
    """Subspace of R^ambient with a linearly independent spanning list."""

    ambient: int
    basis: tuple
    mode: ScalarMode = EXACT

    @classmethod
    def span(cls, vectors, ambient, mode=EXACT):
        R, _ = rref(tuple(tuple(v) for v in vectors), ambient, mode)
        return cls(ambient, R, mode)

    @classmethod
    def whole(cls, ambient, mode=EXACT):
        return cls(ambient, identity(ambient, mode), mode)

    @classmethod
    def zero(cls, ambient, mode=EXACT):
        return cls(ambient, (), mode)

    @property
    def dim(self):
        return len(self.basis)

    def canonical(self):
        return rref(self.basis, self.ambient, self.mode)[0]

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        if self.mode.exact and other.mode.exact:
            return self.canonical() == other.canonical()
        return all(other.contains(b) for b in self.basis)

    def __hash__(self):
        return hash((self.ambient, self.dim))

    def contains(self, v):
        if is_zero_vector(v, self.mode):
            return True
        return rank(self.basis + (tuple(v),), self.ambient, self.mode) == self.dim

    def equations(self):
        """Rows spanning the orthogonal complement: ``x`` is in the space iff all vanish on it."""
        if not self.basis:
            return identity(self.ambient, self.mode)
        return kernel(self.basis, self.ambient, self.mode).basis

    def complement(self):
        return LinearSubspace(self.ambient, self.equations(), self.mode)

    def intersect(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        return kernel(self.equations() + other.equations(), self.ambient, self.mode)

    def coordinates(self, v):
        """Coefficients ``y`` with ``sum y_i basis_i = v``, or None."""
        return solve(transpose(self.basis, self.ambient), tuple(v), self.mode)

    def combine(self, coeffs):
        out = zero_vector(self.ambient, self.mode)
        for c, b in zip(coeffs, self.basis):
            out = add(out, scale(c, b))
        return out


@dataclass(frozen=True)
class AffineSubspace:
    point: tuple
    direction: LinearSubspace

    @property
    def dim(self):
        return self.direction.dim

    def contains(self, x):
        return self.direction.contains(sub(x, self.point))


# --- Gale transforms -------------------------------------------------------

def gale_transform(A, mode=EXACT):
    """Rows spanning ``ker A``; equivalently ``ker G = im A^t``."""
    n = len(A[0]) if A else 0
    return kernel(A, n, mode).basis


def _check_symmetric(S, mode):
    n = len(S)
    for i in range(n):
        if len(S[i]) != n:
            raise DimensionMismatch("matrix is not square")
        for j in range(i):
            if not mode.close(S[i][j], S[j][i]):
                raise NotPsd("matrix is not symmetric")


def check_psd(S, mode=EXACT):
    """Raise ``NotPsd`` unless the symmetric matrix is positive semidefinite."""
    _check_symmetric(S, mode)
    M = [list(row) for row in S]
    active = list(range(len(M)))
    sc = max([1.0] + [abs(float(x)) for row in S for x in row])
    while active:
        for i in active:
            if mode.sign(M[i][i], sc) < 0:
                raise NotPsd(f"negative pivot at index {i}")
        piv = next((i for i in active if mode.sign(M[i][i], sc) > 0), None)
        if piv is None:
            if any(not mode.is_zero(M[i][j], sc) for i in active for j in active):
                raise NotPsd("zero diagonal with nonzero off-diagonal entry")
            return
        active.remove(piv)
        d = M[piv][piv]
        for j in active:
            f = M[j][piv] / d
            for k in active:
                M[j][k] -= f * M[piv][k]


def psd_gale(A_gram, mode=EXACT):
    """Symmetric psd ``G`` with ``A G = 0`` and ``A + G`` of full rank."""
    A_gram = tuple(tuple(row) for row in A_gram)
    check_psd(A_gram, mode)
    n = len(A_gram)
    K = kernel(A_gram, n, mode).basis
    zero = Fraction(0) if mode.exact else 0.0
    return tuple(tuple(sum((k[i] * k[j] for k in K), zero) for j in range(n)) for i in range(n))


# --- reflections -----------------------------------------------------------

def reflect(x, alpha):
    """Reflection of ``x`` in the hyperplane orthogonal to ``alpha``."""
    aa = norm2(alpha)
    if aa == 0:
        raise ZeroNormal("reflection normal is zero")
    num = 2 * dot(alpha, x)
    c = Fraction(num, aa) if isinstance(num, int) and isinstance(aa, int) else num / aa
    return tuple(xi - c * ai for xi, ai in zip(x, alpha))


def reflection_matrix(alpha, mode=EXACT):
    aa = norm2(alpha)
    if aa == 0:
        raise ZeroNormal("reflection normal is zero")
    if mode.exact:
        aa = Fraction(aa)
    n = len(alpha)
    one = Fraction(1) if mode.exact else 1.0
    return tuple(
        tuple((one if i == j else 0 * one) - 2 * alpha[i] * alpha[j] / aa for j in range(n))
        for i in range(n))


def is_orthogonal(M, mode=EXACT):
    n = len(M)
    P = matmul(transpose(M), M)
    I = identity(n, mode)
    return all(mode.close(P[i][j], I[i][j]) for i in range(n) for j in range(n))


# --- circumspheres ---------------------------------------------------------

def circumcenter_space(points, mode=EXACT):
    """All centers of spheres through ``points``.

    Returns ``(AffineSubspace, radius2)`` whose point is the unique center in
    the affine hull of the points, or None when no sphere passes through all.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise BadParams("need at least one point")
    n = len(pts[0])
    v0 = pts[0]
    diffs = [sub(p, v0) for p in pts[1:]]
    dirs = LinearSubspace.span(diffs, n, mode).basis if diffs else ()
    if not dirs:
        return AffineSubspace(v0, LinearSubspace.whole(n, mode)), (Fraction(0) if mode.exact else 0.0)
    # center = v0 + sum c_j dirs_j; 2<p - v0, center - v0> = |p - v0|^2
    rows = tuple(tuple(2 * dot(d, e) for e in dirs) for d in diffs)
    rhs = tuple(norm2(d) for d in diffs)
    c = solve(rows, rhs, mode)
    if c is None:
        return None
    center = v0
    for cj, e in zip(c, dirs):
        center = add(center, scale(cj, e))
    r2 = norm2(sub(center, v0))
    if not mode.exact:
        sc = max(1.0, r2)
        if any(abs(norm2(sub(center, p)) - r2) > 1e3 * mode.tol * sc for p in pts):
            return None
    return AffineSubspace(center, kernel(diffs, n, mode)), r2


# --- finite groups ---------------------------------------------------------

def _group_key(M, mode):
    if mode.exact:
        return M
    digits = max(1, int(-math.log10(mode.tol)) - 2)
    return tuple(tuple(round(x, digits) + 0.0 for x in row) for row in M)


def group_closure(generators, max_order, mode=EXACT, deadline=None):
    """The group generated by orthogonal matrices, or None if it exceeds ``max_order``.

    ``deadline`` (seconds) cancels long enumerations, also returning None.
    """
    if max_order < 1:
        raise BadParams("max_order must be positive")
    gens = [tuple(tuple(row) for row in g) for g in generators]
    for g in gens:
        if not is_orthogonal(g, mode):
            raise NotOrthogonal("generator is not orthogonal")
    if not gens:
        return frozenset()
    n = len(gens[0])
    start = time.monotonic()
    ident = identity(n, mode)
    seen = {_group_key(ident, mode): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = matmul(g, h)
                key = _group_key(p, mode)
                if key not in seen:
                    seen[key] = p
                    nxt.append(p)
                    if len(seen) > max_order:
                        return None
        if deadline is not None and time.monotonic() - start > deadline:
            return None
        frontier = nxt
    return frozenset(seen.values()) if mode.exact else frozenset(seen.keys())
