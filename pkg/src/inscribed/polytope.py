"""Polytopes given by vertices: hulls, faces, Minkowski sums, circumspheres."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import BadParams, DimensionMismatch
from .exact import (
    EXACT, FLOAT, LinearSubspace, ScalarMode, add, circumcenter_space, dot, kernel, primitive,
    rank, rref, solve, sub, vector,
)


@dataclass(frozen=True)
class Facet:
    vertices: frozenset  # indices into Polytope.vertices
    normal: tuple        # outer normal, orthogonal to the lineality of the normal fan
    offset: object       # <normal, v> for every vertex v of the facet


@dataclass(frozen=True)
class FaceLattice:
    facets: tuple
    faces_by_dim: dict

    def faces(self, k):
        return self.faces_by_dim.get(k, ())


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of ``vertices``; build it with ``convex_hull``."""

    vertices: tuple
    facets: tuple
    dim: int  # dimension of the affine hull
    mode: ScalarMode = EXACT

    @property
    def ambient_dim(self):
        return len(self.vertices[0])

    def __len__(self):
        return len(self.vertices)

    def index(self, v):
        return self.vertices.index(tuple(v))

    def same_as(self, other):
        """Equal vertex sets (exactly, or within tolerance in float mode)."""
        if len(self.vertices) != len(other.vertices):
            return False
        if self.mode.exact and other.mode.exact:
            return set(self.vertices) == set(other.vertices)
        return all(any(np.allclose(v, w, atol=1e-7) for w in other.vertices) for v in self.vertices)

    @cached_property
    def lattice(self):
        return face_lattice(self)

    @cached_property
    def direction_space(self):
        """Linear space parallel to the affine hull."""
        v0 = self.vertices[0]
        return LinearSubspace.span([sub(v, v0) for v in self.vertices[1:]], self.ambient_dim, self.mode)

    def edges(self):
        return self.lattice.faces(1)

    def cyclic_order(self, face):
        """Vertices of a 2-face in boundary order, starting at the smallest index."""
        face = frozenset(face)
        nbrs = {v: [] for v in face}
        for e in self.edges():
            if e <= face:
                a, b = sorted(e)
                nbrs[a].append(b)
                nbrs[b].append(a)
        start = min(face)
        order = [start, min(nbrs[start])]
        while True:
            prev, cur = order[-2], order[-1]
            nxt = next(w for w in nbrs[cur] if w != prev)
            if nxt == start:
                return tuple(order)
            order.append(nxt)


# --- hull -------------------------------------------------------------------

def _dedupe(points):
    seen = {}
    for p in points:
        seen.setdefault(tuple(p), None)
    return list(seen)


def convex_hull(points, mode=None):
    """Vertices and facets of the convex hull of ``points``.

    Exact mode runs a beneath-beyond insertion on integer coordinates inside
    the affine hull; float mode delegates to qhull.
    """
    if mode is None:
        mode = FLOAT if any(isinstance(x, float) for p in points for x in p) else EXACT
    pts = _dedupe(vector(p, mode) for p in points)
    if not pts:
        raise BadParams("convex hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of different dimensions")
    if mode.exact:
        return _exact_hull(pts, n)
    return _float_hull(pts, n, mode)


def _project_to(normal_coords, pivots, L, n):
    """Ambient functional agreeing with ``normal_coords`` on the chosen coordinates, projected to ``L``."""
    full = [Fraction(0)] * n
    for c, p in zip(normal_coords, pivots):
        full[p] = Fraction(c)
    if L.dim == n:
        return tuple(full)
    B = L.basis
    gram = tuple(tuple(dot(a, b) for b in B) for a in B)
    w = solve(gram, tuple(dot(b, full) for b in B))
    out = [Fraction(0)] * n
    for wi, b in zip(w, B):
        out = [o + wi * bj for o, bj in zip(out, b)]
    return primitive(out)


def _exact_hull(pts, n):
    v0 = pts[0]
    diffs = [sub(p, v0) for p in pts[1:]]
    R, pivots = rref(tuple(diffs), n) if diffs else ((), [])
    k = len(pivots)
    if k == 0:
        return Polytope((v0,), (), 0, EXACT)
    L = LinearSubspace(n, R, EXACT)
    den = 1
    for p in pts:
        for c in pivots:
            den = math.lcm(den, p[c].denominator)
    red = [tuple(int(p[c] * den) for c in pivots) for p in pts]
    simplices = _beneath_beyond(red, k)
    # merge coplanar simplices into facets
    groups = {}
    for (a, b) in simplices.values():
        groups.setdefault((a, b), None)
    used = sorted({i for s in simplices for i in s})
    on = {}
    for (a, b) in groups:
        on[(a, b)] = frozenset(i for i in used if sum(x * y for x, y in zip(a, red[i])) == b)
    vert = []
    for i in used:
        normals = [a for (a, b), s in on.items() if i in s]
        if rank(tuple(normals), k) == k:
            vert.append(i)
    new_index = {old: j for j, old in enumerate(vert)}
    facets = []
    for (a, b), s in on.items():
        vs = frozenset(new_index[i] for i in s if i in new_index)
        normal = _project_to(a, pivots, L, n)
        some = pts[vert[min(vs)]]
        facets.append(Facet(vs, normal, dot(normal, some)))
    facets.sort(key=lambda f: sorted(f.vertices))
    return Polytope(tuple(pts[i] for i in vert), tuple(facets), k, EXACT)


def _facet_plane(points, inner):
    """Primitive integer normal and offset of the hyperplane through ``points``, oriented away from ``inner``."""
    p0 = points[0]
    rows = tuple(tuple(Fraction(x - y) for x, y in zip(p, p0)) for p in points[1:])
    K = kernel(rows, len(p0)).basis
    a = tuple(int(x) for x in K[0])
    b = sum(x * y for x, y in zip(a, p0))
    if sum(x * y for x, y in zip(a, inner)) > b:
        a = tuple(-x for x in a)
        b = -b
    return a, b


def _beneath_beyond(red, k):
    """Simplicial boundary of the hull of integer points spanning R^k.

    Returns ``{sorted index tuple: (normal, offset)}``.
    """
    order = list(range(len(red)))
    rng = random.Random(0)
    rest = order[1:]
    rng.shuffle(rest)
    order = [0] + rest
    base = [order[0]]
    for i in order[1:]:
        if len(base) == k + 1:
            break
        cand = base + [i]
        diffs = tuple(tuple(Fraction(x - y) for x, y in zip(red[j], red[base[0]])) for j in cand[1:])
        if rank(diffs, k) == len(cand) - 1:
            base.append(i)
    # centroid of the first simplex stays interior for the whole run
    inner = [Fraction(sum(red[j][c] for j in base), k + 1) for c in range(k)]
    facets = {}
    ridges = {}

    def add_facet(idx):
        idx = tuple(sorted(idx))
        facets[idx] = _facet_plane([red[j] for j in idx], inner)
        for r in itertools.combinations(idx, k - 1):
            ridges.setdefault(r, set()).add(idx)

    def drop_facet(idx):
        del facets[idx]
        for r in itertools.combinations(idx, k - 1):
            s = ridges[r]
            s.discard(idx)
            if not s:
                del ridges[r]

    for j in base:
        add_facet([i for i in base if i != j])
    in_base = set(base)
    for p in order:
        if p in in_base:
            continue
        q = red[p]
        visible = [f for f, (a, b) in facets.items() if sum(x * y for x, y in zip(a, q)) > b]
        if not visible:
            continue
        vis = set(visible)
        horizon = []
        for f in visible:
            for r in itertools.combinations(f, k - 1):
                if any(g not in vis for g in ridges[r]):
                    horizon.append(r)
        for f in visible:
            drop_facet(f)
        for r in horizon:
            add_facet(r + (p,))
    return facets


def _float_hull(pts, n, mode):
    from scipy.spatial import ConvexHull

    X = np.array(pts, dtype=float)
    c = X.mean(axis=0)
    Y = X - c
    scale = max(1.0, float(np.abs(Y).max()))
    _, s, vt = np.linalg.svd(Y, full_matrices=False)
    k = int((s > mode.tol * scale * max(1, len(pts))).sum())
    if k == 0:
        return Polytope((pts[0],), (), 0, mode)
    basis = vt[:k]
    Z = Y @ basis.T
    if k == 1:
        lo, hi = int(Z[:, 0].argmin()), int(Z[:, 0].argmax())
        idx = sorted({lo, hi})
        verts = tuple(pts[i] for i in idx)
        facets = []
        for j, i in enumerate(idx):
            sgn = 1.0 if i == hi else -1.0
            normal = tuple(float(x) for x in sgn * basis[0])
            facets.append(Facet(frozenset([j]), normal, dot(normal, verts[j])))
        return Polytope(verts, tuple(facets), 1, mode)
    hull = ConvexHull(Z)
    groups = []
    for eq in hull.equations:
        a, b = eq[:-1], -eq[-1]
        if not any(np.allclose(a, g[0], atol=1e-7) and abs(b - g[1]) <= 1e-7 * scale for g in groups):
            groups.append((a, b))
    on = []
    for a, b in groups:
        on.append(frozenset(i for i in range(len(pts)) if abs(Z[i] @ a - b) <= 1e-7 * scale))
    vert = [i for i in range(len(pts))
            if np.linalg.matrix_rank(np.array([a for (a, _), s in zip(groups, on) if i in s]).reshape(-1, k),
                                     tol=1e-7) == k]
    new_index = {old: j for j, old in enumerate(vert)}
    verts = tuple(pts[i] for i in vert)
    facets = []
    for (a, b), s in zip(groups, on):
        vs = frozenset(new_index[i] for i in s if i in new_index)
        normal = tuple(float(x) for x in basis.T @ a)
        facets.append(Facet(vs, normal, dot(normal, verts[min(vs)])))
    facets.sort(key=lambda f: sorted(f.vertices))
    return Polytope(verts, tuple(facets), k, mode)


# --- faces ------------------------------------------------------------------

def affine_rank(points, mode=EXACT):
    """Dimension of the affine hull of ``points``."""
    pts = list(points)
    if len(pts) <= 1:
        return 0 if pts else -1
    return rank(tuple(sub(p, pts[0]) for p in pts[1:]), len(pts[0]), mode)


def face_lattice(P: Polytope) -> FaceLattice:
    """All faces as vertex-index sets, closed under intersection of facets."""
    facet_sets = [f.vertices for f in P.facets]
    faces = set(facet_sets)
    frontier = list(faces)
    while frontier:
        new = []
        for F in frontier:
            for G in facet_sets:
                H = F & G
                if H and H not in faces:
                    faces.add(H)
                    new.append(H)
        frontier = new
    faces.add(frozenset(range(len(P.vertices))))
    by_dim = {}
    for F in faces:
        d = affine_rank([P.vertices[i] for i in F], P.mode)
        by_dim.setdefault(d, []).append(F)
    for d in by_dim:
        by_dim[d].sort(key=sorted)
    return FaceLattice(P.facets, {d: tuple(v) for d, v in sorted(by_dim.items())})


def support_face(P: Polytope, c):
    """Indices of the vertices maximizing ``<c, .>``."""
    vals = [dot(c, v) for v in P.vertices]
    best = max(vals)
    if P.mode.exact:
        return frozenset(i for i, x in enumerate(vals) if x == best)
    sc = max([1.0] + [abs(x) for x in vals])
    return frozenset(i for i, x in enumerate(vals) if best - x <= P.mode.tol * sc)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("summands live in different dimensions")
    mode = P.mode if P.mode == Q.mode else FLOAT
    return convex_hull([add(p, q) for p in P.vertices for q in Q.vertices], mode)


def is_inscribed(P: Polytope):
    """``(center, radius2)`` with the center in the affine hull, or None."""
    res = circumcenter_space(P.vertices, P.mode)
    if res is None:
        return None
    space, r2 = res
    return space.point, r2


def scaled(P: Polytope, c) -> Polytope:
    return convex_hull([tuple(c * x for x in v) for v in P.vertices], P.mode)


def translated(P: Polytope, t) -> Polytope:
    return convex_hull([add(v, t) for v in P.vertices], P.mode)


def transformed(P: Polytope, M) -> Polytope:
    return convex_hull([tuple(dot(row, v) for row in M) for v in P.vertices], P.mode)


# --- families ----------------------------------------------------------------

def simplex(d):
    if d < 1:
        raise BadParams("simplex dimension must be positive")
    zero = [0] * d
    pts = [zero] + [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    return convex_hull(pts)


def crosspolytope(d):
    if d < 1:
        raise BadParams("crosspolytope dimension must be positive")
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append([s if j == i else 0 for j in range(d)])
    return convex_hull(pts)


def cube(d):
    if d < 1:
        raise BadParams("cube dimension must be positive")
    return convex_hull(list(itertools.product((0, 1), repeat=d)))


def hypersimplex(n, k):
    if not 0 < k < n:
        raise BadParams("hypersimplex needs 0 < k < n")
    pts = [[1 if i in c else 0 for i in range(n)] for c in itertools.combinations(range(n), k)]
    return convex_hull(pts)


def permutahedron(z):
    z = list(z)
    if list(sorted(z)) != z:
        raise BadParams("permutahedron parameters must be sorted")
    return convex_hull(list(itertools.permutations(z)))


def regular_ngon(n, radius=1.0, rotation=0.0):
    if n < 3:
        raise BadParams("a polygon needs at least 3 vertices")
    pts = [(radius * math.cos(rotation + 2 * math.pi * i / n), radius * math.sin(rotation + 2 * math.pi * i / n))
           for i in range(n)]
    return convex_hull(pts, FLOAT)


def family(name, *params):
    """Named polytope families by string, for the command line."""
    table = {
        "simplex": simplex, "crosspolytope": crosspolytope, "cube": cube,
        "hypersimplex": hypersimplex, "permutahedron": permutahedron, "regular_ngon": regular_ngon,
    }
    if name not in table:
        raise BadParams(f"unknown family {name!r}")
    return table[name](*params)


def sphere_points(r2, d=3):
    """All integer points with squared norm ``r2``."""
    bound = math.isqrt(r2)
    return [p for p in itertools.product(range(-bound, bound + 1), repeat=d) if sum(x * x for x in p) == r2]

