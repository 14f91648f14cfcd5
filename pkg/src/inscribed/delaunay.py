"""Delaunay subdivisions through inscribed polytopes.

Points of ``Q^(d-1)`` lift stereographically to the unit sphere in ``Q^d``.
The facets of the lifted hull that the north pole does not see project to the
Delaunay cells.  Deforming the lifted polytope inside its inscribed cone moves
the configuration while keeping the subdivision normally equivalent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Degenerate, DegenerateSegment, NorthPole, NotSpanning, NotUnitInscribed
from .exact import EXACT, circumcenter_space, dot, mat_vec, norm2, primitive, sub, transpose
from .fan import Fan, normal_fan, normally_equivalent, positively_parallel, tree_transforms
from .polytope import Polytope, affine_rank, convex_hull


# --- stereographic projection ------------------------------------------------------

def stereo_lift(u):
    """``(2u, |u|^2 - 1) / (|u|^2 + 1)`` on the unit sphere, from the north pole ``e_d``."""
    u = tuple(Fraction(x) if not isinstance(x, float) else x for x in u)
    s = norm2(u)
    return tuple(2 * x / (s + 1) for x in u) + ((s - 1) / (s + 1),)


def stereo_project(x):
    """Inverse of ``stereo_lift``; the north pole has no image."""
    x = tuple(Fraction(c) if not isinstance(c, float) else c for c in x)
    if x[-1] == 1:
        raise NorthPole("the north pole projects to infinity")
    return tuple(c / (1 - x[-1]) for c in x[:-1])


def north_pole(d):
    return tuple(Fraction(int(i == d - 1)) for i in range(d))


# --- subdivisions --------------------------------------------------------------------

@dataclass(frozen=True)
class LabelledConfig:
    points: dict             # label -> point

    def __post_init__(self):
        pts = {k: tuple(Fraction(x) if not isinstance(x, float) else x for x in v)
               for k, v in self.points.items()}
        object.__setattr__(self, "points", pts)
        if len(set(pts.values())) != len(pts):
            raise Degenerate("two labels share a point")

    @property
    def labels(self):
        return sorted(self.points)

    @property
    def dim(self):
        return len(next(iter(self.points.values())))


@dataclass(frozen=True)
class DelaunaySubdivision:
    cells: tuple             # frozensets of labels
    hidden_edges: tuple      # frozensets of two labels
    graph: frozenset         # edges of the lifted hull, as label pairs


def lifted_polytope(U: LabelledConfig):
    """``(hull of the lifted points, label of each hull vertex)``."""
    lifted = {k: stereo_lift(v) for k, v in U.points.items()}
    P = convex_hull(list(lifted.values()))
    back = {v: k for k, v in lifted.items()}
    return P, [back[v] for v in P.vertices]


def delaunay_subdivision(U: LabelledConfig) -> DelaunaySubdivision:
    if affine_rank(list(U.points.values())) != U.dim:
        raise NotSpanning("points do not affinely span their space")
    P, label = lifted_polytope(U)
    if P.dim < U.dim + 1:  # all points on one sphere: a single cell
        graph = frozenset(frozenset(label[i] for i in e) for e in P.edges())
        return DelaunaySubdivision((frozenset(label),), (), graph)
    N = north_pole(U.dim + 1)
    cells = [f for f in P.facets if dot(f.normal, N) < f.offset]
    cell_labels = tuple(sorted((frozenset(label[i] for i in f.vertices) for f in cells), key=sorted))
    graph = frozenset(frozenset(label[i] for i in e) for e in P.edges())
    covered = {frozenset(e) for e in P.edges() if any(e <= f.vertices for f in cells)}
    hidden = tuple(sorted((frozenset(label[i] for i in e) for e in P.edges() if e not in covered), key=sorted))
    return DelaunaySubdivision(cell_labels, hidden, graph)


def empty_circumsphere(U: LabelledConfig, cell) -> bool:
    """No label lies strictly inside the sphere through the cell's points."""
    pts = [U.points[k] for k in cell]
    sphere = circumcenter_space(pts)
    if sphere is None:
        return False
    center, r2 = sphere[0].point, sphere[1]
    return all(norm2(sub(p, center)) >= r2 for p in U.points.values())


# --- visibility --------------------------------------------------------------------

def _check_unit(P: Polytope):
    if any(norm2(v) != 1 for v in P.vertices):
        raise NotUnitInscribed("vertices must lie on the unit sphere centered at the origin")


@dataclass(frozen=True)
class Visibility:
    visible: frozenset       # facets (vertex-index sets) seen from xi
    ties: frozenset          # facets whose hyperplane passes through xi (counted as not visible)


def visibility_complex(P: Polytope, xi) -> Visibility:
    """Facets whose hyperplane separates ``xi`` from ``P``."""
    _check_unit(P)
    xi = tuple(Fraction(x) for x in xi)
    if norm2(xi) != 1:
        raise NotUnitInscribed("xi must lie on the unit sphere")
    if xi in set(P.vertices):
        raise Degenerate("xi is a vertex of the polytope")
    visible, ties = set(), set()
    for f in P.facets:
        s = dot(f.normal, xi) - f.offset
        if s > 0:
            visible.add(f.vertices)
        elif s == 0:
            ties.add(f.vertices)
    return Visibility(frozenset(visible), frozenset(ties))


# --- co-circularity and normal equivalence --------------------------------------------

def positively_co_circular(seg, seg2) -> bool:
    """Lifted chords of the oriented segments point the same way."""
    chords = []
    for p, q in (seg, seg2):
        if tuple(p) == tuple(q):
            raise DegenerateSegment("segment endpoints coincide")
        chords.append(sub(stereo_lift(q), stereo_lift(p)))
    return positively_parallel(chords[0], chords[1], EXACT)


def delaunay_normally_equivalent(U: LabelledConfig, U2: LabelledConfig) -> bool:
    """Same labelled edge graph, and every edge positively co-circular with its partner."""
    if set(U.points) != set(U2.points):
        return False
    D, D2 = delaunay_subdivision(U), delaunay_subdivision(U2)
    if D.graph != D2.graph:
        return False
    for e in D.graph:
        a, b = sorted(e)
        if not positively_co_circular((U.points[a], U.points[b]), (U2.points[a], U2.points[b])):
            return False
    return True


def lifted_hulls_normally_equivalent(U: LabelledConfig, U2: LabelledConfig) -> bool:
    """Normal equivalence of the lifted hulls, matching vertices by label."""
    P, lab = lifted_polytope(U)
    Q, lab2 = lifted_polytope(U2)
    match = normally_equivalent(P, Q)
    return match is not None and all(lab[i] == lab2[j] for i, j in match.items())


# --- the equivalence arrangement -----------------------------------------------------

@dataclass(frozen=True)
class PulledHyperplane:
    ray: tuple               # ray of the fan (unnormalized)
    region: object           # region the ray was reached in
    normal: tuple            # t_W^{-1} applied to the ray
    offset: object           # <ray, xi>; the open side H^- is <normal, x> < offset

    def below(self, x):
        return dot(self.normal, x) < self.offset


def fan_rays(F: Fan):
    """``{primitive ray: first region containing it}`` from the region generators."""
    if F.generators is None:
        raise NotSpanning("fan has no region generators")
    rays = {}
    for R in sorted(F.generators):
        for g in F.generators[R]:
            rays.setdefault(primitive(g), R)
    return rays


def equivalence_arrangement(F: Fan, R0, xi):
    """Hyperplanes ``t_W^{-1}(H_r)``, one per ray ``r``, with ``W`` a tree path to a region at ``r``."""
    xi = tuple(Fraction(x) for x in xi)
    T = tree_transforms(F, R0)
    out = []
    for r, R in sorted(fan_rays(F).items()):
        normal = mat_vec(transpose(T[R]), r)
        out.append(PulledHyperplane(r, R, normal, dot(r, xi)))
    return out


def arrangement_equivalent(H, x, y) -> bool:
    """No hyperplane has exactly one of ``x, y`` on its open side."""
    return all(h.below(x) == h.below(y) for h in H)


def same_visibility(P: Polytope, Q: Polytope, xi, R0=0, F=None) -> bool:
    """Arrangement test on the base vertices of two unit-inscribed, normally equivalent polytopes."""
    _check_unit(P)
    _check_unit(Q)
    F = normal_fan(P) if F is None else F
    match = normally_equivalent(P, Q)
    if match is None:
        raise NotUnitInscribed("polytopes are not normally equivalent")
    H = equivalence_arrangement(F, R0, xi)
    return arrangement_equivalent(H, P.vertices[R0], Q.vertices[match[R0]])


def same_visibility_direct(P: Polytope, Q: Polytope, xi) -> bool:
    """Compare the visible facets of ``P`` and ``Q`` through their common normal fan."""
    match = normally_equivalent(P, Q)
    if match is None:
        raise NotUnitInscribed("polytopes are not normally equivalent")
    vp = visibility_complex(P, xi).visible
    vq = visibility_complex(Q, xi).visible
    return {frozenset(match[i] for i in f) for f in vp} == set(vq)


def unit_point_in_region(F: Fan, R, candidates):
    """First lifted candidate strictly inside region ``R`` (open-cone wall test)."""
    for u in candidates:
        x = stereo_lift(u)
        if all(dot(F.normal(R, S), x) < 0 for S in F.neighbors(R)):
            return x
    return None
