"""Inscribed and virtually inscribed realizations of fans.

Two coordinate systems describe the same space of virtually inscribed
polytopes of a fan:

* the *based* space: seeds ``v`` in the base region whose reflection
  trajectory closes up along every cycle of the dual graph;
* the *lambda* space: edge weights ``lambda`` with ``v_S - v_R = lambda_RS *
  alpha_RS`` that close up and are realizable by a reflection trajectory on
  each fundamental cycle.

``lambda_vertex_duality`` converts between them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    Degenerate, NotACoarsening, NotInscribed, NotInSpace, NotInvariantFan, NotNormallyEquivalent,
    NotUnitInscribed,
)
from .exact import (
    FLOAT, LinearSubspace, add, dot, gale_transform, group_closure, is_zero_vector, kernel,
    mat_sub, mat_vec, matmul, norm2, reflection_matrix, scale, solve, sub,
    vectors_close, zero_vector,
)
from .fan import Fan, contract_walls, cycle_basis, normal_fan, normally_equivalent, tree_transforms
from .lp import max_support_point, strict_positive_point
from .polytope import Polytope, convex_hull, is_inscribed, support_face, transformed


@dataclass(frozen=True)
class BasedInscribedSpace:
    base_region: object
    subspace: LinearSubspace

    @property
    def dim(self):
        return self.subspace.dim


@dataclass(frozen=True)
class LambdaInscribedSpace:
    edges: tuple          # undirected walls (R, S) with R < S, in coordinate order
    subspace: LinearSubspace

    @property
    def dim(self):
        return self.subspace.dim


def _base(F, R0):
    return F.base_region if R0 is None else R0


# --- based space ----------------------------------------------------------------

def based_inscribed_space(F: Fan, R0=None, lineality=None) -> BasedInscribedSpace:
    """Seeds in ``R0`` fixed by every closed-walk transform.

    Closed walks at ``R0`` are generated by the tree-conjugated fundamental
    cycles, so it suffices that ``s_RS t_R v = t_S v`` on every wall, where
    ``t_R`` is the transform of the tree path to ``R``.
    """
    R0 = _base(F, R0)
    T = tree_transforms(F, R0)
    rows = []
    for R, S in F.edges():
        D = mat_sub(matmul(reflection_matrix(F.normal(R, S), F.mode), T[R]), T[S])
        rows.extend(row for row in D if not is_zero_vector(row, F.mode))
    U = kernel(tuple(rows), F.dim, F.mode)
    if lineality:
        U = U.intersect(LinearSubspace.span(lineality, F.dim, F.mode).complement())
    return BasedInscribedSpace(R0, U)


def in_based_space(F: Fan, v, R0=None):
    R0 = _base(F, R0)
    T = tree_transforms(F, R0)
    for R, S in F.edges():
        a = mat_vec(matmul(reflection_matrix(F.normal(R, S), F.mode), T[R]), v)
        if not vectors_close(a, mat_vec(T[S], v), F.mode):
            return False
    return True


# --- lambda space ---------------------------------------------------------------

def cycle_constraints(F: Fan, walk, index):
    """Rows over edge coordinates for one closed walk: closure and realizability.

    With columns ``a_i`` (the normals along the walk) and weights ``l_i``,
    closure is ``A l = 0``.  Realizability by a reflection trajectory is
    ``G R l = 0``, where ``G`` spans ``ker A`` and ``R`` is the skew Gram
    matrix (``<a_i, a_j>`` above the diagonal, its negative below).  The
    recursion ``q_i = q_{i-1} + l_i a_i`` with
    ``l_i = -2 <a_i, q_{i-1}> / <a_i, a_i>`` gives ``(A^tA - R) l = -2 A^t q_0``,
    and ``G A^t = 0`` leaves ``G R l = 0``: no normalization of the ``a_i`` is needed.
    """
    steps = list(zip(walk, walk[1:]))
    cols = [F.normal(a, b) for a, b in steps]
    pos = [index[(min(a, b), max(a, b))] for a, b in steps]
    n, E, d = len(cols), len(index), F.dim
    zero = zero_vector(1, F.mode)[0]

    def spread(coeffs):
        row = [zero] * E
        for c, p in zip(coeffs, pos):
            row[p] += c
        return tuple(row)

    A = tuple(tuple(cols[i][c] for i in range(n)) for c in range(d))
    rows = [spread(r) for r in A]
    gram = [[dot(cols[i], cols[j]) for j in range(n)] for i in range(n)]
    skew = [[gram[i][j] if i < j else (-gram[i][j] if i > j else zero) for j in range(n)] for i in range(n)]
    for g in gale_transform(A, F.mode):
        support = [(i, x) for i, x in enumerate(g) if x]  # Gale rows from RREF are sparse
        rows.append(spread([sum((x * skew[i][j] for i, x in support), zero) for j in range(n)]))
    return rows


def edge_index(F: Fan):
    return {e: k for k, e in enumerate(F.edges())}


def covering_walk(F: Fan, root=None):
    """Closed walk from ``root`` crossing every wall: a DFS tour with back-and-forth detours."""
    root = F.base_region if root is None else root
    seen = {root}
    walk = [root]
    stack = [(root, iter(F.neighbors(root)))]
    tree = set()
    while stack:
        R, it = stack[-1]
        S = next(it, None)
        if S is None:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
            continue
        if S not in seen:
            seen.add(S)
            tree.add(frozenset((R, S)))
            walk.append(S)
            stack.append((S, iter(F.neighbors(S))))
        elif R < S and frozenset((R, S)) not in tree:
            walk.extend((S, R))
    return tuple(walk)


def lambda_inscribed_space(F: Fan, check=True) -> LambdaInscribedSpace:
    """Edge weights that close up and come from one reflection trajectory.

    Each fundamental cycle contributes its closure and realizability rows.
    Those cycles are realized with independent base points, which is too weak
    (a triangular bipyramid passes every triangle), so the same rows are also
    imposed on one closed walk crossing every wall, forcing a shared base
    point.  With ``check`` the result is compared against the image of the
    based space under the duality map; a mismatch raises ``AssertionError``.
    """
    index = edge_index(F)
    rows = []
    for walk in cycle_basis(F).fundamental_cycles:
        rows.extend(cycle_constraints(F, walk, index))
    if index:
        rows.extend(cycle_constraints(F, covering_walk(F), index))
    U = kernel(tuple(rows), len(index), F.mode)
    if check:
        image = lambda_image_of_based(F)
        assert U == image, (
            f"lambda system has dim {U.dim}, reflection kernel image has dim {image.dim}")
    return LambdaInscribedSpace(tuple(F.edges()), U)


def lambda_image_of_based(F: Fan, R0=None) -> LinearSubspace:
    """Image of the based space under ``v -> lambda(v)``."""
    B = based_inscribed_space(F, R0)
    return LinearSubspace.span([lambda_of_vector(F, b, R0, check=False) for b in B.subspace.basis],
                               len(F.edges()), F.mode)


def lambda_of_vector(F: Fan, v, R0=None, check=True):
    """Weights of the trajectory through ``v``: ``lambda_RS = -2<a_RS, v_R>/<a_RS, a_RS>``."""
    R0 = _base(F, R0)
    if check and not in_based_space(F, v, R0):
        raise NotInSpace("seed does not close up along every cycle")
    T = tree_transforms(F, R0)
    out = []
    for R, S in F.edges():
        a = F.normal(R, S)
        out.append(-2 * dot(a, mat_vec(T[R], v)) / norm2(a))
    return tuple(out)


def vector_of_lambda(F: Fan, lam, R0=None, lineality=None):
    """Seed in ``R0`` (in the span of its wall normals) with weights ``lam``."""
    R0 = _base(F, R0)
    index = edge_index(F)
    nbrs = F.neighbors(R0)
    alphas = [F.normal(R0, S) for S in nbrs]
    targets = [-lam[index[(min(R0, S), max(R0, S))]] * norm2(a) / 2 for S, a in zip(nbrs, alphas)]
    if not alphas:
        return zero_vector(F.dim, F.mode)
    gram = tuple(tuple(dot(a, b) for b in alphas) for a in alphas)
    c = solve(gram, tuple(targets), F.mode)
    if c is None:
        raise NotInSpace("weights at the base region are inconsistent")
    v = zero_vector(F.dim, F.mode)
    for ci, a in zip(c, alphas):
        v = add(v, scale(ci, a))
    if not vectors_close(lambda_of_vector(F, v, R0, check=False), tuple(lam), F.mode) or \
            not in_based_space(F, v, R0):
        raise NotInSpace("weights are not those of a closed trajectory")
    return v


def lambda_vertex_duality(F: Fan, R0=None, v=None, lam=None):
    """Convert a seed ``v`` to weights, or weights ``lam`` to a seed."""
    if (v is None) == (lam is None):
        raise ValueError("give exactly one of v and lam")
    if v is not None:
        return lambda_of_vector(F, v, R0)
    return vector_of_lambda(F, lam, R0)


# --- decisions and reconstruction ---------------------------------------------------

def inscribable(F: Fan):
    """A strictly positive weight vector in the lambda space, or None."""
    return strict_positive_point(lambda_inscribed_space(F).subspace)


def trajectory(F: Fan, R0, v0):
    """``{R: t_R(v0)}`` along the BFS tree."""
    T = tree_transforms(F, R0)
    return {R: mat_vec(T[R], v0) for R in F.regions}


def reconstruct(F: Fan, R0=None, v0=None) -> Polytope:
    """The inscribed polytope with vertex ``v0`` in region ``R0``.

    Raises ``Degenerate`` when two regions get the same point or a point
    fails the open-cone test ``<a_RS, v_R> < 0`` for the walls of its region.
    """
    R0 = _base(F, R0)
    if not in_based_space(F, v0, R0):
        raise NotInSpace("seed is not in the based inscribed space")
    pts = trajectory(F, R0, v0)
    mode = F.mode
    seen = []
    for R in F.regions:
        for Q, p in seen:
            if vectors_close(p, pts[R], mode):
                raise Degenerate(f"regions {Q} and {R} receive the same point")
        seen.append((R, pts[R]))
    for R in F.regions:
        for S in F.neighbors(R):
            a = F.normal(R, S)
            sc = math.sqrt(float(norm2(a)) * float(norm2(pts[R]))) if not mode.exact else 1.0
            if mode.sign(dot(a, pts[R]), sc) >= 0:
                raise Degenerate(f"vertex of region {R} is not inside the open cone (wall {R}-{S})")
    return convex_hull([pts[R] for R in F.regions], mode)


def is_normally_inscribable(P: Polytope):
    """An inscribed polytope with the normal fan of ``P``, or None."""
    F = normal_fan(P)
    lam = inscribable(F)
    if lam is None:
        return None
    v = vector_of_lambda(F, lam, 0)
    return reconstruct(F, 0, v)


# --- relative inscribability -----------------------------------------------------------

def coarsening_vertices(Q: Polytope, F: Fan):
    """``{R: index of the vertex of Q whose normal cone contains R}``.

    Raises ``NotACoarsening`` if some region is not inside a single normal cone.
    """
    if F.interior is None:
        raise NotACoarsening("fan has no interior vectors to compare with")
    out = {}
    for R in F.regions:
        face = support_face(Q, F.interior[R])
        if len(face) != 1:
            raise NotACoarsening(f"region {R} meets several normal cones")
        q = next(iter(face))
        for g in (F.generators or {}).get(R, ()):
            if q not in support_face(Q, g):
                raise NotACoarsening(f"region {R} leaves the normal cone of vertex {q}")
        out[R] = q
    for ell in F.lineality:
        vals = [dot(ell, v) for v in Q.vertices]
        if any(not Q.mode.close(x, vals[0]) for x in vals):
            raise NotACoarsening("polytope is not orthogonal to the lineality space")
    return out


def _in_region(F: Fan, R, x):
    return all(F.mode.sign(dot(F.normal(R, S), x)) <= 0 for S in F.neighbors(R))


def relatively_inscribed(Q: Polytope, F: Fan) -> bool:
    """Inscribed, and every region contains a vertex of ``Q`` centered at its circumcenter."""
    coarsening_vertices(Q, F)
    ins = is_inscribed(Q)
    if ins is None:
        return False
    c = ins[0]
    shifted = [sub(v, c) for v in Q.vertices]
    return all(any(_in_region(F, R, x) for x in shifted) for R in F.regions)


def edges_orthogonal_check(Q: Polytope, F: Fan) -> bool:
    """Every wall hyperplane contains the circumcenter of the face of ``Q`` it selects."""
    ins = is_inscribed(Q)
    if ins is None:
        raise NotInscribed("polytope is not inscribed")
    c = ins[0]
    qv = coarsening_vertices(Q, F)
    for R, S in F.edges():
        a, b = Q.vertices[qv[R]], Q.vertices[qv[S]]
        mid = sub(tuple((x + y) / 2 for x, y in zip(a, b)), c)
        if not F.mode.is_zero(dot(F.normal(R, S), mid)):
            return False
    return True


# --- evenness -------------------------------------------------------------------------

def evenness(P: Polytope) -> bool:
    return all(len(f) % 2 == 0 for f in P.lattice.faces(2))


def even_report(P: Polytope):
    """The three quantities compared by the even-polytope theorem."""
    F = normal_fan(P)
    lam_space = lambda_inscribed_space(F)
    return {
        "even": evenness(P),
        "inscribable": strict_positive_point(lam_space.subspace) is not None,
        "dim_based": based_inscribed_space(F, 0).dim,
        "dim_incone": lam_space.dim,
        "dim": P.dim,
    }


def even_theorem_check(P: Polytope) -> bool:
    """For normally inscribable ``P``: even iff the inscribed cone and based space are full."""
    r = even_report(P)
    if not r["inscribable"]:
        return True
    full_cone = r["dim_incone"] == r["dim"]
    full_based = r["dim_based"] == P.ambient_dim
    return r["even"] == full_cone == full_based


# --- coarsening -------------------------------------------------------------------

def canonical_inscribable_coarsening(F: Fan):
    """Support of a maximal-support nonnegative lambda, and the fan with the other walls removed."""
    space = lambda_inscribed_space(F)
    lam, support = max_support_point(space.subspace)
    zero = [e for k, e in enumerate(space.edges) if k not in support]
    return frozenset(space.edges[k] for k in support), contract_walls(F, zero), lam


# --- symmetrization and ideal sums -------------------------------------------------------

def symmetrize(P: Polytope, G, max_order=20160) -> Polytope:
    """Average of ``gP`` over the group generated by ``G`` (vertexwise per region)."""
    group = group_closure(G, max_order, P.mode)
    if group is None:
        raise NotInvariantFan("group generated by G is too large")
    total = {R: zero_vector(P.ambient_dim, P.mode) for R in range(len(P.vertices))}
    for g in group:
        gP = transformed(P, g)
        match = normally_equivalent(P, gP)
        if match is None:
            raise NotInvariantFan("a group element moves the normal fan")
        for R in total:
            total[R] = add(total[R], gP.vertices[match[R]])
    k = len(group)
    return convex_hull([tuple(x / k for x in total[R]) for R in sorted(total)], P.mode)


def _unit_check(Q: Polytope):
    for v in Q.vertices:
        if not Q.mode.close(norm2(v), 1):
            raise NotUnitInscribed("vertex off the unit sphere")


def ideal_angle(Q: Polytope, Q2: Polytope):
    """``(cos theta, theta)`` for matched vertices of two unit-inscribed, normally equivalent polytopes."""
    _unit_check(Q)
    _unit_check(Q2)
    match = normally_equivalent(Q, Q2)
    if match is None:
        raise NotNormallyEquivalent("polytopes have different normal fans")
    cosines = [dot(Q.vertices[R], Q2.vertices[match[R]]) for R in match]
    c0 = cosines[0]
    assert all(Q.mode.close(c, c0) for c in cosines), "inner products differ between regions"
    return c0, math.acos(max(-1.0, min(1.0, float(c0))))


def ideal_sum(Q: Polytope, Q2: Polytope) -> Polytope:
    """``(2 + 2 cos theta)^(-1/2) (Q + Q2)``, again on the unit sphere."""
    c, _ = ideal_angle(Q, Q2)
    if c == -1:
        raise Degenerate("antipodal vertices: the sum collapses")
    match = normally_equivalent(Q, Q2)
    sums = {R: add(Q.vertices[R], Q2.vertices[match[R]]) for R in match}
    for s in sums.values():
        assert Q.mode.close(norm2(s), 2 + 2 * c), "norm of a vertex sum is off"
    f = 1.0 / math.sqrt(2.0 + 2.0 * float(c))
    return convex_hull([tuple(f * float(x) for x in sums[R]) for R in sorted(sums)], FLOAT)
