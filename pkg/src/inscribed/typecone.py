"""Wall weights of piecewise-linear functions on a fan, and virtual polytopes.

A weight vector assigns ``lambda_RS = lambda_SR`` to each wall so that the
vertex differences ``v_S - v_R = lambda_RS * alpha_RS`` close up around every
cycle.  Positive weights are exactly the polytopes with the fan as normal fan;
arbitrary weights are virtual polytopes, anchored by one vertex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NegativeWeight, NotInSpace, NotNormallyEquivalent
from .exact import (
    add, circumcenter_space, dot, is_zero_vector, kernel, scale, solve, sub, vectors_close, zero_vector,
)
from .fan import Fan, contract_walls, cycle_basis, positively_parallel
from .inscribe import coarsening_vertices, edge_index
from .lp import strict_positive_point
from .polytope import Polytope


def closure_rows(F: Fan):
    """``sum lambda_i alpha_i = 0`` along each fundamental cycle, one row per coordinate."""
    index = edge_index(F)
    zero = zero_vector(1, F.mode)[0]
    rows = []
    for walk in cycle_basis(F).fundamental_cycles:
        block = [[zero] * len(index) for _ in range(F.dim)]
        for a, b in zip(walk, walk[1:]):
            k = index[(min(a, b), max(a, b))]
            for c, x in enumerate(F.normal(a, b)):
                block[c][k] += x
        rows.extend(tuple(r) for r in block if any(r))
    return tuple(rows)


def type_space(F: Fan):
    return kernel(closure_rows(F), len(F.edges()), F.mode)


@dataclass(frozen=True, eq=False)
class LambdaWeights:
    fan: Fan
    values: tuple            # one entry per wall of ``fan.edges()``

    def __post_init__(self):
        values = tuple(self.fan.mode.scalar(x) for x in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.fan.edges()):
            raise NotInSpace(f"expected {len(self.fan.edges())} weights, got {len(values)}")
        for row in closure_rows(self.fan):
            if not self.fan.mode.is_zero(dot(row, values)):
                raise NotInSpace("weights do not close up around a cycle")

    def __getitem__(self, wall):
        R, S = wall
        return self.values[edge_index(self.fan)[(min(R, S), max(R, S))]]

    def as_dict(self):
        return dict(zip(self.fan.edges(), self.values))

    def __add__(self, other):
        return LambdaWeights(self.fan, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        return LambdaWeights(self.fan, tuple(a - b for a, b in zip(self.values, other.values)))

    def scaled(self, c):
        return LambdaWeights(self.fan, tuple(c * a for a in self.values))


def lambda_of_polytope(P: Polytope, F: Fan | None = None) -> LambdaWeights:
    """Weights with ``v_S - v_R = lambda_RS alpha_RS``; ``F`` defaults to the normal fan of ``P``.

    With an explicit ``F`` whose regions refine the normal cones of ``P``, the
    weights on walls interior to a normal cone are zero.
    """
    if F is None:
        from .fan import normal_fan
        F = normal_fan(P)
        vert = {R: R for R in F.regions}
    else:
        vert = coarsening_vertices(P, F)
    out = []
    for R, S in F.edges():
        d = sub(P.vertices[vert[S]], P.vertices[vert[R]])
        a = F.normal(R, S)
        if is_zero_vector(d, F.mode):
            out.append(zero_vector(1, F.mode)[0])
            continue
        if not positively_parallel(d, a, F.mode):
            raise NotNormallyEquivalent(f"edge for wall {R}-{S} is not along its normal")
        out.append(dot(d, a) / dot(a, a))
    return LambdaWeights(F, tuple(out))


def vertex_map(F: Fan, lam: LambdaWeights, anchor=None):
    """``{R: v_R}`` propagated from ``anchor = (R0, v0)`` (default: base region at the origin)."""
    if anchor is None:
        anchor = (F.base_region, zero_vector(F.dim, F.mode))
    R0, v0 = anchor
    pts = {R0: tuple(F.mode.scalar(x) for x in v0)}
    queue = deque([R0])
    while queue:
        R = queue.popleft()
        for S in F.neighbors(R):
            if S not in pts:
                pts[S] = add(pts[R], scale(lam[(R, S)], F.normal(R, S)))
                queue.append(S)
    return pts


def is_strictly_convex(lam: LambdaWeights) -> bool:
    return all(lam.fan.mode.sign(x) > 0 for x in lam.values)


def coarsening_of(F: Fan, lam: LambdaWeights) -> Fan:
    """Merge regions across walls of weight zero."""
    if any(F.mode.sign(x) < 0 for x in lam.values):
        raise NegativeWeight("coarsening needs nonnegative weights")
    zero = [e for e, x in zip(F.edges(), lam.values) if F.mode.is_zero(x)]
    return contract_walls(F, zero)


def typecone_dim(F: Fan) -> int:
    return type_space(F).dim


def typecone_contains(F: Fan, lam) -> bool:
    values = lam.values if isinstance(lam, LambdaWeights) else tuple(F.mode.scalar(x) for x in lam)
    if any(F.mode.sign(x) < 0 for x in values):
        return False
    return all(F.mode.is_zero(dot(row, values)) for row in closure_rows(F))


def typecone_interior_point(F: Fan):
    """Some strictly positive weight vector, or None if the fan is not polytopal."""
    lam = strict_positive_point(type_space(F))
    return None if lam is None else LambdaWeights(F, lam)


@dataclass(frozen=True, eq=False)
class VirtualPolytope:
    weights: LambdaWeights
    region: object
    vertex: tuple

    @property
    def fan(self):
        return self.weights.fan

    def vertices(self):
        return vertex_map(self.fan, self.weights, (self.region, self.vertex))

    def _anchor_at(self, R):
        return self.vertices()[R]

    def __add__(self, other):
        R = self.region
        return VirtualPolytope(self.weights + other.weights, R, add(self.vertex, other._anchor_at(R)))

    def __sub__(self, other):
        R = self.region
        return VirtualPolytope(self.weights - other.weights, R, sub(self.vertex, other._anchor_at(R)))

    def __eq__(self, other):
        if not isinstance(other, VirtualPolytope):
            return NotImplemented
        mode = self.fan.mode
        return (all(mode.close(a, b) for a, b in zip(self.weights.values, other.weights.values))
                and vectors_close(self.vertex, other._anchor_at(self.region), mode))

    __hash__ = None


def virtual_polytope(P: Polytope, F: Fan) -> VirtualPolytope:
    """``P`` as an element of the type space of ``F``, anchored at the base region."""
    R0 = F.base_region
    return VirtualPolytope(lambda_of_polytope(P, F), R0, P.vertices[coarsening_vertices(P, F)[R0]])


def virtual_difference(P: Polytope, Q: Polytope, F: Fan) -> VirtualPolytope:
    """``P - Q`` in the type space of ``F``."""
    return virtual_polytope(P, F) - virtual_polytope(Q, F)


def inscribed_virtual_check(F: Fan, lam: LambdaWeights, anchor=None) -> bool:
    """Vertex map on a sphere, and each wall hyperplane through the center bisects its wall's edge."""
    pts = vertex_map(F, lam, anchor)
    distinct = []
    for p in pts.values():
        if not any(vectors_close(p, q, F.mode) for q in distinct):
            distinct.append(p)
    sphere = circumcenter_space(distinct, F.mode)
    if sphere is None:
        return False
    centers, _ = sphere
    base, dirs = centers.point, centers.direction.basis
    # Find c = base + sum t_k dirs_k with <alpha, mid - c> = 0 on every wall.
    rows, rhs = [], []
    for R, S in F.edges():
        a = F.normal(R, S)
        mid = tuple((x + y) / 2 for x, y in zip(pts[R], pts[S]))
        rows.append(tuple(dot(a, d) for d in dirs))
        rhs.append(dot(a, sub(mid, base)))
    if not dirs:
        return all(F.mode.is_zero(x) for x in rhs)
    return solve(tuple(rows), tuple(rhs), F.mode) is not None
