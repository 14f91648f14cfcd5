"""Complete fans encoded by their dual graph.

Regions are graph nodes; each wall is a pair of directed edges ``(R, S)`` and
``(S, R)`` carrying opposite outer normals.  Normals are kept unnormalized so
that everything stays rational.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import InvalidFan, NotAFace, NotAWalk
from .exact import (
    EXACT, LinearSubspace, ScalarMode, add, dot, identity, is_zero_vector, matmul, rank,
    reflection_matrix, sub, vector,
)
from .polytope import Polytope, convex_hull


@dataclass(frozen=True, eq=False)
class Fan:
    dim: int
    regions: tuple
    normals: dict                      # (R, S) -> outer normal of R across the wall
    link_cycles: tuple = ()
    generators: dict | None = None     # R -> rays of the region (lineality excluded)
    interior: dict | None = None       # R -> a vector in the interior of R
    lineality: tuple = ()
    mode: ScalarMode = EXACT
    vertices: dict | None = None       # R -> vertex of the source polytope
    _adj: dict = field(default=None, repr=False)

    def __post_init__(self):
        adj = {R: [] for R in self.regions}
        for (R, S) in self.normals:
            if R in adj and S not in adj[R]:
                adj[R].append(S)
        for R in adj:
            adj[R].sort()
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def from_walls(cls, dim, regions, walls, mode=EXACT, **kw):
        """Build from ``(R, S, normal)`` triples; missing twins are filled in."""
        normals = {}
        for R, S, a in walls:
            a = vector(a, mode)
            for key, val in (((R, S), a), ((S, R), tuple(-x for x in a))):
                if key in normals and not _close(normals[key], val, mode):
                    raise InvalidFan("antisymmetry", f"wall {key} given with two normals")
                normals[key] = val
        return cls(dim, tuple(regions), normals, mode=mode, **kw)

    def neighbors(self, R):
        return self._adj[R]

    def normal(self, R, S):
        return self.normals[(R, S)]

    def edges(self):
        """Undirected walls, each once as ``(R, S)`` with ``R < S``."""
        return sorted((R, S) for (R, S) in self.normals if R < S)

    @property
    def base_region(self):
        return min(self.regions)


def _close(u, v, mode):
    if mode.exact:
        return tuple(u) == tuple(v)
    return all(abs(a - b) <= mode.tol * max(1.0, abs(a), abs(b)) for a, b in zip(u, v))


def positively_parallel(u, v, mode=EXACT):
    return rank((tuple(u), tuple(v)), len(u), mode) == 1 and dot(u, v) > 0


def validate(F: Fan):
    """Check the fan invariants; raise ``InvalidFan`` naming the first violation."""
    if not F.regions:
        raise InvalidFan("regions", "no regions")
    ids = set(F.regions)
    for (R, S), a in F.normals.items():
        if R not in ids or S not in ids:
            raise InvalidFan("regions", f"wall {R}-{S} names an unknown region")
        if R == S:
            raise InvalidFan("loops", f"wall {R}-{R}")
        if len(a) != F.dim:
            raise InvalidFan("dimension", f"normal of {R}-{S} has length {len(a)}")
        if F.mode.exact and any(isinstance(x, float) for x in a):
            raise InvalidFan("rationality", f"float entry in normal of {R}-{S}")
        if is_zero_vector(a, F.mode):
            raise InvalidFan("nonzero normals", f"wall {R}-{S}")
        twin = F.normals.get((S, R))
        if twin is None or not _close(twin, tuple(-x for x in a), F.mode):
            raise InvalidFan("antisymmetry", f"wall {R}-{S}")
    seen = {F.regions[0]}
    queue = deque(seen)
    while queue:
        R = queue.popleft()
        for S in F.neighbors(R):
            if S not in seen:
                seen.add(S)
                queue.append(S)
    if seen != ids:
        raise InvalidFan("connectivity", f"{len(ids - seen)} regions unreachable")
    if F.generators:
        for R, gens in F.generators.items():
            for S in F.neighbors(R):
                a = F.normal(R, S)
                for g in gens:
                    if F.mode.sign(dot(a, g), 1.0) > 0:
                        raise InvalidFan("generators", f"ray of region {R} beyond wall {R}-{S}")
    for cyc in F.link_cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if (a, b) not in F.normals:
                raise InvalidFan("link cycles", f"{a}-{b} is not a wall")
    return {"ok": True, "regions": len(F.regions), "walls": len(F.edges()),
            "link_cycles": len(F.link_cycles)}


# --- polytope fans ------------------------------------------------------------

def normal_fan(P: Polytope) -> Fan:
    """Regions are vertices, walls are edges with normal ``v_S - v_R``, links are 2-faces."""
    n = P.ambient_dim
    V = P.vertices
    regions = tuple(range(len(V)))
    normals = {}
    for e in P.edges():
        i, j = sorted(e)
        normals[(i, j)] = sub(V[j], V[i])
        normals[(j, i)] = sub(V[i], V[j])
    links = tuple(P.cyclic_order(f) for f in P.lattice.faces(2))
    lineality = P.direction_space.complement().basis if len(V) > 1 else identity(n, P.mode)
    gens = {R: [] for R in regions}
    for f in P.facets:
        for i in f.vertices:
            gens[i].append(f.normal)
    zero = vector([0] * n, P.mode)
    interior = {}
    for R in regions:
        acc = zero
        for g in gens[R]:
            acc = add(acc, g)
        interior[R] = acc
    return Fan(n, regions, normals, links, {R: tuple(g) for R, g in gens.items()}, interior,
               tuple(lineality), P.mode, {R: V[R] for R in regions})


def normally_equivalent(P: Polytope, Q: Polytope):
    """Vertex bijection ``P -> Q`` realizing equal normal fans, or None."""
    if len(P.vertices) != len(Q.vertices) or P.ambient_dim != Q.ambient_dim:
        return None
    from .polytope import support_face

    F = normal_fan(P)
    match = {}
    for R in F.regions:
        face = support_face(Q, F.interior[R]) if F.interior[R] is not None else None
        if face is None or len(face) != 1:
            return None
        match[R] = next(iter(face))
    if len(set(match.values())) != len(match):
        return None
    q_edges = {frozenset(e) for e in Q.edges()}
    if len(q_edges) != len(F.edges()):
        return None
    for R, S in F.edges():
        if frozenset((match[R], match[S])) not in q_edges:
            return None
        d = sub(Q.vertices[match[S]], Q.vertices[match[R]])
        if not positively_parallel(d, F.normal(R, S), F.mode if F.mode == Q.mode else Q.mode):
            return None
    return match


# --- cycles and walks ------------------------------------------------------------

@dataclass(frozen=True)
class CycleBasis:
    spanning_tree: frozenset          # undirected tree edges (R, S), R < S
    fundamental_cycles: tuple         # closed walks, first region repeated at the end
    parent: dict                      # BFS parent of each region (root -> None)


def cycle_basis(F: Fan, root=None) -> CycleBasis:
    """BFS spanning tree from ``root`` (default: lowest id) and its fundamental cycles."""
    root = F.base_region if root is None else root
    parent = {root: None}
    depth = {root: 0}
    queue = deque([root])
    tree = set()
    while queue:
        R = queue.popleft()
        for S in F.neighbors(R):
            if S not in parent:
                parent[S] = R
                depth[S] = depth[R] + 1
                tree.add((min(R, S), max(R, S)))
                queue.append(S)
    cycles = []
    for R, S in F.edges():
        if (R, S) in tree:
            continue
        a, b = [R], [S]
        while a[-1] != b[-1]:
            if depth[a[-1]] >= depth[b[-1]]:
                a.append(parent[a[-1]])
            else:
                b.append(parent[b[-1]])
        # R -> ... -> lca -> ... -> S -> R
        walk = a + b[-2::-1] + [R]
        cycles.append(tuple(walk))
    return CycleBasis(frozenset(tree), tuple(cycles), parent)


def tree_path(basis: CycleBasis, R):
    """Regions on the tree path from the root to ``R``."""
    path = [R]
    while basis.parent[path[-1]] is not None:
        path.append(basis.parent[path[-1]])
    return tuple(reversed(path))


def walk_transform(F: Fan, walk):
    """Composite ``s_{R_k R_{k-1}} ... s_{R_1 R_0}`` of wall reflections along ``walk``."""
    M = identity(F.dim, F.mode)
    walk = list(walk)
    for a, b in zip(walk, walk[1:]):
        if (a, b) not in F.normals:
            raise NotAWalk(f"{a} and {b} are not adjacent")
        M = matmul(reflection_matrix(F.normal(a, b), F.mode), M)
    return M


def tree_transforms(F: Fan, root):
    """``{R: t_W}`` with ``W`` the BFS tree path from ``root`` to ``R``."""
    T = {root: identity(F.dim, F.mode)}
    queue = deque([root])
    while queue:
        R = queue.popleft()
        for S in F.neighbors(R):
            if S not in T:
                T[S] = matmul(reflection_matrix(F.normal(R, S), F.mode), T[R])
                queue.append(S)
    return T


def contract_walls(F: Fan, zero_edges) -> Fan:
    """Merge regions joined by the given walls; the merged region keeps the smallest id."""
    rep = {R: R for R in F.regions}

    def find(R):
        while rep[R] != R:
            rep[R] = rep[rep[R]]
            R = rep[R]
        return R

    for R, S in zero_edges:
        a, b = find(R), find(S)
        if a != b:
            rep[max(a, b)] = min(a, b)
    comp = {R: find(R) for R in F.regions}
    normals = {}
    for (R, S), a in F.normals.items():
        key = (comp[R], comp[S])
        if key[0] != key[1] and key not in normals:
            normals[key] = a
    regions = tuple(sorted(set(comp.values())))
    interior = None
    if F.interior is not None:
        interior = {}
        for R in F.regions:
            c = comp[R]
            interior[c] = add(interior[c], F.interior[R]) if c in interior else F.interior[R]
    return Fan(F.dim, regions, normals, (), None, interior, F.lineality, F.mode)


# --- localization --------------------------------------------------------------

def localize(P: Polytope, face) -> Fan:
    """Fan of the normal cones around a face: the normal fan of the face itself.

    ``face`` is a set of vertex indices of ``P``.  The returned fan carries the
    orthogonal complement of the face's affine hull as lineality.
    """
    face = frozenset(face)
    faces = {F for fs in P.lattice.faces_by_dim.values() for F in fs}
    if face not in faces:
        raise NotAFace("vertex set is not a face of the polytope")
    Q = convex_hull([P.vertices[i] for i in sorted(face)], P.mode)
    return normal_fan(Q)


def fans_equal(F: Fan, G: Fan):
    """Same regions and walls with positively proportional normals."""
    if set(F.regions) != set(G.regions) or set(F.normals) != set(G.normals):
        return False
    mode = F.mode if F.mode == G.mode else G.mode
    return all(positively_parallel(a, G.normals[k], mode) for k, a in F.normals.items())


def lineality_space(F: Fan) -> LinearSubspace:
    return LinearSubspace.span(F.lineality, F.dim, F.mode) if F.lineality else LinearSubspace.zero(F.dim, F.mode)
