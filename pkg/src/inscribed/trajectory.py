"""Routing schemes, trajectory spaces, and reflection groupoids.

A routing scheme is a connected graph whose edges carry lines through the
origin.  A trajectory places a point on a sphere at every node so that
adjacent points are mirror images in the hyperplane orthogonal to the edge's
line.  Everything is fixed by the point at one node, which must be fixed by
the transform of every closed walk.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import DimensionMismatch, NotPure, NotStronglyConnected, ZeroNormal
from .exact import (
    EXACT, LinearSubspace, ScalarMode, dot, identity, is_zero_vector, kernel, mat_sub, mat_vec,
    matmul, psd_gale, rank, reflection_matrix, transpose, vector, group_closure,
)
from .fan import Fan


@dataclass(frozen=True, eq=False)
class RoutingScheme:
    nodes: tuple
    directions: dict                  # (u, v) with u < v -> representative of the line
    dim: int
    mode: ScalarMode = EXACT
    _adj: dict = field(default=None, repr=False)

    def __post_init__(self):
        adj = {v: [] for v in self.nodes}
        for (u, v), a in self.directions.items():
            if len(a) != self.dim:
                raise DimensionMismatch(f"direction of {u}-{v} has length {len(a)}")
            if is_zero_vector(a, self.mode):
                raise ZeroNormal(f"direction of {u}-{v} is zero")
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        object.__setattr__(self, "_adj", adj)
        seen = {self.nodes[0]}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(self.nodes):
            raise NotStronglyConnected("routing graph is not connected")

    @classmethod
    def of(cls, dim, edges, mode=EXACT):
        """From ``(u, v, direction)`` triples."""
        directions = {}
        nodes = set()
        for u, v, a in edges:
            a = vector(a, mode)
            directions[(u, v) if u < v else (v, u)] = a
            nodes.update((u, v))
        return cls(tuple(sorted(nodes)), directions, dim, mode)

    def neighbors(self, u):
        return self._adj[u]

    def direction(self, u, v):
        return self.directions[(u, v) if u < v else (v, u)]

    def oriented(self, u, v):
        """Representative oriented from ``u`` to ``v`` (sign flips for reversed edges)."""
        a = self.directions.get((u, v))
        return a if a is not None else tuple(-x for x in self.directions[(v, u)])

    def edges(self):
        return sorted(self.directions)

    @property
    def base(self):
        return self.nodes[0]


def scheme_of_fan(F: Fan) -> RoutingScheme:
    return RoutingScheme(tuple(F.regions), {e: F.normal(*e) for e in F.edges()}, F.dim, F.mode)


# --- reflection walks ---------------------------------------------------------------

def _bfs(S: RoutingScheme, root):
    parent, order = {root: None}, [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in S.neighbors(u):
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    return parent, order


def _tree_transforms(S: RoutingScheme, root):
    parent, order = _bfs(S, root)
    T = {root: identity(S.dim, S.mode)}
    for u in order[1:]:
        T[u] = matmul(reflection_matrix(S.direction(parent[u], u), S.mode), T[parent[u]])
    return T, parent


def walk_matrix(S: RoutingScheme, walk):
    M = identity(S.dim, S.mode)
    for a, b in zip(walk, walk[1:]):
        M = matmul(reflection_matrix(S.direction(a, b), S.mode), M)
    return M


def fundamental_walks(S: RoutingScheme, root=None):
    """Closed walks at ``root``: tree path, one non-tree edge, tree path back."""
    root = S.base if root is None else root
    parent, _ = _bfs(S, root)

    def path(u):
        p = [u]
        while parent[p[-1]] is not None:
            p.append(parent[p[-1]])
        return p[::-1]

    walks = []
    for u, v in S.edges():
        if parent.get(v) == u or parent.get(u) == v:
            continue
        walks.append(tuple(path(u) + path(v)[::-1]))
    return walks


def trajectory_space(S: RoutingScheme, root=None) -> LinearSubspace:
    """Starting points at ``root`` fixed by every closed-walk transform."""
    root = S.base if root is None else root
    T, _ = _tree_transforms(S, root)
    rows = []
    for u, v in S.edges():
        D = mat_sub(matmul(reflection_matrix(S.direction(u, v), S.mode), T[u]), T[v])
        rows.extend(r for r in D if not is_zero_vector(r, S.mode))
    return kernel(tuple(rows), S.dim, S.mode)


def propagate(S: RoutingScheme, t0, root=None):
    """Trajectory through ``t0`` at ``root``, node by node along the BFS tree."""
    root = S.base if root is None else root
    T, _ = _tree_transforms(S, root)
    return {u: mat_vec(T[u], t0) for u in S.nodes}


# --- Gram formulation -----------------------------------------------------------------

def _covering_walk(S: RoutingScheme, root):
    seen, walk, tree = {root}, [root], set()
    stack = [(root, iter(S.neighbors(root)))]
    while stack:
        u, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
            continue
        if w not in seen:
            seen.add(w)
            tree.add(frozenset((u, w)))
            walk.append(w)
            stack.append((w, iter(S.neighbors(w))))
        elif u < w and frozenset((u, w)) not in tree:
            walk.extend((w, u))
    return tuple(walk)


def _gram_rows(S: RoutingScheme, walk, index):
    """Closure ``A_C l = 0`` and ``Gale(A_C) R(A_C) l = 0`` from inner products only."""
    steps = list(zip(walk, walk[1:]))
    vecs = [S.oriented(a, b) for a, b in steps]
    pos = [index[(min(a, b), max(a, b))] for a, b in steps]
    n = len(vecs)
    zero = 0 * dot(vecs[0], vecs[0])
    gram = tuple(tuple(dot(vecs[i], vecs[j]) for j in range(n)) for i in range(n))
    skew = [[gram[i][j] if i < j else (-gram[i][j] if i > j else zero) for j in range(n)]
            for i in range(n)]
    gale = psd_gale(gram, S.mode)

    def spread(coeffs):
        row = [zero] * len(index)
        for c, p in zip(coeffs, pos):
            row[p] += c
        return tuple(row)

    rows = [spread(r) for r in gram]
    for g in gale:
        support = [(i, x) for i, x in enumerate(g) if x]
        if support:
            rows.append(spread([sum((x * skew[i][j] for i, x in support), zero) for j in range(n)]))
    return rows


def trajectory_space_gram(S: RoutingScheme) -> LinearSubspace:
    """Edge weights of trajectories, computed from the Gram matrix of the directions.

    Weights are relative to the stored representatives: ``T(v) - T(u) =
    l_uv * a_uv``.  Unit representatives would rescale each coordinate, which
    leaves the dimension unchanged, so exact arithmetic needs no square roots.
    Fundamental cycles are coupled through one closed walk crossing every edge.

    Starting points orthogonal to every direction move nowhere and get zero
    weights, so this space is smaller than ``trajectory_space`` by the
    corank of the directions (see ``direction_corank``).
    """
    index = {e: k for k, e in enumerate(S.edges())}
    if not index:
        return LinearSubspace.zero(0, S.mode)
    rows = []
    for walk in fundamental_walks(S):
        rows.extend(_gram_rows(S, walk, index))
    rows.extend(_gram_rows(S, _covering_walk(S, S.base), index))
    return kernel(tuple(rows), len(index), S.mode)


def direction_corank(S: RoutingScheme) -> int:
    return S.dim - rank(tuple(S.directions.values()), S.dim, S.mode)


def weights_of_start(S: RoutingScheme, t0, root=None):
    """``l_uv = -2 <a_uv, T(u)> / <a_uv, a_uv>`` for every edge ``u < v``."""
    pos = propagate(S, t0, root)
    return tuple(-2 * dot(S.direction(u, v), pos[u]) / dot(S.direction(u, v), S.direction(u, v))
                 for u, v in S.edges())


# --- groups -----------------------------------------------------------------------

@dataclass(frozen=True)
class HomGroup:
    order: int
    generators: tuple
    elements: frozenset
    kinds: tuple            # per generator: "identity", "reflection" or "other"


def _inverse(M):
    return transpose(M)


def matrix_kind(M, mode=EXACT):
    I = identity(len(M), mode)
    D = mat_sub(M, I)
    if all(mode.is_zero(x) for row in D for x in row):
        return "identity"
    M2 = matmul(M, M)
    if all(mode.close(M2[i][j], I[i][j]) for i in range(len(M)) for j in range(len(M))) \
            and rank(D, len(M), mode) == 1:
        return "reflection"
    return "other"


def hom_group_generators(S: RoutingScheme, base=None):
    """Conjugated fundamental-cycle transforms at ``base``; they generate the vertex group."""
    base = S.base if base is None else base
    return [walk_matrix(S, w) for w in fundamental_walks(S, base)]


def link_generators(F: Fan, base=None):
    """Transforms around each link cycle, conjugated back to ``base``."""
    from .fan import tree_transforms, walk_transform
    base = F.base_region if base is None else base
    T = tree_transforms(F, base)
    out = []
    for cyc in F.link_cycles:
        t = walk_transform(F, tuple(cyc) + (cyc[0],))
        h = T[cyc[0]]
        out.append(matmul(_inverse(h), matmul(t, h)))
    return out


def hom_group(source, base=None, max_order=20160, deadline=None):
    """Closed-walk group at ``base`` for a fan or routing scheme, or None beyond ``max_order``."""
    S = scheme_of_fan(source) if isinstance(source, Fan) else source
    gens = hom_group_generators(S, base)
    kinds = tuple(matrix_kind(g, S.mode) for g in gens)
    nontrivial = [g for g, k in zip(gens, kinds) if k != "identity"]
    if not nontrivial:
        I = identity(S.dim, S.mode)
        return HomGroup(1, tuple(gens), frozenset([I]), kinds)
    elements = group_closure(nontrivial, max_order, S.mode, deadline)
    if elements is None:
        return None
    return HomGroup(len(elements), tuple(gens), elements, kinds)


# --- projectivities ------------------------------------------------------------------

def _facets(complex_facets):
    facets = [frozenset(f) for f in complex_facets]
    if not facets:
        raise NotPure("empty complex")
    size = len(facets[0])
    if any(len(f) != size for f in facets):
        raise NotPure("facets have different sizes")
    if len(set(facets)) != len(facets):
        raise NotPure("repeated facet")
    return facets, size


def projectivity_scheme(complex_facets) -> RoutingScheme:
    """Facets as nodes; adjacent facets ``s, s'`` get the line of ``e_v - e_v'``."""
    facets, size = _facets(complex_facets)
    ground = sorted(set().union(*facets))
    pos = {v: k for k, v in enumerate(ground)}
    edges = {}
    for i, j in combinations(range(len(facets)), 2):
        a, b = facets[i], facets[j]
        if len(a & b) == size - 1:
            (v,), (w,) = a - b, b - a
            vec = [0] * len(ground)
            vec[pos[v]], vec[pos[w]] = 1, -1
            edges[(i, j)] = tuple(vec)
    try:
        return RoutingScheme(tuple(range(len(facets))), edges, len(ground), EXACT)
    except NotStronglyConnected:
        raise NotStronglyConnected("dual graph of the complex is disconnected") from None


def projectivity_group(complex_facets, base=0, max_order=20160):
    """Permutation matrices on the vertex set generated by closed walks at facet ``base``."""
    return hom_group(projectivity_scheme(complex_facets), base, max_order)


def projectivities(complex_facets, base=0, max_order=20160):
    """The same group as bijections of the base facet, composed from perspectives."""
    facets, size = _facets(complex_facets)
    S = projectivity_scheme(facets)
    sigma0 = sorted(facets[base])

    def perspective_walk(walk):
        image = {v: v for v in sigma0}
        for a, b in zip(walk, walk[1:]):
            (v,), (w,) = facets[a] - facets[b], facets[b] - facets[a]
            image = {x: (w if y == v else y) for x, y in image.items()}
        return tuple(image[v] for v in sigma0)

    gens = {perspective_walk(w) for w in fundamental_walks(S, base)}
    ident = tuple(sigma0)
    pos = {v: k for k, v in enumerate(sigma0)}
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = tuple(g[pos[x]] for x in h)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > max_order:
                        return None
        frontier = nxt
    return frozenset(seen)
