"""Building sets, nestohedra, and their inscribability.

Subsets of the ground set ``{1..d}`` are stored as bitmasks (element ``e`` is
bit ``e - 1``).  The combinatorial criterion looks at every ``J`` and every
triple ``i, j, k`` in ``J``, and counts the members of ``B|_J`` that contain
two of the three elements and miss the third.  If two of the counts are
positive then all three must agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import NotABuildingSet, TooLarge
from .polytope import Polytope, convex_hull


def mask_of(elements):
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask):
    out, e = [], 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


@dataclass(frozen=True)
class BuildingSet:
    ground: int
    masks: frozenset

    @classmethod
    def of(cls, ground, sets):
        masks = set()
        for s in sets:
            s = [int(x) for x in s]
            if not s or any(not 1 <= e <= ground for e in s):
                raise NotABuildingSet(f"{sorted(s)} is not a nonempty subset of 1..{ground}")
            masks.add(mask_of(s))
        return cls(ground, frozenset(masks))

    @property
    def sets(self):
        return sorted((elements_of(m) for m in self.masks), key=lambda s: (len(s), s))

    def __len__(self):
        return len(self.masks)

    def __contains__(self, s):
        return mask_of(s) in self.masks


def validate(B: BuildingSet) -> bool:
    """Intersecting members have their union in ``B``; raises ``NotABuildingSet`` otherwise."""
    for a, b in combinations(B.masks, 2):
        if a & b and (a | b) not in B.masks:
            raise NotABuildingSet(f"{elements_of(a)} and {elements_of(b)} meet but their union is missing")
    return True


def restriction(B: BuildingSet, J) -> BuildingSet:
    jm = mask_of(J)
    return BuildingSet(B.ground, frozenset(m for m in B.masks if m & ~jm == 0))


def _count(masks, i, j, k):
    need = (1 << (i - 1)) | (1 << (j - 1))
    kb = 1 << (k - 1)
    return sum(1 for m in masks if m & need == need and not m & kb)


def counts(B: BuildingSet, i, j, k) -> int:
    """Members containing ``i`` and ``j`` but not ``k``."""
    if len({i, j, k}) != 3:
        raise ValueError("i, j, k must be distinct")
    return _count(B.masks, i, j, k)


def _triple_ok(masks, i, j, k):
    c = (_count(masks, i, j, k), _count(masks, j, k, i), _count(masks, i, k, j))
    return sum(1 for x in c if x > 0) < 2 or c[0] == c[1] == c[2]


def _check_J(B, jm):
    inside = [m for m in B.masks if m & ~jm == 0]
    for i, j, k in combinations(elements_of(jm), 3):
        if not _triple_ok(inside, i, j, k):
            return (i, j, k)
    return None


def _union_closure(masks):
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for m in masks:
                w = u | m
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def candidate_sets(B: BuildingSet):
    """Sets ``J`` worth checking: a triple joined with a union of members.

    ``B|_J`` only depends on which members fit in ``J``; replacing ``J`` by the
    triple plus the union of those members keeps ``B|_J`` and the triple, so
    these candidates cover every case.
    """
    unions = _union_closure(B.masks)
    out = set()
    for t in combinations(range(1, B.ground + 1), 3):
        tm = mask_of(t)
        out.update(u | tm for u in unions)
    return out


def violation(B: BuildingSet, oracle=False):
    """``(J, (i, j, k))`` violating the criterion, or None."""
    validate(B)
    if oracle:
        if B.ground > 14:
            raise TooLarge("the exhaustive loop is limited to ground sets of size 14")
        space = range(1 << B.ground)
    else:
        space = sorted(candidate_sets(B))
    for jm in space:
        bad = _check_J(B, jm)
        if bad is not None:
            return elements_of(jm), bad
    return None


def is_inscribed_nestohedron(B: BuildingSet, oracle=False) -> bool:
    """Combinatorial verdict; ``oracle=True`` loops over every subset ``J``."""
    return violation(B, oracle) is None


def is_delta_closed(B: BuildingSet) -> bool:
    for a, b in combinations(B.masks, 2):
        if a & b and a & ~b and b & ~a and (a ^ b) not in B.masks:
            return False
    return True


def graphical_building_set(d, edges) -> BuildingSet:
    """Vertex sets of ``{1..d}`` inducing connected subgraphs."""
    adj = {v: 0 for v in range(1, d + 1)}
    for a, b in edges:
        if a == b:
            raise ValueError("graph must be simple")
        adj[a] |= 1 << (b - 1)
        adj[b] |= 1 << (a - 1)
    masks = set()
    for m in range(1, 1 << d):
        start = m & -m
        reach = start
        while True:
            grown = reach
            for v in elements_of(reach):
                grown |= adj[v] & m
            if grown == reach:
                break
            reach = grown
        if reach == m:
            masks.add(m)
    return BuildingSet(d, frozenset(masks))


def complete_graph(d):
    return list(combinations(range(1, d + 1), 2))


def path_graph(d):
    return [(i, i + 1) for i in range(1, d)]


def pitman_stanley(d) -> BuildingSet:
    return BuildingSet.of(d, [range(1, k + 1) for k in range(1, d + 1)])


def nestohedron_polytope(B: BuildingSet, max_ground=7) -> Polytope:
    """``sum over I in B`` of the coordinate simplices ``conv(e_i : i in I)``."""
    validate(B)
    if B.ground > max_ground:
        raise TooLarge(f"ground set of size {B.ground} exceeds {max_ground}")
    # Each summand's normal fan is coarsened by the braid arrangement, so every vertex of the
    # sum maximizes some strict order of the coordinates: add up each member's top element.
    d = B.ground
    members = [elements_of(m) for m in sorted(B.masks)]
    points = set()
    for order in permutations(range(1, d + 1)):
        rank = {e: k for k, e in enumerate(order)}
        v = [0] * d
        for S in members:
            v[max(S, key=rank.__getitem__) - 1] += 1
        points.add(tuple(v))
    return convex_hull(sorted(points))
