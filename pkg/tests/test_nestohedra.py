from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from inscribed.errors import NotABuildingSet, TooLarge
from inscribed.nestohedra import (
    BuildingSet, complete_graph, counts, graphical_building_set, is_delta_closed, is_inscribed_nestohedron,
    nestohedron_polytope, path_graph, pitman_stanley, restriction, validate, violation,
)
from inscribed.polytope import convex_hull, is_inscribed, minkowski_sum

B4 = BuildingSet.of(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 3, 4)])
PATH3 = graphical_building_set(3, path_graph(3))
K3 = graphical_building_set(3, complete_graph(3))


def components_are_complete(d, edges):
    """Oracle: union-find components, each with all of its possible edges."""
    parent = list(range(d + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for a, b in edges:
        parent[find(a)] = find(b)
    groups = {}
    for v in range(1, d + 1):
        groups.setdefault(find(v), []).append(v)
    edge_set = {frozenset(e) for e in edges}
    return all(frozenset(p) in edge_set for g in groups.values() for p in combinations(g, 2))


def union_closure(d, sets):
    """Oracle closure: add unions of intersecting pairs until nothing changes."""
    family = {frozenset(s) for s in sets}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(family), 2):
            if a & b and (a | b) not in family:
                family.add(a | b)
                changed = True
    return BuildingSet.of(d, [sorted(s) for s in family])


@st.composite
def building_sets(draw, max_ground=5):
    d = draw(st.integers(3, max_ground))
    subsets = st.lists(st.sampled_from(range(1, d + 1)), min_size=1, max_size=d, unique=True)
    return union_closure(d, draw(st.lists(subsets, min_size=1, max_size=6)))


# --- building sets ---------------------------------------------------------------------

def test_missing_union_is_rejected():
    with pytest.raises(NotABuildingSet):
        validate(BuildingSet.of(3, [(1, 2), (2, 3)]))


def test_path_building_set():
    assert validate(PATH3)
    assert PATH3.sets == [[1], [2], [3], [1, 2], [2, 3], [1, 2, 3]]


def test_complete_graph_gives_all_subsets():
    assert len(K3) == 7


def test_restriction_of_k3():
    assert restriction(K3, [1, 2]).sets == [[1], [2], [1, 2]]


def test_out_of_range_elements():
    with pytest.raises(NotABuildingSet):
        BuildingSet.of(3, [(1, 4)])


@given(building_sets(), st.data())
def test_restrictions_are_building_sets(B, data):
    J = data.draw(st.lists(st.sampled_from(range(1, B.ground + 1)), unique=True))
    R = restriction(B, J)
    assert validate(R)
    assert all(set(s) <= set(J) for s in R.sets)
    assert all(s in R for s in B.sets if set(s) <= set(J))


# --- counts and verdicts -----------------------------------------------------------------------

def test_counts_on_the_path():
    assert counts(PATH3, 1, 2, 3) == 1
    assert counts(PATH3, 2, 3, 1) == 1
    assert counts(PATH3, 1, 3, 2) == 0


def test_counts_on_k3_are_all_one():
    assert {counts(K3, i, j, k) for i, j, k in [(1, 2, 3), (2, 3, 1), (1, 3, 2)]} == {1}


def test_counts_without_a_common_set():
    assert counts(BuildingSet.of(3, [(1,), (2,), (3,)]), 1, 2, 3) == 0


def test_verdicts():
    assert is_inscribed_nestohedron(B4)
    assert not is_inscribed_nestohedron(PATH3)
    assert is_inscribed_nestohedron(graphical_building_set(5, complete_graph(5)))
    assert is_inscribed_nestohedron(pitman_stanley(5))
    assert is_inscribed_nestohedron(graphical_building_set(4, [(1, 2), (3, 4)]))


def test_violation_witness_on_the_path():
    witness = violation(PATH3)
    assert witness is not None and violation(K3) is None


def test_delta_closed_examples():
    assert is_delta_closed(pitman_stanley(5))
    assert not is_delta_closed(B4)
    assert is_delta_closed(graphical_building_set(4, complete_graph(4)))


def test_graphical_sets_of_small_graphs():
    assert graphical_building_set(3, path_graph(3)).sets == PATH3.sets
    assert len(graphical_building_set(4, complete_graph(4))) == 15


# --- polytopes --------------------------------------------------------------------------------

def test_k3_nestohedron_is_a_hexagon():
    P = nestohedron_polytope(K3)
    assert len(P.vertices) == 6 and P.dim == 2
    assert all(sum(v) == len(K3) for v in P.vertices)


def test_pitman_stanley_three_is_a_square():
    P = nestohedron_polytope(pitman_stanley(3))
    assert P.dim == 2 and len(P.vertices) == 4 and len(P.edges()) == 4


def test_b4_polytope_is_inscribed():
    assert is_inscribed(nestohedron_polytope(B4)) is not None
    assert is_inscribed(nestohedron_polytope(PATH3)) is None


def test_ground_size_guard():
    with pytest.raises(TooLarge):
        nestohedron_polytope(pitman_stanley(8))


@given(building_sets(max_ground=4))
def test_polytope_matches_the_iterated_minkowski_sum(B):
    d = B.ground
    total = convex_hull([(0,) * d])
    for S in B.sets:
        total = minkowski_sum(total, convex_hull([tuple(int(e == i) for e in range(1, d + 1)) for i in S]))
    assert set(nestohedron_polytope(B).vertices) == set(total.vertices)


# --- properties --------------------------------------------------------------------------------

@given(building_sets(max_ground=5))
def test_criterion_agrees_with_circumsphere(B):
    assert is_inscribed_nestohedron(B) == (is_inscribed(nestohedron_polytope(B)) is not None)


@given(building_sets(max_ground=7))
def test_pruned_search_agrees_with_all_subsets(B):
    assert is_inscribed_nestohedron(B) == is_inscribed_nestohedron(B, oracle=True)


@given(building_sets(max_ground=6))
def test_delta_closed_implies_inscribed(B):
    if is_delta_closed(B):
        assert is_inscribed_nestohedron(B)


def test_graphical_verdicts_for_all_graphs_up_to_six_nodes():
    for d in range(3, 7):
        pairs = list(combinations(range(1, d + 1), 2))
        for m in range(1 << len(pairs)):
            edges = [e for k, e in enumerate(pairs) if m >> k & 1]
            assert is_inscribed_nestohedron(graphical_building_set(d, edges)) == components_are_complete(d, edges)
