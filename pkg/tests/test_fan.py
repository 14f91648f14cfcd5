from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from inscribed.errors import InvalidFan, NotAFace, NotAWalk
from inscribed.exact import add, identity, is_orthogonal, matmul, rank, scale, sub, zero_vector
from inscribed.fan import (
    Fan, cycle_basis, localize, normal_fan, positively_parallel, validate, walk_transform,
)
from inscribed.polytope import convex_hull, cube, permutahedron, sphere_points, support_face
from strategies import polytopes

SQUARE_WALLS = [(0, 1, (1, 0)), (1, 2, (0, 1)), (2, 3, (-1, 0)), (3, 0, (0, -1))]


def square_fan():
    return Fan.from_walls(2, range(4), SQUARE_WALLS)


def test_normal_fan_of_square():
    F = normal_fan(cube(2))
    assert len(F.regions) == 4 and len(F.link_cycles) == 1
    for a in F.normals.values():
        assert sorted(abs(x) for x in a) == [0, 1]


def test_permutahedron_walls_are_transpositions():
    P = permutahedron((0, 1, 2))
    F = normal_fan(P)
    assert len(F.regions) == 6
    for (R, S), a in F.normals.items():
        assert sorted(a) == [-1, 0, 1]
        u, v = P.vertices[R], P.vertices[S]
        assert sorted(u) == sorted(v) and sum(x != y for x, y in zip(u, v)) == 2


def test_sphere_61_fan_has_even_links():
    F = normal_fan(convex_hull(sphere_points(61)))
    assert len(F.regions) == 72
    assert all(len(c) % 2 == 0 for c in F.link_cycles)


def test_validate_square_fan():
    assert validate(square_fan())["ok"]


def test_validate_rejects_broken_antisymmetry():
    F = square_fan()
    normals = dict(F.normals)
    normals[(1, 0)] = (Fraction(-2), Fraction(1))
    with pytest.raises(InvalidFan) as err:
        validate(Fan(2, F.regions, normals))
    assert err.value.invariant == "antisymmetry"


def test_validate_rejects_disconnected_graph():
    F = Fan.from_walls(2, range(4), [(0, 1, (1, 0)), (2, 3, (-1, 0))])
    with pytest.raises(InvalidFan) as err:
        validate(F)
    assert err.value.invariant == "connectivity"


def test_twins_with_conflicting_normals_rejected():
    with pytest.raises(InvalidFan):
        Fan.from_walls(2, range(2), [(0, 1, (1, 0)), (1, 0, (0, 1))])


def test_cycle_basis_examples():
    B = cycle_basis(square_fan())
    assert len(B.fundamental_cycles) == 1 and len(B.fundamental_cycles[0]) == 5
    B = cycle_basis(normal_fan(permutahedron((0, 1, 2))))
    assert len(B.fundamental_cycles) == 1 and len(B.fundamental_cycles[0]) == 7
    assert len(cycle_basis(normal_fan(cube(3))).fundamental_cycles) == 5


def test_walk_transform_examples():
    F = square_fan()
    assert walk_transform(F, [0]) == identity(2)
    M = walk_transform(F, [0, 1])
    assert matmul(M, M) == identity(2) and M != identity(2)
    B = normal_fan(permutahedron((0, 1, 2)))
    assert walk_transform(B, B.link_cycles[0] + B.link_cycles[0][:1]) == identity(3)


def test_walk_transform_rejects_non_walks():
    with pytest.raises(NotAWalk):
        walk_transform(square_fan(), [0, 2])


def test_localize_examples():
    C = cube(3)
    facet = support_face(C, (0, 0, 1))
    assert len(localize(C, facet).regions) == 4
    H = convex_hull(sphere_points(61))
    hexagon = localize(H, support_face(H, (1, 1, 1)))
    assert len(hexagon.regions) == 6
    for a in hexagon.normals.values():
        assert sorted(abs(x) for x in a) in ([0, 1, 1], [0, 2, 2], [0, 3, 3], [0, 4, 4])
    assert len(localize(C, support_face(C, (1, 2, 3))).regions) == 1


def test_localize_rejects_non_faces():
    with pytest.raises(NotAFace):
        localize(cube(3), {0, 7})


@given(polytopes(max_size=9), st.data())
def test_walk_transforms_are_orthogonal_and_reverse_to_identity(P, data):
    F = normal_fan(P)
    walk = [data.draw(st.sampled_from(F.regions))]
    for _ in range(data.draw(st.integers(0, 6))):
        walk.append(data.draw(st.sampled_from(F.neighbors(walk[-1]))))
    M = walk_transform(F, walk)
    assert is_orthogonal(M)
    assert matmul(walk_transform(F, walk[::-1]), M) == identity(3)


@given(polytopes(max_size=10))
def test_cycle_count_and_link_closure(P):
    F = normal_fan(P)
    assert len(cycle_basis(F).fundamental_cycles) == len(F.edges()) - len(F.regions) + 1
    # Edge lengths as weights: the normals sum to zero around every link cycle.
    for cyc in F.link_cycles:
        total = zero_vector(3)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            total = add(total, F.normal(a, b))
        assert all(x == 0 for x in total)


@given(polytopes(max_size=10))
def test_generators_lie_behind_every_wall(P):
    F = normal_fan(P)
    validate(F)
    for R in F.regions:
        for S in F.neighbors(R):
            a = F.normal(R, S)
            assert all(sum(x * y for x, y in zip(a, g)) <= 0 for g in F.generators[R])


@given(polytopes(max_size=10))
def test_fan_normals_are_edge_directions(P):
    F = normal_fan(P)
    for (R, S), a in F.normals.items():
        assert positively_parallel(a, sub(P.vertices[S], P.vertices[R]))
        assert rank((a, scale(2, a)), 3) == 1
