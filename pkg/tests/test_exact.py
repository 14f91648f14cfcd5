import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from inscribed.errors import IrrationalInput, NotOrthogonal, NotPsd, ZeroNormal
from inscribed.exact import (
    EXACT, FLOAT, LinearSubspace, ScalarMode, circumcenter_space, gale_transform, group_closure, identity,
    is_orthogonal, kernel, matmul, psd_gale, rank, reflect, reflection_matrix, transpose,
)
from inscribed.fan import normal_fan
from inscribed.inscribe import lambda_inscribed_space
from inscribed.lp import max_support_point, strict_positive_point
from inscribed.polytope import permutahedron
from inscribed.typecone import type_space
from oracles import frac_rank, polyhedron_nonempty, sq_dist

small = st.integers(-5, 5)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=7)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 5), entries=small):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def mat_vec(M, v):
    return tuple(sum(Fraction(a) * b for a, b in zip(row, v)) for row in M)


# --- scalars ---------------------------------------------------------------------

def test_exact_mode_rejects_floats():
    with pytest.raises(IrrationalInput):
        EXACT.scalar(0.5)
    assert EXACT.scalar("3/6") == Fraction(1, 2)


def test_float_mode_needs_positive_tolerance():
    with pytest.raises(ValueError):
        ScalarMode.float(0)


# --- kernels ---------------------------------------------------------------------

def test_kernel_of_one_equation():
    K = kernel(((1, 1),), 2)
    assert K.dim == 1 and K.contains((1, -1))


def test_kernel_of_identity_is_zero():
    assert kernel(identity(2), 2).dim == 0


def test_hexagon_closed_walk_system_has_four_dimensional_solutions():
    assert type_space(normal_fan(permutahedron((0, 1, 2)))).dim == 4


@given(matrices())
def test_kernel_vectors_vanish_and_dimensions_add_up(M):
    n = len(M[0])
    K = kernel(M, n)
    for b in K.basis:
        assert all(x == 0 for x in mat_vec(M, b))
    assert K.dim + frac_rank(M) == n
    assert rank(M, n) == frac_rank(M)


@given(matrices())
def test_float_kernel_matches_exact_dimension(M):
    n = len(M[0])
    assert kernel(M, n, FLOAT).dim == kernel(M, n).dim


# --- Gale transforms ---------------------------------------------------------------

def test_gale_of_three_vectors_in_the_plane():
    A = ((1, 0, 1), (0, 1, 1))
    G = gale_transform(A)
    assert len(G) == 1
    g = G[0]
    assert g[0] == g[1] == -g[2]


def test_gale_of_full_column_rank_is_empty():
    assert gale_transform(((1, 0), (0, 1), (1, 1))) == ()


def test_gale_of_pentagon_edge_directions():
    # Edge directions of a convex pentagon; they close up, so the rank is 2.
    pts = [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 1)]
    dirs = [tuple(b - a for a, b in zip(pts[i], pts[(i + 1) % 5])) for i in range(5)]
    A = transpose(dirs, 2)
    G = gale_transform(A)
    assert len(G) == 3
    assert all(x == 0 for row in matmul(G, transpose(A, 5)) for x in row)
    assert frac_rank(list(A) + list(G)) == 5


@given(matrices(rows=st.integers(1, 3), cols=st.integers(2, 5)))
def test_gale_transform_properties(A):
    n = len(A[0])
    G = gale_transform(A)
    r = frac_rank(A)
    assert len(G) == n - r
    for g in G:
        assert all(x == 0 for x in mat_vec(A, g))
    assert frac_rank(list(A) + list(G)) == n


def test_psd_gale_of_identity_is_zero():
    G = psd_gale(identity(3))
    assert all(x == 0 for row in G for x in row)


def test_psd_gale_of_all_ones():
    G = psd_gale(((1, 1), (1, 1)))
    assert G[0][0] > 0 and G[0][0] == G[1][1] == -G[0][1] == -G[1][0]


def test_psd_gale_of_three_planar_unit_vectors():
    h = Fraction(-1, 2)
    A = ((1, h, h), (h, 1, h), (h, h, 1))
    G = psd_gale(A)
    assert frac_rank(G) == 1
    assert all(x == 0 for row in matmul(A, G) for x in row)
    S = [[a + g for a, g in zip(ra, rg)] for ra, rg in zip(A, G)]
    assert frac_rank(S) == 3


def test_psd_gale_rejects_indefinite():
    with pytest.raises(NotPsd):
        psd_gale(((1, 2), (2, 1)))


@given(matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)))
def test_psd_gale_of_gram_matrices(V):
    A = tuple(tuple(sum(Fraction(a) * b for a, b in zip(u, w)) for w in V) for u in V)
    G = psd_gale(A)
    assert all(x == 0 for row in matmul(A, G) for x in row)
    assert frac_rank([[a + g for a, g in zip(ra, rg)] for ra, rg in zip(A, G)]) == len(A)


# --- reflections -----------------------------------------------------------------

def test_reflect_examples():
    assert reflect((1, 0), (1, 0)) == (-1, 0)
    assert reflect((0, 5), (1, 0)) == (0, 5)
    assert reflect((3, 4, 6), (1, -1, 0)) == (4, 3, 6)


def test_reflect_zero_normal():
    with pytest.raises(ZeroNormal):
        reflect((1, 2), (0, 0))


@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3))
def test_reflect_is_an_isometric_involution(x, alpha):
    if all(a == 0 for a in alpha):
        return
    y = reflect(x, alpha)
    assert reflect(y, alpha) == tuple(x)
    assert sq_dist(y, (0, 0, 0)) == sq_dist(x, (0, 0, 0))


@given(st.lists(small, min_size=3, max_size=3))
def test_reflection_matrix_is_orthogonal(alpha):
    if not any(alpha):
        return
    M = reflection_matrix(alpha)
    assert is_orthogonal(M)
    assert all(isinstance(x, Fraction) for row in M for x in row)


# --- LP ------------------------------------------------------------------------------

def test_strict_positive_point_examples():
    assert strict_positive_point(LinearSubspace.span([(1, 1)], 2)) == (1, 1)
    assert strict_positive_point(LinearSubspace.span([(1, -1)], 2)) is None


def test_hexagon_lambda_space_meets_the_open_orthant():
    F = normal_fan(permutahedron((0, 1, 2)))
    assert strict_positive_point(lambda_inscribed_space(F).subspace) is not None


def test_max_support_point_examples():
    lam, support = max_support_point(LinearSubspace.span([(1, -1)], 2))
    assert support == set() and all(x == 0 for x in lam)
    lam, support = max_support_point(LinearSubspace.span([(1, 1, 0)], 3))
    assert support == {0, 1}


@given(matrices(rows=st.integers(1, 3), cols=st.integers(2, 4), entries=st.integers(-3, 3)))
def test_strict_positive_point_against_vertex_enumeration(B):
    U = LinearSubspace.span(B, len(B[0]))
    lam = strict_positive_point(U)
    if U.dim == 0:
        assert lam is None
        return
    # lambda = B^t y with y free; B^t has full column rank because the basis is independent.
    Bt = transpose(U.basis, len(B[0]))
    feasible = polyhedron_nonempty(Bt, [1] * len(Bt))
    assert (lam is not None) == feasible
    if lam is not None:
        assert all(x >= 1 for x in lam) and U.contains(lam)


@given(matrices(rows=st.integers(1, 3), cols=st.integers(2, 4), entries=st.integers(-3, 3)))
def test_max_support_is_maximal(B):
    n = len(B[0])
    U = LinearSubspace.span(B, n)
    lam, support = max_support_point(U)
    assert all(x >= 0 for x in lam) and U.contains(lam)
    assert support == {i for i, x in enumerate(lam) if x > 0}
    if U.dim == 0:
        return
    Bt = transpose(U.basis, n)
    for i in set(range(n)) - support:
        # No nonnegative vector of U is positive at coordinate i.
        assert not polyhedron_nonempty(Bt, [1 if j == i else 0 for j in range(n)])


# --- circumspheres ---------------------------------------------------------------------

def test_circumcenter_of_unit_square():
    space, r2 = circumcenter_space([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert space.point == (Fraction(1, 2), Fraction(1, 2)) and r2 == Fraction(1, 2)
    assert space.dim == 0


def test_circumcenter_of_permutations():
    from itertools import permutations
    pts = list(permutations((0, 1, 2)))
    space, r2 = circumcenter_space(pts)
    assert space.dim == 1 and space.contains((1, 1, 1)) and r2 == 2
    assert all(sq_dist(p, space.point) == r2 for p in pts)


def test_circumcenter_none_for_non_cyclic_quadrilateral():
    assert circumcenter_space([(0, 0), (3, 0), (3, 1), (0, 3)]) is None


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=5))
def test_circumcenter_distances_are_equal(pts):
    res = circumcenter_space(pts)
    if res is None:
        return
    space, r2 = res
    assert all(sq_dist(p, space.point) == r2 for p in pts)


# --- groups ---------------------------------------------------------------------------

def test_group_of_minus_identity():
    assert len(group_closure([((-1, 0), (0, -1))], 10)) == 2


def test_dihedral_group_of_two_reflections():
    G = group_closure([reflection_matrix((1, 0), FLOAT), reflection_matrix((0.5, math.sqrt(3) / 2), FLOAT)],
                      100, FLOAT)
    assert len(G) == 6


def test_exact_dihedral_group_in_the_plane_x_plus_y_plus_z_zero():
    G = group_closure([reflection_matrix((1, -1, 0)), reflection_matrix((0, 1, -1))], 100)
    assert len(G) == 6


def test_irrational_rotation_is_too_large():
    c, s = math.cos(1.0), math.sin(1.0)
    assert group_closure([((c, -s), (s, c))], 1000, FLOAT) is None


def test_group_closure_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        group_closure([((2, 0), (0, 1))], 10)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=3))
def test_group_closure_is_closed(normals):
    normals = [a for a in normals if any(a)]
    if not normals:
        return
    G = group_closure([reflection_matrix(a) for a in normals], 200)
    if G is None:
        return
    for g in G:
        assert transpose(g, 3) in G
        for h in list(G)[:10]:
            assert matmul(g, h) in G
