"""Both pivoting backends against each other and against Fraction elimination."""
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from inscribed import _pykernels, kernels

try:
    from inscribed import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])
needs_cython = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def fraction_rref(rows, ncols):
    """Oracle: textbook Gauss-Jordan over Fractions; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    pivots, k = [], 0
    for c in range(ncols):
        i = next((i for i in range(k, len(A)) if A[i][c] != 0), None)
        if i is None:
            continue
        A[k], A[i] = A[i], A[k]
        A[k] = [x / A[k][c] for x in A[k]]
        for j in range(len(A)):
            if j != k and A[j][c] != 0:
                f = A[j][c]
                A[j] = [x - f * y for x, y in zip(A[j], A[k])]
        pivots.append(c)
        k += 1
    return A[:k], pivots


def scaled(result):
    rows, pivots, det = result
    return [[Fraction(x, det) for x in row] for row in rows[:len(pivots)]], pivots


def int_matrices(bound):
    return st.integers(1, 6).flatmap(lambda n: st.lists(
        st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=1, max_size=6))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(M=int_matrices(50))
def test_rref_matches_fraction_elimination(impl, M):
    n = len(M[0])
    assert scaled(impl.rref(M, n)) == fraction_rref(M, n)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(M=int_matrices(50))
def test_trailing_rows_vanish(impl, M):
    rows, pivots, det = impl.rref(M, len(M[0]))
    assert det != 0
    assert all(x == 0 for row in rows[len(pivots):] for x in row)


@needs_cython
@given(int_matrices(50))
def test_backends_agree_exactly(M):
    n = len(M[0])
    assert _ckernels.rref(M, n) == _pykernels.rref(M, n)


@needs_cython
@given(int_matrices(10 ** 30))
def test_backends_agree_beyond_machine_integers(M):
    n = len(M[0])
    assert _ckernels.rref(M, n) == _pykernels.rref(M, n)


@needs_cython
def test_overflow_falls_back_to_python_integers():
    big = 2 ** 62
    M = [[big, 3], [5, big]]
    assert _ckernels.rref(M, 2) == _pykernels.rref(M, 2)
    assert scaled(_ckernels.rref(M, 2)) == fraction_rref(M, 2)


@needs_cython
@given(int_matrices(100), st.data())
def test_dots_agree(M, data):
    v = data.draw(st.lists(st.integers(-100, 100), min_size=len(M[0]), max_size=len(M[0])))
    assert _ckernels.dots(M, v) == _pykernels.dots(M, v) == [sum(a * b for a, b in zip(r, v)) for r in M]


@needs_cython
@given(int_matrices(20), st.data())
def test_single_pivots_agree(M, data):
    r = data.draw(st.integers(0, len(M) - 1))
    nonzero = [c for c, x in enumerate(M[r]) if x]
    if not nonzero:
        return
    c = data.draw(st.sampled_from(nonzero))
    a, b = [list(row) for row in M], [list(row) for row in M]
    assert _ckernels.pivot(a, r, c, 1) == _pykernels.pivot(b, r, c, 1)
    assert a == b


def test_environment_variable_forces_the_fallback():
    code = "from inscribed import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"INSCRIBED_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_selected_backend_is_reported():
    assert kernels.BACKEND == ("cython" if kernels.rref is not _pykernels.rref else "python")
