"""Exact feasibility of linear inequality systems.

``feasible_point(M, b)`` finds ``y`` with ``M y >= b`` by running the simplex
method with Bland's rule on the dual problem

    maximize  b.z   subject to  M^t z = 0,  z >= 0,

which is bounded exactly when the primal system is feasible.  The dual has
one row per column of ``M``, so the tableau stays small even when there are
many inequalities.  An optimal basis yields the primal point by a square
solve.  In exact mode the tableau holds integers with a common denominator
and pivots are fraction-free.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import kernels
from .exact import EXACT, LinearSubspace, add, mat_vec, solve, transpose, zero_vector


def _lcm_scale(values):
    den = 1
    for x in values:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in values]


class _Tableau:
    """Rows of ``[A | I]`` plus an objective row; the matrix is ``rows / det``."""

    def __init__(self, A, c, mode):
        self.mode = mode
        m, n = len(A), len(c)
        self.n = n
        if mode.exact:
            rows = [_lcm_scale(list(row)) + [0] * m for row in A]
            obj = _lcm_scale(list(c)) + [0] * m
        else:
            rows = [list(map(float, row)) + [0.0] * m for row in A]
            obj = list(map(float, c)) + [0.0] * m
        for i in range(m):
            rows[i][n + i] = 1 if mode.exact else 1.0
        self.rows = rows + [obj]
        self.basis = [n + i for i in range(m)]
        self.det = 1
        big = max([1.0] + [abs(float(x)) for row in self.rows for x in row])
        self.scale = big

    def sign(self, x):
        if self.mode.exact:
            s = (x > 0) - (x < 0)
            return s if self.det > 0 else -s
        return self.mode.sign(x, self.scale)

    def pivot(self, r, c):
        if self.mode.exact:
            self.det = kernels.pivot(self.rows, r, c, self.det)
        else:
            rows = self.rows
            p = rows[r][c]
            rows[r] = [x / p for x in rows[r]]
            pr = rows[r]
            for i, row in enumerate(rows):
                if i != r and row[c] != 0.0:
                    f = row[c]
                    rows[i] = [x - f * y for x, y in zip(row, pr)]
        self.basis[r] = c

    def drive_out_artificials(self):
        r = 0
        while r < len(self.basis):
            if self.basis[r] >= self.n:
                row = self.rows[r]
                col = next((j for j in range(self.n) if self.sign(row[j]) != 0), None)
                if col is None:  # redundant equality
                    del self.rows[r]
                    del self.basis[r]
                    continue
                self.pivot(r, col)
            r += 1

    def maximize(self):
        """Bland's rule on a zero right-hand side; False if unbounded."""
        while True:
            obj = self.rows[-1]
            basic = set(self.basis)
            enter = next((j for j in range(self.n)
                          if j not in basic and self.sign(obj[j]) > 0), None)
            if enter is None:
                return True
            cands = [i for i in range(len(self.basis)) if self.sign(self.rows[i][enter]) > 0]
            if not cands:
                return False
            leave = min(cands, key=lambda i: self.basis[i])
            self.pivot(leave, enter)


def feasible_point(M, b, mode=EXACT):
    """Some ``y`` with ``M y >= b`` componentwise, or None if there is none."""
    M = [tuple(row) for row in M]
    if not M:
        return ()
    m = len(M[0])
    if m == 0:
        ok = all(mode.sign(x) <= 0 for x in b)
        return () if ok else None
    tab = _Tableau(transpose(M), b, mode)
    tab.drive_out_artificials()
    if not tab.maximize():
        return None
    beta = tab.basis
    y = solve(tuple(M[j] for j in beta), tuple(b[j] for j in beta), mode)
    if y is None:
        y = zero_vector(m, mode)
    values = mat_vec(M, y)
    slack = 1e3 * mode.tol * max([1.0] + [abs(float(v)) for v in values])
    if mode.exact:
        assert all(v >= bj for v, bj in zip(values, b)), "simplex certificate failed"
    elif any(v < bj - slack for v, bj in zip(values, b)):
        return None
    return y


def strict_positive_point(U: LinearSubspace):
    """A vector of ``U`` with every coordinate >= 1, or None if ``U`` misses the open orthant."""
    mode = U.mode
    if U.dim == 0:
        return None
    one = Fraction(1) if mode.exact else 1.0
    y = feasible_point(transpose(U.basis), (one,) * U.ambient, mode)
    if y is None:
        return None
    return U.combine(y)


def max_support_point(U: LinearSubspace):
    """A nonnegative vector of ``U`` with inclusion-maximal support.

    Returns ``(lambda, support)``.  Each coordinate not yet covered gets its
    own feasibility problem (``lambda >= 0``, ``lambda_i >= 1``); the
    certificates are summed.
    """
    mode = U.mode
    n = U.ambient
    total = zero_vector(n, mode)
    support = set()
    if U.dim == 0:
        return total, support
    full = strict_positive_point(U)
    if full is not None:
        return full, set(range(n))
    M = transpose(U.basis)
    zero, one = (Fraction(0), Fraction(1)) if mode.exact else (0.0, 1.0)
    for i in range(n):
        if i in support:
            continue
        b = [zero] * n
        b[i] = one
        y = feasible_point(M, b, mode)
        if y is None:
            continue
        lam = U.combine(y)
        if not mode.exact:
            lam = tuple(max(x, 0.0) for x in lam)
        total = add(total, lam)
        support |= {j for j, x in enumerate(lam) if mode.sign(x) > 0}
    return total, support


def cone_point_with_bounds(U: LinearSubspace, lower):
    """A vector of ``U`` with coordinatewise ``x >= lower``, or None."""
    if U.dim == 0:
        return zero_vector(U.ambient, U.mode) if all(U.mode.sign(x) <= 0 for x in lower) else None
    y = feasible_point(transpose(U.basis), tuple(lower), U.mode)
    return None if y is None else U.combine(y)

