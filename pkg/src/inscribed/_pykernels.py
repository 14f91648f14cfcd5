"""Fraction-free integer pivoting, pure Python.

A tableau is a list of integer rows standing for the rational matrix
``rows / det``.  Pivoting keeps every entry an integer (each one is a minor
of the original matrix), so no gcd work is needed inside the loops.
"""


def pivot(rows, r, c, det):
    """Gauss-Jordan pivot on ``rows[r][c]`` in place; return the new denominator."""
    p = rows[r][c]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            if p != det:
                rows[i] = [(p * x) // det for x in row]
        else:
            rows[i] = [(p * x - f * y) // det for x, y in zip(row, prow)]
    return p


def rref(rows, ncols):
    """Reduce integer ``rows`` to fraction-free reduced row echelon form.

    Returns ``(rows, pivot_columns, det)``; the rational RREF is ``rows / det``
    and only the first ``len(pivot_columns)`` rows are nonzero.
    """
    rows = [list(row) for row in rows]
    det = 1
    pivots = []
    k = 0
    m = len(rows)
    for c in range(ncols):
        if k == m:
            break
        for i in range(k, m):
            if rows[i][c] != 0:
                break
        else:
            continue
        if i != k:
            rows[i], rows[k] = rows[k], rows[i]
        det = pivot(rows, k, c, det)
        pivots.append(c)
        k += 1
    return rows, pivots, det


def dots(rows, vec):
    """Inner products of every row with ``vec``."""
    return [sum(a * b for a, b in zip(row, vec)) for row in rows]
