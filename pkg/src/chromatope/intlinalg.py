"""Exact integer linear algebra: determinants, Hermite form, coset reduction.

Everything works on plain Python ints (arbitrary precision), row-major lists.
The Hermite form here is the row-style canonical echelon form over Z: positive
pivots, zeros below each pivot, entries above a pivot reduced into [0, pivot).
Reducing a vector by such a form yields the canonical representative of its
coset modulo the row lattice, which is what the graded ring arithmetic needs.
"""

from __future__ import annotations


def det_int(mat: list[list[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(
    rows: list[list[int]],
) -> tuple[list[list[int]], list[int]]:
    """Canonical row echelon form over Z of the lattice spanned by `rows`.

    Returns (basis_rows, pivot_cols).  Zero rows are dropped.
    """
    if not rows:
        return [], []
    work = [row[:] for row in rows if any(row)]
    ncols = len(rows[0])
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        # gcd-reduce all rows with a nonzero entry in this column
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            small = live[0]
            for r in live[1:]:
                q = r[col] // small[col]
                for j in range(col, ncols):
                    r[j] -= q * small[j]
            live = [r for r in live if r[col] != 0]
        pivot_row = live[0]
        work = [r for r in work if r is not pivot_row and any(r[col:])]
        if pivot_row[col] < 0:
            pivot_row = [-x for x in pivot_row]
        basis.append(pivot_row)
        pivots.append(col)
    # reduce entries above each pivot into [0, pivot)
    for i in range(len(basis) - 1, -1, -1):
        p = basis[i][pivots[i]]
        for j in range(i):
            q = basis[j][pivots[i]] // p
            if q:
                row_j, row_i = basis[j], basis[i]
                for t in range(pivots[i], len(row_j)):
                    row_j[t] -= q * row_i[t]
    return basis, pivots


def reduce_vector(vec: list[int], basis: list[list[int]], pivots: list[int]) -> list[int]:
    """Canonical representative of vec modulo the row lattice of `basis`."""
    out = list(vec)
    for row, col in zip(basis, pivots):
        q = out[col] // row[col]
        if q:
            for t in range(col, len(out)):
                out[t] -= q * row[t]
    return out
