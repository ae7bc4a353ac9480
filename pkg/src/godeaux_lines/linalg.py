"""Exact dense and sparse linear algebra over a field.

Matrices are lists of rows of raw field values; everything is fraction-free
in F_p and uses Fraction arithmetic over Q.  Only the small primitives the
rest of the package needs: rank, right null space, and a sparse null space
for the coefficient systems assembled by the polynomial kernel solver.
"""

from __future__ import annotations

from .fields import Field


def rank(field: Field, rows) -> int:
    """Rank of a matrix given as an iterable of row sequences."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not field.is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        for i in range(r + 1, len(mat)):
            if field.is_zero(mat[i][c]):
                continue
            f = field.mul(mat[i][c], inv)
            row_i, row_r = mat[i], mat[r]
            for j in range(c, ncols):
                row_i[j] = field.sub(row_i[j], field.mul(f, row_r[j]))
        r += 1
        if r == len(mat):
            break
    return r


def rref(field: Field, rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not field.is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(field: Field, rows, ncols: int):
    """Basis of the right kernel of the matrix, as tuples of raw values."""
    reduced, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [field.zero()] * ncols
        vec[f] = field.one()
        for r, c in enumerate(pivots):
            vec[c] = field.neg(reduced[r][f])
        basis.append(tuple(vec))
    return basis


def in_span(field: Field, basis, vec) -> bool:
    """Whether vec lies in the row span of basis (all raw value tuples)."""
    rows = [list(b) for b in basis]
    return rank(field, rows) == rank(field, rows + [list(vec)])


def sparse_nullspace(field: Field, srows, ncols: int):
    """Right kernel basis for rows given as {column: value} dicts.

    Suited to the very sparse coefficient systems coming from polynomial
    matrices: elimination keeps rows as dicts and picks each pivot as the
    lowest column of the row being processed.
    """
    pivots: dict[int, dict] = {}
    for row in srows:
        row = dict(row)
        while row:
            c = min(row)
            if c not in pivots:
                inv = field.inv(row[c])
                pivots[c] = {j: field.mul(inv, v) for j, v in row.items()}
                break
            f = row[c]
            for j, v in pivots[c].items():
                x = field.sub(row.get(j, field.zero()), field.mul(f, v))
                if field.is_zero(x):
                    row.pop(j, None)
                else:
                    row[j] = x
    # back-substitute so every pivot row is reduced against later pivots
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for j in sorted(k for k in row if k != c and k in pivots):
            f = row.get(j)
            if f is None or field.is_zero(f):
                continue
            for k, v in pivots[j].items():
                x = field.sub(row.get(k, field.zero()), field.mul(f, v))
                if field.is_zero(x):
                    row.pop(k, None)
                else:
                    row[k] = x
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = [field.zero()] * ncols
        vec[f] = field.one()
        for c, row in pivots.items():
            if f in row:
                vec[c] = field.neg(row[f])
        basis.append(tuple(vec))
    return basis
