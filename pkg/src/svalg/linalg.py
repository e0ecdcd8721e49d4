"""Exact sparse row reduction over Q(i).

Rows are dicts ``{column: coefficient}``; coefficients may be Fractions or
GaussRats.  Columns are processed in increasing order and the pivot row for a
column is the sparsest candidate (ties broken by original position), so the
reduced form and the nullspace basis are deterministic.
"""

from __future__ import annotations

from .scalars import ONE, as_gauss


def _clean(row):
    return {c: v for c, v in row.items() if v}


def rref(rows, ncols):
    """Reduced row echelon form.

    Returns ``(pivots, reduced)`` where ``pivots`` lists pivot columns in
    increasing order and ``reduced[i]`` is the reduced row with pivot
    ``pivots[i]`` (leading coefficient 1).
    """
    pending = [(_clean(r), i) for i, r in enumerate(rows)]
    pending = [(r, i) for r, i in pending if r]
    pivot_rows = {}
    for col in range(ncols):
        cands = [(len(r), i, j) for j, (r, i) in enumerate(pending) if col in r]
        if not cands:
            continue
        _, _, j = min(cands)
        prow, _ = pending.pop(j)
        inv = ONE / as_gauss(prow[col])
        prow = {c: v * inv for c, v in prow.items()}
        prow[col] = ONE
        # eliminate col from everything else
        new_pending = []
        for r, i in pending:
            f = r.get(col)
            if f:
                r = _axpy(r, prow, -f)
            if r:
                new_pending.append((r, i))
        pending = new_pending
        for pc, r in pivot_rows.items():
            f = r.get(col)
            if f:
                pivot_rows[pc] = _axpy(r, prow, -f)
        pivot_rows[col] = prow
    pivots = sorted(pivot_rows)
    return pivots, [pivot_rows[p] for p in pivots]


def _axpy(r, p, f):
    out = dict(r)
    for c, v in p.items():
        nv = out.get(c, 0) + f * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


def rank(rows, ncols):
    return len(rref(rows, ncols)[0])


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for every row}, as dense lists of GaussRat.

    One basis vector per free column (ascending), with that column set to 1.
    """
    pivots, reduced = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [as_gauss(0)] * ncols
        vec[free] = ONE
        for p, r in zip(pivots, reduced):
            v = r.get(free)
            if v:
                vec[p] = -as_gauss(v)
        basis.append(vec)
    return basis


def dense_rows(matrix):
    """Convert a dense matrix (list of lists) to sparse rows."""
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def mat_vec(matrix, vec):
    return [sum((a * b for a, b in zip(row, vec)), as_gauss(0)) for row in matrix]


def same_row_space(rows_a, rows_b, ncols):
    ra = rank(rows_a, ncols)
    rb = rank(rows_b, ncols)
    return ra == rb == rank(list(rows_a) + list(rows_b), ncols)
