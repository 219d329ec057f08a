"""Exact linear algebra over GF(q).

Small dense problems (echelon forms, ranks, kernels) run in pure Python on
tuples of ints.  The enumeration-heavy callers use the vectorised batch
kernels instead, which route every field operation through the q x q lookup
tables of the field object, so numpy only ever moves small integers around.
"""

from __future__ import annotations

import numpy as np


def rref(field, rows):
    """Reduced row echelon form.

    Returns (rows, pivots): the nonzero rows as a tuple of tuples, pivot
    entries scaled to 1 and cleared above and below, and the pivot columns.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        if inv != 1:
            mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(nrows):
            f = mat[i][c]
            if i != r and f:
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def rank(field, rows):
    """Rank by forward elimination only (cheaper than full rref)."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        top = mat[r]
        for i in range(r + 1, nrows):
            f = mat[i][c]
            if f:
                f = field.mul(f, inv)
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], top)]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(field, rows, ncols=None):
    """Canonical basis (rref'd) of {v : M v^T = 0}, as a tuple of row tuples."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = field.neg(red[r][f])
        basis.append(tuple(v))
    reduced, _ = rref(field, basis) if basis else ((), ())
    return reduced


def mat_mul(field, a, b):
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = 0
            for t, x in enumerate(row):
                if x:
                    acc = field.add(acc, field.mul(x, b[t][j]))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(field, a, v):
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return tuple(out)


def mat_inv(field, a):
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(field, aug)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def meet_rows(field, a_rows, b_rows, ncols):
    """Basis of the intersection of two row spaces (Zassenhaus block trick)."""
    block = [tuple(r) + tuple(r) for r in a_rows] + [tuple(r) + (0,) * ncols for r in b_rows]
    red, _ = rref(field, block)
    out = []
    for row in red:
        if not any(row[:ncols]):
            right = row[ncols:]
            if any(right):
                out.append(right)
    reduced, _ = rref(field, out) if out else ((), ())
    return reduced


# ---------------------------------------------------------------------------
# vectorised batch kernels


def bmatmul(field, a, b):
    """Exact (..., m, t) @ (..., t, n) over GF(q), with broadcasting."""
    if field.k == 1:
        prod = a.astype(np.int64) @ b.astype(np.int64)
        return (prod % field.p).astype(field._dtype)
    mt, at = field.mul_table, field.add_table
    out = None
    for t in range(a.shape[-1]):
        term = mt[a[..., :, t, None], b[..., None, t, :]]
        out = term if out is None else at[out, term]
    return out


def bnormalize_rows(field, v):
    """Scale each vector along the last axis so its first nonzero entry is 1.

    Rows must be nonzero; an all-zero row would silently divide by the
    sentinel inv_table[0] = 0 and stay zero.
    """
    first = (v != 0).argmax(axis=-1)
    lead = np.take_along_axis(v, first[..., None], axis=-1)[..., 0]
    scale = field.inv_table[lead]
    return field.mul_table[v, scale[..., None]]


def bencode(field, v):
    """Pack vectors over GF(q), q <= 16, into int64 keys (4 bits per entry)."""
    if field.q > 16:
        raise ValueError("nibble packing needs q <= 16")
    out = np.zeros(v.shape[:-1], dtype=np.int64)
    for i in range(v.shape[-1]):
        out = (out << 4) | v[..., i].astype(np.int64)
    return out
