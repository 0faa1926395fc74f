"""Gaussian elimination over GF(q) on numpy code arrays.

``rank_batch`` eliminates a whole stack of equally-sized matrices at once,
one column per step, so thousands of tiny matrices cost about as much as a
single large one.  Pivot rule: first nonzero entry in the column at or below
the current pivot row.
"""

from __future__ import annotations

import numpy as np


def rank_batch(ctx, mats: np.ndarray) -> np.ndarray:
    """Ranks of a (N, R, C) stack of matrices with entries given as codes."""
    m = np.array(mats, dtype=np.int64, copy=True)
    if m.ndim != 3:
        raise ValueError("rank_batch expects an (N, R, C) array")
    nmat, nrows, ncols = m.shape
    rank = np.zeros(nmat, dtype=np.int64)
    if nmat == 0 or nrows == 0 or ncols == 0:
        return rank
    rows = np.arange(nrows)
    for c in range(ncols):
        live = np.nonzero(rank < nrows)[0]
        if live.size == 0:
            break
        col = m[live, :, c]
        cand = (col != 0) & (rows[None, :] >= rank[live, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = live[has]
        piv = np.argmax(cand[has], axis=1)
        r = rank[idx]
        swap = piv != r
        if swap.any():
            si, sr, sp = idx[swap], r[swap], piv[swap]
            tmp = m[si, sr].copy()
            m[si, sr] = m[si, sp]
            m[si, sp] = tmp
        sub = m[idx]
        prow = sub[np.arange(idx.size), r]
        inv = ctx.vinv(prow[:, c])
        prow = ctx.vmul(prow, inv[:, None])
        factor = sub[:, :, c]
        factor = np.where(rows[None, :] > r[:, None], factor, 0)
        sub = ctx.vsub(sub, ctx.vmul(factor[:, :, None], prow[:, None, :]))
        m[idx] = sub
        rank[idx] += 1
    return rank


def rank(ctx, mat) -> int:
    """Rank of one matrix of codes over the field ``ctx``."""
    a = np.asarray(mat, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("rank expects a 2-D array")
    return int(rank_batch(ctx, a[None])[0])
