"""Exact linear algebra over a ``Field``: rank, batched maximal-minor tests,
and exhaustive codeword enumeration."""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from .field import Field

CHUNK = 1 << 14


def rank(F: Field, rows) -> int:
    M = [list(r) for r in rows]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        r += 1
        if r == nrows:
            break
    return r


def gram(F: Field, rows) -> list[list[int]]:
    """G @ G.T over the field."""
    rows = [list(r) for r in rows]
    return [[F.sum(F.mul(x, y) for x, y in zip(a, b)) for b in rows] for a in rows]


def batched_nonsingular(F: Field, mats: np.ndarray) -> np.ndarray:
    """For a (B, k, k) stack of square matrices return a bool mask of invertibility."""
    A = np.array(mats, dtype=np.int64, copy=True)
    B, k, _ = A.shape
    ok = np.ones(B, dtype=bool)
    ar = np.arange(B)
    for c in range(k):
        nz = A[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = nz.argmax(axis=1) + c
        row_c = A[ar, c].copy()
        A[ar, c] = A[ar, piv]
        A[ar, piv] = row_c
        if c == k - 1:
            break
        pv = A[:, c, c]
        pv = np.where(pv == 0, 1, pv)
        factors = F.vmul(A[:, c + 1 :, c], F.vinv(pv)[:, None])
        update = F.vmul(factors[:, :, None], A[:, None, c, c:])
        A[:, c + 1 :, c:] = F.vsub(A[:, c + 1 :, c:], update)
    return ok


def row_reduce(F: Field, rows) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def all_maximal_minors_nonzero(F: Field, G) -> tuple[bool, tuple[int, ...] | None, int]:
    """Check every k x k column submatrix of the k x N matrix ``G``.

    G is brought to the form [I | A]; a column set T gives an invertible
    submatrix iff the square submatrix of A whose rows are the pivots missing
    from T and whose columns are the non-pivot members of T is invertible.
    Square minors of A are built size by size with a Laplace expansion along
    their last row, so each layer costs one vectorised pass per column
    position.

    Returns ``(ok, first_failing_columns, minors_checked)``.
    """
    k = len(G)
    N = len(G[0])
    reduced, pivots = row_reduce(F, G)
    if pivots[:k] != list(range(k)):
        return False, tuple(range(k)), 1
    A = np.asarray([row[k:] for row in reduced], dtype=np.int64)
    w = N - k
    checked = 1

    def witness(R, C):
        return tuple(sorted(set(range(k)) - set(R))) + tuple(k + c for c in C)

    if w == 0:
        return True, None, checked
    zero = np.argwhere(A == 0)
    if len(zero):
        r, c = (int(x) for x in zero[0])
        return False, witness((r,), (c,)), checked + 1
    checked += A.size
    prev_R = {(r,): r for r in range(k)}
    prev_C = {(c,): c for c in range(w)}
    prev = A
    for j in range(2, min(k, w) + 1):
        Rs = list(itertools.combinations(range(k), j))
        Cs = list(itertools.combinations(range(w), j))
        r_last = np.asarray([R[-1] for R in Rs], dtype=np.int64)
        r_rank = np.asarray([prev_R[R[:-1]] for R in Rs], dtype=np.int64)
        acc = np.zeros((len(Rs), len(Cs)), dtype=np.int64)
        for t in range(j):
            c_t = np.asarray([C[t] for C in Cs], dtype=np.int64)
            c_rank = np.asarray([prev_C[C[:t] + C[t + 1 :]] for C in Cs], dtype=np.int64)
            term = F.vmul(A[r_last[:, None], c_t[None, :]], prev[r_rank[:, None], c_rank[None, :]])
            if (j - 1 + t) % 2:
                term = F.vneg(term)
            acc = F.vadd(acc, term)
        zero = np.argwhere(acc == 0)
        if len(zero):
            i, jj = (int(x) for x in zero[0])
            return False, witness(Rs[i], Cs[jj]), checked + 1
        checked += acc.size
        prev = acc
        prev_R = {R: i for i, R in enumerate(Rs)}
        prev_C = {C: i for i, C in enumerate(Cs)}
    return True, None, checked


def all_maximal_minors_by_elimination(F: Field, G) -> tuple[bool, tuple[int, ...] | None]:
    """Same predicate as ``all_maximal_minors_nonzero`` by eliminating every
    k x k submatrix directly.  Slow; kept as a cross-check."""
    Gm = np.asarray(G, dtype=np.int64)
    k, N = Gm.shape
    combos = itertools.combinations(range(N), k)
    while True:
        block = list(itertools.islice(combos, CHUNK))
        if not block:
            return True, None
        idx = np.asarray(block, dtype=np.int64)
        ok = batched_nonsingular(F, Gm[:, idx].transpose(1, 0, 2))
        if not ok.all():
            return False, tuple(block[int(np.argmin(ok))])


def minimum_weight(F: Field, G) -> int:
    """Minimum Hamming weight over all nonzero codewords spanned by ``G``."""
    Gm = np.asarray(G, dtype=np.int64)
    k, N = Gm.shape
    q = F.q
    total = q**k
    best = N + 1
    powers = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, CHUNK):
        msg_ids = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        msgs = (msg_ids[:, None] // powers[None, :]) % q
        words = np.zeros((len(msg_ids), N), dtype=np.int64)
        for i in range(k):
            words = F.vadd(words, F.vmul(msgs[:, i, None], Gm[i][None, :]))
        w = (words != 0).sum(axis=1).min()
        best = min(best, int(w))
    return best


def minors_count(N: int, k: int) -> int:
    return comb(N, k)
