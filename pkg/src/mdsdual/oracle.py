"""Brute-force ground truth, independent of the constructions.

Nothing here uses ``grs`` or ``families``: quadratic characters come straight
from the discrete-log parity and every search is exhaustive up to an explicit
cap (exceeding it raises ``SearchCapExceeded``; nothing is truncated).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .field import Field

DEFAULT_SUBSET_CAP = 10**8
DEFAULT_MATRIX_CAP = 10**8
DEFAULT_CODEWORD_CAP = 10**7
_CHUNK = 1 << 14


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchResult:
    q: int
    n: int
    mode: str  # sigma_g | sigma_eg | selfdual_any
    found: bool
    witness: tuple | None
    subsets_examined: int

    def to_dict(self) -> dict:
        w = self.witness
        if w is not None and w and isinstance(w[0], tuple):
            w = [list(row) for row in w]
        elif w is not None:
            w = list(w)
        return {
            "q": self.q,
            "n": self.n,
            "mode": self.mode,
            "found": self.found,
            "witness": w,
            "subsets_examined": self.subsets_examined,
        }


def _log_parity_table(F: Field) -> np.ndarray:
    """parity[x, y] = parity of log(x - y), zero on the diagonal."""
    idx = np.arange(F.q, dtype=np.int64)
    diff = F.vsub(idx[:, None], idx[None, :])
    par = (F._log_np[diff] & 1).astype(np.int8)
    np.fill_diagonal(par, 0)
    return par


def brute_sigma(
    F: Field, n: int, mode: str, *, canonical: bool = True, max_subsets: int = DEFAULT_SUBSET_CAP
) -> SearchResult:
    """Decide whether ``n`` lies in Sigma(g, q) (mode 'g') or Sigma(eg, q) (mode 'eg').

    With ``canonical`` the search only visits sets containing 0 and 1, which
    is enough because x -> ax + b preserves both criteria.
    """
    if mode not in ("g", "eg"):
        raise ValueError("mode must be 'g' or 'eg'")
    if n % 2 or n < 2:
        raise ValueError("n must be an even number >= 2")
    q = F.q
    size = n if mode == "g" else n - 1
    label = "sigma_" + mode
    if size > q:
        return SearchResult(q, n, label, False, None, 0)
    if canonical and size >= 2:
        fixed, pool, free = (0, 1), range(2, q), size - 2
    elif canonical:
        fixed, pool, free = (0,), range(0), 0
    else:
        fixed, pool, free = (), range(q), size
    total = comb(len(pool), free)
    if total > max_subsets:
        raise SearchCapExceeded(f"{total} subsets exceed the cap {max_subsets}")
    if q > 4096:
        raise SearchCapExceeded(f"GF({q}) is too large for exhaustive subset search")
    par = _log_parity_table(F)
    minus_one_parity = ((q - 1) // 2) & 1
    combos = itertools.combinations(pool, free)
    examined = 0
    while True:
        block = list(itertools.islice(combos, _CHUNK))
        if not block:
            break
        idx = np.asarray([fixed + c for c in block], dtype=np.int64).reshape(len(block), size)
        bits = par[idx[:, :, None], idx[:, None, :]].sum(axis=2) % 2
        if mode == "g":
            good = (bits == bits[:, :1]).all(axis=1)
        else:
            good = ((bits + minus_one_parity) % 2 == 0).all(axis=1)
        if good.any():
            i = int(np.argmax(good))
            return SearchResult(q, n, label, True, tuple(int(a) for a in idx[i]), examined + i + 1)
        examined += len(block)
    return SearchResult(q, n, label, False, None, examined)


def brute_selfdual_exists(F: Field, n: int, *, max_matrices: int = DEFAULT_MATRIX_CAP) -> SearchResult:
    """Search all k x k matrices P (k = n/2) with P P^T = -I.

    Any self-dual code is equivalent to one generated by [I | P], so an empty
    search proves that no self-dual code of length n exists.  Rows are chosen
    one at a time among vectors with u.u = -1 that are orthogonal to the rows
    already placed; this visits every solution while pruning dead prefixes.
    """
    if n % 2 or n < 2:
        raise ValueError("n must be an even number >= 2")
    q, k = F.q, n // 2
    if q ** (k * k) > max_matrices:
        raise SearchCapExceeded(f"{q}^{k * k} matrices exceed the cap {max_matrices}")
    minus_one = F.neg(1)
    ids = np.arange(q**k, dtype=np.int64)
    vecs = (ids[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q
    sq = np.zeros(len(ids), dtype=np.int64)
    for i in range(k):
        sq = F.vadd(sq, F.vmul(vecs[:, i], vecs[:, i]))
    rows = [tuple(int(x) for x in v) for v in vecs[sq == minus_one]]

    def dot(u, v):
        return F.sum(F.mul(a, b) for a, b in zip(u, v))

    visited = 0

    def extend(chosen, candidates):
        nonlocal visited
        if len(chosen) == k:
            return chosen
        for idx, u in enumerate(candidates):
            visited += 1
            rest = [v for v in candidates[idx + 1 :] if dot(u, v) == 0]
            # permuting the rows of P preserves P P^T = -I, so increasing order suffices
            found = extend(chosen + [u], rest)
            if found is not None:
                return found
        return None

    P = extend([], rows)
    if P is None:
        return SearchResult(q, n, "selfdual_any", False, None, visited)
    G = tuple(tuple([1 if j == i else 0 for j in range(k)] + list(P[i])) for i in range(k))
    return SearchResult(q, n, "selfdual_any", True, G, visited)


def _delta_direct(F: Field, S, a: int) -> int:
    acc = 1
    for b in S:
        if b != a:
            acc = F.mul(acc, F.sub(a, b))
    return acc


def lagrange_identity_check(F: Field, S) -> bool:
    """sum_i a_i^s / Delta_S(a_i) is 0 for s <= n-2 and 1 for s = n-1."""
    S = list(S)
    n = len(S)
    inv_deltas = [F.inv(_delta_direct(F, S, a)) for a in S]
    for s in range(n):
        total = F.sum(F.mul(d, F.pow(a, s)) for a, d in zip(S, inv_deltas))
        if total != (1 if s == n - 1 else 0):
            return False
    return True


def brute_min_distance(F: Field, G, *, max_codewords: int = DEFAULT_CODEWORD_CAP) -> int:
    """Exact minimum distance of the code spanned by the rows of G."""
    G = [list(r) for r in G]
    k, N = len(G), len(G[0])
    q = F.q
    if q**k > max_codewords:
        raise SearchCapExceeded(f"{q}^{k} codewords exceed the cap {max_codewords}")
    # multiples[i][c] = c * row_i, by table lookup
    multiples = np.asarray([[[F.mul(c, x) for x in row] for c in range(q)] for row in G], dtype=np.int64)
    best = N + 1
    total = q**k
    weights = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, _CHUNK):
        msg = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        digits = (msg[:, None] // weights[None, :]) % q
        word = multiples[0][digits[:, 0]]
        for i in range(1, k):
            word = F.vadd(word, multiples[i][digits[:, i]])
        best = min(best, int((word != 0).sum(axis=1).min()))
    return best
