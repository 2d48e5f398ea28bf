"""numba kernels for the exhaustive branch-and-bound search.

Rows of the matrix are indices into a candidate list of nonzero row values
sorted by (weight, value); a canonical matrix is a strictly increasing index
sequence. ``pair[a, b]`` is the invertible-2x2 count of candidate rows a, b.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def gf2_full_rank(rows, n):
    work = rows[:n].copy()
    for i in range(n):
        # pick the row with the highest leading bit among work[i:]
        best = i
        for r in range(i + 1, n):
            if work[r] > work[best]:
                best = r
        if work[best] == 0:
            return False
        tmp = work[i]
        work[i] = work[best]
        work[best] = tmp
        v = work[i]
        top = 1
        while (top << 1) <= v:
            top <<= 1
        for r in range(i + 1, n):
            if work[r] & top:
                work[r] ^= v
    return True


@njit(cache=True)
def _topk_sum(gain, start, stop, k):
    if k <= 0:
        return 0
    top = np.full(k, -1, dtype=np.int64)
    for c in range(start, stop):
        g = gain[c]
        if g > top[0]:
            # insertion into ascending buffer, dropping the smallest
            pos = 0
            while pos + 1 < k and top[pos + 1] < g:
                top[pos] = top[pos + 1]
                pos += 1
            top[pos] = g
    total = 0
    for i in range(k):
        if top[i] > 0:
            total += top[i]
    return total


@njit(cache=True)
def search_prefix(pair, values, s, prefix, best_init, cap, node_limit):
    """Depth-first search below a fixed prefix of row indices.

    Returns ``(best, best_idx, nodes, complete)``; ``best_idx`` holds the
    row indices of the first matrix found with N_2 > ``best_init`` that is
    invertible (all -1 if none). Subtrees whose bound is <= the incumbent are
    cut, so the reported matrix is the first maximal one in canonical order.
    """
    n = pair.shape[0]
    plen = prefix.shape[0]
    chosen = np.full(s, -1, dtype=np.int64)
    rows = np.zeros(s, dtype=np.int64)
    gains = np.zeros((s + 1, n), dtype=np.int64)
    cur = np.zeros(s + 1, dtype=np.int64)
    nxt = np.zeros(s + 1, dtype=np.int64)
    best = best_init
    best_idx = np.full(s, -1, dtype=np.int64)
    nodes = 0

    for d in range(plen):
        c = prefix[d]
        chosen[d] = c
        rows[d] = values[c]
        cur[d + 1] = cur[d] + gains[d, c]
        for x in range(n):
            gains[d + 1, x] = gains[d, x] + pair[c, x]

    d = plen
    if d == s:
        if cur[d] > best and gf2_full_rank(rows, s):
            best = cur[d]
            best_idx[:] = chosen
        return best, best_idx, 1, True

    nxt[d] = chosen[d - 1] + 1 if d > 0 else 0
    entering = True
    while d >= plen:
        if entering:
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return best, best_idx, nodes, False
            k = s - d
            start = nxt[d]
            if n - start < k:
                d -= 1
                entering = False
                continue
            bound = cur[d] + _topk_sum(gains[d], start, n, k) + (k * (k - 1) // 2) * cap
            if bound <= best:
                d -= 1
                entering = False
                continue
        entering = False
        k = s - d
        c = nxt[d]
        if c > n - k:
            d -= 1
            continue
        nxt[d] = c + 1
        chosen[d] = c
        rows[d] = values[c]
        total = cur[d] + gains[d, c]
        if d + 1 == s:
            nodes += 1
            if total > best and gf2_full_rank(rows, s):
                best = total
                best_idx[:] = chosen
            continue
        cur[d + 1] = total
        row_pair = pair[c]
        g_prev = gains[d]
        g_next = gains[d + 1]
        for x in range(c + 1, n):
            g_next[x] = g_prev[x] + row_pair[x]
        nxt[d + 1] = c + 1
        d += 1
        entering = True
    return best, best_idx, nodes, True
