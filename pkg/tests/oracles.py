"""Independent reference computations used as test oracles."""

import itertools


def det_mod2(entries):
    """Cofactor expansion along the first row; independent of elimination."""
    n = len(entries)
    if n == 0:
        return 1
    if n == 1:
        return entries[0][0] & 1
    total = 0
    for j in range(n):
        if entries[0][j]:
            minor = [row[:j] + row[j + 1:] for row in entries[1:]]
            total ^= det_mod2(minor)
    return total


def span_rank(rows):
    """log2 of the size of the row space, found by enumerating combinations."""
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span).bit_length() - 1


def count_by_cofactors(entries, t):
    """N_t from explicit t x t submatrices and cofactor determinants."""
    s = len(entries)
    total = 0
    for rows in itertools.combinations(range(s), t):
        for cols in itertools.combinations(range(s), t):
            sub = [[entries[i][j] for j in cols] for i in rows]
            total += det_mod2(sub)
    return total
