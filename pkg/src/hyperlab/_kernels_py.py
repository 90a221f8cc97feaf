"""Pure-Python distance kernels; fallback for the compiled hyperlab._kernels.

Both backends implement the same early-break scan and must return identical
values, visit counts and tables for identical inputs. The inner min-scan
aborts as soon as the running minimum can no longer exceed the outer running
maximum. Coordinate kernels accumulate squared distances coordinate by
coordinate and take a single square root of the final maximum; square roots
commute with max/min selection, so this matches a per-pair-sqrt evaluation
bit for bit.
"""

import math

import numpy as np

INF = math.inf


def directed_table(dist, a_idx, b_idx, order=None):
    """Directed Hausdorff max-min over a distance table.

    Returns ``(value, visits)`` where visits counts inner distance lookups.
    ``order`` optionally permutes the scan order of ``b_idx``.
    """
    if order is not None:
        b_idx = [b_idx[j] for j in order]
    cmax = 0.0
    visits = 0
    for i in a_idx:
        cmin = INF
        for j in b_idx:
            d = float(dist[i, j])
            visits += 1
            if d < cmin:
                cmin = d
                if cmin <= cmax:
                    break
        if cmin > cmax:
            cmax = cmin
    return cmax, visits


def directed_coords(a, b, order=None):
    """Directed Hausdorff max-min over Euclidean coordinate rows."""
    rows_a = [tuple(map(float, row)) for row in a]
    rows_b = [tuple(map(float, row)) for row in b]
    if order is not None:
        rows_b = [rows_b[j] for j in order]
    dim = len(rows_a[0])
    cmax = 0.0
    visits = 0
    for pa in rows_a:
        cmin = INF
        for pb in rows_b:
            s = 0.0
            for k in range(dim):
                dk = pa[k] - pb[k]
                s = s + dk * dk
            visits += 1
            if s < cmin:
                cmin = s
                if cmin <= cmax:
                    break
        if cmin > cmax:
            cmax = cmin
    return math.sqrt(cmax), visits


def pairwise_hausdorff(dist, members, lengths):
    """Symmetric Hausdorff table over subsets of a matrix-backed space.

    ``members`` is an (m, maxlen) int64 array of point indices padded
    arbitrarily past each row's length; ``lengths`` gives the true sizes.
    """
    m = len(lengths)
    out = np.zeros((m, m))
    idx = [list(map(int, members[p, : lengths[p]])) for p in range(m)]
    for p in range(m):
        for q in range(p + 1, m):
            d1, _ = directed_table(dist, idx[p], idx[q])
            d2, _ = directed_table(dist, idx[q], idx[p])
            h = d1 if d1 >= d2 else d2
            out[p, q] = h
            out[q, p] = h
    return out
