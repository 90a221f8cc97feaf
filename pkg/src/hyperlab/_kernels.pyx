# cython: boundscheck=False, wraparound=False, initializedcheck=False
# cython: cdivision=True, language_level=3
"""Compiled distance kernels; mirror of hyperlab._kernels_py.

Same early-break scan, same visit accounting, same squared-space arithmetic.
Compiled with -ffp-contract=off so results stay bit-exact against the pure
backend.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport HUGE_VAL, sqrt

cnp.import_array()


def directed_table(const double[:, ::1] dist, const long long[::1] a_idx,
                   const long long[::1] b_idx, const long long[::1] order=None):
    """Directed Hausdorff max-min over a distance table; (value, visits)."""
    cdef Py_ssize_t na = a_idx.shape[0]
    cdef Py_ssize_t nb = b_idx.shape[0]
    cdef Py_ssize_t i, j
    cdef long long ii, jj, visits = 0
    cdef double cmax = 0.0, cmin, d
    cdef bint permuted = order is not None
    for i in range(na):
        ii = a_idx[i]
        cmin = HUGE_VAL
        for j in range(nb):
            if permuted:
                jj = b_idx[order[j]]
            else:
                jj = b_idx[j]
            d = dist[ii, jj]
            visits += 1
            if d < cmin:
                cmin = d
                if cmin <= cmax:
                    break
        if cmin > cmax:
            cmax = cmin
    return cmax, visits


def directed_coords(const double[:, ::1] a, const double[:, ::1] b,
                    const long long[::1] order=None):
    """Directed Hausdorff max-min over Euclidean coordinate rows."""
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    cdef Py_ssize_t dim = a.shape[1]
    cdef Py_ssize_t i, j, k
    cdef long long jj, visits = 0
    cdef double cmax = 0.0, cmin, s, dk
    cdef bint permuted = order is not None
    for i in range(na):
        cmin = HUGE_VAL
        for j in range(nb):
            if permuted:
                jj = order[j]
            else:
                jj = j
            s = 0.0
            for k in range(dim):
                dk = a[i, k] - b[jj, k]
                s = s + dk * dk
            visits += 1
            if s < cmin:
                cmin = s
                if cmin <= cmax:
                    break
        if cmin > cmax:
            cmax = cmin
    return sqrt(cmax), visits


def pairwise_hausdorff(const double[:, ::1] dist, const long long[:, ::1] members,
                       const long long[::1] lengths):
    """Symmetric Hausdorff table over padded subset index rows."""
    cdef Py_ssize_t m = lengths.shape[0]
    cdef Py_ssize_t p, q
    cdef double d1, d2, h
    out = np.zeros((m, m))
    cdef double[:, ::1] out_v = out
    for p in range(m):
        for q in range(p + 1, m):
            d1 = _directed_rows(dist, members, lengths, p, q)
            d2 = _directed_rows(dist, members, lengths, q, p)
            h = d1 if d1 >= d2 else d2
            out_v[p, q] = h
            out_v[q, p] = h
    return out


cdef inline double _directed_rows(const double[:, ::1] dist, const long long[:, ::1] members,
                                  const long long[::1] lengths,
                                  Py_ssize_t p, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef long long ii, jj
    cdef double cmax = 0.0, cmin, d
    for i in range(lengths[p]):
        ii = members[p, i]
        cmin = HUGE_VAL
        for j in range(lengths[q]):
            jj = members[q, j]
            d = dist[ii, jj]
            if d < cmin:
                cmin = d
                if cmin <= cmax:
                    break
        if cmin > cmax:
            cmax = cmin
    return cmax
