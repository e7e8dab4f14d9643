# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled breakpoint scan kernel; see ``_scan_py`` for the reference."""
import numpy as np


cdef inline double _segment_sse(double cxx, double cxy, double cyy) nogil:
    cdef double s
    if cxx > 0.0:
        s = cyy - cxy * cxy / cxx
        return s if s > 0.0 else 0.0
    return cyy


cdef void _running_sse(const double[:] xs, const double[:] ys, double[:] out, bint reverse) nogil:
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t j, idx
    cdef double mx = 0.0, my = 0.0, cxx = 0.0, cxy = 0.0, cyy = 0.0
    cdef double x, y, cnt, dx, dy
    out[0] = 0.0
    for j in range(n):
        idx = n - 1 - j if reverse else j
        x = xs[idx]
        y = ys[idx]
        cnt = j + 1.0
        dx = x - mx
        dy = y - my
        mx += dx / cnt
        my += dy / cnt
        cxx += dx * (x - mx)
        cxy += dx * (y - my)
        cyy += dy * (y - my)
        out[j + 1] = _segment_sse(cxx, cxy, cyy)


def scan_breaks(xs, ys, Py_ssize_t min_points):
    """Total two-segment SSE for every admissible split (first segment of
    ``min_points + i`` points at entry ``i``)."""
    cdef const double[:] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[:] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t k
    if n < 2 * min_points:
        return np.empty(0, dtype=np.float64)
    pre_arr = np.empty(n + 1, dtype=np.float64)
    suf_arr = np.empty(n + 1, dtype=np.float64)
    res_arr = np.empty(n - 2 * min_points + 1, dtype=np.float64)
    cdef double[:] pre = pre_arr
    cdef double[:] suf = suf_arr
    cdef double[:] res = res_arr
    with nogil:
        _running_sse(xv, yv, pre, False)
        _running_sse(xv, yv, suf, True)
        for k in range(min_points, n - min_points + 1):
            res[k - min_points] = pre[k] + suf[n - k]
    return res_arr
