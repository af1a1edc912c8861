# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Same signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def power_recurrence(p, double beta, Py_ssize_t order):
    cdef const double complex[::1] pv = np.ascontiguousarray(p, dtype=np.complex128)
    cdef Py_ssize_t d = pv.shape[0] - 1
    while d > 0 and pv[d] == 0:
        d -= 1
    q_arr = np.zeros(order + 1, dtype=np.complex128)
    cdef double complex[::1] q = q_arr
    cdef double complex p0 = pv[0]
    cdef double complex acc
    cdef Py_ssize_t n, j, w
    q_arr[0] = complex(p0) ** beta
    for n in range(1, order + 1):
        w = n if n < d else d
        acc = 0
        for j in range(1, w + 1):
            acc = acc + (beta * j - n + j) * pv[j] * q[n - j]
        q[n] = acc / (n * p0)
    return q_arr


def hankel_matrix(c, D, Py_ssize_t dim):
    cdef const double complex[::1] cv = np.ascontiguousarray(c, dtype=np.complex128)
    cdef const double[::1] Dv = np.ascontiguousarray(D, dtype=np.float64)
    cdef Py_ssize_t K = cv.shape[0] - 1
    M_arr = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] M = M_arr
    cdef Py_ssize_t k, m, n, L, hi
    cdef double complex cc
    for k in range(1, K + 1):
        L = K - k + 1
        if L > dim:
            L = dim
        for m in range(L):
            for n in range(L):
                cc = cv[k + m] * cv[k + n].conjugate()
                M[m, n] = M[m, n] + cc * Dv[n + m + k]
    for k in range(0, dim - 1):
        hi = k + K
        if hi > dim - 1:
            hi = dim - 1
        for m in range(k + 1, hi + 1):
            for n in range(k + 1, hi + 1):
                cc = cv[m - k] * cv[n - k].conjugate()
                M[m, n] = M[m, n] + cc * (Dv[n + m - k] - Dv[n] * Dv[m] / Dv[k])
    return M_arr


def hankel_quadratic(a, c, D):
    cdef const double complex[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const double complex[::1] cv = np.ascontiguousarray(c, dtype=np.complex128)
    cdef const double[::1] Dv = np.ascontiguousarray(D, dtype=np.float64)
    cdef Py_ssize_t K = cv.shape[0] - 1
    cdef Py_ssize_t N = av.shape[0]
    cdef Py_ssize_t k, n, m, i, j, L, kmax
    cdef double complex acc = 0, s, xn, cij
    for k in range(1, K + 1):
        L = K - k + 1
        if L > N:
            L = N
        for n in range(L):
            xn = av[n] * cv[k + n].conjugate()
            for m in range(L):
                acc = acc + xn * (av[m] * cv[k + m].conjugate()).conjugate() * Dv[n + m + k]
    for i in range(1, K + 1):
        for j in range(1, K + 1):
            cij = cv[j] * cv[i].conjugate()
            if cij == 0:
                continue
            kmax = N - (i if i > j else j)
            s = 0
            for k in range(kmax):
                s = s + av[k + i] * av[k + j].conjugate() * (
                    Dv[k + i + j] - Dv[k + i] * Dv[k + j] / Dv[k])
            acc = acc + cij * s
    return acc.real


def grid_winding(xs, ys, vx, vy):
    cdef const double[::1] X = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[::1] Y = np.ascontiguousarray(ys, dtype=np.float64)
    cdef const double[::1] PX = np.ascontiguousarray(vx, dtype=np.float64)
    cdef const double[::1] PY = np.ascontiguousarray(vy, dtype=np.float64)
    cdef Py_ssize_t nx = X.shape[0], ny = Y.shape[0], nv = PX.shape[0]
    out_arr = np.zeros((ny, nx), dtype=np.int32)
    cdef int[:, ::1] out = out_arr
    cdef Py_ssize_t r, e, col, e1
    cdef double y, x0, y0, x1, y1, xc
    cdef int sgn
    for r in range(ny):
        y = Y[r]
        for e in range(nv):
            e1 = e + 1
            if e1 == nv:
                e1 = 0
            x0 = PX[e]; y0 = PY[e]; x1 = PX[e1]; y1 = PY[e1]
            if y0 <= y and y1 > y:
                sgn = 1
            elif y1 <= y and y0 > y:
                sgn = -1
            else:
                continue
            xc = x0 + (y - y0) / (y1 - y0) * (x1 - x0)
            # the ray from every point left of the crossing sees it
            for col in range(nx):
                if X[col] < xc:
                    out[r, col] += sgn
                else:
                    break
    return out_arr


cdef double _residual(double[:, ::1] v, const unsigned char[:, ::1] inside,
                      double h, double source):
    cdef Py_ssize_t i, j
    cdef double r, worst = 0.0, inv = 1.0 / (h * h)
    for i in range(1, v.shape[0] - 1):
        for j in range(1, v.shape[1] - 1):
            if inside[i, j]:
                r = (v[i + 1, j] + v[i - 1, j] + v[i, j + 1] + v[i, j - 1]
                     - 4.0 * v[i, j]) * inv + source
                r = fabs(r)
                if r > worst:
                    worst = r
    return worst


def sor_solve(double[:, ::1] v, inside, double h, double source, double omega,
              double tol, Py_ssize_t max_sweeps, Py_ssize_t check_every=10):
    cdef const unsigned char[:, ::1] msk = np.ascontiguousarray(inside, dtype=np.uint8)
    cdef Py_ssize_t i, j, sweeps = 0
    cdef double rhs = source * h * h, gs
    cdef double res = _residual(v, msk, h, source)
    while res >= tol:
        if sweeps >= max_sweeps:
            return sweeps, res
        for i in range(1, v.shape[0] - 1):
            for j in range(1, v.shape[1] - 1):
                if msk[i, j]:
                    gs = 0.25 * (v[i + 1, j] + v[i - 1, j] + v[i, j + 1]
                                 + v[i, j - 1] + rhs)
                    v[i, j] += omega * (gs - v[i, j])
        sweeps += 1
        if sweeps % check_every == 0:
            res = _residual(v, msk, h, source)
    return sweeps, res
