# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: Horner evaluation, truncated Cauchy product, series
reciprocal, and the sorted-sweep segment intersection test.

Same signatures and semantics as ``_pykernels``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, fmin, fmax

cnp.import_array()


# Complex arithmetic is spelled out on separate real and imaginary arrays: the
# C99 complex product goes through a NaN-checking helper that blocks
# vectorization, and the inner loops below are written as axpy updates so -O3
# can vectorize them.

# points per block in horner; small enough to keep a block in L1
HORNER_BLOCK = 256


def horner(coeffs, z):
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double[::1] cr = np.ascontiguousarray(c.real)
    cdef const double[::1] ci = np.ascontiguousarray(c.imag)
    zarr = np.ascontiguousarray(z, dtype=np.complex128)
    shape = zarr.shape
    flat = zarr.ravel()
    cdef const double[::1] wr = np.ascontiguousarray(flat.real)
    cdef const double[::1] wi = np.ascontiguousarray(flat.imag)
    cdef Py_ssize_t n = cr.shape[0], m = wr.shape[0], i, k, b0, b1
    cdef Py_ssize_t block = HORNER_BLOCK
    out_r = np.empty(m)
    out_i = np.empty(m)
    cdef double[::1] orr = out_r
    cdef double[::1] oi = out_i
    cdef double tr, ti
    with nogil:
        # blocks of points stay in L1 while all coefficients stream past
        b0 = 0
        while b0 < m:
            b1 = min(b0 + block, m)
            for i in range(b0, b1):
                orr[i] = cr[n - 1]
                oi[i] = ci[n - 1]
            for k in range(n - 2, -1, -1):
                for i in range(b0, b1):
                    tr = orr[i] * wr[i] - oi[i] * wi[i] + cr[k]
                    ti = orr[i] * wi[i] + oi[i] * wr[i] + ci[k]
                    orr[i] = tr
                    oi[i] = ti
            b0 = b1
    return (out_r + 1j * out_i).reshape(shape)


def cauchy(a, b):
    pa = np.ascontiguousarray(a, dtype=np.complex128)
    qa = np.ascontiguousarray(b, dtype=np.complex128)
    cdef const double[::1] pr = np.ascontiguousarray(pa.real)
    cdef const double[::1] pi = np.ascontiguousarray(pa.imag)
    cdef const double[::1] qr = np.ascontiguousarray(qa.real)
    cdef const double[::1] qi = np.ascontiguousarray(qa.imag)
    cdef Py_ssize_t n = pr.shape[0], k, i
    out_r = np.zeros(n)
    out_i = np.zeros(n)
    cdef double[::1] orr = out_r
    cdef double[::1] oi = out_i
    cdef double xr, xi
    with nogil:
        for i in range(n):
            xr = pr[i]
            xi = pi[i]
            if xr == 0.0 and xi == 0.0:
                continue
            for k in range(i, n):
                orr[k] += xr * qr[k - i] - xi * qi[k - i]
                oi[k] += xr * qi[k - i] + xi * qr[k - i]
    return out_r + 1j * out_i


def reciprocal(a):
    ca = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const double[::1] cr = np.ascontiguousarray(ca.real)
    cdef const double[::1] ci = np.ascontiguousarray(ca.imag)
    cdef Py_ssize_t n = cr.shape[0], k, j
    # acc holds the partial sums sum_{i>=1} c[i] r[k-i]; r[j] = -acc[j] / c[0]
    acc_r = np.zeros(n)
    acc_i = np.zeros(n)
    cdef double[::1] ar = acc_r
    cdef double[::1] ai = acc_i
    cdef double d = cr[0] * cr[0] + ci[0] * ci[0]
    cdef double vr = cr[0] / d, vi = -ci[0] / d
    cdef double xr, xi
    with nogil:
        for j in range(n):
            if j == 0:
                xr, xi = vr, vi
            else:
                xr = -(vr * ar[j] - vi * ai[j])
                xi = -(vr * ai[j] + vi * ar[j])
            ar[j] = xr
            ai[j] = xi
            # once r[j] is final, push its contribution to every later index
            for k in range(j + 1, n):
                ar[k] += cr[k - j] * xr - ci[k - j] * xi
                ai[k] += cr[k - j] * xi + ci[k - j] * xr
    return acc_r + 1j * acc_i


cdef inline int _orient(double ax, double ay, double bx, double by,
                        double cx, double cy, double tol) nogil:
    cdef double ux = bx - ax, uy = by - ay
    cdef double vx = cx - ax, vy = cy - ay
    cdef double o = ux * vy - uy * vx
    cdef double scale = sqrt(ux * ux + uy * uy) * sqrt(vx * vx + vy * vy)
    if fabs(o) <= tol * scale:
        return 0
    return 1 if o > 0 else -1


cdef inline bint _within(double px, double py, double qx, double qy,
                         double rx, double ry, double tol) nogil:
    cdef double ex = tol * (fabs(px) + fabs(qx) + 1.0)
    cdef double ey = tol * (fabs(py) + fabs(qy) + 1.0)
    return (rx >= fmin(px, qx) - ex and rx <= fmax(px, qx) + ex and
            ry >= fmin(py, qy) - ey and ry <= fmax(py, qy) + ey)


cdef inline bint _cross(double ax, double ay, double bx, double by,
                        double cx, double cy, double dx, double dy,
                        double tol) nogil:
    cdef int s1 = _orient(cx, cy, dx, dy, ax, ay, tol)
    cdef int s2 = _orient(cx, cy, dx, dy, bx, by, tol)
    cdef int s3 = _orient(ax, ay, bx, by, cx, cy, tol)
    cdef int s4 = _orient(ax, ay, bx, by, dx, dy, tol)
    if s1 * s2 < 0 and s3 * s4 < 0:
        return True
    if s1 == 0 and _within(cx, cy, dx, dy, ax, ay, tol):
        return True
    if s2 == 0 and _within(cx, cy, dx, dy, bx, by, tol):
        return True
    if s3 == 0 and _within(ax, ay, bx, by, cx, cy, tol):
        return True
    if s4 == 0 and _within(ax, ay, bx, by, dx, dy, tol):
        return True
    return False


def intersecting_pairs(x0, y0, x1, y1, link, double tol, Py_ssize_t limit):
    cdef const double[::1] ax = np.ascontiguousarray(x0, dtype=np.float64)
    cdef const double[::1] ay = np.ascontiguousarray(y0, dtype=np.float64)
    cdef const double[::1] bx = np.ascontiguousarray(x1, dtype=np.float64)
    cdef const double[::1] by = np.ascontiguousarray(y1, dtype=np.float64)
    cdef const cnp.int64_t[::1] nxt = np.ascontiguousarray(link, dtype=np.int64)
    cdef Py_ssize_t n = ax.shape[0], i, j
    cdef double xmax_i, ymin_i, ymax_i
    found = []
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    for i in range(n):
        xmax_i = fmax(ax[i], bx[i])
        ymin_i = fmin(ay[i], by[i])
        ymax_i = fmax(ay[i], by[i])
        j = i + 1
        while j < n and fmin(ax[j], bx[j]) <= xmax_i:
            if (fmin(ay[j], by[j]) <= ymax_i and ymin_i <= fmax(ay[j], by[j])
                    and nxt[i] != j and nxt[j] != i):
                if _cross(ax[i], ay[i], bx[i], by[i],
                          ax[j], ay[j], bx[j], by[j], tol):
                    found.append((i, j))
                    if 0 < limit <= len(found):
                        return np.asarray(found, dtype=np.int64)
            j += 1
    if not found:
        return np.zeros((0, 2), dtype=np.int64)
    return np.asarray(found, dtype=np.int64)
