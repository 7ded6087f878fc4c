"""Pure numpy implementations of the hot kernels.

Signatures mirror ``_ckernels.pyx`` exactly; ``harmconv.kernels`` picks one of
the two at import time.  Segment arrays arrive already sorted by their
minimum x coordinate (the caller owns the sort so both backends sweep in the
same order).
"""
import numpy as np

_PAIR_CHUNK = 1 << 21


def horner(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        acc *= z
        acc += c
    return acc


def cauchy(a, b):
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return np.convolve(a, b)[: len(a)]


def reciprocal(a):
    a = np.asarray(a, dtype=np.complex128)
    n = len(a)
    inv0 = 1.0 / a[0]
    r = np.zeros(n, dtype=np.complex128)
    r[0] = inv0
    for k in range(1, n):
        # r_k = -(1/c_0) * sum_{i=1..k} c_i r_{k-i}
        r[k] = -inv0 * np.dot(a[1 : k + 1], r[k - 1 :: -1])
    return r


def _orient_sign(ax, ay, bx, by, cx, cy, tol):
    ux, uy = bx - ax, by - ay
    vx, vy = cx - ax, cy - ay
    o = ux * vy - uy * vx
    scale = np.hypot(ux, uy) * np.hypot(vx, vy)
    s = np.sign(o)
    s[np.abs(o) <= tol * scale] = 0.0
    return s


def _within(px, py, qx, qy, rx, ry, tol):
    ex = tol * (np.abs(px) + np.abs(qx) + 1.0)
    ey = tol * (np.abs(py) + np.abs(qy) + 1.0)
    return (
        (rx >= np.minimum(px, qx) - ex)
        & (rx <= np.maximum(px, qx) + ex)
        & (ry >= np.minimum(py, qy) - ey)
        & (ry <= np.maximum(py, qy) + ey)
    )


def _segments_cross(x0, y0, x1, y1, i, j, tol):
    ax, ay, bx, by = x0[i], y0[i], x1[i], y1[i]
    cx, cy, dx, dy = x0[j], y0[j], x1[j], y1[j]
    s1 = _orient_sign(cx, cy, dx, dy, ax, ay, tol)
    s2 = _orient_sign(cx, cy, dx, dy, bx, by, tol)
    s3 = _orient_sign(ax, ay, bx, by, cx, cy, tol)
    s4 = _orient_sign(ax, ay, bx, by, dx, dy, tol)
    hit = (s1 * s2 < 0) & (s3 * s4 < 0)
    hit |= (s1 == 0) & _within(cx, cy, dx, dy, ax, ay, tol)
    hit |= (s2 == 0) & _within(cx, cy, dx, dy, bx, by, tol)
    hit |= (s3 == 0) & _within(ax, ay, bx, by, cx, cy, tol)
    hit |= (s4 == 0) & _within(ax, ay, bx, by, dx, dy, tol)
    return hit


def intersecting_pairs(x0, y0, x1, y1, link, tol, limit):
    x0 = np.asarray(x0, dtype=np.float64)
    y0 = np.asarray(y0, dtype=np.float64)
    x1 = np.asarray(x1, dtype=np.float64)
    y1 = np.asarray(y1, dtype=np.float64)
    link = np.asarray(link, dtype=np.int64)
    n = len(x0)
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    xmin = np.minimum(x0, x1)
    xmax = np.maximum(x0, x1)
    ymin = np.minimum(y0, y1)
    ymax = np.maximum(y0, y1)

    idx = np.arange(n)
    hi = np.searchsorted(xmin, xmax, side="right")
    counts = np.maximum(hi - idx - 1, 0)
    ends = np.cumsum(counts)

    found = []
    nfound = 0
    start = 0
    while start < n:
        base = ends[start - 1] if start else 0
        stop = int(np.searchsorted(ends, base + _PAIR_CHUNK, side="right"))
        stop = min(max(stop, start + 1), n)
        cnt = counts[start:stop]
        total = int(cnt.sum())
        if total:
            ii = np.repeat(idx[start:stop], cnt)
            offsets = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            jj = ii + 1 + offsets
            keep = (ymin[jj] <= ymax[ii]) & (ymin[ii] <= ymax[jj])
            keep &= (link[ii] != jj) & (link[jj] != ii)
            ii, jj = ii[keep], jj[keep]
            if len(ii):
                hit = _segments_cross(x0, y0, x1, y1, ii, jj, tol)
                pairs = np.stack([ii[hit], jj[hit]], axis=1)
                if len(pairs):
                    found.append(pairs)
                    nfound += len(pairs)
                    if 0 < limit <= nfound:
                        break
        start = stop

    if not found:
        return np.zeros((0, 2), dtype=np.int64)
    out = np.concatenate(found).astype(np.int64)
    if limit > 0:
        out = out[:limit]
    return out
