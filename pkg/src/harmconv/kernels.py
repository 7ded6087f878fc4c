"""Backend selection for the hot loops.

The compiled extension ``harmconv._ckernels`` is used when it was built;
otherwise (or when ``HARMCONV_PURE_PYTHON=1`` is set before import) the numpy
implementation is used.  ``BACKEND`` names the active choice.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("HARMCONV_PURE_PYTHON") == "1":
        raise ImportError("pure-python backend requested")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

# tolerance for the orientation predicate, relative to segment lengths
COLLINEAR_TOL = 1e-12


def backends():
    """Return the available kernel modules keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def horner(coeffs, z, impl=None):
    return (impl or _impl).horner(coeffs, z)


def cauchy(a, b, impl=None):
    return (impl or _impl).cauchy(a, b)


def reciprocal(a, impl=None):
    return (impl or _impl).reciprocal(a)


def intersecting_pairs(start, end, link=None, limit=0, tol=COLLINEAR_TOL, impl=None):
    """Pairs ``(i, j)``, ``i < j``, of closed segments ``start[k] -> end[k]`` that meet.

    ``link[k]`` is the index of the segment that follows ``k`` on the same
    polyline (or -1); such neighbours share an endpoint and are never
    reported.  ``limit > 0`` stops after that many hits.  Results are in the
    original segment numbering, sorted.
    """
    start = np.asarray(start, dtype=np.complex128)
    end = np.asarray(end, dtype=np.complex128)
    n = len(start)
    if link is None:
        link = np.full(n, -1, dtype=np.int64)
    link = np.asarray(link, dtype=np.int64)

    order = np.argsort(np.minimum(start.real, end.real), kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    slink = np.where(link[order] >= 0, rank[np.maximum(link[order], 0)], -1)

    s, e = start[order], end[order]
    pairs = (impl or _impl).intersecting_pairs(
        s.real, s.imag, e.real, e.imag, slink, float(tol), int(limit)
    )
    if len(pairs) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    pairs = order[pairs]
    pairs.sort(axis=1)
    return pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
