"""Polyline geometry in the complex plane: segment intersections and winding numbers."""
import numpy as np

from . import kernels


class DegenerateCurveError(ValueError):
    """Consecutive samples of a curve coincide."""


def polyline_segments(points, closed):
    """Segment endpoints and successor links for one polyline."""
    points = np.asarray(points, dtype=np.complex128)
    if closed:
        start, end = points, np.roll(points, -1)
        link = (np.arange(len(points)) + 1) % len(points)
    else:
        start, end = points[:-1], points[1:]
        link = np.arange(1, len(points))
        link[-1] = -1
    return start, end, link.astype(np.int64)


def self_intersections(points, closed=True, limit=0):
    """Index pairs of non-adjacent segments of one polyline that meet."""
    start, end, link = polyline_segments(points, closed)
    return kernels.intersecting_pairs(start, end, link, limit=limit)


def segment_meeting_point(a, b, c, d):
    """Intersection of segments ab and cd (a shared point if they overlap)."""
    u, v, w = b - a, d - c, c - a
    den = u.real * v.imag - u.imag * v.real
    if den == 0.0:
        return a
    t = (w.real * v.imag - w.imag * v.real) / den
    return a + t * u


def winding_numbers(curve, probes):
    """Winding number of the closed polyline ``curve`` around each probe point."""
    curve = np.asarray(curve, dtype=np.complex128)
    probes = np.atleast_1d(np.asarray(probes, dtype=np.complex128))
    rel = curve[None, :] - probes[:, None]
    turn = np.angle(np.roll(rel, -1, axis=1) / rel)
    return np.rint(turn.sum(axis=1) / (2 * np.pi)).astype(int)


def distance_to_polyline(curve, probes, closed=True):
    """Euclidean distance from each probe to the nearest point of the polyline."""
    start, end, _ = polyline_segments(curve, closed)
    probes = np.atleast_1d(np.asarray(probes, dtype=np.complex128))
    d = end - start
    dd = np.maximum(np.abs(d) ** 2, 1e-300)
    rel = probes[:, None] - start[None, :]
    t = np.clip((rel.real * d.real + rel.imag * d.imag) / dd, 0.0, 1.0)
    return np.min(np.abs(rel - t * d), axis=1)
