"""Numerical certification of univalence-type conditions on compact subdisks.

Conditions that hold "for all z in the disk" are sampled on a
:class:`DiskGrid` inside ``|z| <= r_max < 1``; every check returns a
:class:`CheckReport` carrying the signed margin to its threshold and the
sample point where that margin is attained.  Nothing here is a proof.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import curves
from .harmonic import (
    ClassKind,
    ClassTag,
    Direction,
    HarmonicMap,
    MEMBERSHIP_TOL,
    membership_residual,
    convolve,
    is_normalized_analytic,
    shear,
)
from .series import AnalyticSeries, differentiate, evaluate, hadamard

DEFAULT_RMAX = 0.99
DEFAULT_RADII = 40
DEFAULT_ANGLES = 720
BOUNDARY_SAMPLES = 4096
NONVANISHING_TOL = 1e-13
PLATEAU_TOL = 1e-12
FULL_CONVEXITY_DTHETA = 2 * math.pi / 4096
LOG2 = math.log(2.0)


@dataclass(frozen=True)
class DiskGrid:
    """Circles ``|z| = r_j`` sampled at ``angular_count`` equally spaced angles."""

    radii: tuple
    angular_count: int = DEFAULT_ANGLES

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("grid needs at least one radius")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("grid radii must be strictly increasing")
        if radii[0] <= 0.0 or radii[-1] >= 1.0:
            raise ValueError("grid radii must lie in (0, 1)")
        if self.angular_count < 8:
            raise ValueError("angular_count must be at least 8")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def geometric(cls, r_max: float = DEFAULT_RMAX, count: int = DEFAULT_RADII,
                  angular_count: int = DEFAULT_ANGLES) -> DiskGrid:
        """Radii with ``1 - r`` geometrically spaced, ending at ``r_max``."""
        if not 0.0 < r_max < 1.0:
            raise ValueError("r_max must lie in (0, 1)")
        j = np.arange(1, count + 1)
        radii = 1.0 - (1.0 - r_max) ** (j / count)
        radii[-1] = r_max
        return cls(tuple(radii), angular_count)

    @classmethod
    def single(cls, r: float, angular_count: int) -> DiskGrid:
        return cls((r,), angular_count)

    @property
    def r_max(self) -> float:
        return self.radii[-1]

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angular_count) / self.angular_count

    def points(self) -> np.ndarray:
        """Complex sample points, shape ``(len(radii), angular_count)``."""
        return np.asarray(self.radii)[:, None] * np.exp(1j * self.angles())[None, :]

    def to_dict(self) -> dict:
        return {"radii": len(self.radii), "r_max": self.r_max, "angular_count": self.angular_count}


@dataclass(frozen=True)
class CheckReport:
    criterion: str
    passed: bool
    min_margin: float
    witness: complex
    grid: DiskGrid
    detail: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.min_margin > 0):
            raise ValueError("a report passes exactly when its margin is positive")

    @property
    def rmax(self) -> float:
        return self.grid.r_max

    def to_text(self) -> str:
        w = complex(self.witness)
        line = (
            f"criterion={self.criterion} passed={str(self.passed).lower()} "
            f"margin={self.min_margin:.17g} witness={w.real:.17g},{w.imag:.17g} "
            f"rmax={self.rmax:.17g}"
        )
        return line

    def to_dict(self) -> dict:
        w = complex(self.witness)
        margin = self.min_margin if math.isfinite(self.min_margin) else str(self.min_margin)
        return {
            "criterion": self.criterion,
            "passed": self.passed,
            "margin": margin,
            "witness": [w.real, w.imag],
            "rmax": self.rmax,
            "grid": self.grid.to_dict(),
            "detail": self.detail,
            **({"extras": self.extras} if self.extras else {}),
        }


def make_report(criterion, margin, witness, grid, detail="", **extras) -> CheckReport:
    margin = float(margin)
    if math.isnan(margin):
        margin = -math.inf
    return CheckReport(criterion, margin > 0, margin, complex(witness), grid, detail, extras)


def reports_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def _argmin(values, points):
    values = np.where(np.isnan(values), -np.inf, values)
    i = np.unravel_index(np.argmin(values), values.shape)
    return float(values[i]), complex(points[i])


# -- grid checks ---------------------------------------------------------------

def check_re_ratio_derivative(num: AnalyticSeries, den: AnalyticSeries, threshold: float,
                              grid: DiskGrid, criterion: str = "re_ratio_derivative") -> CheckReport:
    """min Re(num'(z)/den'(z)) - threshold over the grid."""
    pts = grid.points()
    dn = evaluate(differentiate(num), pts)
    dd = evaluate(differentiate(den), pts)
    bad = np.abs(dd) <= NONVANISHING_TOL
    if np.any(bad):
        return make_report(criterion, -math.inf, pts[bad][0], grid,
                           "denominator derivative vanishes at a grid point")
    margin, at = _argmin(np.real(dn / dd) - threshold, pts)
    return make_report(criterion, margin, at, grid, f"threshold={threshold:g}")


def check_re_ratio_values(num: AnalyticSeries, den: AnalyticSeries, threshold: float,
                          grid: DiskGrid, criterion: str = "re_ratio_values") -> CheckReport:
    """min Re(num(z)/den(z)) - threshold; the value at 0 is num'(0)/den'(0) when both vanish."""
    pts = grid.points()
    vn = evaluate(num, pts)
    vd = evaluate(den, pts)
    ratio = np.empty_like(vn)
    small = np.abs(vd) <= NONVANISHING_TOL
    ratio[~small] = vn[~small] / vd[~small]
    if np.any(small):
        at_origin = small & (np.abs(pts) <= 1e-8)
        if abs(num.coeffs[0]) <= NONVANISHING_TOL and abs(den.coeffs[1]) > NONVANISHING_TOL:
            ratio[at_origin] = num.coeffs[1] / den.coeffs[1]
        else:
            at_origin[:] = False
        if np.any(small & ~at_origin):
            return make_report(criterion, -math.inf, pts[small & ~at_origin][0], grid,
                               "denominator vanishes at a grid point")
    margin, at = _argmin(np.real(ratio) - threshold, pts)
    return make_report(criterion, margin, at, grid, f"threshold={threshold:g}")


def check_sense_preserving(f: HarmonicMap, grid: DiskGrid,
                           criterion: str = "sense_preserving") -> CheckReport:
    """min |h'(z)| - |g'(z)| over the grid."""
    pts = grid.points()
    dh = evaluate(differentiate(f.h), pts)
    dg = evaluate(differentiate(f.g), pts)
    margin, at = _argmin(np.abs(dh) - np.abs(dg), pts)
    return make_report(criterion, margin, at, grid)


def check_fully_convex(f: HarmonicMap, grid: DiskGrid, dtheta: float = FULL_CONVEXITY_DTHETA,
                       criterion: str = "fully_convex") -> CheckReport:
    """min over the grid of d/dtheta arg(d/dtheta f(r e^{i theta})), by centered differences."""
    pts = grid.points()
    dh = differentiate(f.h)
    dg = differentiate(f.g)

    def tangent(z):
        return 1j * (z * evaluate(dh, z) - np.conj(z * evaluate(dg, z)))

    rot = np.exp(1j * dtheta)
    t_plus = tangent(pts * rot)
    t_minus = tangent(pts / rot)
    flat = (np.abs(t_plus) <= NONVANISHING_TOL) | (np.abs(t_minus) <= NONVANISHING_TOL)
    if np.any(flat):
        return make_report(criterion, -math.inf, pts[flat][0], grid, "tangent vector vanishes")
    turning = np.angle(t_plus / t_minus) / (2 * dtheta)
    margin, at = _argmin(turning, pts)
    return make_report(criterion, margin, at, grid, f"dtheta={dtheta:.6g}")


def check_silverman(p: AnalyticSeries, grid: DiskGrid, criterion: str = "silverman") -> CheckReport:
    """Hypothesis Re(z p'' + p') > 1/2 and conclusion Re p' > log 2, both on the grid."""
    pts = grid.points()
    d1 = differentiate(p)
    d2 = differentiate(d1)
    v1 = evaluate(d1, pts)
    hyp, hyp_at = _argmin(np.real(pts * evaluate(d2, pts) + v1) - 0.5, pts)
    con, con_at = _argmin(np.real(v1) - LOG2, pts)
    margin, at = (hyp, hyp_at) if hyp <= con else (con, con_at)
    return make_report(
        criterion, margin, at, grid,
        f"hypothesis_margin={hyp:.6g} conclusion_margin={con:.6g}",
        hypothesis_margin=hyp, conclusion_margin=con,
        hypothesis_witness=[hyp_at.real, hyp_at.imag],
        conclusion_witness=[con_at.real, con_at.imag],
    )


def check_marx_strohhacker(h: AnalyticSeries, grid: DiskGrid,
                           criterion: str = "marx_strohhacker") -> CheckReport:
    """min Re h(z)/z - 1/2 (the conclusion for convex h; convexity itself is not checked)."""
    return check_re_ratio_values(h, AnalyticSeries.identity(h.order), 0.5, grid, criterion)


# -- boundary-curve checks -------------------------------------------------------

def boundary_curve(f, r: float, samples: int):
    """Sample points ``z`` on ``|z| = r`` and their images ``f(z)``."""
    z = r * np.exp(2j * np.pi * np.arange(samples) / samples)
    return z, np.asarray(f(z), dtype=np.complex128)


def _probe_points(r: float) -> np.ndarray:
    fractions = np.array([0.25, 0.5, 0.75, 0.9])
    angles = np.array([0.0, 0.5, 1.0, 1.5]) * np.pi + np.pi / 7
    return (r * fractions[:, None] * np.exp(1j * angles)[None, :]).ravel()


def check_univalent_boundary(f, r: float, samples: int = BOUNDARY_SAMPLES,
                             criterion: str = "univalent_boundary") -> CheckReport:
    """Image of ``|z| = r`` is a simple closed curve winding once around 16 interior images.

    On success the margin is the smallest distance from a probe image to the
    curve; on failure it is minus the number of intersecting segment pairs
    plus misplaced probes.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    grid = DiskGrid.single(r, samples)
    z, w = boundary_curve(f, r, samples)
    if not np.all(np.isfinite(w)):
        bad = ~np.isfinite(w)
        return make_report(criterion, -math.inf, z[bad][0], grid, "non-finite boundary value")
    step = np.abs(np.roll(w, -1) - w)
    if np.any(step == 0.0):
        i = int(np.flatnonzero(step == 0.0)[0])
        raise curves.DegenerateCurveError(f"boundary samples {i} and {(i + 1) % samples} coincide")

    pairs = curves.self_intersections(w, closed=True)
    probes_z = _probe_points(r)
    probes_w = np.asarray(f(probes_z), dtype=np.complex128)
    winding = curves.winding_numbers(w, probes_w)
    wrong = np.flatnonzero(winding != 1)
    if len(pairs) or len(wrong):
        if len(pairs):
            i, j = pairs[0]
            where = curves.segment_meeting_point(w[i], w[(i + 1) % samples], w[j], w[(j + 1) % samples])
            detail = f"self-intersection: {len(pairs)} segment pairs, first near w={where:.6g}"
            at = z[i]
        else:
            detail = f"winding number {winding[wrong[0]]} about {len(wrong)} probe image(s)"
            at = probes_z[wrong[0]]
        return make_report(criterion, -float(len(pairs) + len(wrong)), at, grid, detail,
                           intersections=int(len(pairs)), bad_probes=int(len(wrong)))
    dist = curves.distance_to_polyline(w, probes_w)
    k = int(np.argmin(dist))
    return make_report(criterion, float(dist[k]), probes_z[k], grid, "simple curve, winding 1")


def _sign_changes(values) -> int:
    d = np.diff(np.append(values, values[0]))
    s = np.sign(d[np.abs(d) >= PLATEAU_TOL])
    if len(s) == 0:
        return 0
    return int(np.count_nonzero(s != np.roll(s, 1)))


def check_convex_in_direction(f, r: float, direction: Direction, samples: int = BOUNDARY_SAMPLES,
                              criterion: str | None = None) -> CheckReport:
    """Every horizontal (REAL) or vertical (IMAG) line meets the image of ``|z| <= r`` in one interval.

    Assumes the boundary image is simple.  The height function (Im f for
    REAL, Re f for IMAG) must rise once and fall once around the circle.
    Margin is 1 for a unimodal profile, else minus the number of surplus
    extremum pairs.
    """
    if samples < 64:
        raise ValueError("direction-convexity test needs at least 64 samples")
    criterion = criterion or f"convex_{direction.value}"
    grid = DiskGrid.single(r, samples)
    z, w = boundary_curve(f, r, samples)
    height = w.imag if direction is Direction.REAL else w.real
    changes = _sign_changes(height)
    if changes <= 2:
        return make_report(criterion, 1.0, z[int(np.argmax(height))], grid,
                           f"sign changes={changes}", sign_changes=changes)
    d = np.diff(np.append(height, height[0]))
    s = np.sign(d)
    turn = np.flatnonzero((s != np.roll(s, 1)) & (s != 0))
    at = z[int(turn[0])] if len(turn) else z[0]
    return make_report(criterion, -(changes - 2) / 2.0, at, grid,
                       f"sign changes={changes}", sign_changes=changes)


# -- theorem pipelines ---------------------------------------------------------------

class Pipeline(enum.Enum):
    Thm2_1 = "Thm2_1"
    Thm2_6 = "Thm2_6"
    Thm2_14 = "Thm2_14"
    Thm3_1 = "Thm3_1"
    Cor2_2 = "Cor2_2"
    Cor2_8i = "Cor2_8i"
    Cor2_8ii = "Cor2_8ii"
    Cor2_8iii = "Cor2_8iii"
    Cor2_9 = "Cor2_9"
    Cor2_11 = "Cor2_11"
    Cor3_2 = "Cor3_2"
    Cor3_5 = "Cor3_5"


@dataclass(frozen=True)
class _Recipe:
    # class of the first factor; None means the first factor is Gamma_1 (Alexander operator)
    first: ClassKind | None
    second: ClassKind
    # "free" (taken from the caller or from the second input), "z", "l", "koebe"
    phi: str
    result: ClassKind
    direction: Direction
    # "derivative" | "values" | "full_convexity" | "convex_h"
    hypothesis: str
    target_check: bool


_RECIPES = {
    Pipeline.Thm2_1: _Recipe(ClassKind.MINUS, ClassKind.MINUS, "free", ClassKind.MINUS, Direction.REAL, "derivative", True),
    Pipeline.Cor2_2: _Recipe(ClassKind.MINUS, ClassKind.MINUS, "z", ClassKind.MINUS, Direction.REAL, "derivative", False),
    Pipeline.Thm2_14: _Recipe(ClassKind.PLUS, ClassKind.PLUS, "free", ClassKind.MINUS, Direction.REAL, "derivative", True),
    Pipeline.Thm3_1: _Recipe(ClassKind.MINUS, ClassKind.PLUS, "free", ClassKind.PLUS, Direction.IMAG, "derivative", True),
    Pipeline.Cor3_2: _Recipe(ClassKind.MINUS, ClassKind.PLUS, "z", ClassKind.PLUS, Direction.IMAG, "derivative", False),
    Pipeline.Thm2_6: _Recipe(None, ClassKind.MINUS, "free", ClassKind.MINUS, Direction.REAL, "values", True),
    Pipeline.Cor2_8i: _Recipe(None, ClassKind.MINUS, "z", ClassKind.MINUS, Direction.REAL, "values", False),
    Pipeline.Cor2_8ii: _Recipe(None, ClassKind.MINUS, "l", ClassKind.MINUS, Direction.REAL, "values", False),
    Pipeline.Cor2_8iii: _Recipe(None, ClassKind.MINUS, "koebe", ClassKind.MINUS, Direction.REAL, "values", False),
    Pipeline.Cor2_9: _Recipe(None, ClassKind.MINUS, "z", ClassKind.MINUS, Direction.REAL, "full_convexity", False),
    Pipeline.Cor2_11: _Recipe(None, ClassKind.MINUS, "z", ClassKind.MINUS, Direction.REAL, "convex_h", False),
    Pipeline.Cor3_5: _Recipe(None, ClassKind.PLUS, "free", ClassKind.PLUS, Direction.IMAG, "values", True),
}


class ClassMembershipError(ValueError):
    """An input does not belong to the class a pipeline requires."""

    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


def _fixed_phi(kind: str, order: int) -> AnalyticSeries:
    if kind == "z":
        return AnalyticSeries.identity(order)
    if kind == "l":
        return AnalyticSeries.rational([0, 1], [1, -1], order)
    if kind == "koebe":
        return AnalyticSeries.rational([0, 1], [1, -2, 1], order)
    raise ValueError(kind)


def _gamma1(order: int) -> HarmonicMap:
    z = AnalyticSeries.identity(order)
    return shear(z, AnalyticSeries.identity(order), Direction.REAL)


def _sign(kind: ClassKind) -> str:
    return "-" if kind is ClassKind.MINUS else "+"


def prepare_pipeline(pipeline, inputs, phi=None, labels=None):
    """Resolve a pipeline's factors and class targets.

    Returns ``(first, second, phi, memberships)`` where ``memberships`` is a
    list of ``(label, map, ClassTag)`` the inputs must satisfy.
    """
    pipeline = Pipeline(pipeline)
    recipe = _RECIPES[pipeline]
    inputs = list(inputs)
    want = 1 if recipe.first is None else 2
    if len(inputs) != want:
        raise ValueError(f"{pipeline.value} takes {want} input map(s), got {len(inputs)}")
    labels = list(labels) if labels else [f"f{i + 1}" for i in range(len(inputs))]
    order = inputs[0].order
    z = AnalyticSeries.identity(order)

    second = inputs[-1]
    if recipe.phi == "free":
        if phi is None:
            sgn = -1.0 if recipe.second is ClassKind.MINUS else 1.0
            phi = second.h + sgn * second.g
        if not is_normalized_analytic(phi):
            raise ValueError("phi must satisfy phi(0)=0 and phi'(0)=1")
    else:
        phi = _fixed_phi(recipe.phi, order)

    memberships = []
    if recipe.first is None:
        first = _gamma1(order)
    else:
        first = inputs[0]
        memberships.append((labels[0], first, ClassTag(recipe.first, z)))
    memberships.append((labels[-1], second, ClassTag(recipe.second, phi)))
    return first, second, phi, memberships


def run_theorem(pipeline, inputs, phi: AnalyticSeries | None = None, grid: DiskGrid | None = None,
                labels=None, boundary_samples: int = BOUNDARY_SAMPLES) -> list[CheckReport]:
    """Check a theorem's hypotheses and conclusions for concrete inputs.

    Reports come in order: class membership of the inputs, the coefficient
    identity for the convolution, the analytic hypotheses, then
    sense-preservation, boundary univalence and direction-convexity of the
    convolution at ``grid.r_max``.  A failed membership raises
    :class:`ClassMembershipError`.
    """
    pipeline = Pipeline(pipeline)
    recipe = _RECIPES[pipeline]
    grid = grid or DiskGrid.geometric()
    name = pipeline.value
    first, second, phi, memberships = prepare_pipeline(pipeline, inputs, phi, labels)
    reports = []

    # (1) memberships
    worst, detail = 0.0, []
    for label, f, tag in memberships:
        res = membership_residual(f, tag)
        detail.append(f"{label} in W_H^{_sign(tag.kind)}: residual={res:.3g}")
        if res >= MEMBERSHIP_TOL:
            rep = make_report(f"{name}:membership", MEMBERSHIP_TOL - res, 0j, grid, "; ".join(detail))
            raise ClassMembershipError(
                f"{name}: {label} is not in W_H^{_sign(tag.kind)}(phi) (max residual {res:.3g})", rep
            )
        worst = max(worst, res)
    reports.append(make_report(f"{name}:membership", MEMBERSHIP_TOL - worst, 0j, grid, "; ".join(detail)))

    # (2) coefficient identity for the convolution
    conv = convolve(first, second)
    target = hadamard(first.h, phi)
    res = membership_residual(conv, ClassTag(recipe.result, target))
    reports.append(make_report(f"{name}:identity", MEMBERSHIP_TOL - res, 0j, grid,
                               f"f1*f2 in W_H^{_sign(recipe.result)}(h1*phi): residual={res:.3g}"))

    # (3) hypotheses
    r = grid.r_max
    if recipe.hypothesis == "derivative":
        reports.append(check_re_ratio_derivative(hadamard(first.h, second.h), target, 0.5, grid,
                                                 f"{name}:hypothesis:re_ratio"))
    elif recipe.hypothesis == "values":
        reports.append(check_re_ratio_values(second.h, phi, 0.5, grid, f"{name}:hypothesis:re_ratio"))
    elif recipe.hypothesis == "full_convexity":
        reports.append(check_sense_preserving(second, grid, f"{name}:hypothesis:sense_preserving"))
        reports.append(check_fully_convex(second, grid, criterion=f"{name}:hypothesis:fully_convex"))
        reports.append(check_re_ratio_values(second.h, phi, 0.5, grid, f"{name}:hypothesis:re_ratio"))
    elif recipe.hypothesis == "convex_h":
        h_alone = HarmonicMap.analytic(second.h)
        reports.append(check_fully_convex(h_alone, grid, criterion=f"{name}:hypothesis:h_convex"))
        reports.append(check_marx_strohhacker(second.h, grid, f"{name}:hypothesis:marx_strohhacker"))
    if recipe.target_check:
        t = HarmonicMap.analytic(target)
        reports.append(check_univalent_boundary(t, r, boundary_samples, f"{name}:hypothesis:target_univalent"))
        reports.append(check_convex_in_direction(t, r, recipe.direction, boundary_samples,
                                                 f"{name}:hypothesis:target_convex_{recipe.direction.value}"))

    # (4) conclusions
    reports.append(check_sense_preserving(conv, grid, f"{name}:sense_preserving"))
    reports.append(check_univalent_boundary(conv, r, boundary_samples, f"{name}:univalent_boundary"))
    reports.append(check_convex_in_direction(conv, r, recipe.direction, boundary_samples,
                                             f"{name}:convex_{recipe.direction.value}"))
    return reports


def theorem_convolution(pipeline, inputs, phi=None) -> HarmonicMap:
    """The convolution a pipeline draws conclusions about."""
    first, second, _, _ = prepare_pipeline(pipeline, inputs, phi)
    return convolve(first, second)
