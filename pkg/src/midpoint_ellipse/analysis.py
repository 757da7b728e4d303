"""Distance of generated points from the exact ellipse, and the h trade-off."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import EllipseSpec, GeometryError, GridPoint, GridStep, eval_implicit
from .tracer import QuadrantTrace, trace_quadrant

SAMPLES = 4096


def _dist2_slope(theta, a, b, x, y):
    # half the derivative of |(a cos t, b sin t) - (x, y)|² with respect to t
    s, c = math.sin(theta), math.cos(theta)
    return (b * b - a * a) * s * c + a * x * s - b * y * c


def nearest_ellipse_distance(spec: EllipseSpec, x: float, y: float) -> float:
    """Euclidean distance from ``(x, y)`` to the closest point of the ellipse.

    The parameter angle is located on a dense grid of ``SAMPLES`` angles and
    then refined by bracketing a root of the distance derivative.
    """
    # deferred: scipy.optimize costs most of the CLI start-up time
    from scipy.optimize import brentq, minimize_scalar

    a, b = float(spec.a), float(spec.b)
    x, y = float(x), float(y)
    theta = np.linspace(0.0, 2.0 * np.pi, SAMPLES, endpoint=False)
    d2 = (a * np.cos(theta) - x) ** 2 + (b * np.sin(theta) - y) ** 2
    k = int(np.argmin(d2))
    width = 2.0 * np.pi / SAMPLES
    lo, hi = theta[k] - width, theta[k] + width

    def dist(t):
        return math.hypot(a * math.cos(t) - x, b * math.sin(t) - y)

    g_lo = _dist2_slope(lo, a, b, x, y)
    g_hi = _dist2_slope(hi, a, b, x, y)
    if g_lo < 0.0 < g_hi:
        t = brentq(_dist2_slope, lo, hi, args=(a, b, x, y), xtol=1e-15, rtol=4 * np.finfo(float).eps)
    else:
        t = minimize_scalar(dist, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}).x
    return min(dist(t), dist(theta[k]))


@dataclass(frozen=True)
class PointError:
    point: GridPoint
    algebraic_residual: float  # |f(x, y)| / (a²b²)
    geometric_distance: float


@dataclass(frozen=True)
class ErrorReport:
    spec: EllipseSpec
    step: GridStep
    per_point: tuple
    mean_geometric: float
    max_geometric: float
    mean_algebraic: float
    total_iterations: int
    r1_steps: int = 0
    r2_steps: int = 0

    @property
    def max_algebraic(self) -> float:
        return max(e.algebraic_residual for e in self.per_point)


def point_error(spec: EllipseSpec, point: GridPoint) -> PointError:
    a2b2 = float(spec.a) ** 2 * float(spec.b) ** 2
    residual = abs(float(eval_implicit(spec, point.x, point.y))) / a2b2
    return PointError(point, residual, nearest_ellipse_distance(spec, point.x, point.y))


def error_report(trace: QuadrantTrace) -> ErrorReport:
    per_point = tuple(point_error(trace.spec, pt) for pt in trace.points)
    geo = [e.geometric_distance for e in per_point]
    alg = [e.algebraic_residual for e in per_point]
    return ErrorReport(
        spec=trace.spec,
        step=trace.step,
        per_point=per_point,
        mean_geometric=math.fsum(geo) / len(geo),
        max_geometric=max(geo),
        mean_algebraic=math.fsum(alg) / len(alg),
        total_iterations=trace.total_iterations,
        r1_steps=trace.r1_steps,
        r2_steps=trace.r2_steps,
    )


class StepComparisonError(GeometryError):
    def __init__(self, step: GridStep, cause: Exception):
        self.step = step
        super().__init__(f"h={step.h}: {cause}")


def compare_steps(spec: EllipseSpec, steps, r2_seed_offset: int = 0) -> list:
    """One independent :class:`ErrorReport` per grid step, in input order."""
    steps = list(steps)
    if not steps:
        raise ValueError("compare_steps needs at least one grid step")
    reports = []
    for step in steps:
        try:
            trace = trace_quadrant(spec, step, r2_seed_offset=r2_seed_offset)
        except GeometryError as exc:
            raise StepComparisonError(step, exc) from exc
        reports.append(error_report(trace))
    return reports


def monotonicity_summary(reports) -> dict:
    """Check that shrinking h raises the iteration count and lowers the error."""
    ordered = sorted(reports, key=lambda r: r.step.h, reverse=True)
    pairs = list(zip(ordered, ordered[1:]))
    return {
        "h_order": [r.step.h for r in ordered],
        "iterations_increase": all(q.total_iterations > p.total_iterations for p, q in pairs),
        "mean_error_decreases": all(q.mean_geometric < p.mean_geometric for p, q in pairs),
        "max_error_decreases": all(q.max_geometric < p.max_geometric for p, q in pairs),
    }
