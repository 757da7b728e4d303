"""Ellipse model, implicit function and the two midpoint decision recurrences.

Points live on a lattice of width ``h``.  A point is addressed by integer
indices ``(i, j)`` and its coordinates are always rebuilt as ``x = i*h`` and
``y = b - j*h``; nothing is accumulated step by step, so ``h = 0.1`` does
not drift over long traces.

Two arithmetic modes are supported.  ``Mode.FLOAT`` works in IEEE doubles.
``Mode.EXACT`` keeps every quantity as a :class:`fractions.Fraction`, which
reproduces decimal tables such as the ``h = 0.1`` trace bit for bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational, Real

# Float-mode slack for sign tests and the region comparison, relative to the
# magnitude of the quantities compared.
FLOAT_RTOL = 1e-9


class GeometryError(ValueError):
    """Rejected ellipse, grid step or decision state."""


class InvalidEllipseError(GeometryError):
    pass


class InvalidStepError(GeometryError):
    pass


class RegionError(GeometryError):
    pass


class Mode(enum.Enum):
    FLOAT = "float"
    EXACT = "exact"


class Region(enum.Enum):
    R1 = "R1"
    R2 = "R2"


def to_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10`` rather
    than the nearest binary fraction.  Strings accept ``"0.25"`` and ``"1/4"``.
    """
    if isinstance(value, bool):
        raise TypeError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {value!r} to a rational")


def _is_finite(value) -> bool:
    return isinstance(value, Rational) or (isinstance(value, Real) and math.isfinite(value))


@dataclass(frozen=True)
class EllipseSpec:
    """Origin-centred, axis-aligned ellipse ``x²/a² + y²/b² = 1`` with ``a > b``."""

    a: Real
    b: Real

    def __post_init__(self):
        for name, value in (("a", self.a), ("b", self.b)):
            if isinstance(value, bool) or not isinstance(value, Real):
                raise InvalidEllipseError(f"semi-axis {name} must be a real number, got {value!r}")
            if not _is_finite(value):
                raise InvalidEllipseError(f"semi-axis {name} must be finite, got {value!r}")
            if value <= 0:
                raise InvalidEllipseError(f"semi-axis {name} must be positive, got {value}")
        if self.a <= self.b:
            raise InvalidEllipseError(
                f"the algorithm assumes a > b (semi-major axis along x); got a={self.a}, b={self.b}"
            )


@dataclass(frozen=True)
class GridStep:
    """Grid width ``h`` together with the arithmetic mode.

    In exact mode ``h`` is stored as a Fraction; use :meth:`exact` to build one
    from an explicit numerator/denominator pair.
    """

    h: Real
    mode: Mode = Mode.FLOAT

    def __post_init__(self):
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        if isinstance(self.h, bool) or not isinstance(self.h, Real) or not _is_finite(self.h):
            raise InvalidStepError(f"grid step h must be a finite real number, got {self.h!r}")
        if self.h <= 0:
            raise InvalidStepError(f"grid step h must be positive, got {self.h}")
        if mode is Mode.EXACT:
            object.__setattr__(self, "h", to_rational(self.h))
        else:
            object.__setattr__(self, "h", float(self.h))

    @classmethod
    def exact(cls, numerator: int, denominator: int = 1) -> "GridStep":
        for name, value in (("numerator", numerator), ("denominator", denominator)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidStepError(f"exact grid step {name} must be an integer, got {value!r}")
            if value <= 0:
                raise InvalidStepError(f"exact grid step {name} must be positive, got {value}")
        if math.gcd(numerator, denominator) != 1:
            raise InvalidStepError(
                f"exact grid step {numerator}/{denominator} is not in lowest terms"
            )
        return cls(Fraction(numerator, denominator), Mode.EXACT)

    @property
    def numerator(self) -> int:
        return to_rational(self.h).numerator

    @property
    def denominator(self) -> int:
        return to_rational(self.h).denominator

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT


def check_step(spec: EllipseSpec, step: GridStep) -> None:
    """Reject a grid step wider than the minor axis."""
    if step.h > spec.b:
        raise InvalidStepError(
            f"grid step h={step.h} exceeds the semi-minor axis b={spec.b}; "
            "the first midpoint (h, b - h/2) would fall below the x-axis"
        )


@dataclass(frozen=True)
class _Coefficients:
    a: Real
    b: Real
    h: Real
    a2: Real
    b2: Real
    a2b2: Real
    half_h: Real
    tol: Real  # absolute slack for decision-parameter sign tests


@lru_cache(maxsize=256)
def _coefficients(spec: EllipseSpec, step: GridStep) -> _Coefficients:
    if step.is_exact:
        a, b, h = to_rational(spec.a), to_rational(spec.b), step.h
        half_h = h / 2
        tol = Fraction(0)
    else:
        a, b, h = float(spec.a), float(spec.b), float(step.h)
        half_h = h / 2
        tol = FLOAT_RTOL * a * a * b * b
    a2, b2 = a * a, b * b
    return _Coefficients(a, b, h, a2, b2, a2 * b2, half_h, tol)


@dataclass(frozen=True)
class GridPoint:
    """Lattice point: ``x = i*h`` and ``y = b - j*h``."""

    i: int
    j: int
    x: Real
    y: Real


def grid_point(spec: EllipseSpec, step: GridStep, i: int, j: int) -> GridPoint:
    c = _coefficients(spec, step)
    x = i * c.h
    y = c.b - j * c.h
    if not step.is_exact and abs(y) <= FLOAT_RTOL * c.h:
        # b - j*h rounds to a few ulps either side of the axis
        y = 0.0
    return GridPoint(i, j, x, y)


def last_row(spec: EllipseSpec, step: GridStep) -> int:
    """Largest ``j`` with ``b - j*h >= 0``."""
    c = _coefficients(spec, step)
    if step.is_exact:
        return int(c.b // c.h)
    return int(math.floor(c.b / c.h + FLOAT_RTOL))


@dataclass(frozen=True)
class DecisionState:
    point: GridPoint
    region: Region
    p: Real


def eval_implicit(spec: EllipseSpec, x, y):
    """``f(x, y) = b²x² + a²y² - a²b²``: negative inside, zero on, positive outside."""
    a, b = spec.a, spec.b
    if isinstance(x, Fraction) or isinstance(y, Fraction):
        a, b = to_rational(a), to_rational(b)
    a2, b2 = a * a, b * b
    return b2 * x * x + a2 * y * y - a2 * b2


def midpoint(step: GridStep, state: DecisionState) -> tuple:
    """Midpoint between the two candidate moves from ``state``."""
    x, y, h = state.point.x, state.point.y, step.h
    if state.region is Region.R1:
        return x + h, y - h / 2
    return x + h / 2, y - h


def decision_residual(spec: EllipseSpec, step: GridStep, state: DecisionState):
    """Gap between the carried parameter and a fresh evaluation at the midpoint."""
    mx, my = midpoint(step, state)
    if step.is_exact:
        return state.p - eval_implicit(spec, to_rational(mx), to_rational(my))
    return state.p - eval_implicit(spec, float(mx), float(my))


def is_nonnegative(spec: EllipseSpec, step: GridStep, p) -> bool:
    """Sign test on a decision parameter; float mode treats ``|p| <= tol`` as zero."""
    return p >= -_coefficients(spec, step).tol


def initial_p1(spec: EllipseSpec, step: GridStep) -> DecisionState:
    check_step(spec, step)
    c = _coefficients(spec, step)
    p = (4 * c.b2 + c.a2) * c.h * c.h / 4 - c.a2 * c.b * c.h
    return DecisionState(grid_point(spec, step, 0, 0), Region.R1, p)


def step_r1(spec: EllipseSpec, step: GridStep, state: DecisionState) -> DecisionState:
    """Advance one column: right, or diagonally down-right when ``p >= 0``."""
    if state.region is not Region.R1:
        raise RegionError(f"step_r1 needs a region R1 state, got {state.region.value}")
    c = _coefficients(spec, step)
    pt, h = state.point, c.h
    p = state.p + c.b2 * h * h + 2 * c.b2 * h * (pt.x + h)
    if is_nonnegative(spec, step, state.p):
        p -= 2 * c.a2 * h * (pt.y - h)
        nxt = grid_point(spec, step, pt.i + 1, pt.j + 1)
    else:
        nxt = grid_point(spec, step, pt.i + 1, pt.j)
    return DecisionState(nxt, Region.R1, p)


def initial_p2(spec: EllipseSpec, step: GridStep, point: GridPoint) -> DecisionState:
    c = _coefficients(spec, step)
    p = c.b2 * (point.x + c.half_h) ** 2 + c.a2 * (point.y - c.h) ** 2 - c.a2b2
    return DecisionState(point, Region.R2, p)


def step_r2(spec: EllipseSpec, step: GridStep, state: DecisionState) -> DecisionState:
    """Advance one row: down, or diagonally down-right when ``p < 0``."""
    if state.region is not Region.R2:
        raise RegionError(f"step_r2 needs a region R2 state, got {state.region.value}")
    c = _coefficients(spec, step)
    pt, h = state.point, c.h
    p = state.p + c.a2 * h * h - 2 * c.a2 * h * (pt.y - h)
    if is_nonnegative(spec, step, state.p):
        nxt = grid_point(spec, step, pt.i, pt.j + 1)
    else:
        p += c.b2 * h * h + 2 * c.b2 * h * (pt.x + c.half_h)
        nxt = grid_point(spec, step, pt.i + 1, pt.j + 1)
    return DecisionState(nxt, Region.R2, p)


def transition_sides(spec: EllipseSpec, point: GridPoint) -> tuple:
    """``(2b²x, 2a²y)`` at ``point``; the tangent slope passes -1 where they cross."""
    a, b = spec.a, spec.b
    if isinstance(point.x, Fraction) or isinstance(point.y, Fraction):
        a, b = to_rational(a), to_rational(b)
    return 2 * b * b * point.x, 2 * a * a * point.y


def region_transition(spec: EllipseSpec, point: GridPoint) -> bool:
    """True once ``2b²x > 2a²y`` strictly; equality stays in region R1."""
    lhs, rhs = transition_sides(spec, point)
    if isinstance(lhs, float) or isinstance(rhs, float):
        return lhs - rhs > FLOAT_RTOL * max(abs(lhs), abs(rhs))
    return lhs > rhs
