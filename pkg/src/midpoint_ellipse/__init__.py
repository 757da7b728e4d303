"""Midpoint ellipse scan conversion with a configurable grid width ``h``."""

from .analysis import (
    ErrorReport,
    PointError,
    compare_steps,
    error_report,
    nearest_ellipse_distance,
)
from .geometry import (
    DecisionState,
    EllipseSpec,
    GeometryError,
    GridPoint,
    GridStep,
    InvalidEllipseError,
    InvalidStepError,
    Mode,
    Region,
    RegionError,
    eval_implicit,
    initial_p1,
    initial_p2,
    region_transition,
    step_r1,
    step_r2,
)
from .render import render_comparison
from .tables import emit_trace_table, parse_trace_table
from .tracer import (
    EllipsePointSet,
    QuadrantTrace,
    TraceStep,
    iteration_count,
    reflect_four_quadrants,
    trace_quadrant,
)

__version__ = "0.1.0"
