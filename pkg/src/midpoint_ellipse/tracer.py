"""First-quadrant driver for the two-region midpoint loop, plus four-way symmetry."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .geometry import (
    EllipseSpec,
    GridPoint,
    GridStep,
    Region,
    check_step,
    grid_point,
    initial_p1,
    initial_p2,
    is_nonnegative,
    last_row,
    region_transition,
    step_r1,
    step_r2,
    transition_sides,
)


@dataclass(frozen=True)
class TraceStep:
    """One table row: the move taken from ``before`` and the parameters around it."""

    before: GridPoint
    region: Region
    p_before: object
    after: GridPoint
    p_after: object
    lhs: object  # 2b²·x_after
    rhs: object  # 2a²·y_after


@dataclass(frozen=True)
class QuadrantTrace:
    spec: EllipseSpec
    step: GridStep
    steps: tuple
    transition_index: int
    points: tuple
    r2_seed_offset: int = 0

    @property
    def r1_steps(self) -> int:
        return self.transition_index + 1

    @property
    def r2_steps(self) -> int:
        return len(self.steps) - self.r1_steps

    @property
    def total_iterations(self) -> int:
        return len(self.steps)


def max_steps(spec: EllipseSpec, step: GridStep) -> int:
    """Upper bound on the number of moves in one quadrant."""
    return math.ceil(spec.a / step.h) + math.ceil(spec.b / step.h) + 2


def _record(spec, before, after) -> TraceStep:
    lhs, rhs = transition_sides(spec, after.point)
    return TraceStep(before.point, before.region, before.p, after.point, after.p, lhs, rhs)


def trace_quadrant(spec: EllipseSpec, step: GridStep, r2_seed_offset: int = 0) -> QuadrantTrace:
    """Run the midpoint algorithm over the first quadrant, from ``(0, b)`` down to the x-axis.

    Region R1 moves one column at a time until the emitted point satisfies
    ``2b²x > 2a²y``.  Region R2 is then seeded at that same point and moves
    one row at a time until the lowest non-negative grid row is emitted.

    ``r2_seed_offset`` lowers the R2 seed by that many rows before the R2
    parameter is computed.  The default 0 seeds at the last R1 point; 1
    reproduces the published ``h = 0.5`` region-R2 table, which starts one
    row below its own region-R1 hand-off point.
    """
    check_step(spec, step)
    if isinstance(r2_seed_offset, bool) or not isinstance(r2_seed_offset, int) or r2_seed_offset < 0:
        raise ValueError(f"r2_seed_offset must be a non-negative integer, got {r2_seed_offset!r}")
    bottom = last_row(spec, step)
    limit = max_steps(spec, step)

    state = initial_p1(spec, step)
    points = [state.point]
    steps = []
    while True:
        if is_nonnegative(spec, step, state.p) and state.point.j + 1 > bottom:
            # diagonal move would leave the quadrant; nothing left for R2 either
            break
        nxt = step_r1(spec, step, state)
        steps.append(_record(spec, state, nxt))
        points.append(nxt.point)
        state = nxt
        if region_transition(spec, nxt.point):
            break
        if len(steps) > limit:
            raise RuntimeError(f"region R1 did not terminate within {limit} steps")
    transition_index = len(steps) - 1

    seed = state.point
    if r2_seed_offset:
        seed = grid_point(spec, step, seed.i, min(seed.j + r2_seed_offset, bottom))
        if seed != state.point:
            points.append(seed)
    state = initial_p2(spec, step, seed)
    while state.point.j < bottom:
        nxt = step_r2(spec, step, state)
        steps.append(_record(spec, state, nxt))
        points.append(nxt.point)
        state = nxt
        if len(steps) > limit:
            raise RuntimeError(f"trace did not terminate within {limit} steps")

    return QuadrantTrace(spec, step, tuple(steps), transition_index, tuple(points), r2_seed_offset)


def iteration_count(trace: QuadrantTrace) -> tuple:
    return trace.r1_steps, trace.r2_steps


@dataclass(frozen=True)
class EllipsePointSet:
    """All-quadrant point set; ``deduplicated`` marks that axis points appear once."""

    points: tuple
    deduplicated: bool = True

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


# Images of (x, y) per quadrant I..IV, as sign pairs.
QUADRANT_SIGNS = ((1, 1), (1, -1), (-1, -1), (-1, 1))


def reflect_four_quadrants(trace: QuadrantTrace) -> EllipsePointSet:
    """Expand the first-quadrant points to the whole ellipse.

    Points with ``i == 0`` or on the x-axis row are emitted once per distinct
    image, so ``(0, ±b)`` and ``(±x, 0)`` are not duplicated.
    """
    bottom = last_row(trace.spec, trace.step)
    axis_row = bottom if grid_point(trace.spec, trace.step, 0, bottom).y == 0 else None
    seen = set()
    out = []
    for sx, sy in QUADRANT_SIGNS:
        for pt in trace.points:
            key = (sx if pt.i else 1) * pt.i, (sy if pt.j != axis_row else 1), pt.j
            if key in seen:
                continue
            seen.add(key)
            out.append((sx * pt.x if pt.i else pt.x, sy * pt.y if pt.j != axis_row else pt.y))
    return EllipsePointSet(tuple(out))


def reflect_points(points: Iterable[tuple]) -> EllipsePointSet:
    """Apply the four sign maps to arbitrary ``(x, y)`` pairs, dropping exact duplicates."""
    seen = set()
    out = []
    for sx, sy in QUADRANT_SIGNS:
        for x, y in points:
            img = (sx * x if x else x, sy * y if y else y)
            if img not in seen:
                seen.add(img)
                out.append(img)
    return EllipsePointSet(tuple(out))
