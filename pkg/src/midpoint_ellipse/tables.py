"""CSV / JSON serialisation of traces and error comparisons."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .geometry import EllipseSpec, GridStep, Region, grid_point, to_rational
from .tracer import QuadrantTrace, TraceStep

COLUMNS = ("x", "y", "p", "x_next", "y_next", "p_next", "two_b2_x_next", "two_a2_y_next", "region")
TYPESET_COLUMNS = ("x", "y", "P'_k", "x_{k+1}", "y_{k+1}", "P'_{k+1}", "2b^2x_{k+1}", "2a^2y_{k+1}")
COMPARE_COLUMNS = (
    "h", "r1_steps", "r2_steps", "total_iterations",
    "mean_geometric", "max_geometric", "mean_algebraic",
)


def _decimal_exponent(den: int):
    """Return k with den | 10**k, or None when den has a prime factor other than 2 or 5."""
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    return max(twos, fives) if den == 1 else None


def format_number(value) -> str:
    """Exact decimal for rationals (``p/q`` if it does not terminate), shortest repr for floats."""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    k = _decimal_exponent(value.denominator)
    if k is None:
        return f"{value.numerator}/{value.denominator}"
    scaled = abs(value.numerator) * (10**k // value.denominator)
    digits = str(scaled).rjust(k + 1, "0")
    text = f"{digits[:-k]}.{digits[-k:]}".rstrip("0").rstrip(".")
    return ("-" if value < 0 else "") + text


def parse_number(text: str, step: GridStep):
    if step.is_exact:
        return Fraction(text)
    return float(text)


def _row(ts: TraceStep) -> list:
    return [
        format_number(ts.before.x), format_number(ts.before.y), format_number(ts.p_before),
        format_number(ts.after.x), format_number(ts.after.y), format_number(ts.p_after),
        format_number(ts.lhs), format_number(ts.rhs),
    ]


def trace_csv(trace: QuadrantTrace, paper_layout: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if paper_layout:
        writer.writerow(TYPESET_COLUMNS)
        writer.writerows(_row(ts) for ts in trace.steps)
    else:
        writer.writerow(COLUMNS)
        writer.writerows(_row(ts) + [ts.region.value] for ts in trace.steps)
    return buf.getvalue()


def _json_number(value, exact: bool):
    # exact values stay strings so no rational is squeezed through a double
    return format_number(value) if exact else float(value)


def _spec_json(spec: EllipseSpec, step: GridStep) -> dict:
    exact = step.is_exact
    return {"a": _json_number(spec.a, exact), "b": _json_number(spec.b, exact)}


def _step_json(step: GridStep) -> dict:
    out = {"h": _json_number(step.h, step.is_exact), "mode": step.mode.value}
    if step.is_exact:
        out["numerator"] = step.numerator
        out["denominator"] = step.denominator
    return out


def report_json(report) -> dict:
    return {
        "h": _json_number(report.step.h, report.step.is_exact),
        "r1_steps": report.r1_steps,
        "r2_steps": report.r2_steps,
        "total_iterations": report.total_iterations,
        "mean_geometric": report.mean_geometric,
        "max_geometric": report.max_geometric,
        "mean_algebraic": report.mean_algebraic,
        "per_point": [
            {
                "x": _json_number(e.point.x, report.step.is_exact),
                "y": _json_number(e.point.y, report.step.is_exact),
                "algebraic_residual": e.algebraic_residual,
                "geometric_distance": e.geometric_distance,
            }
            for e in report.per_point
        ],
    }


def trace_json(trace: QuadrantTrace, report=None) -> str:
    if report is None:
        from .analysis import error_report

        report = error_report(trace)
    exact = trace.step.is_exact
    steps = []
    for ts in trace.steps:
        steps.append({
            "region": ts.region.value,
            "i": ts.before.i, "j": ts.before.j,
            "x": _json_number(ts.before.x, exact), "y": _json_number(ts.before.y, exact),
            "p": _json_number(ts.p_before, exact),
            "i_next": ts.after.i, "j_next": ts.after.j,
            "x_next": _json_number(ts.after.x, exact), "y_next": _json_number(ts.after.y, exact),
            "p_next": _json_number(ts.p_after, exact),
            "two_b2_x_next": _json_number(ts.lhs, exact),
            "two_a2_y_next": _json_number(ts.rhs, exact),
        })
    doc = {
        "spec": _spec_json(trace.spec, trace.step),
        "step": _step_json(trace.step),
        "r2_seed_offset": trace.r2_seed_offset,
        "transition_index": trace.transition_index,
        "steps": steps,
        "errors": report_json(report),
    }
    return json.dumps(doc, indent=2) + "\n"


def emit_trace_table(trace: QuadrantTrace, fmt: str = "csv", paper_layout: bool = False) -> bytes:
    """Serialise ``trace`` one row per step, as ``csv`` or ``json``."""
    if fmt == "csv":
        return trace_csv(trace, paper_layout).encode("utf-8")
    if fmt == "json":
        return trace_json(trace).encode("utf-8")
    raise ValueError(f"unsupported table format {fmt!r}; expected csv or json")


def _index(value, origin, sign, h, exact: bool) -> int:
    q = sign * (value - origin) / h
    if exact:
        if q.denominator != 1:
            raise ValueError(f"coordinate {format_number(value)} is not on the h={h} grid")
        return int(q)
    k = round(q)
    if abs(q - k) > 1e-6:
        raise ValueError(f"coordinate {value!r} is not on the h={h} grid")
    return k


def parse_trace_table(data, spec: EllipseSpec, step: GridStep) -> list:
    """Rebuild :class:`TraceStep` rows from CSV written by :func:`emit_trace_table`."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data))
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected trace header {header!r}; only the default layout can be parsed")
    exact = step.is_exact
    b = to_rational(spec.b) if exact else float(spec.b)
    h = step.h
    out = []
    for row in reader:
        if not row:
            continue
        x, y, p, xn, yn, pn, lhs, rhs = (parse_number(v, step) for v in row[:8])
        before = grid_point(spec, step, _index(x, 0, 1, h, exact), _index(y, b, -1, h, exact))
        after = grid_point(spec, step, _index(xn, 0, 1, h, exact), _index(yn, b, -1, h, exact))
        out.append(TraceStep(before, Region(row[8]), p, after, pn, lhs, rhs))
    return out


def compare_csv(reports, summary: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COMPARE_COLUMNS)
    for r in reports:
        writer.writerow([
            format_number(r.step.h), r.r1_steps, r.r2_steps, r.total_iterations,
            repr(r.mean_geometric), repr(r.max_geometric), repr(r.mean_algebraic),
        ])
    for line in summary_lines(summary):
        buf.write(f"# {line}\n")
    return buf.getvalue()


def summary_lines(summary: dict) -> list:
    order = ", ".join(format_number(h) for h in summary["h_order"])
    yes = {True: "yes", False: "NO"}
    return [
        f"h order (decreasing): {order}",
        f"iterations strictly increase as h decreases: {yes[summary['iterations_increase']]}",
        f"mean geometric error strictly decreases as h decreases: {yes[summary['mean_error_decreases']]}",
        f"max geometric error strictly decreases as h decreases: {yes[summary['max_error_decreases']]}",
    ]


def compare_json(spec: EllipseSpec, reports, summary: dict) -> str:
    exact = bool(reports) and reports[0].step.is_exact
    doc = {
        "spec": {"a": _json_number(spec.a, exact), "b": _json_number(spec.b, exact)},
        "reports": [report_json(r) for r in reports],
        "summary": {**summary, "h_order": [_json_number(h, exact) for h in summary["h_order"]]},
    }
    return json.dumps(doc, indent=2) + "\n"
