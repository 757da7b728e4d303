"""Command line front end: ``trace``, ``compare`` and ``render``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .analysis import compare_steps, error_report, monotonicity_summary
from .geometry import EllipseSpec, GeometryError, GridStep, InvalidStepError, Mode, check_step
from .render import render_comparison
from .tables import compare_csv, compare_json, emit_trace_table, trace_json
from .tracer import trace_quadrant

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2

TABLE_FORMATS = ("csv", "json")
IMAGE_FORMATS = ("svg", "pgm")


class ConfigError(ValueError):
    pass


def _parse_real(text: str, flag: str):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{flag}: {text!r} is not a number") from None


def _parse_step(text: str, mode: Mode) -> GridStep:
    text = text.strip()
    if mode is Mode.EXACT and "/" in text:
        num, _, den = text.partition("/")
        try:
            num, den = int(num), int(den)
        except ValueError:
            raise ConfigError(f"--h: {text!r} is not a fraction of integers") from None
        return GridStep.exact(num, den)
    value = _parse_real(text, "--h")
    if mode is Mode.EXACT:
        return GridStep(value, Mode.EXACT)
    return GridStep(float(value), Mode.FLOAT)


@dataclass
class RunConfig:
    a: object
    b: object
    h_list: list
    mode: Mode = Mode.FLOAT
    fmt: str = "csv"
    out: Optional[Path] = None
    paper_layout: bool = False
    r2_seed_offset: int = 0
    spec: EllipseSpec = field(init=False, default=None)
    steps: list = field(init=False, default_factory=list)

    def validate(self):
        """Build the ellipse and grid steps, raising on the first violated assumption."""
        a = _parse_real(self.a, "--a") if isinstance(self.a, str) else self.a
        b = _parse_real(self.b, "--b") if isinstance(self.b, str) else self.b
        if self.mode is Mode.FLOAT:
            a, b = float(a), float(b)
        self.spec = EllipseSpec(a, b)
        if not self.h_list:
            raise ConfigError("--h: at least one grid step is required")
        self.steps = []
        for text in self.h_list:
            step = _parse_step(text, self.mode) if isinstance(text, str) else GridStep(text, self.mode)
            check_step(self.spec, step)
            self.steps.append(step)
        if self.r2_seed_offset < 0:
            raise ConfigError("--r2-seed-offset must be non-negative")
        return self


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="midpoint-ellipse",
        description="Midpoint ellipse scan conversion on a grid of width h.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", required=True, help="semi-major axis (x), must exceed b")
    common.add_argument("--b", required=True, help="semi-minor axis (y)")
    common.add_argument("--h", required=True,
                        help="grid width, or a comma separated list for compare; '1/10' is accepted")
    common.add_argument("--mode", choices=[m.value for m in Mode], default="float",
                        help="float (IEEE doubles) or exact (rational arithmetic)")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--r2-seed-offset", type=int, default=0, metavar="N",
                        help="seed region R2 N rows below the last R1 point (1 reproduces the "
                             "published h=0.5 region-R2 table)")

    p = sub.add_parser("trace", parents=[common], help="per-step decision parameter table")
    p.add_argument("--format", choices=TABLE_FORMATS, default="csv")
    p.add_argument("--paper-layout", action="store_true",
                   help="CSV with the typeset column headers and no region column")

    p = sub.add_parser("compare", parents=[common], help="error and iteration report per h")
    p.add_argument("--format", choices=TABLE_FORMATS, default="csv")

    p = sub.add_parser("render", parents=[common], help="exact curve versus generated points")
    p.add_argument("--format", choices=IMAGE_FORMATS,
                   help="image format; defaults to the --out suffix")
    return parser


def _config(args) -> RunConfig:
    fmt = args.format
    if args.command == "render":
        if args.out is None:
            raise ConfigError("render: --out is required")
        if fmt is None:
            fmt = args.out.suffix.lstrip(".").lower()
            if fmt not in IMAGE_FORMATS:
                raise ConfigError(f"render: cannot infer image format from {args.out.name!r}; pass --format")
    return RunConfig(
        a=args.a, b=args.b, h_list=[t for t in args.h.split(",") if t.strip()],
        mode=Mode(args.mode), fmt=fmt, out=args.out,
        paper_layout=getattr(args, "paper_layout", False),
        r2_seed_offset=args.r2_seed_offset,
    ).validate()


def _write(data: bytes, out: Optional[Path], stdout) -> None:
    if out is None:
        stdout.write(data.decode("utf-8"))
        stdout.flush()
    else:
        out.write_bytes(data)


def run_trace(cfg: RunConfig, stdout) -> int:
    if len(cfg.steps) != 1:
        raise ConfigError("trace: exactly one --h value is required")
    trace = trace_quadrant(cfg.spec, cfg.steps[0], r2_seed_offset=cfg.r2_seed_offset)
    if cfg.fmt == "json":
        data = trace_json(trace, error_report(trace)).encode("utf-8")
    else:
        data = emit_trace_table(trace, "csv", paper_layout=cfg.paper_layout)
    _write(data, cfg.out, stdout)
    return EXIT_OK


def run_compare_command(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    reports = compare_steps(cfg.spec, cfg.steps, r2_seed_offset=cfg.r2_seed_offset)
    summary = monotonicity_summary(reports)
    if cfg.fmt == "json":
        text = compare_json(cfg.spec, reports, summary)
    else:
        text = compare_csv(reports, summary)
    _write(text.encode("utf-8"), cfg.out, stdout)
    return EXIT_OK


def run_render(cfg: RunConfig, stdout) -> int:
    if len(cfg.steps) != 1:
        raise ConfigError("render: exactly one --h value is required")
    trace = trace_quadrant(cfg.spec, cfg.steps[0], r2_seed_offset=cfg.r2_seed_offset)
    render_comparison(trace, cfg.fmt, cfg.out)
    return EXIT_OK


COMMANDS = {"trace": run_trace, "compare": run_compare_command, "render": run_render}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, stdout)
    except (ConfigError, GeometryError) as exc:
        stderr.write(f"midpoint-ellipse {args.command}: error: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        stderr.write(f"midpoint-ellipse {args.command}: error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
