"""Command line frontend.

Subcommands: ``trace`` (one curve along a path), ``trace-system`` (a
bivariate chain), ``darboux`` (the pentagon closure-loop experiment),
``bench`` (the quadratic Newton-homotopy step-count tables against
published comparison columns), and ``compare-resultant`` (chain trace vs
eliminant trace).

Exit codes: 0 success, 1 input error, 2 continuation ran into a critical
point on the path, 3 continuation stalled otherwise, 4 internal
consistency failure (ambiguous proximity match).  Logs are written to
stdout as JSON (default) or CSV; ``--plot`` additionally renders a figure
next to the delimited output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import mpmath

from . import report as report_mod
from .continuation import ParamPath, TraceOptions, trace_curve
from .darboux import pentagon_curve, run_pentagon_experiment
from .errors import (
    AmbiguousMatch,
    CriticalPointOnPath,
    DegenerateInput,
    NoProgress,
)
from .fixtures import (
    NAMED_SYSTEMS,
    NEWTON_TABLE_K,
    NEWTON_TABLE_M,
    newton_homotopy_curve,
    newton_homotopy_endpoint,
    newton_homotopy_path,
)
from .polynomial import BivariatePolynomial
from .scalars import DOUBLE_BITS, scalar_from_json
from .systems import ChainSystem, SystemOptions, compare_with_resultant, trace_system

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CRITICAL = 2
EXIT_NO_PROGRESS = 3
EXIT_INTERNAL = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None
    rho_fraction: float
    safety_factor: float
    precision_bits: int
    epsilon_pad: float | None
    max_halvings: int
    output: str
    plot: str | None
    turns: int = 1
    m_values: tuple = ()
    k_values: tuple = ()

    def __post_init__(self):
        if not 0.0 < self.rho_fraction < 1.0:
            raise ValueError("--rho-fraction must lie in (0, 1)")
        if not 0.0 < self.safety_factor < 1.0:
            raise ValueError("--safety-factor must lie in (0, 1)")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rho-fraction", type=float, default=0.5,
                        help="fraction of the critical distance used as "
                             "the analyticity radius (default 0.5)")
    parser.add_argument("--safety-factor", type=float, default=0.99,
                        help="fraction of the certified step actually "
                             "taken (default 0.99)")
    parser.add_argument("--precision", type=int, default=DOUBLE_BITS,
                        metavar="BITS",
                        help="working precision in bits (default 53 = "
                             "binary64; higher values use mpmath)")
    parser.add_argument("--output", choices=("json", "csv"), default="json",
                        help="log format written to stdout (default json)")
    parser.add_argument("--plot", metavar="PATH", default=None,
                        help="also render a figure to PATH (format from "
                             "the extension, e.g. .svg)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvetrace",
        description="Certified branch tracking along plane algebraic "
                    "curves and bivariate chains.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="trace one curve along a path")
    p_trace.add_argument("input", help="JSON file path or inline JSON with "
                                       "curve, path, and y0")
    _add_common(p_trace)

    p_sys = sub.add_parser("trace-system", help="trace a bivariate chain")
    p_sys.add_argument("input", help="JSON file path or inline JSON with "
                                     "equations, initial, and target")
    _add_common(p_sys)
    p_sys.add_argument("--epsilon-pad", type=float, default=None,
                       help="fixed range-bound padding (default: adaptive "
                            "max(1e-12, 1e-9*delta))")
    p_sys.add_argument("--max-halvings", type=int, default=60,
                       help="per-round subdivision budget (default 60)")

    p_dar = sub.add_parser("darboux", help="run the pentagon closure-loop "
                                           "experiment")
    _add_common(p_dar)
    p_dar.add_argument("--turns", type=int, default=1,
                       help="full turns around the branch point (default 1)")

    p_bench = sub.add_parser("bench", help="Newton-homotopy step-count "
                                           "tables (CSV)")
    _add_common(p_bench)
    p_bench.add_argument("--m-values", default=None,
                         help="comma-separated m values (default: the "
                              "published table)")
    p_bench.add_argument("--k-values", default=None,
                         help="comma-separated k values for m = -1 + 10^-k")

    p_cmp = sub.add_parser("compare-resultant",
                           help="chain trace vs eliminant trace on a "
                                "two-equation chain")
    p_cmp.add_argument("fixture",
                       help="named fixture (%s) or JSON input"
                            % ", ".join(sorted(NAMED_SYSTEMS)))
    _add_common(p_cmp)
    p_cmp.add_argument("--epsilon-pad", type=float, default=None)
    p_cmp.add_argument("--max-halvings", type=int, default=60)
    return parser


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", getattr(args, "fixture", None)),
        rho_fraction=args.rho_fraction,
        safety_factor=args.safety_factor,
        precision_bits=args.precision,
        epsilon_pad=getattr(args, "epsilon_pad", None),
        max_halvings=getattr(args, "max_halvings", 60),
        output=args.output,
        plot=args.plot,
        turns=getattr(args, "turns", 1),
        m_values=_parse_values(getattr(args, "m_values", None)),
        k_values=_parse_values(getattr(args, "k_values", None)),
    )


def _parse_values(text) -> tuple:
    if text is None:
        return ()
    return tuple(float(v) for v in text.split(",") if v.strip())


def _load_json(source: str):
    text = source if source.lstrip().startswith(("{", "[")) else None
    if text is None:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    return json.loads(text)


def _trace_options(cfg: RunConfig) -> TraceOptions:
    return TraceOptions(rho_fraction=cfg.rho_fraction,
                        safety_factor=cfg.safety_factor)


def _system_options(cfg: RunConfig) -> SystemOptions:
    return SystemOptions(rho_fraction=cfg.rho_fraction,
                         epsilon_pad=cfg.epsilon_pad,
                         max_halvings=cfg.max_halvings)


def _emit_trace(cfg: RunConfig, log) -> None:
    if cfg.output == "csv":
        report_mod.write_trace_csv(log, sys.stdout)
    else:
        json.dump(log.to_json_list(), sys.stdout, indent=2)
        sys.stdout.write("\n")


def _emit_system(cfg: RunConfig, log) -> None:
    if cfg.output == "csv":
        report_mod.write_system_csv(log, sys.stdout)
    else:
        json.dump(log.to_json_list(), sys.stdout, indent=2)
        sys.stdout.write("\n")


def _cmd_trace(cfg: RunConfig) -> int:
    data = _load_json(cfg.input_path)
    if not isinstance(data, dict):
        raise ValueError("trace input must be a JSON object")
    for key in ("curve", "path", "y0"):
        if key not in data:
            raise ValueError("trace input is missing %r" % key)
    bits = cfg.precision_bits
    curve = BivariatePolynomial.from_json_dict(data["curve"], bits)
    path = ParamPath.from_json_list(data["path"], bits)
    try:
        y0 = scalar_from_json(data["y0"], bits)
    except ValueError as exc:
        raise ValueError("y0: %s" % exc) from exc

    try:
        log = trace_curve(curve, path, y0, _trace_options(cfg))
    except (CriticalPointOnPath, NoProgress, AmbiguousMatch) as exc:
        if exc.log is not None:
            _emit_trace(cfg, exc.log)
        print("failure: %s" % exc, file=sys.stderr)
        if isinstance(exc, CriticalPointOnPath):
            return EXIT_CRITICAL
        if isinstance(exc, AmbiguousMatch):
            return EXIT_INTERNAL
        return EXIT_NO_PROGRESS
    _emit_trace(cfg, log)
    if cfg.plot:
        report_mod.render_trace_figure(log, cfg.plot)
    return EXIT_OK


def _cmd_trace_system(cfg: RunConfig) -> int:
    data = _load_json(cfg.input_path)
    if not isinstance(data, dict):
        raise ValueError("trace-system input must be a JSON object")
    system = ChainSystem.from_json_dict(data, cfg.precision_bits)
    try:
        log = trace_system(system, _system_options(cfg))
    except (CriticalPointOnPath, NoProgress, AmbiguousMatch) as exc:
        if getattr(exc, "log", None) is not None:
            _emit_system(cfg, exc.log)
        print("failure: %s" % exc, file=sys.stderr)
        if isinstance(exc, CriticalPointOnPath):
            return EXIT_CRITICAL
        if isinstance(exc, AmbiguousMatch):
            return EXIT_INTERNAL
        return EXIT_NO_PROGRESS
    _emit_system(cfg, log)
    if cfg.plot:
        report_mod.render_system_figure(log, cfg.plot)
    return EXIT_OK


def _cmd_darboux(cfg: RunConfig) -> int:
    try:
        log = run_pentagon_experiment(cfg.turns, _trace_options(cfg))
    except (CriticalPointOnPath, NoProgress, AmbiguousMatch) as exc:
        if exc.log is not None:
            _emit_trace(cfg, exc.log)
        print("failure: %s" % exc, file=sys.stderr)
        return (EXIT_CRITICAL if isinstance(exc, CriticalPointOnPath)
                else EXIT_NO_PROGRESS)
    _emit_trace(cfg, log)
    if cfg.plot:
        vertices = [v.to_complex() for v in pentagon_curve().vertices]
        report_mod.render_loop_figure(log, cfg.plot, vertices)
    return EXIT_OK


def _cmd_bench(cfg: RunConfig) -> int:
    opts = _trace_options(cfg)
    m_rows = {row[0]: row for row in NEWTON_TABLE_M}
    k_rows = {row[0]: row for row in NEWTON_TABLE_K}
    m_values = cfg.m_values or tuple(m_rows)
    k_values = cfg.k_values or tuple(k_rows)

    rows = []
    for m in m_values:
        log = trace_curve(newton_homotopy_curve(m), newton_homotopy_path(),
                          1.0 + 0j, opts)
        err = abs(log.final_y - newton_homotopy_endpoint(m))
        ref = m_rows.get(m, (m, "", "", ""))
        rows.append([("m=%g" % m), log.step_count, ref[1], ref[2], ref[3],
                     err])
    k_start = len(rows)
    for k in k_values:
        m = -1.0 + 10.0 ** (-k)
        log = trace_curve(newton_homotopy_curve(m), newton_homotopy_path(),
                          1.0 + 0j, opts)
        err = abs(log.final_y - newton_homotopy_endpoint(m))
        ref = k_rows.get(k, (k, "", "", ""))
        rows.append([("k=%g" % k), log.step_count, ref[1], ref[2], ref[3],
                     err])
    report_mod.write_bench_csv(rows, sys.stdout)
    if cfg.plot:
        plot_rows = [[float(r[0].split("=")[1])] + r[1:] for r in
                     (rows[:k_start] or rows)]
        report_mod.render_bench_figure(plot_rows, cfg.plot,
                                       xlabel="m" if rows[:k_start] else "k")
    return EXIT_OK


def _cmd_compare(cfg: RunConfig) -> int:
    if cfg.input_path in NAMED_SYSTEMS:
        system = NAMED_SYSTEMS[cfg.input_path]()
    else:
        data = _load_json(cfg.input_path)
        system = ChainSystem.from_json_dict(data, cfg.precision_bits)
    result = compare_with_resultant(system, _system_options(cfg),
                                    _trace_options(cfg))
    json.dump(result.to_json_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


_HANDLERS = {
    "trace": _cmd_trace,
    "trace-system": _cmd_trace_system,
    "darboux": _cmd_darboux,
    "bench": _cmd_bench,
    "compare-resultant": _cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    handler = _HANDLERS[cfg.command]
    try:
        if cfg.precision_bits > DOUBLE_BITS:
            with mpmath.workprec(cfg.precision_bits):
                return handler(cfg)
        return handler(cfg)
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print("error: input is not valid JSON: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, DegenerateInput) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
