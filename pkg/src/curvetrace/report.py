"""Delimited output and figure rendering for trace logs.

CSV columns mirror the JSON step-log fields.  Figures are static
matplotlib renderings saved to whatever format the file extension asks
for (SVG included); the trace figure shows the parameter path and the
tracked value side by side, the chain figure shows every variable's
positions, and the loop figure overlays the parameter circle with the
tracked closure point.
"""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .scalars import to_builtin

TRACE_CSV_COLUMNS = ("T", "x_re", "x_im", "y_re", "y_im",
                     "rho", "Y", "M", "epsilon", "delta")

BENCH_CSV_COLUMNS = ("m_or_k", "our_steps", "paper_alg1_steps",
                     "bl2013_steps", "hhl2014_intervals", "endpoint_error")


def write_trace_csv(log, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(TRACE_CSV_COLUMNS)
    for step in log.steps:
        x = to_builtin(step.x)
        y = to_builtin(step.y)
        if step.report is not None:
            r = step.report
            tail = [r.rho, r.Y, r.M, r.epsilon, r.delta]
        else:
            tail = ["", "", "", "", ""]
        writer.writerow([step.T, x.real, x.imag, y.real, y.imag] + tail)


def write_system_csv(log, stream) -> None:
    """Long format: one row per (round, variable)."""
    writer = csv.writer(stream)
    writer.writerow(("round", "T", "k", "x_re", "x_im",
                     "rho", "Y", "M", "epsilon", "delta", "epsilon_prime"))
    for i, rnd in enumerate(log.rounds):
        for k, pos in enumerate(rnd.positions):
            pos = to_builtin(pos)
            if k == 0:
                tail = ["", "", "", "", "", rnd.epsilon_primes[0]]
            else:
                r = rnd.reports[k - 1]
                tail = [r.rho, r.Y, r.M, r.epsilon, r.delta,
                        rnd.epsilon_primes[k]]
            writer.writerow([i, rnd.T, k, pos.real, pos.imag] + tail)


def write_bench_csv(rows, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(BENCH_CSV_COLUMNS)
    for row in rows:
        writer.writerow(row)


def _plot_points(ax, points, **kwargs):
    xs = [to_builtin(p).real for p in points]
    ys = [to_builtin(p).imag for p in points]
    ax.plot(xs, ys, **kwargs)


def render_trace_figure(log, path: str) -> None:
    fig, (ax_x, ax_y) = plt.subplots(1, 2, figsize=(9, 4.2))
    _plot_points(ax_x, [s.x for s in log.steps], marker=".", lw=0.8,
                 ms=3, color="tab:blue")
    ax_x.set_title("parameter path")
    _plot_points(ax_y, [s.y for s in log.steps], marker=".", lw=0.8,
                 ms=3, color="tab:red")
    ax_y.set_title("tracked value")
    for ax in (ax_x, ax_y):
        ax.set_aspect("equal", adjustable="datalim")
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_system_figure(log, path: str) -> None:
    n_vars = len(log.rounds[0].positions) if log.rounds else 0
    fig, ax = plt.subplots(figsize=(6, 5))
    for k in range(n_vars):
        _plot_points(ax, [r.positions[k] for r in log.rounds],
                     marker=".", lw=0.8, ms=4, label="x%d" % k)
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title("chain variable positions per accepted round")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_loop_figure(log, path: str, reference_points=()) -> None:
    """Parameter loop and tracked closure point in one frame, with
    optional reference vertices (e.g. the base polygon)."""
    fig, ax = plt.subplots(figsize=(6, 6))
    _plot_points(ax, [s.x for s in log.steps], marker=".", lw=0.6, ms=2.5,
                 color="0.55", label="parameter")
    _plot_points(ax, [s.y for s in log.steps], marker=".", lw=0.6, ms=2.5,
                 color="tab:red", label="closure point")
    if reference_points:
        xs = [to_builtin(p).real for p in reference_points]
        ys = [to_builtin(p).imag for p in reference_points]
        ax.plot(xs, ys, "k-o", lw=1.0, ms=4, alpha=0.7, label="base polygon")
    start = to_builtin(log.steps[0].y)
    end = to_builtin(log.steps[-1].y)
    ax.plot([start.real], [start.imag], "g^", ms=9, label="start")
    ax.plot([end.real], [end.imag], "rv", ms=9, label="end")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_bench_figure(rows, path: str, xlabel: str = "m") -> None:
    fig, ax = plt.subplots(figsize=(6, 4.2))
    xs = [row[0] for row in rows]
    ax.plot(xs, [row[1] for row in rows], "o-", label="this tracker")
    ax.plot(xs, [row[2] for row in rows], "s--", label="reference tracker")
    ax.plot(xs, [row[3] for row in rows], "^--", label="bl2013")
    ax.plot(xs, [row[4] for row in rows], "v--", label="hhl2014")
    if max(xs) / max(min(xs), 1) > 50:
        ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("steps")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
