"""Certified branch tracking along a parameter path.

The tracer repeats one move: at the current point, set epsilon to half
the smallest gap in the fiber, evaluate the step bound, then advance as
far as the bound allows (bisecting inside the current monotone window)
and pick the fiber root nearest the tracked value.  Every accepted step
is logged together with the bound report that certified it.

Paths are chains of segments and circular arcs.  Arcs are cut at the
half-turn so that within each resulting window the distance from any
anchor point is monotone along the window, which is what makes the
bisection for the largest admissible step correct.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .bounds import BoundReport, CurveBounds
from .errors import (
    AmbiguousMatch,
    AtCriticalPoint,
    CriticalPointOnPath,
    DegenerateInput,
    LeadingCoefficientVanishes,
    NoProgress,
)
from .polynomial import BivariatePolynomial
from .rootfinder import RootSet, all_roots, min_pairwise_distance
from .scalars import scalar_from_json, scalar_json, to_builtin

#: Continuity tolerance between consecutive path pieces.
PIECE_CONTINUITY_TOL = 1e-12


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    @property
    def length(self) -> float:
        return float(abs(self.end - self.start))

    def point(self, s: float):
        return self.start + (self.end - self.start) * s

    def reversed(self) -> "Segment":
        return Segment(self.end, self.start)

    def monotone_cuts(self) -> list:
        return []

    def to_json_dict(self) -> dict:
        return {"type": "segment", "from": scalar_json(self.start),
                "to": scalar_json(self.end)}


@dataclass(frozen=True)
class Arc:
    """Circular arc; angles in radians, unnormalized so that multi-turn
    sweeps are representable.  orientation is +1 counterclockwise, -1
    clockwise and must match the sign of end_angle - start_angle."""

    center: complex
    radius: float
    start_angle: float
    end_angle: float
    orientation: int = 1

    def __post_init__(self):
        if self.radius <= 0:
            raise DegenerateInput("arc radius must be positive")
        sweep = self.end_angle - self.start_angle
        if sweep == 0:
            raise DegenerateInput("arc sweep must be nonzero")
        if self.orientation not in (-1, 1):
            raise DegenerateInput("orientation must be +1 or -1")
        if sweep * self.orientation <= 0:
            raise DegenerateInput("orientation contradicts the angle sweep")

    @property
    def sweep(self) -> float:
        return self.end_angle - self.start_angle

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def point(self, s: float):
        angle = self.start_angle + self.sweep * s
        return self.center + self.radius * cmath.exp(1j * angle)

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.end_angle,
                   self.start_angle, -self.orientation)

    def monotone_cuts(self) -> list:
        """Local parameters where the arc must be cut so every sub-piece
        sweeps at most a half turn."""
        parts = max(1, math.ceil(abs(self.sweep) / math.pi - 1e-12))
        return [j / parts for j in range(1, parts)]

    def to_json_dict(self) -> dict:
        return {"type": "arc", "center": scalar_json(self.center),
                "radius": self.radius, "start_angle": self.start_angle,
                "end_angle": self.end_angle, "orientation": self.orientation}


def _piece_from_json(data: dict, bits: int = 53):
    kind = data.get("type")
    if kind == "segment":
        return Segment(scalar_from_json(data["from"], bits),
                       scalar_from_json(data["to"], bits))
    if kind == "arc":
        return Arc(scalar_from_json(data["center"], bits),
                   float(data["radius"]), float(data["start_angle"]),
                   float(data["end_angle"]), int(data.get("orientation", 1)))
    raise ValueError("path piece type must be 'segment' or 'arc', got %r"
                     % (kind,))


class ParamPath:
    """Piecewise path for the free parameter, parameterized on [0, 1]
    with speed uniform in arc length."""

    def __init__(self, pieces):
        pieces = list(pieces)
        if not pieces:
            raise DegenerateInput("a path needs at least one piece")
        scale = 1.0
        for prev, nxt in zip(pieces, pieces[1:]):
            gap = abs(to_builtin(prev.point(1.0)) - to_builtin(nxt.point(0.0)))
            scale = max(scale, abs(to_builtin(prev.point(1.0))))
            if gap > PIECE_CONTINUITY_TOL * scale:
                raise DegenerateInput(
                    "path pieces are discontinuous (gap %.3g)" % gap)
        lengths = [p.length for p in pieces]
        total = sum(lengths)
        if total <= 0:
            raise DegenerateInput("path has zero length")
        self.pieces = tuple(pieces)
        self._lengths = lengths
        self.total_length = total
        bounds = [0.0]
        for length in lengths:
            bounds.append(bounds[-1] + length / total)
        bounds[-1] = 1.0
        self._bounds = bounds
        self._window_ends = self._build_windows()

    def _build_windows(self):
        ends = []
        for i, piece in enumerate(self.pieces):
            t0, t1 = self._bounds[i], self._bounds[i + 1]
            for cut in piece.monotone_cuts():
                ends.append(t0 + (t1 - t0) * cut)
            ends.append(t1)
        ends[-1] = 1.0
        return ends

    @classmethod
    def segment(cls, start, end) -> "ParamPath":
        return cls([Segment(start, end)])

    @classmethod
    def circle(cls, center, radius: float, start_angle: float = 0.0,
               turns: float = 1.0, orientation: int = 1) -> "ParamPath":
        end = start_angle + orientation * 2.0 * math.pi * turns
        return cls([Arc(center, radius, start_angle, end, orientation)])

    def point(self, t: float):
        if t <= 0.0:
            return self.pieces[0].point(0.0)
        if t >= 1.0:
            return self.pieces[-1].point(1.0)
        lo, hi = 0, len(self.pieces) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self._bounds[mid + 1] < t:
                lo = mid + 1
            else:
                hi = mid
        t0, t1 = self._bounds[lo], self._bounds[lo + 1]
        return self.pieces[lo].point((t - t0) / (t1 - t0))

    def next_window_end(self, t: float) -> float:
        for end in self._window_ends:
            if end > t + 1e-15:
                return end
        return 1.0

    def reversed(self) -> "ParamPath":
        return ParamPath([p.reversed() for p in reversed(self.pieces)])

    def to_json_list(self) -> list:
        return [p.to_json_dict() for p in self.pieces]

    @classmethod
    def from_json_list(cls, data, bits: int = 53) -> "ParamPath":
        if not isinstance(data, list) or not data:
            raise ValueError("path must be a non-empty list of pieces")
        pieces = []
        for i, item in enumerate(data):
            try:
                pieces.append(_piece_from_json(item, bits))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError("path[%d]: %s" % (i, exc)) from exc
        return cls(pieces)


@dataclass(frozen=True)
class TraceStep:
    """One accepted state: time, position, tracked value, and the bound
    report computed there (None on the terminal record, where no further
    step is certified)."""

    T: float
    x: complex
    y: complex
    report: BoundReport | None

    def to_json_dict(self) -> dict:
        row = {"T": self.T, "x": scalar_json(self.x), "y": scalar_json(self.y)}
        if self.report is not None:
            row.update({"rho": self.report.rho, "Y": self.report.Y,
                        "M": self.report.M, "epsilon": self.report.epsilon,
                        "delta": self.report.delta})
        else:
            row.update({"rho": None, "Y": None, "M": None,
                        "epsilon": None, "delta": None})
        return row


@dataclass
class TraceLog:
    steps: list = field(default_factory=list)
    outcome: str = "failure"
    failure_reason: str | None = None

    @property
    def step_count(self) -> int:
        """Number of accepted transitions (= bound reports evaluated)."""
        return sum(1 for s in self.steps if s.report is not None)

    @property
    def final_y(self):
        return self.steps[-1].y if self.steps else None

    def to_json_list(self) -> list:
        return [s.to_json_dict() for s in self.steps]


@dataclass(frozen=True)
class TraceOptions:
    rho_fraction: float = 0.5
    safety_factor: float = 0.99
    min_step: float = 1e-13
    root_tol: float = 1e-12
    residual_tol: float = 1e-6
    bisect_rel_width: float = 1e-3
    max_steps: int = 1_000_000
    single_root_epsilon: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.rho_fraction < 1.0:
            raise DegenerateInput("rho_fraction must lie in (0, 1)")
        if not 0.0 < self.safety_factor < 1.0:
            raise DegenerateInput("safety_factor must lie in (0, 1)")


def fiber(f: BivariatePolynomial, x, tol: float = 1e-12) -> RootSet:
    """All y with f(x, y) = 0 at a fixed x.

    Raises LeadingCoefficientVanishes when the degree drops at x (a
    branch escapes to infinity there).
    """
    spec = f.specialize_x(x)
    if spec.degree < f.deg_y:
        raise LeadingCoefficientVanishes(
            "leading coefficient vanishes at this point")
    return all_roots(spec, tol)


def _nearest_root(roots: RootSet, y, log: TraceLog):
    best = None
    best_d = math.inf
    second_d = math.inf
    for r in roots:
        d = float(abs(r - y))
        if d < best_d:
            best, best_d, second_d = r, d, best_d
        elif d < second_d:
            second_d = d
    if len(roots) > 1 and second_d - best_d <= 1e-12 * (1.0 + second_d):
        raise AmbiguousMatch(
            "two fiber roots are equidistant (%.3g vs %.3g) from the "
            "tracked value" % (best_d, second_d), log=log)
    return best


def _fail(log: TraceLog, exc_cls, message, cause=None):
    log.outcome = "failure"
    log.failure_reason = message
    exc = exc_cls(message, log=log)
    if cause is not None:
        raise exc from cause
    raise exc


def trace_curve(f: BivariatePolynomial, path: ParamPath, y0,
                opts: TraceOptions | None = None) -> TraceLog:
    """Track the branch through (path(0), y0) to the end of the path.

    Every step obeys the certified bound, so the nearest-root match at
    each accepted point provably stays on the same branch.  Raises
    CriticalPointOnPath when the path runs into (or stalls on) the zero
    set of a0 * discriminant, NoProgress when stepping stalls away from
    it, and AmbiguousMatch on a tied proximity match; the partial log
    rides on the exception.
    """
    opts = opts or TraceOptions()
    log = TraceLog()
    cb = CurveBounds(f, opts.root_tol)

    x0 = path.point(0.0)
    scale = max(1.0, float(abs(y0)))
    if float(abs(f(x0, y0))) > opts.residual_tol * scale:
        raise DegenerateInput(
            "y0 does not satisfy the curve at the path start "
            "(|f| = %.3g)" % float(abs(f(x0, y0))))

    try:
        start_fiber = cb.fiber_at(x0)
    except LeadingCoefficientVanishes as exc:
        _fail(log, CriticalPointOnPath, str(exc), exc)
    y = _nearest_root(start_fiber, y0, log)

    T = 0.0
    while T < 1.0:
        if log.step_count >= opts.max_steps:
            _fail(log, NoProgress,
                  "exceeded max_steps = %d" % opts.max_steps)
        x_t = path.point(T)
        try:
            rs = cb.fiber_at(x_t)
        except LeadingCoefficientVanishes as exc:
            _fail(log, CriticalPointOnPath,
                  "leading coefficient vanishes at T = %.6g" % T, exc)
        if len(rs) >= 2:
            gap = min_pairwise_distance(rs)
            if gap <= 0.0:
                _fail(log, CriticalPointOnPath,
                      "coincident fiber roots at T = %.6g" % T)
            epsilon = 0.5 * gap
        else:
            epsilon = opts.single_root_epsilon
        try:
            report = cb.report_at(x_t, epsilon, opts.rho_fraction)
        except AtCriticalPoint as exc:
            _fail(log, CriticalPointOnPath,
                  "bound evaluation failed at T = %.6g: %s" % (T, exc), exc)

        log.steps.append(TraceStep(T=T, x=x_t, y=y, report=report))

        reach = opts.safety_factor * report.delta
        window_end = path.next_window_end(T)
        if float(abs(path.point(window_end) - x_t)) <= reach:
            t_star = window_end
        else:
            # maximize the step by bisection; resolve it to bisect_rel_width
            # relative accuracy (relative to the step found, not the window,
            # so arbitrarily small feasible steps are still reachable)
            lo, hi = T, window_end
            for _ in range(200):
                if lo > T and hi - lo <= opts.bisect_rel_width * (lo - T):
                    break
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                if float(abs(path.point(mid) - x_t)) <= reach:
                    lo = mid
                else:
                    hi = mid
            t_star = lo

        if t_star - T < opts.min_step:
            dist = cb.critical_distance(x_t)
            if dist <= 1e-6 * (1.0 + float(abs(x_t))):
                _fail(log, CriticalPointOnPath,
                      "step size collapsed at T = %.6g at distance %.3g "
                      "from the critical set" % (T, dist))
            _fail(log, NoProgress,
                  "step size fell below min_step at T = %.6g" % T)

        x_star = path.point(t_star)
        try:
            rs_star = cb.fiber_at(x_star)
        except LeadingCoefficientVanishes as exc:
            _fail(log, CriticalPointOnPath,
                  "leading coefficient vanishes at T = %.6g" % t_star, exc)
        y = _nearest_root(rs_star, y, log)
        T = t_star

    log.steps.append(TraceStep(T=1.0, x=path.point(1.0), y=y, report=None))
    log.outcome = "success"
    return log
