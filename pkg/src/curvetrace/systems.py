"""Synchronized continuation of chains p_k(x_{k-1}, x_k) = 0.

The free variable x_0 moves linearly toward its target.  Each round tries
to reach the remaining distance in one synchronized time step T: walking
up the chain, the certified step bound delta_k for equation k must cover
the (bounded) range epsilon'_{k-1} of the previous variable, otherwise T
is halved and the round restarts.  Accepted rounds re-anchor the whole
chain.  Keeping the chain form instead of eliminating variables avoids
the artificial singularities an eliminant picks up, which can make the
one-curve tracer stall on paths the chain passes with ease.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import CurveBounds, refine_epsilon_alt
from .continuation import ParamPath, TraceOptions, trace_curve
from .errors import (
    AmbiguousMatch,
    AtCriticalPoint,
    CriticalPointOnPath,
    DegenerateInput,
    LeadingCoefficientVanishes,
    NoProgress,
)
from .polynomial import (
    BivariatePolynomial,
    UnivariatePolynomial,
    resultant_y,
    sylvester_det_at,
    _interp_nodes,
    _interp_from_unit_circle,
)
from .rootfinder import min_pairwise_distance
from .scalars import scalar_from_json, scalar_json


@dataclass(frozen=True)
class ChainSystem:
    """equations[k-1] is p_k(x_{k-1}, x_k) with x_{k-1} in the x role and
    x_k in the y role; initial holds x_0(0)..x_n(0); target is x_0(1)."""

    equations: tuple
    initial: tuple
    target: complex
    residual_tol: float = 1e-8

    def __post_init__(self):
        if len(self.equations) < 1:
            raise DegenerateInput("a chain needs at least one equation")
        if len(self.initial) != len(self.equations) + 1:
            raise DegenerateInput(
                "need %d initial values for %d equations"
                % (len(self.equations) + 1, len(self.equations)))
        for k, eq in enumerate(self.equations, start=1):
            resid = float(abs(eq(self.initial[k - 1], self.initial[k])))
            scale = max(1.0, float(abs(self.initial[k])))
            if resid > self.residual_tol * scale:
                raise DegenerateInput(
                    "initial values violate equation %d (|p| = %.3g)"
                    % (k, resid))

    @property
    def n(self) -> int:
        return len(self.equations)

    def to_json_dict(self) -> dict:
        return {
            "equations": [eq.to_json_dict() for eq in self.equations],
            "initial": [scalar_json(v) for v in self.initial],
            "target": scalar_json(self.target),
        }

    @classmethod
    def from_json_dict(cls, data: dict, bits: int = 53) -> "ChainSystem":
        for key in ("equations", "initial", "target"):
            if key not in data:
                raise ValueError("system JSON is missing %r" % key)
        try:
            equations = tuple(
                BivariatePolynomial.from_json_dict(eq, bits)
                for eq in data["equations"])
        except ValueError as exc:
            raise ValueError("equations: %s" % exc) from exc
        initial = tuple(scalar_from_json(v, bits) for v in data["initial"])
        target = scalar_from_json(data["target"], bits)
        return cls(equations=equations, initial=initial, target=target)


@dataclass(frozen=True)
class SystemRound:
    """One accepted synchronized step: the fraction T of the remaining
    homotopy covered, the new positions, and the per-equation reports and
    range bounds (epsilon_primes[0] is the exact x_0 movement)."""

    T: float
    positions: tuple
    reports: tuple
    epsilon_primes: tuple

    def to_json_dict(self) -> dict:
        return {
            "T": self.T,
            "positions": [scalar_json(p) for p in self.positions],
            "epsilon_primes": list(self.epsilon_primes),
            "reports": [{"rho": r.rho, "Y": r.Y, "M": r.M,
                         "epsilon": r.epsilon, "delta": r.delta}
                        for r in self.reports],
        }


@dataclass
class SystemTraceLog:
    rounds: list = field(default_factory=list)
    halvings: int = 0
    outcome: str = "failure"
    failure_reason: str | None = None

    @property
    def step_count(self) -> int:
        return len(self.rounds)

    @property
    def final_positions(self):
        return self.rounds[-1].positions if self.rounds else None

    def to_json_list(self) -> list:
        return [r.to_json_dict() for r in self.rounds]


@dataclass(frozen=True)
class SystemOptions:
    rho_fraction: float = 0.5
    root_tol: float = 1e-12
    epsilon_pad: float | None = None  # None: max(1e-12, 1e-9 * delta_k)
    max_halvings: int = 60  # per round: T < 2**-max_halvings means stuck
    max_rounds: int = 100_000
    single_root_epsilon: float = 1.0
    use_alt_range_estimate: bool = False

    @property
    def min_T(self) -> float:
        return 0.5 ** self.max_halvings


def _pad(opts: SystemOptions, delta_k: float) -> float:
    if opts.epsilon_pad is not None:
        return opts.epsilon_pad
    return max(1e-12, 1e-9 * delta_k)


def trace_system(system: ChainSystem,
                 opts: SystemOptions | None = None) -> SystemTraceLog:
    """Run the synchronized-step chain continuation to x_0 = target."""
    opts = opts or SystemOptions()
    log = SystemTraceLog()
    curves = [CurveBounds(eq, opts.root_tol) for eq in system.equations]
    anchors = list(system.initial)
    target = system.target

    def fail(exc_cls, message, cause=None):
        log.outcome = "failure"
        log.failure_reason = message
        exc = exc_cls(message, log=log)
        if cause is not None:
            raise exc from cause
        raise exc

    while True:
        if len(log.rounds) >= opts.max_rounds:
            fail(NoProgress, "exceeded max_rounds = %d" % opts.max_rounds)
        if anchors[0] == target:
            break
        T = 1.0
        while True:
            # one inner pass over the chain at the current T
            eps_prime = [float(abs(anchors[0] - _lerp(anchors[0], target, T)))]
            positions = [_lerp(anchors[0], target, T)]
            reports = []
            halved = False
            for k in range(1, system.n + 1):
                cb = curves[k - 1]
                try:
                    rs = cb.fiber_at(anchors[k - 1])
                    if len(rs) >= 2:
                        gap = min_pairwise_distance(rs)
                        if gap <= 0.0:
                            raise AtCriticalPoint("coincident fiber roots")
                        eps_k = 0.5 * gap
                    else:
                        eps_k = opts.single_root_epsilon
                    report = cb.report_at(anchors[k - 1], eps_k,
                                          opts.rho_fraction)
                except (AtCriticalPoint, LeadingCoefficientVanishes) as exc:
                    fail(CriticalPointOnPath,
                         "bound evaluation failed at the anchor of "
                         "equation %d: %s" % (k, exc), exc)
                if report.delta < eps_prime[k - 1]:
                    log.halvings += 1
                    T = T / 2.0
                    if T < opts.min_T:
                        fail(NoProgress,
                             "T fell below 2**-%d within one round: a "
                             "singularity lies on or arbitrarily near an "
                             "actual path" % opts.max_halvings)
                    halved = True
                    break
                try:
                    moved_fiber = cb.fiber_at(positions[k - 1])
                except LeadingCoefficientVanishes as exc:
                    fail(CriticalPointOnPath,
                         "leading coefficient of equation %d vanishes at "
                         "the moved point" % k, exc)
                x_k = _nearest(moved_fiber, anchors[k], log, fail)
                positions.append(x_k)
                reports.append(report)
                delta_prime = float(abs(anchors[k - 1] - positions[k - 1]))
                pad = _pad(opts, report.delta)
                if opts.use_alt_range_estimate:
                    dp = min(delta_prime + pad,
                             report.rho * (1.0 - 1e-12))
                    eps_prime.append(refine_epsilon_alt(report, dp))
                else:
                    eps_prime.append((delta_prime + pad) / report.delta
                                     * report.epsilon)
            if halved:
                continue
            log.rounds.append(SystemRound(
                T=T, positions=tuple(positions), reports=tuple(reports),
                epsilon_primes=tuple(eps_prime)))
            anchors = positions
            break
        if T == 1.0:
            break

    log.outcome = "success"
    return log


def _lerp(a, b, t: float):
    return a * (1.0 - t) + b * t


def _nearest(roots, y, log, fail):
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
        fail(AmbiguousMatch,
             "two fiber roots are equidistant from the tracked value")
    return best


def eliminate_middle(p1: BivariatePolynomial, p2: BivariatePolynomial,
                     rel_tol: float = 1e-10) -> BivariatePolynomial:
    """Eliminate the shared middle variable from p1(x0, x1), p2(x1, x2).

    Returns the eliminant q(x0, x2) as a curve with x0 in the x role and
    x2 in the y role, computed by sampling x2, taking the univariate
    resultant in x1 at each sample, and interpolating coefficientwise.
    """
    g = p2.swap_variables()  # now x2 in the x role, x1 in the y role
    if p1.deg_y == 0 or g.deg_y == 0:
        raise DegenerateInput("both equations must involve the middle "
                              "variable")
    deg_x2 = g.deg_x * p1.deg_y
    deg_x0 = p1.deg_x * g.deg_y
    nodes = _interp_nodes(deg_x2 + 1, mp_mode=False)
    sampled = []
    for s in nodes:
        g_s = BivariatePolynomial(
            [UnivariatePolynomial([c(s)]) for c in g.y_coeffs])
        sampled.append(resultant_y(p1, g_s, rel_tol))
    width = max(len(r.coeffs) for r in sampled)
    coeff_rows = []
    for i in range(width):  # power of x0
        values = [r.coeffs[i] if i < len(r.coeffs) else 0j for r in sampled]
        coeff_rows.append(_interp_from_unit_circle(values, mp_mode=False))
    # coeff_rows[i][m] = coefficient of x0^i x2^m; regroup by x2 power
    y_coeffs = []
    for m in range(deg_x2 + 1):
        y_coeffs.append(UnivariatePolynomial(
            [coeff_rows[i][m] for i in range(width)]))
    q = BivariatePolynomial(y_coeffs)

    # off-node consistency check against a direct determinant evaluation
    probe_x0, probe_x2 = 0.83 + 0.41j, 1.07 - 0.29j
    g_probe = BivariatePolynomial(
        [UnivariatePolynomial([c(probe_x2)]) for c in g.y_coeffs])
    direct = sylvester_det_at(p1, g_probe, probe_x0)
    got = q(probe_x0, probe_x2)
    scale = max(abs(direct), q.y_coeffs[0].max_coeff_magnitude(), 1e-300)
    growth = 1.1 ** max(deg_x0 + deg_x2, 1)
    if abs(got - direct) > rel_tol * scale * growth * 1e3:
        raise DegenerateInput("eliminant interpolation failed its "
                              "consistency check")
    return q


@dataclass(frozen=True)
class ComparisonReport:
    """Chain trace vs. one-curve trace of the eliminant, side by side."""

    system_steps: int
    system_endpoint: complex
    resultant_steps: int | None
    resultant_endpoint: complex | None
    resultant_nonterminating: bool

    def to_json_dict(self) -> dict:
        return {
            "system_steps": self.system_steps,
            "system_endpoint": scalar_json(self.system_endpoint),
            "resultant_steps": (
                "NON_TERMINATION" if self.resultant_nonterminating
                else self.resultant_steps),
            "resultant_endpoint": (
                None if self.resultant_endpoint is None
                else scalar_json(self.resultant_endpoint)),
        }


def compare_with_resultant(system: ChainSystem,
                           opts: SystemOptions | None = None,
                           trace_opts: TraceOptions | None = None
                           ) -> ComparisonReport:
    """Run the chain tracer and the eliminant tracer on a 2-equation
    chain and report both accepted-step counts; a stalled eliminant trace
    is reported as non-terminating rather than raised."""
    if system.n != 2:
        raise DegenerateInput("comparison is defined for chains of two "
                              "equations")
    opts = opts or SystemOptions()
    trace_opts = trace_opts or TraceOptions(rho_fraction=opts.rho_fraction)

    sys_log = trace_system(system, opts)
    system_endpoint = sys_log.final_positions[2]

    q = eliminate_middle(system.equations[0], system.equations[1])
    path = ParamPath.segment(system.initial[0], system.target)
    try:
        res_log = trace_curve(q, path, system.initial[2], trace_opts)
        return ComparisonReport(
            system_steps=sys_log.step_count,
            system_endpoint=system_endpoint,
            resultant_steps=res_log.step_count,
            resultant_endpoint=res_log.final_y,
            resultant_nonterminating=False)
    except NoProgress:
        return ComparisonReport(
            system_steps=sys_log.step_count,
            system_endpoint=system_endpoint,
            resultant_steps=None,
            resultant_endpoint=None,
            resultant_nonterminating=True)
