"""Computable step bounds for branch tracking on plane algebraic curves.

Given a curve f(x, y) = 0 and a regular point x1 (leading coefficient and
y-discriminant both nonzero there), `compute_delta` produces a radius
delta such that every local branch y_j(x) moves by less than a requested
epsilon whenever x moves by less than delta.  The ingredients are

* rho  - a safe fraction of the distance from x1 to the zero set of
         a0(x) * disc_y(f)(x), inside which all branches are analytic,
* Y    - the maximum branch slope |f_x / f_y| over the fiber at x1,
* M    - an explicit bound on branch magnitudes on the rho-circle, built
         from coefficient bounds and the 2*max|a_k/a_0|^(1/k) root radius.

delta is the positive root of (M - rho*Y) d^2 + rho (rho*Y + eps) d
- eps*rho^2, written in the rationalized form 2*eps*rho / (sqrt((rho*Y -
eps)^2 + 4*eps*M) + rho*Y + eps) which is cancellation-free and covers
both signs of M - rho*Y; the degenerate M == rho*Y case reduces to
eps*rho / (rho*Y + eps), which the rationalized form reproduces exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AtCriticalPoint,
    CriticalFiber,
    DegenerateInput,
    LeadingCoefficientVanishes,
    RootInsideCircle,
)
from .polynomial import BivariatePolynomial, UnivariatePolynomial, discriminant_y
from .rootfinder import RootSet, all_roots, _fujiwara_radius
from .scalars import real_kth_root, unit_roundoff

#: |M - rho*Y| below this relative threshold switches to the degenerate
#: formula (the two agree to machine precision there anyway).
DEGENERATE_BRANCH_TOL = 1e-9

#: Relative distance to the critical set below which x1 counts as on it.
CRITICAL_DISTANCE_TOL = 1e-11

#: delta is clamped strictly below rho by this relative margin.
RHO_CLAMP = 1e-9


def fujiwara_bound(p: UnivariatePolynomial) -> float:
    """Explicit radius 2*max|a_k/a_0|^(1/k) containing all roots of p.

    Ratios index from the leading coefficient downward; the bound is
    strict (every root lies strictly inside).
    """
    if p.degree < 1:
        raise LeadingCoefficientVanishes("root bound needs degree >= 1")
    if abs(p.lead) <= p.trim_threshold:
        raise LeadingCoefficientVanishes("leading coefficient vanishes")
    return _fujiwara_radius(p.coeffs)


def coeff_bounds_on_circle(a: UnivariatePolynomial, x1, rho: float,
                           want_lower: bool, root_tol: float = 1e-12) -> float:
    """Bound |a| on the circle |x - x1| = rho.

    Upper: triangle inequality, sum |c_j| (|x1| + rho)^j.
    Lower: |lead| * prod(|root - x1| - rho) over the roots of a; valid and
    strictly positive only when every root is farther than rho from x1,
    otherwise RootInsideCircle is raised.
    """
    if rho <= 0:
        raise DegenerateInput("circle radius must be positive")
    if not want_lower:
        base = float(abs(x1)) + rho
        total = 0.0
        for j, c in enumerate(a.coeffs):
            total += float(abs(c)) * base ** j
        return total
    if a.is_zero:
        raise DegenerateInput("lower bound of the zero polynomial")
    if a.degree == 0:
        return float(abs(a.coeffs[0]))
    roots = all_roots(a, root_tol)
    lower = float(abs(a.lead))
    for r in roots:
        dist = float(abs(r - x1)) - rho
        if dist <= 0:
            raise RootInsideCircle(
                "coefficient root at distance %.3g <= rho = %.3g"
                % (float(abs(r - x1)), rho))
        lower *= dist
    return lower


def derivative_bound_Y(f: BivariatePolynomial, x1, fiber: RootSet) -> float:
    """max_j |f_x(x1, y_j) / f_y(x1, y_j)| over the fiber points.

    The denominator is trusted only above a floor tied to the fiber's
    root residual: near a critical fiber the computed f_y value is
    dominated by the root error and the quotient is meaningless.
    """
    fx = f.partial_x().specialize_x(x1)
    fy = f.partial_y().specialize_x(x1)
    fyy = f.partial_y().partial_y().specialize_x(x1)
    roundoff = unit_roundoff(x1)

    best = 0.0
    for y in fiber:
        mag = float(abs(y))
        f_scale = _eval_magnitude(f.specialize_x(x1), mag)
        fyy_scale = _eval_magnitude(fyy, mag)
        fy_scale = _eval_magnitude(fy, mag)
        residual_eff = max(fiber.residual_bound, roundoff * f_scale)
        floor = max(1e3 * math.sqrt(residual_eff * fyy_scale),
                    10.0 * roundoff * fy_scale,
                    1e-300)
        denom = float(abs(fy(y)))
        if denom <= floor:
            raise CriticalFiber(
                "|f_y| = %.3g at a fiber point is below the trust floor %.3g"
                % (denom, floor))
        best = max(best, float(abs(fx(y))) / denom)
    return best


def _eval_magnitude(p: UnivariatePolynomial, arg_mag: float) -> float:
    total = 0.0
    power = 1.0
    for c in p.coeffs:
        total += float(abs(c)) * power
        power *= arg_mag
    return total


def delta_formula(rho: float, Y: float, M: float, epsilon: float) -> float:
    """The certified input radius as a function of its four ingredients.

    Strictly increasing in epsilon and rho, strictly decreasing in M and
    Y; continuous across M == rho*Y.
    """
    ry = rho * Y
    if abs(M - ry) <= DEGENERATE_BRANCH_TOL * max(M, ry, 1.0):
        return epsilon * rho / (ry + epsilon)
    disc = (ry - epsilon) ** 2 + 4.0 * epsilon * M
    return 2.0 * epsilon * rho / (math.sqrt(disc) + ry + epsilon)


@dataclass(frozen=True)
class BoundReport:
    """One full evaluation of the step-bound machinery at a point.

    coeff_upper holds the circle upper bounds for the coefficient
    polynomials of y^(n-1), ..., y^0 (leading coefficient excluded);
    coeff_lower is the circle lower bound for the leading coefficient.
    """

    rho: float
    Y: float
    M: float
    epsilon: float
    delta: float
    coeff_upper: tuple
    coeff_lower: float
    fiber: RootSet

    def __post_init__(self):
        if not (self.delta > 0.0):
            raise AtCriticalPoint("step bound collapsed to zero")
        if not (self.delta < self.rho):
            raise AtCriticalPoint("step bound reached the analyticity radius")

    def to_json_dict(self) -> dict:
        from .scalars import scalar_json
        return {
            "rho": self.rho,
            "Y": self.Y,
            "M": self.M,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "coeff_upper": list(self.coeff_upper),
            "coeff_lower": self.coeff_lower,
            "fiber": {
                "roots": [scalar_json(r) for r in self.fiber.roots],
                "residual_bound": self.fiber.residual_bound,
                "tolerance": self.fiber.tolerance,
            },
        }


class CurveBounds:
    """Per-curve cache of the critical set and coefficient data.

    The zero set of a0 * disc_y(f) does not depend on the expansion
    point, so a trace computes it once and reuses it for every step.
    """

    def __init__(self, f: BivariatePolynomial, root_tol: float = 1e-12):
        if f.deg_y < 1:
            raise DegenerateInput("curves must have deg_y >= 1")
        self.f = f
        self.f_x = f.partial_x()
        self.f_y = f.partial_y()
        self.a0 = f.leading_y_coefficient
        self.root_tol = root_tol
        self.disc = discriminant_y(f)
        crit = []
        for poly in (self.a0, self.disc):
            if poly.degree >= 1:
                crit.extend(all_roots(poly, root_tol).roots)
        self.critical_roots = tuple(crit)

    def critical_distance(self, x1) -> float:
        if not self.critical_roots:
            return math.inf
        return min(float(abs(x1 - r)) for r in self.critical_roots)

    def fiber_at(self, x1, tol: float | None = None) -> RootSet:
        tol = self.root_tol if tol is None else tol
        spec = self.f.specialize_x(x1)
        if spec.degree < self.f.deg_y:
            raise LeadingCoefficientVanishes(
                "leading coefficient vanishes at this point: a branch "
                "escapes to infinity")
        return all_roots(spec, tol)

    def report_at(self, x1, epsilon: float,
                  rho_fraction: float = 0.5) -> BoundReport:
        """Evaluate the full bound at x1 for the requested epsilon."""
        if epsilon <= 0:
            raise DegenerateInput("epsilon must be positive")
        if not 0.0 < rho_fraction < 1.0:
            raise DegenerateInput("rho_fraction must lie in (0, 1)")
        dist = self.critical_distance(x1)
        if dist <= CRITICAL_DISTANCE_TOL * max(1.0, float(abs(x1))):
            raise AtCriticalPoint(
                "x1 is at distance %.3g from the zero set of "
                "a0 * discriminant" % dist)
        if math.isinf(dist):
            # curve has no critical points at all; any radius is analytic,
            # pick one on the scale of the expansion point
            rho = rho_fraction * max(1.0, 2.0 * float(abs(x1)))
        else:
            rho = rho_fraction * dist

        try:
            fiber = self.fiber_at(x1)
            Y = derivative_bound_Y(self.f, x1, fiber)
        except (LeadingCoefficientVanishes, CriticalFiber) as exc:
            raise AtCriticalPoint(str(exc)) from exc

        n = self.f.deg_y
        uppers = []
        for k in range(1, n + 1):
            uppers.append(coeff_bounds_on_circle(
                self.f.y_coeffs[n - k], x1, rho, want_lower=False))
        lower = coeff_bounds_on_circle(self.a0, x1, rho, want_lower=True,
                                       root_tol=self.root_tol)
        m_val = 0.0
        for k, upper in enumerate(uppers, start=1):
            if upper > 0.0:
                m_val = max(m_val, float(real_kth_root(upper / lower, k)))
        M = 2.0 * m_val

        delta = delta_formula(rho, Y, M, epsilon)
        delta = min(delta, rho * (1.0 - RHO_CLAMP))
        return BoundReport(rho=rho, Y=Y, M=M, epsilon=epsilon, delta=delta,
                           coeff_upper=tuple(uppers), coeff_lower=lower,
                           fiber=fiber)


def compute_delta(f: BivariatePolynomial, x1, epsilon: float,
                  rho_fraction: float = 0.5,
                  root_tol: float = 1e-12) -> BoundReport:
    """One-shot bound evaluation; see CurveBounds for the cached variant."""
    return CurveBounds(f, root_tol).report_at(x1, epsilon, rho_fraction)


def refine_epsilon(report: BoundReport, delta_prime: float) -> float:
    """Sharper range bound for a movement of delta_prime <= delta: the
    branch displacement scales at most linearly, (delta'/delta)*epsilon."""
    if not 0.0 <= delta_prime <= report.delta:
        raise DegenerateInput("delta_prime must lie in [0, delta]")
    return delta_prime / report.delta * report.epsilon


def refine_epsilon_alt(report: BoundReport, delta_prime: float) -> float:
    """Alternative range bound delta' * (Y + M*delta'/(rho*(rho-delta'))),
    valid for any movement below the analyticity radius rho."""
    if not 0.0 <= delta_prime < report.rho:
        raise DegenerateInput("delta_prime must lie in [0, rho)")
    if delta_prime == 0.0:
        return 0.0
    return delta_prime * (report.Y + report.M * delta_prime /
                          (report.rho * (report.rho - delta_prime)))
