"""Simultaneous complex root finding via Aberth-Ehrlich iteration.

Initial guesses sit on a circle of radius given by the explicit root
bound in :func:`curvetrace.bounds.fujiwara_bound`, rotated by a fixed
offset so runs are deterministic.  Iteration stops per root when either
the correction drops below the requested tolerance or the residual |p(z)|
reaches the evaluation noise floor of the working arithmetic (which is
the best a backward-error criterion can certify, and what makes clustered
or large-magnitude roots terminate instead of spinning).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LeadingCoefficientVanishes, NoConvergence, SingleRoot
from .polynomial import UnivariatePolynomial
from .scalars import is_mp, unit_roundoff

#: Fixed angular offset of the initial-guess circle (radians).
ABERTH_ANGLE_OFFSET = 0.376

#: Iteration cap of the simultaneous sweep.
ABERTH_MAX_SWEEPS = 200

#: Newton polishing passes applied after the sweep converges.
POLISH_STEPS = 3

#: Safety factor applied to the evaluation noise floor.
NOISE_FLOOR_FACTOR = 4.0


@dataclass(frozen=True)
class RootSet:
    """All roots of one univariate polynomial, with multiplicity.

    residual_bound is the measured max |p(root)| over the returned roots;
    it is recorded, never assumed.
    """

    roots: tuple
    residual_bound: float
    tolerance: float

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def min_pairwise_distance(rs: RootSet) -> float:
    """Minimum distance over distinct index pairs; zero for coincident
    roots (critical fiber, callers must reject)."""
    roots = rs.roots if isinstance(rs, RootSet) else tuple(rs)
    if len(roots) < 2:
        raise SingleRoot("need at least two roots for a pairwise distance")
    best = math.inf
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = float(abs(roots[i] - roots[j]))
            if d < best:
                best = d
    return best


def min_distance_to(rs: RootSet, x1) -> float:
    """Minimum distance from x1 to the roots; +inf for an empty set."""
    roots = rs.roots if isinstance(rs, RootSet) else tuple(rs)
    if not roots:
        return math.inf
    return min(float(abs(x1 - r)) for r in roots)


def _fujiwara_radius(coeffs) -> float:
    """2 * max |c_{n-k}/c_n|^{1/k}; zero only when all lower coeffs are."""
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    best = 0.0
    for k in range(1, n + 1):
        ratio = float(abs(coeffs[n - k])) / float(lead)
        if ratio > 0.0:
            best = max(best, ratio ** (1.0 / k))
    return 2.0 * best


def _noise_floor(abs_coeffs, z_abs, roundoff) -> float:
    acc = 0.0
    p = 1.0
    for a in abs_coeffs:
        acc += a * p
        p *= z_abs
    return NOISE_FLOOR_FACTOR * roundoff * acc


def _aberth_numpy(coeffs, tol):
    """Vectorized Aberth-Ehrlich sweep for binary64 coefficients."""
    n = len(coeffs) - 1
    desc = np.array(list(reversed(coeffs)), dtype=complex)
    ddesc = np.array(
        list(reversed([k * c for k, c in enumerate(coeffs)][1:])),
        dtype=complex)
    abs_asc = np.abs(np.array(coeffs, dtype=complex))
    roundoff = 2.0 ** -52

    radius = max(_fujiwara_radius(coeffs), 1e-30)
    angles = 2.0 * np.pi * np.arange(n) / n + ABERTH_ANGLE_OFFSET
    z = radius * np.exp(1j * angles)

    settled = np.zeros(n, dtype=bool)
    for _ in range(ABERTH_MAX_SWEEPS):
        pv = np.polyval(desc, z)
        dv = np.polyval(ddesc, z)
        powers = np.abs(z)[:, None] ** np.arange(n + 1)[None, :]
        floors = NOISE_FLOOR_FACTOR * roundoff * powers @ abs_asc
        settled |= np.abs(pv) <= floors

        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(dv != 0, pv / np.where(dv == 0, 1, dv), 0.0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - newton * s
        w = np.where(np.abs(denom) > 1e-300, newton / denom, newton)
        # nudge exactly-stuck iterates (coincident guesses, dv == 0)
        stuck = (~settled) & (w == 0) & (np.abs(pv) > floors)
        if stuck.any():
            w = np.where(stuck, 1e-6 * (1 + np.abs(z)), w)
        w = np.where(settled, 0.0, w)
        z = z - w
        if np.all(settled | (np.abs(w) < tol)):
            break
    else:
        raise NoConvergence(
            "Aberth iteration hit the %d-sweep cap" % ABERTH_MAX_SWEEPS,
            iterations=ABERTH_MAX_SWEEPS)

    for _ in range(POLISH_STEPS):
        pv = np.polyval(desc, z)
        dv = np.polyval(ddesc, z)
        ok = np.abs(dv) > 1e-300
        step = np.where(ok, pv / np.where(ok, dv, 1), 0.0)
        znew = z - step
        better = np.abs(np.polyval(desc, znew)) <= np.abs(pv)
        z = np.where(better, znew, z)
    return [complex(v) for v in z]


def _aberth_generic(coeffs, tol):
    """Scalar Aberth-Ehrlich sweep; used for mpmath coefficients."""
    import mpmath

    n = len(coeffs) - 1
    poly = UnivariatePolynomial(coeffs, rel_trim=0.0)
    dpoly = poly.derivative()
    abs_asc = [float(abs(c)) for c in coeffs]
    roundoff = unit_roundoff(coeffs[0])

    radius = max(_fujiwara_radius(coeffs), 1e-30)
    z = [radius * mpmath.exp(1j * (2 * mpmath.pi * k / n + ABERTH_ANGLE_OFFSET))
         for k in range(n)]
    settled = [False] * n
    for _ in range(ABERTH_MAX_SWEEPS):
        corrections = []
        znew = list(z)
        for i in range(n):
            if settled[i]:
                corrections.append(0.0)
                continue
            pv = poly(z[i])
            if float(abs(pv)) <= _noise_floor(abs_asc, float(abs(z[i])),
                                              roundoff):
                settled[i] = True
                corrections.append(0.0)
                continue
            dv = dpoly(z[i])
            if dv == 0:
                znew[i] = z[i] + 1e-6 * (1 + abs(z[i]))
                corrections.append(float(abs(znew[i] - z[i])))
                continue
            newton = pv / dv
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            denom = 1 - newton * s
            w = newton if abs(denom) == 0 else newton / denom
            znew[i] = z[i] - w
            corrections.append(float(abs(w)))
        z = znew
        if all(settled[i] or corrections[i] < tol for i in range(n)):
            break
    else:
        raise NoConvergence(
            "Aberth iteration hit the %d-sweep cap" % ABERTH_MAX_SWEEPS,
            iterations=ABERTH_MAX_SWEEPS)

    for _ in range(POLISH_STEPS):
        for i in range(n):
            dv = dpoly(z[i])
            if abs(dv) == 0:
                continue
            cand = z[i] - poly(z[i]) / dv
            if abs(poly(cand)) <= abs(poly(z[i])):
                z[i] = cand
    return z


def all_roots(p: UnivariatePolynomial, tol: float = 1e-12) -> RootSet:
    """All complex roots of p, simultaneously, to a requested tolerance.

    Structural zero coefficients at the bottom (magnitude at or below the
    polynomial's trim threshold) are deflated as exact zero roots before
    the simultaneous sweep.
    """
    if p.degree < 1:
        raise LeadingCoefficientVanishes(
            "root finding needs degree >= 1 after trimming")
    if abs(p.lead) <= p.trim_threshold:
        raise LeadingCoefficientVanishes("leading coefficient below the "
                                         "trim threshold")
    coeffs = list(p.coeffs)
    zero_count = 0
    while zero_count < p.degree and abs(coeffs[zero_count]) <= p.trim_threshold:
        zero_count += 1
    reduced = coeffs[zero_count:]
    zero = coeffs[0] * 0
    roots = [zero] * zero_count

    d = len(reduced) - 1
    if d == 1:
        roots.append(-reduced[0] / reduced[1])
    elif d > 1:
        if any(is_mp(c) for c in reduced):
            roots.extend(_aberth_generic(reduced, tol))
        else:
            roots.extend(_aberth_numpy(reduced, tol))

    roots.sort(key=lambda r: (float(r.real), float(r.imag)))
    residual = max(float(abs(p(r))) for r in roots)
    return RootSet(roots=tuple(roots), residual_bound=residual, tolerance=tol)
