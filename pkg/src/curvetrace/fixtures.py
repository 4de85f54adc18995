"""Benchmark fixtures: curves, chains, and published comparison columns.

The bl2013 / hhl2014 columns are quoted from the published benchmark
tables of Beltran & Leykin, "Robust certified numerical homotopy
tracking" (Found. Comput. Math. 13, 2013) and Hauenstein, Haywood &
Liddell, "An a posteriori certification algorithm for Newton homotopies"
(ISSAC 2014), for the quadratic Newton homotopy H(x, t) = x^2 - 1 - m
+ m t.  The alg1 column is the step count reported for the epsilon-delta
tracker in the same setting.  These are fixture data; this package never
recomputes other authors' algorithms.
"""

from __future__ import annotations

import math

from .polynomial import BivariatePolynomial, UnivariatePolynomial
from .continuation import ParamPath
from .systems import ChainSystem

#: rows: (m, alg1 steps, bl2013 a-priori steps, hhl2014 certified intervals)
NEWTON_TABLE_M = (
    (10, 9, 184, 51),
    (20, 12, 217, 67),
    (30, 14, 237, 78),
    (40, 16, 250, 82),
    (50, 17, 260, 88),
    (60, 18, 269, 92),
    (70, 19, 276, 96),
    (80, 20, 282, 99),
    (90, 21, 288, 103),
    (100, 21, 292, 105),
    (1000, 41, 395, 162),
    (2000, 49, 426, 180),
    (3000, 54, 446, 191),
    (4000, 58, 457, 197),
    (5000, 62, 468, 204),
    (10000, 73, 499, 220),
    (20000, 87, 530, 238),
    (30000, 96, 547, 250),
)

#: rows: (k, alg1 steps, bl2013 steps, hhl2014 intervals), for m = -1 + 10^-k
NEWTON_TABLE_K = (
    (1, 5, 176, 64),
    (2, 9, 287, 68),
    (3, 14, 390, 70),
    (4, 18, 492, 71),
    (5, 22, 593, 71),
    (6, 27, 695, 71),
    (7, 31, 798, 71),
    (8, 36, 901, 71),
    (9, 40, 1003, 71),
    (10, 44, 1108, 71),
)


def newton_homotopy_curve(m: float) -> BivariatePolynomial:
    """H(x, t) = x^2 - 1 - m + m t as a curve with t in the x role and x
    in the y role; tracing t from 1 to 0 continues x from 1 toward
    sqrt(1 + m)."""
    return BivariatePolynomial([
        UnivariatePolynomial([-1.0 - m, m]),
        UnivariatePolynomial([0.0]),
        UnivariatePolynomial([1.0]),
    ])


def newton_homotopy_path() -> ParamPath:
    return ParamPath.segment(1.0 + 0j, 0j)


def newton_homotopy_endpoint(m: float) -> float:
    return math.sqrt(1.0 + m)


def _cubic_chain_second() -> BivariatePolynomial:
    # x1^2 + x2^3, with x1 in the x role and x2 in the y role
    return BivariatePolynomial([
        UnivariatePolynomial([0.0, 0.0, 1.0]),
        UnivariatePolynomial([0.0]),
        UnivariatePolynomial([0.0]),
        UnivariatePolynomial([1.0]),
    ])


def example2_system() -> ChainSystem:
    """Quadratic-cubic chain whose eliminant picks up an artificial
    critical point at x0 = -1/2 (off the traced segment, so the eliminant
    trace terminates, just less efficiently than the chain trace)."""
    s17 = math.sqrt(17.0)
    p1 = BivariatePolynomial([
        UnivariatePolynomial([-4.0, 2.0]),
        UnivariatePolynomial([1.0, 2.0]),
        UnivariatePolynomial([1.0]),
    ])
    x1_0 = (-1.0 - s17) / 2.0
    x2_0 = -((9.0 + s17) / 2.0) ** (1.0 / 3.0)
    return ChainSystem(equations=(p1, _cubic_chain_second()),
                       initial=(0j, complex(x1_0), complex(x2_0)),
                       target=1.0 + 0j)


def example2_variant_system() -> ChainSystem:
    """Same chain with the sign of the cross term of the first equation
    flipped, which moves the eliminant's artificial critical point onto
    the traced segment (x0 = 1/2): the eliminant trace stalls there while
    the chain trace passes."""
    s17 = math.sqrt(17.0)
    p1 = BivariatePolynomial([
        UnivariatePolynomial([-4.0, 2.0]),
        UnivariatePolynomial([1.0, -2.0]),
        UnivariatePolynomial([1.0]),
    ])
    x1_0 = (-1.0 - s17) / 2.0
    x2_0 = -((9.0 + s17) / 2.0) ** (1.0 / 3.0)
    return ChainSystem(equations=(p1, _cubic_chain_second()),
                       initial=(0j, complex(x1_0), complex(x2_0)),
                       target=1.0 + 0j)


def example2_expected_endpoints() -> tuple:
    s17 = math.sqrt(17.0)
    x1 = (-3.0 - s17) / 2.0
    x2 = -((13.0 + 3.0 * s17) / 2.0) ** (1.0 / 3.0)
    return complex(x1), complex(x2)


def linear_control_system() -> ChainSystem:
    """Two gentle linear equations with a short homotopy; both the chain
    trace and the eliminant trace finish in a single step."""
    p1 = BivariatePolynomial([UnivariatePolynomial([-1.0, -0.1]),
                              UnivariatePolynomial([1.0])])
    p2 = BivariatePolynomial([UnivariatePolynomial([-1.0, -0.1]),
                              UnivariatePolynomial([1.0])])
    return ChainSystem(equations=(p1, p2),
                       initial=(0j, 1.0 + 0j, 1.1 + 0j),
                       target=0.1 + 0j)


NAMED_SYSTEMS = {
    "example2": example2_system,
    "example2-variant": example2_variant_system,
    "linear": linear_control_system,
}
