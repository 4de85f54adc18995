"""Cross-ratio constructions on the complex projective line.

Vertex chains, their cross-ratio transforms, and the closure condition:
for a chain gamma and parameter mu, the transform step from one vertex to
the next is a Moebius map, the full traversal composes to a single map
whose entries are polynomials in mu, and the transform closes up exactly
when the initial point is a fixed point of that composition.  The
vanishing of the fixed-point quadratic ties mu and the initial point
together as a plane algebraic curve, which plugs straight into the
certified tracer.

All arithmetic is homogeneous (no divisions) until a final
dehomogenization, so the point at infinity needs no special casing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .continuation import ParamPath, TraceLog, TraceOptions, trace_curve
from .errors import DegenerateInput, DegenerateQuadruple
from .polynomial import BivariatePolynomial, UnivariatePolynomial
from .scalars import csqrt, is_mp

#: Relative tolerance for projective coincidence tests.
POINT_TOL = 1e-12

#: Encoding of an infinite cross-ratio value.
CROSS_RATIO_INF = complex(math.inf, 0.0)


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous pair (z : w), not both zero."""

    z: complex
    w: complex

    def __post_init__(self):
        if abs(self.z) == 0 and abs(self.w) == 0:
            raise DegenerateInput("(0 : 0) is not a projective point")

    @classmethod
    def from_complex(cls, value) -> "ProjectivePoint":
        if isinstance(value, ProjectivePoint):
            return value
        if isinstance(value, float) and math.isinf(value):
            return cls.infinity()
        if isinstance(value, complex) and (math.isinf(value.real)
                                           or math.isinf(value.imag)):
            return cls.infinity()
        return cls(value if is_mp(value) else complex(value),
                   value * 0 + 1)

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(1.0 + 0j, 0.0 + 0j)

    @property
    def is_infinite(self) -> bool:
        return float(abs(self.w)) <= POINT_TOL * float(abs(self.z))

    def to_complex(self):
        if self.is_infinite:
            return CROSS_RATIO_INF
        return self.z / self.w

    def norm(self) -> float:
        return math.hypot(float(abs(self.z)), float(abs(self.w)))


def _cross(p: ProjectivePoint, q: ProjectivePoint):
    return p.z * q.w - q.z * p.w


def chordal_distance(p, q) -> float:
    """Scale-free distance |z1 w2 - z2 w1| / (|p| |q|), at most 1."""
    p = ProjectivePoint.from_complex(p)
    q = ProjectivePoint.from_complex(q)
    return float(abs(_cross(p, q))) / (p.norm() * q.norm())


def same_point(p, q, tol: float = POINT_TOL) -> bool:
    return chordal_distance(p, q) <= tol


def cross_ratio(a, b, c, d):
    """Cross-ratio (a, b; c, d) computed with homogeneous determinants.

    Equals ((a - c)(b - d)) / ((a - d)(b - c)) for finite inputs; an
    infinite value is returned as the inf sentinel rather than raised.
    """
    a, b, c, d = (ProjectivePoint.from_complex(v) for v in (a, b, c, d))
    scale_num = a.norm() * c.norm() * b.norm() * d.norm()
    scale_den = a.norm() * d.norm() * b.norm() * c.norm()
    num = _cross(a, c) * _cross(b, d)
    den = _cross(a, d) * _cross(b, c)
    num_small = float(abs(num)) <= POINT_TOL * scale_num
    den_small = float(abs(den)) <= POINT_TOL * scale_den
    if den_small:
        if num_small:
            raise DegenerateQuadruple(
                "cross-ratio is indeterminate for this quadruple")
        return CROSS_RATIO_INF
    return num / den


@dataclass(frozen=True)
class MoebiusMap:
    """x -> (a x + b) / (c x + d) as the 2x2 matrix [[a, b], [c, d]].

    Maps arising as parameter-family limits may be degenerate
    (ad - bc == 0, a projectively constant map); operations that need
    invertibility check ``is_degenerate`` and raise.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def _scale(self) -> float:
        return max(float(abs(v)) for v in (self.a, self.b, self.c, self.d))

    @property
    def is_degenerate(self) -> bool:
        return float(abs(self.det)) <= POINT_TOL * self._scale() ** 2

    def apply_raw(self, p: ProjectivePoint):
        """Homogeneous image as a raw pair (may be the null pair when the
        map is degenerate and p spans its kernel)."""
        p = ProjectivePoint.from_complex(p)
        return (self.a * p.z + self.b * p.w, self.c * p.z + self.d * p.w)

    def apply(self, p) -> ProjectivePoint:
        p = ProjectivePoint.from_complex(p)
        z, w = self.apply_raw(p)
        if max(float(abs(z)), float(abs(w))) <= \
                POINT_TOL * self._scale() * p.norm():
            raise DegenerateQuadruple(
                "point maps to the null pair under a degenerate map")
        return ProjectivePoint(z, w)

    def __call__(self, x):
        return self.apply(x).to_complex()

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self after other (matrix product self @ other)."""
        return MoebiusMap(
            a=self.a * other.a + self.b * other.c,
            b=self.a * other.b + self.b * other.d,
            c=self.c * other.a + self.d * other.c,
            d=self.c * other.b + self.d * other.d)

    def inverse(self) -> "MoebiusMap":
        """Projective inverse (the adjugate; no division by the
        determinant, so it stays usable for very small determinants)."""
        if self.det == 0:
            raise DegenerateInput("degenerate map has no inverse")
        return MoebiusMap(a=self.d, b=-self.b, c=-self.c, d=self.a)

    def derivative_magnitude(self, p) -> float:
        """|M'| at p in the chart where p is best conditioned; this is the
        fixed-point multiplier magnitude when p is (near) a fixed point,
        and is invariant under rescaling the matrix."""
        p = ProjectivePoint.from_complex(p)
        det_mag = float(abs(self.det))
        if float(abs(p.z)) <= float(abs(p.w)):
            x0 = p.z / p.w
            denom = float(abs(self.c * x0 + self.d))
        else:
            u0 = p.w / p.z
            denom = float(abs(self.a + self.b * u0))
        if denom == 0.0:
            return math.inf
        return det_mag / denom ** 2


@dataclass(frozen=True)
class MoebiusPencil:
    """A Moebius matrix whose entries are polynomials in one parameter."""

    a: UnivariatePolynomial
    b: UnivariatePolynomial
    c: UnivariatePolynomial
    d: UnivariatePolynomial

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det.is_zero:
            raise DegenerateInput("pencil determinant vanishes identically")

    def at(self, mu) -> MoebiusMap:
        return MoebiusMap(a=self.a(mu), b=self.b(mu),
                          c=self.c(mu), d=self.d(mu))

    def compose(self, other: "MoebiusPencil") -> "MoebiusPencil":
        return MoebiusPencil(
            a=self.a * other.a + self.b * other.c,
            b=self.a * other.b + self.b * other.d,
            c=self.c * other.a + self.d * other.c,
            d=self.c * other.b + self.d * other.d)


@dataclass(frozen=True)
class DiscreteCurve:
    """Polygonal chain of projective points.

    Inputs to the transform machinery must be regular (consecutive
    vertices distinct); transform outputs may legitimately degenerate
    (e.g. the whole chain collapsing at the identity parameter), so
    construction does not enforce regularity - the consuming operations
    check it.
    """

    vertices: tuple

    @classmethod
    def from_complex(cls, values) -> "DiscreteCurve":
        return cls(tuple(ProjectivePoint.from_complex(v) for v in values))

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_regular(self) -> bool:
        return all(not same_point(p, q)
                   for p, q in zip(self.vertices, self.vertices[1:]))

    @property
    def is_closed(self) -> bool:
        return same_point(self.vertices[0], self.vertices[-1])

    def reversed(self) -> "DiscreteCurve":
        return DiscreteCurve(tuple(reversed(self.vertices)))


def _require_regular(gamma: DiscreteCurve):
    if gamma.n_edges < 1:
        raise DegenerateInput("need at least one edge")
    if not gamma.is_regular:
        raise DegenerateQuadruple("consecutive vertices must be distinct")


def darboux_step(a, b, mu) -> MoebiusMap:
    """The Moebius map sending d to the point c with (a, b; c, d) = mu.

    Fixes a and b for every mu.  In affine coordinates it is
    d -> ((mu*b - a) d - (mu - 1) a b) / ((mu - 1) d + b - mu*a); the
    matrix below is its homogeneous form, valid when a or b is infinite.
    """
    a = ProjectivePoint.from_complex(a)
    b = ProjectivePoint.from_complex(b)
    if same_point(a, b):
        raise DegenerateQuadruple("step endpoints must be distinct")
    return MoebiusMap(
        a=mu * b.z * a.w - a.z * b.w,
        b=-(mu - 1) * a.z * b.z,
        c=(mu - 1) * a.w * b.w,
        d=a.w * b.z - mu * a.z * b.w)


def _edge_pencil(a: ProjectivePoint, b: ProjectivePoint) -> MoebiusPencil:
    """darboux_step with the parameter left symbolic (degree <= 1)."""
    return MoebiusPencil(
        a=UnivariatePolynomial([-a.z * b.w, b.z * a.w]),
        b=UnivariatePolynomial([a.z * b.z, -a.z * b.z]),
        c=UnivariatePolynomial([-a.w * b.w, a.w * b.w]),
        d=UnivariatePolynomial([a.w * b.z, -a.z * b.w]))


def darboux_pencil(gamma: DiscreteCurve) -> MoebiusPencil:
    """Composition of all edge steps with the parameter symbolic; entry
    degrees grow at most linearly with the number of edges."""
    _require_regular(gamma)
    v = gamma.vertices
    pencil = _edge_pencil(v[0], v[1])
    for j in range(2, len(v)):
        pencil = _edge_pencil(v[j - 1], v[j]).compose(pencil)
    return pencil


def closure_curve(gamma: DiscreteCurve) -> BivariatePolynomial:
    """The closure condition as a plane curve in (mu, initial point).

    A transform with initial point x closes up iff x is a fixed point of
    the accumulated map, i.e. c(mu) x^2 + (d(mu) - a(mu)) x - b(mu) = 0.
    The returned curve has mu in the x role and the initial point in the
    y role.
    """
    pencil = darboux_pencil(gamma)
    return BivariatePolynomial([
        -1 * pencil.b,
        pencil.d - pencil.a,
        pencil.c,
    ])


def fixed_points(m: MoebiusMap):
    """Both fixed points of a map, as projective points.

    Parabolic maps return a coincident pair; the identity map is rejected
    (every point is fixed).  Long compositions can have determinants many
    orders below their entry scale; the fixed-point quadratic does not
    involve the determinant, so such maps are handled as is.
    """
    A, B, C = m.c, m.d - m.a, -m.b
    scale = m._scale()
    a_small = float(abs(A)) <= POINT_TOL * scale
    b_small = float(abs(B)) <= POINT_TOL * scale
    c_small = float(abs(C)) <= POINT_TOL * scale
    if a_small and b_small and c_small:
        raise DegenerateInput("identity map: every point is fixed")
    if a_small:
        inf = ProjectivePoint.infinity()
        if b_small:
            return (inf, inf)
        return (inf, ProjectivePoint(-C, B))
    if c_small:
        return (ProjectivePoint(0j, 1.0 + 0j), ProjectivePoint(-B, A))
    sq = csqrt(B * B - 4.0 * A * C)
    # pick the sign that avoids cancellation in B + sq
    if abs(B + sq) < abs(B - sq):
        sq = -sq
    q = -(B + sq) / 2.0
    return (ProjectivePoint(q, A), ProjectivePoint(C, q))


def _successor_vertex(gamma: DiscreteCurve, edge_index: int) -> ProjectivePoint:
    """Vertex after the end of the given edge, wrapping on closed chains."""
    v = gamma.vertices
    end = edge_index + 1
    if end + 1 <= len(v) - 1:
        return v[end + 1]
    if gamma.is_closed:
        return v[1]
    raise DegenerateQuadruple(
        "degenerate step at the last edge of an open chain")


def _walk(gamma: DiscreteCurve, g0: ProjectivePoint, mu) -> list:
    """Apply the edge maps in order, resolving the parameter-degenerate
    null image (input on the kernel at mu == 0) by continuity: the
    transform advances one vertex along the chain."""
    v = gamma.vertices
    out = [g0]
    current = g0
    for j in range(1, len(v)):
        step = darboux_step(v[j - 1], v[j], mu)
        z, w = step.apply_raw(current)
        if max(float(abs(z)), float(abs(w))) <= \
                POINT_TOL * step._scale() * current.norm():
            current = _successor_vertex(gamma, j - 1)
        else:
            current = ProjectivePoint(z, w)
        out.append(current)
    return out


def transform_vertices(gamma: DiscreteCurve, g0, mu,
                       stable: bool = False) -> DiscreteCurve:
    """Vertices of the cross-ratio transform with initial point g0.

    With stable=True and g0 near a repelling fixed point of the
    accumulated map (multiplier magnitude above 1), the vertices are
    computed through the reversed chain - the inverse composition, for
    which the same fixed point is attracting - and re-reversed, which
    keeps round-off from being amplified step by step.
    """
    _require_regular(gamma)
    g0 = ProjectivePoint.from_complex(g0)
    if stable:
        total = darboux_pencil(gamma).at(mu)
        multiplier = total.derivative_magnitude(g0)
        if multiplier > 1.0:
            rev = gamma.reversed()
            walked = _walk(rev, g0, mu)
            return DiscreteCurve(tuple(reversed(walked)))
    return DiscreteCurve(tuple(_walk(gamma, g0, mu)))


def pentagon_curve() -> DiscreteCurve:
    """Closed five-vertex chain on the unit circle (fifth roots of unity,
    first vertex repeated to close the chain)."""
    return DiscreteCurve.from_complex(
        [cmath.exp(2j * math.pi * j / 5) for j in range(6)])


#: Parameter value where the two closure branches of the pentagon collide.
PENTAGON_RAMIFICATION = (3.0 + math.sqrt(5.0)) / 8.0


def pentagon_loop_path(turns: int = 1) -> ParamPath:
    """Circle through the origin around the pentagon branch point, center
    nudged outward by 1/1000, traversed counterclockwise from 0."""
    center = PENTAGON_RAMIFICATION / 2.0 + 1e-3
    return ParamPath.circle(center=complex(center, 0.0), radius=center,
                            start_angle=math.pi, turns=turns, orientation=1)


def run_pentagon_experiment(turns: int = 1,
                            opts: TraceOptions | None = None) -> TraceLog:
    """Drive the pentagon closure curve around its branch point.

    Starting from the closure point exp(2*pi*i/5) at parameter 0, one
    full counterclockwise turn lands on the other closure branch
    exp(-2*pi*i/5); a second turn returns to the start.
    """
    f = closure_curve(pentagon_curve())
    path = pentagon_loop_path(turns)
    y0 = cmath.exp(2j * math.pi / 5)
    return trace_curve(f, path, y0, opts)
