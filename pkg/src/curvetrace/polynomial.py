"""Complex polynomial arithmetic for plane algebraic curves.

Univariate polynomials store coefficients ascending: ``coeffs[k]`` is the
coefficient of the k-th power.  Bivariate polynomials f(x, y) store one
univariate coefficient polynomial in x per power of y, ascending in y, so
``f = sum(y_coeffs[k](x) * y**k)``.

Resultants are computed by evaluation-interpolation: the Sylvester
determinant is evaluated numerically at scaled roots of unity and the
coefficients recovered by an inverse DFT.  The determinant row order puts
the rows built from the first argument on top; the resulting overall sign
is documented behaviour, and every consumer in this package only queries
zero sets, which are sign-insensitive.
"""

from __future__ import annotations

import cmath
import math

import mpmath

from .errors import DegenerateInput, InexactDivision, NotSquareFree
from .scalars import is_mp

#: Relative magnitude below which trailing coefficients are trimmed.
REL_TRIM = 1e-12

#: Relative tolerance on the interpolation residual of a resultant.
RESULTANT_REL_TOL = 1e-10

#: Relative scale (against the Sylvester Hadamard bound) below which a
#: resultant counts as the zero polynomial.
RESULTANT_ZERO_TOL = 1e-10

#: Deterministic angular offset used for interpolation nodes.
NODE_ANGLE_OFFSET = 0.376


def _coerce(coeffs):
    """Normalize a coefficient sequence to one scalar type.

    Any mpmath scalar promotes the whole sequence to mpmath.mpc; otherwise
    everything becomes builtin complex.
    """
    coeffs = list(coeffs)
    if not coeffs:
        coeffs = [0]
    if any(is_mp(c) for c in coeffs):
        return [mpmath.mpc(c) for c in coeffs]
    return [complex(c) for c in coeffs]


def _cexp_i(theta, mp_mode: bool):
    if mp_mode:
        return mpmath.exp(1j * mpmath.mpf(theta))
    return cmath.exp(1j * theta)


class UnivariatePolynomial:
    """Dense univariate polynomial over complex scalars.

    Trailing coefficients with magnitude at most ``rel_trim * max|coeff|``
    are trimmed at construction; the threshold used is recorded in
    ``trim_threshold`` so callers can reason about what counts as a
    structural zero.
    """

    __slots__ = ("coeffs", "trim_threshold")

    def __init__(self, coeffs, rel_trim: float = REL_TRIM):
        coeffs = _coerce(coeffs)
        maxmag = max(abs(c) for c in coeffs)
        threshold = rel_trim * float(maxmag)
        end = len(coeffs)
        while end > 1 and abs(coeffs[end - 1]) <= threshold:
            end -= 1
        coeffs = coeffs[:end]
        if len(coeffs) == 1 and abs(coeffs[0]) <= threshold:
            coeffs = [coeffs[0] * 0]
        self.coeffs = tuple(coeffs)
        self.trim_threshold = threshold

    @classmethod
    def zero(cls) -> "UnivariatePolynomial":
        return cls([0])

    @classmethod
    def constant(cls, value) -> "UnivariatePolynomial":
        return cls([value])

    @classmethod
    def from_roots(cls, roots, lead=1) -> "UnivariatePolynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def lead(self):
        return self.coeffs[-1]

    def __call__(self, x):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnivariatePolynomial":
        if self.degree == 0:
            return UnivariatePolynomial([self.coeffs[0] * 0])
        return UnivariatePolynomial(
            [k * c for k, c in enumerate(self.coeffs)][1:]
        )

    def max_coeff_magnitude(self) -> float:
        return float(max(abs(c) for c in self.coeffs))

    def __neg__(self):
        return UnivariatePolynomial([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [self.coeffs[0] * 0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [other.coeffs[0] * 0] * (n - len(other.coeffs))
        return UnivariatePolynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)) or is_mp(other):
            return UnivariatePolynomial([c * other for c in self.coeffs])
        other = _as_uni(other)
        out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        return "UnivariatePolynomial(%r)" % (list(self.coeffs),)


def _as_uni(p) -> UnivariatePolynomial:
    if isinstance(p, UnivariatePolynomial):
        return p
    if isinstance(p, (int, float, complex)) or is_mp(p):
        return UnivariatePolynomial([p])
    raise TypeError("cannot interpret %r as a polynomial" % (p,))


def divide_exact(num: UnivariatePolynomial, den: UnivariatePolynomial,
                 rel_tol: float = RESULTANT_REL_TOL) -> UnivariatePolynomial:
    """Quotient num/den, requiring the remainder to vanish numerically.

    Raises InexactDivision when the remainder max-norm exceeds
    ``rel_tol * max(|num coeffs|)``.
    """
    if den.is_zero:
        raise DegenerateInput("division by the zero polynomial")
    rem = list(num.coeffs)
    dd = den.degree
    lead = den.lead
    qlen = max(len(rem) - dd, 0)
    quot = [num.coeffs[0] * 0] * max(qlen, 1)
    for i in range(len(rem) - 1, dd - 1, -1):
        q = rem[i] / lead
        quot[i - dd] = q
        if q != 0:
            for j, c in enumerate(den.coeffs):
                rem[i - dd + j] = rem[i - dd + j] - q * c
    rem_norm = max(abs(c) for c in rem[:dd]) if dd else 0.0
    scale = max(num.max_coeff_magnitude(), 1e-300)
    if dd and float(rem_norm) > rel_tol * scale:
        raise InexactDivision(
            "division left a remainder of relative size %.3g" %
            (float(rem_norm) / scale))
    return UnivariatePolynomial(quot)


class BivariatePolynomial:
    """f(x, y) as coefficient polynomials in x per ascending power of y."""

    __slots__ = ("y_coeffs",)

    def __init__(self, y_coeffs):
        polys = [_as_uni(c) for c in y_coeffs]
        if not polys:
            polys = [UnivariatePolynomial.zero()]
        end = len(polys)
        while end > 1 and polys[end - 1].is_zero:
            end -= 1
        self.y_coeffs = tuple(polys[:end])

    @property
    def deg_y(self) -> int:
        return len(self.y_coeffs) - 1

    @property
    def deg_x(self) -> int:
        return max((c.degree for c in self.y_coeffs if not c.is_zero),
                   default=0)

    @property
    def is_zero(self) -> bool:
        return len(self.y_coeffs) == 1 and self.y_coeffs[0].is_zero

    @property
    def leading_y_coefficient(self) -> UnivariatePolynomial:
        """Coefficient polynomial of the highest power of y."""
        return self.y_coeffs[-1]

    def __call__(self, x, y):
        acc = self.y_coeffs[-1](x)
        for c in reversed(self.y_coeffs[:-1]):
            acc = acc * y + c(x)
        return acc

    def partial_x(self) -> "BivariatePolynomial":
        return BivariatePolynomial([c.derivative() for c in self.y_coeffs])

    def partial_y(self) -> "BivariatePolynomial":
        if self.deg_y == 0:
            return BivariatePolynomial([UnivariatePolynomial.zero()])
        return BivariatePolynomial(
            [c * k for k, c in enumerate(self.y_coeffs)][1:]
        )

    def specialize_x(self, x) -> UnivariatePolynomial:
        """The fiber polynomial f(x, .) at a fixed x."""
        return UnivariatePolynomial([c(x) for c in self.y_coeffs])

    def swap_variables(self) -> "BivariatePolynomial":
        """g(x, y) = f(y, x): exchange the roles of the two variables."""
        rows = [list(c.coeffs) for c in self.y_coeffs]
        width = max(len(r) for r in rows)
        zero = rows[0][0] * 0
        new_coeffs = []
        for j in range(width):
            col = [r[j] if j < len(r) else zero for r in rows]
            new_coeffs.append(UnivariatePolynomial(col))
        return BivariatePolynomial(new_coeffs)

    def __neg__(self):
        return BivariatePolynomial([-c for c in self.y_coeffs])

    def __add__(self, other):
        other = _as_biv(other)
        n = max(len(self.y_coeffs), len(other.y_coeffs))
        zero = UnivariatePolynomial.zero()
        a = list(self.y_coeffs) + [zero] * (n - len(self.y_coeffs))
        b = list(other.y_coeffs) + [zero] * (n - len(other.y_coeffs))
        return BivariatePolynomial([p + q for p, q in zip(a, b)])

    def __sub__(self, other):
        return self + (-_as_biv(other))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)) or is_mp(other):
            return BivariatePolynomial([c * other for c in self.y_coeffs])
        other = _as_biv(other)
        zero = UnivariatePolynomial.zero()
        out = [zero] * (len(self.y_coeffs) + len(other.y_coeffs) - 1)
        for i, a in enumerate(self.y_coeffs):
            for j, b in enumerate(other.y_coeffs):
                out[i + j] = out[i + j] + a * b
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def to_json_dict(self) -> dict:
        from .scalars import scalar_json
        return {
            "deg_y": self.deg_y,
            "y_coeffs": [[scalar_json(c) for c in poly.coeffs]
                         for poly in self.y_coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: dict, bits: int = 53) -> "BivariatePolynomial":
        from .scalars import scalar_from_json
        if not isinstance(data, dict) or "y_coeffs" not in data:
            raise ValueError("polynomial JSON must be an object with 'y_coeffs'")
        polys = []
        for k, row in enumerate(data["y_coeffs"]):
            try:
                polys.append(UnivariatePolynomial(
                    [scalar_from_json(pair, bits) for pair in row]))
            except (TypeError, ValueError) as exc:
                raise ValueError("y_coeffs[%d]: %s" % (k, exc)) from exc
        poly = cls(polys)
        if "deg_y" in data and data["deg_y"] != poly.deg_y:
            raise ValueError(
                "deg_y: declared %r but coefficients give %d"
                % (data["deg_y"], poly.deg_y))
        return poly

    def __repr__(self):
        return "BivariatePolynomial(%r)" % (list(self.y_coeffs),)


def _as_biv(p) -> BivariatePolynomial:
    if isinstance(p, BivariatePolynomial):
        return p
    if isinstance(p, UnivariatePolynomial):
        return BivariatePolynomial([p])
    if isinstance(p, (int, float, complex)) or is_mp(p):
        return BivariatePolynomial([UnivariatePolynomial([p])])
    raise TypeError("cannot interpret %r as a bivariate polynomial" % (p,))


def eval_uni(p: UnivariatePolynomial, x):
    """Horner evaluation of a univariate polynomial."""
    return _as_uni(p)(x)


def eval_biv(f: BivariatePolynomial, x, y):
    """Evaluate f(x, y)."""
    return f(x, y)


def partial_x(f: BivariatePolynomial) -> BivariatePolynomial:
    return f.partial_x()


def partial_y(f: BivariatePolynomial) -> BivariatePolynomial:
    return f.partial_y()


def _sylvester_rows(fc, gc):
    """Sylvester matrix (as list of rows) from leading-first value lists."""
    n = len(fc) - 1
    m = len(gc) - 1
    size = n + m
    zero = fc[0] * 0
    rows = []
    for j in range(m):
        rows.append([zero] * j + list(fc) + [zero] * (m - 1 - j))
    for j in range(n):
        rows.append([zero] * j + list(gc) + [zero] * (n - 1 - j))
    return rows


def _det_lu(rows) -> object:
    """Determinant via LU with partial pivoting; generic over scalar type."""
    a = [list(r) for r in rows]
    n = len(a)
    det = a[0][0] * 0 + 1
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) == 0:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor == 0:
                continue
            for c in range(col, n):
                a[r][c] = a[r][c] - factor * a[col][c]
    return det


def sylvester_det_at(f: BivariatePolynomial, g: BivariatePolynomial, x):
    """Res_y(f, g) evaluated at a numeric x via the Sylvester determinant.

    Row sizes follow the structural y-degrees of f and g, so a coefficient
    vanishing at x does not change the matrix shape.
    """
    fc = [c(x) for c in reversed(f.y_coeffs)]
    gc = [c(x) for c in reversed(g.y_coeffs)]
    return _det_lu(_sylvester_rows(fc, gc))


def _sylvester_hadamard_scale(f, g, x) -> float:
    """Product of row 2-norms of the Sylvester matrix at x: a natural
    magnitude scale for the determinant."""
    fc = [c(x) for c in reversed(f.y_coeffs)]
    gc = [c(x) for c in reversed(g.y_coeffs)]
    scale = 1.0
    for row in _sylvester_rows(fc, gc):
        norm = math.sqrt(sum(float(abs(v)) ** 2 for v in row))
        scale *= max(norm, 1e-300)
    return scale


def _interp_nodes(count: int, mp_mode: bool, radius: float = 1.0):
    step = 2.0 * math.pi / count
    return [radius * _cexp_i(step * j + NODE_ANGLE_OFFSET, mp_mode)
            for j in range(count)]


def _interp_from_unit_circle(values, mp_mode: bool, radius: float = 1.0):
    """Recover coefficients from values on the offset circle (inverse DFT)."""
    count = len(values)
    coeffs = []
    for k in range(count):
        acc = values[0] * 0
        for j, v in enumerate(values):
            acc = acc + v * _cexp_i(-2.0 * math.pi * j * k / count, mp_mode)
        acc = acc / count
        acc = acc * _cexp_i(-NODE_ANGLE_OFFSET * k, mp_mode)
        if radius != 1.0:
            acc = acc / (radius ** k)
        coeffs.append(acc)
    return coeffs


def resultant_y(f: BivariatePolynomial, g: BivariatePolynomial,
                rel_tol: float = RESULTANT_REL_TOL) -> UnivariatePolynomial:
    """Res_y(f, g) as a polynomial in x, by evaluation-interpolation.

    The x-degree bound is deg_x(f)*deg_y(g) + deg_x(g)*deg_y(f); the
    Sylvester determinant is sampled at that many + 1 scaled roots of
    unity and interpolated.  An off-node residual check guards against
    interpolation noise.
    """
    f = _as_biv(f)
    g = _as_biv(g)
    if f.deg_y == 0 and g.deg_y == 0:
        raise DegenerateInput("resultant needs at least one argument "
                              "non-constant in y")
    mp_mode = is_mp(f.y_coeffs[0].coeffs[0]) or is_mp(g.y_coeffs[0].coeffs[0])
    bound = f.deg_x * g.deg_y + g.deg_x * f.deg_y
    nodes = _interp_nodes(bound + 1, mp_mode)
    values = [sylvester_det_at(f, g, x) for x in nodes]
    coeffs = _interp_from_unit_circle(values, mp_mode)
    result = UnivariatePolynomial(coeffs)
    check_x = 1.1 * _cexp_i(0.91, mp_mode)
    direct = sylvester_det_at(f, g, check_x)
    scale = max(max(float(abs(v)) for v in values), float(abs(direct)), 1e-300)
    # allow for the |x|^k growth of the degree-`bound` interpolant at 1.1
    growth = 1.1 ** max(bound, 1)
    if float(abs(result(check_x) - direct)) > rel_tol * scale * growth * 1e3:
        raise InexactDivision(
            "resultant interpolation failed its off-node residual check")
    return result


def discriminant_y(f: BivariatePolynomial,
                   rel_tol: float = RESULTANT_REL_TOL,
                   zero_tol: float = RESULTANT_ZERO_TOL) -> UnivariatePolynomial:
    """Discriminant of f w.r.t. y: Res_y(f, f_y) / a0(x).

    Raises NotSquareFree when the resultant is numerically the zero
    polynomial (relative to the Sylvester Hadamard scale), which is the
    signature of a repeated factor.
    """
    f = _as_biv(f)
    if f.deg_y < 1:
        raise DegenerateInput("discriminant needs deg_y >= 1")
    fy = f.partial_y()
    if fy.is_zero:
        raise DegenerateInput("partial_y(f) is zero")
    res = resultant_y(f, fy, rel_tol)
    mp_mode = is_mp(f.y_coeffs[0].coeffs[0])
    scale = _sylvester_hadamard_scale(f, fy, _cexp_i(NODE_ANGLE_OFFSET, mp_mode))
    if res.max_coeff_magnitude() <= zero_tol * max(scale, 1e-300):
        raise NotSquareFree("Res_y(f, f_y) vanishes identically: "
                            "f has a repeated factor")
    return divide_exact(res, f.leading_y_coefficient, rel_tol)
