"""Scalar plumbing: one code path over binary64 complex and mpmath.mpc.

All numeric kernels in this package are written against plain arithmetic
(+, -, *, /, abs, **) so they run unchanged on Python ``complex`` and on
``mpmath.mpc``.  The helpers here cover the few places where the two types
need different treatment (square roots, unit roundoff, conversion).
"""

from __future__ import annotations

import cmath
import math

import mpmath

#: Union of the scalar types accepted throughout the package.
Scalar = object

DOUBLE_BITS = 53


def is_mp(z) -> bool:
    """True when z is an mpmath scalar (mpf or mpc)."""
    return isinstance(z, (mpmath.mpf, mpmath.mpc))


def cabs(z) -> float:
    """abs() that always returns something float-comparable."""
    return abs(z)


def csqrt(z):
    """Complex square root preserving the scalar type of z."""
    if is_mp(z):
        return mpmath.sqrt(z)
    return cmath.sqrt(complex(z))


def rsqrt(x):
    """Real nonnegative square root preserving mp/float type."""
    if is_mp(x):
        return mpmath.sqrt(x)
    return math.sqrt(x)


def real_kth_root(x, k: int):
    """Real positive k-th root of a nonnegative real."""
    if x == 0:
        return x * 0
    if is_mp(x):
        return mpmath.root(x, k)
    return math.pow(x, 1.0 / k)


def unit_roundoff(sample) -> float:
    """Unit roundoff of the arithmetic the sample scalar lives in."""
    if is_mp(sample):
        return float(mpmath.mpf(2) ** (1 - mpmath.mp.prec))
    return 2.0 ** (1 - DOUBLE_BITS)


def make_scalar(re, im=0.0, bits: int = DOUBLE_BITS):
    """Build a scalar of the requested precision from real/imag parts.

    Parts may be floats or decimal strings; strings are parsed at full
    target precision so round-trips through JSON do not lose digits.
    """
    if bits <= DOUBLE_BITS:
        return complex(float(re), float(im))
    with mpmath.workprec(bits):
        return mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im))


def convert_scalar(z, bits: int = DOUBLE_BITS):
    """Convert an existing scalar to the requested precision."""
    if bits <= DOUBLE_BITS:
        return to_builtin(z)
    with mpmath.workprec(bits):
        return mpmath.mpc(z)


def to_builtin(z) -> complex:
    """Lossy conversion to binary64 complex (plots, summaries)."""
    if is_mp(z):
        return complex(float(mpmath.re(z)), float(mpmath.im(z)))
    return complex(z)


def scalar_json(z):
    """[re, im] pair for JSON.

    binary64 scalars serialize as JSON numbers.  mpmath scalars serialize
    as decimal strings carrying the full working precision (bit-exactness
    is not promised, full-precision round-trip is).
    """
    if is_mp(z):
        dps = mpmath.mp.dps + 5
        return [mpmath.nstr(mpmath.re(z), dps), mpmath.nstr(mpmath.im(z), dps)]
    z = complex(z)
    return [z.real, z.imag]


def scalar_from_json(pair, bits: int = DOUBLE_BITS):
    """Inverse of scalar_json; accepts numbers or decimal strings."""
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError("expected a [re, im] pair, got %r" % (pair,))
    return make_scalar(pair[0], pair[1], bits)
