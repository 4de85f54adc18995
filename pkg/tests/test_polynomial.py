"""Tests for polynomial arithmetic, resultants, and discriminants."""

import numpy as np
import pytest

from curvetrace.errors import DegenerateInput, InexactDivision, NotSquareFree
from curvetrace.polynomial import (
    BivariatePolynomial,
    UnivariatePolynomial,
    discriminant_y,
    divide_exact,
    eval_biv,
    eval_uni,
    partial_x,
    partial_y,
    resultant_y,
    sylvester_det_at,
)

U = UnivariatePolynomial
B = BivariatePolynomial


def coeffs_close(p, q, tol=1e-9):
    n = max(len(p.coeffs), len(q.coeffs))
    a = list(p.coeffs) + [0] * (n - len(p.coeffs))
    b = list(q.coeffs) + [0] * (n - len(q.coeffs))
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def test_eval_uni_quadratic():
    p = U([-1, 0, 1])  # z^2 - 1
    assert eval_uni(p, 2.0 + 0j) == 3.0


def test_eval_uni_zero_poly():
    assert eval_uni(U([0]), 17.3 - 2j) == 0


def test_eval_uni_known_root():
    assert eval_uni(U([-4, 0, 1]), 2.0 + 0j) == 0


def test_eval_biv_circle_point():
    circle = B([U([-1, 0, 1]), U([0]), U([1])])
    assert eval_biv(circle, 0j, 1.0 + 0j) == 0


def test_eval_biv_sqrt_branch():
    f = B([U([0, -1]), U([0]), U([1])])  # y^2 - x
    assert eval_biv(f, 4.0 + 0j, 2.0 + 0j) == 0
    assert eval_biv(f, 4.0 + 0j, 1.0 + 0j) == -3.0


def test_partials_sqrt_curve():
    f = B([U([0, -1]), U([0]), U([1])])
    fx = partial_x(f)
    fy = partial_y(f)
    assert fx.deg_y == 0 and coeffs_close(fx.y_coeffs[0], U([-1]))
    assert fy.deg_y == 1
    assert coeffs_close(fy.y_coeffs[0], U([0]))
    assert coeffs_close(fy.y_coeffs[1], U([2]))


def test_partials_monomial():
    f = B([U([0]), U([0]), U([0]), U([0, 0, 1])])  # x^2 y^3
    fx = partial_x(f)
    assert coeffs_close(fx.y_coeffs[3], U([0, 2]))


def test_partial_of_constant_is_zero():
    f = B([U([5])])
    assert partial_x(f).is_zero
    assert partial_y(f).is_zero


def test_resultant_linear_pair():
    # y - x and y + x: 2x2 Sylvester determinant gives +-2x
    f = B([U([0, -1]), U([1])])
    g = B([U([0, 1]), U([1])])
    res = resultant_y(f, g)
    assert res.degree == 1
    assert abs(res.coeffs[0]) < 1e-12
    assert abs(abs(res.coeffs[1]) - 2.0) < 1e-12


def test_resultant_chain_elimination_closed_form():
    # eliminating the shared variable from the quadratic-cubic chain pair,
    # with the powers of the third variable frozen numerically
    p1 = B([U([-4, 2]), U([1, 2]), U([1])])
    rng = np.random.default_rng(3)
    for _ in range(5):
        x2 = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        g = B([U([x2 ** 3]), U([0]), U([1])])  # x1^2 + x2^3 at frozen x2
        res = resultant_y(p1, g)
        for _ in range(4):
            x0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            expected = (16 - 16 * x0 + 4 * x0 ** 2 + 9 * x2 ** 3
                        + 4 * x0 ** 2 * x2 ** 3 + x2 ** 6)
            assert abs(res(x0) - expected) < 1e-8 * max(1.0, abs(expected))


def test_resultant_of_polynomial_with_itself_vanishes():
    f = B([U([1, 1]), U([2]), U([1])])
    res = resultant_y(f, f)
    assert res.max_coeff_magnitude() < 1e-8


def test_resultant_rejects_two_constants():
    with pytest.raises(DegenerateInput):
        resultant_y(B([U([1])]), B([U([2])]))


def test_resultant_matches_sylvester_at_random_points():
    rng = np.random.default_rng(11)
    for _ in range(6):
        f = B([U(list(rng.standard_normal(3) + 1j * rng.standard_normal(3)))
               for _ in range(int(rng.integers(2, 4)))])
        g = B([U(list(rng.standard_normal(2) + 1j * rng.standard_normal(2)))
               for _ in range(int(rng.integers(2, 4)))])
        if f.deg_y == 0 and g.deg_y == 0:
            continue
        res = resultant_y(f, g)
        for _ in range(20):
            x = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            direct = sylvester_det_at(f, g, x)
            assert abs(res(x) - direct) <= 1e-8 * max(1.0, abs(direct))


def test_discriminant_circle():
    circle = B([U([-1, 0, 1]), U([0]), U([1])])
    disc = discriminant_y(circle)
    # proportional to x^2 - 1: zeros at +-1
    assert disc.degree == 2
    assert abs(disc(1.0 + 0j)) < 1e-10
    assert abs(disc(-1.0 + 0j)) < 1e-10
    assert abs(disc(0j)) > 0.5


def test_discriminant_sqrt_curve():
    f = B([U([0, -1]), U([0]), U([1])])
    disc = discriminant_y(f)
    assert disc.degree == 1
    assert abs(disc(0j)) < 1e-12


def test_discriminant_repeated_factor_raises():
    # (y - x)^2 = y^2 - 2xy + x^2
    f = B([U([0, 0, 1]), U([0, -2]), U([1])])
    with pytest.raises(NotSquareFree):
        discriminant_y(f)


def test_discriminant_zero_iff_fiber_degenerates():
    # f = (y - x)(y + x): repeated fiber root exactly at x = 0
    f = B([U([0, 0, -1]), U([0]), U([1])])
    disc = discriminant_y(f)
    assert abs(disc(0j)) < 1e-10
    for x in (0.5 + 0j, -1.2 + 0.3j, 2j):
        assert abs(disc(x)) > 1e-6


def test_derivative_linearity():
    rng = np.random.default_rng(5)
    for _ in range(10):
        f = B([U(list(rng.standard_normal(3))) for _ in range(3)])
        g = B([U(list(rng.standard_normal(3))) for _ in range(3)])
        lhs = partial_x(f + g)
        rhs = partial_x(f) + partial_x(g)
        assert all(coeffs_close(a, b)
                   for a, b in zip(lhs.y_coeffs, rhs.y_coeffs))


def test_trim_threshold_recorded_and_applied():
    p = U([1.0, 1e-20])
    assert p.degree == 0
    assert p.trim_threshold == pytest.approx(1e-12)


def test_divide_exact_detects_remainder():
    num = U([1, 0, 1])   # x^2 + 1
    den = U([1, 1])      # x + 1, does not divide
    with pytest.raises(InexactDivision):
        divide_exact(num, den)


def test_divide_exact_quotient():
    num = U([-1, 0, 1])  # (x-1)(x+1)
    den = U([1, 1])
    q = divide_exact(num, den)
    assert coeffs_close(q, U([-1, 1]))


def test_swap_variables():
    # f = x^2 y + 3x: swapping gives y^2 x + 3y
    f = B([U([0, 3]), U([0, 0, 1])])
    g = f.swap_variables()
    assert g(1.5 + 0j, 2.0 + 0j) == f(2.0 + 0j, 1.5 + 0j)


def test_json_round_trip():
    f = B([U([1.25, -0.5 + 0.125j]), U([0]), U([3 - 2j])])
    data = f.to_json_dict()
    g = BivariatePolynomial.from_json_dict(data)
    assert g.deg_y == f.deg_y
    for a, b in zip(f.y_coeffs, g.y_coeffs):
        assert coeffs_close(a, b, 0.0)


def test_json_errors_name_the_field():
    with pytest.raises(ValueError, match="y_coeffs"):
        BivariatePolynomial.from_json_dict({"deg_y": 1})
    with pytest.raises(ValueError, match=r"y_coeffs\[0\]"):
        BivariatePolynomial.from_json_dict({"y_coeffs": [["bad"]]})
    with pytest.raises(ValueError, match="deg_y"):
        BivariatePolynomial.from_json_dict(
            {"deg_y": 5, "y_coeffs": [[[1, 0]], [[1, 0]]]})
