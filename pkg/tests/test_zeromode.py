import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux_thermo import ActionEvaluator, Tolerance, ZeroModeSeed, integrate
from darboux_thermo.errors import PreconditionError, RangeError


def test_named_seed_values():
    assert ZeroModeSeed.planck().w(0.0) == 0.0
    assert ZeroModeSeed.vacuum().w(2.0) == pytest.approx(math.e, rel=1e-15)
    assert ZeroModeSeed.symmetric().w(0.0) == 1.0


def test_named_seeds_match_hyperbolic_functions():
    for x in (-3.0, -0.1, 0.7, 5.0):
        assert ZeroModeSeed.planck().w(x) == pytest.approx(math.sinh(x / 2), rel=1e-14)
        assert ZeroModeSeed.symmetric().w(x) == pytest.approx(math.cosh(x / 2), rel=1e-14)
        assert ZeroModeSeed.planck(hbar=2.0).w(x) == pytest.approx(math.sinh(x), rel=1e-14)


def test_w_prime_examples():
    assert ZeroModeSeed.planck().w_prime(0.0) == pytest.approx(0.5, abs=1e-15)
    assert ZeroModeSeed.symmetric().w_prime(0.0) == 0.0


@pytest.mark.parametrize("x", np.linspace(-10, 10, 41))
def test_w_second_is_k_squared_w(seed, x):
    w = seed.w(x)
    assert seed.w_second(x) == pytest.approx(seed.k ** 2 * w, rel=1e-12, abs=1e-300)
    assert seed.w_second(x) - (seed.hbar / 2) ** 2 * w == pytest.approx(0.0, abs=1e-12 * max(1, abs(w)))


def test_i0_examples():
    planck = ZeroModeSeed.planck()
    assert planck.i0(0.0) == 0.0
    assert ZeroModeSeed.vacuum().i0(math.log(2.0)) == pytest.approx(1.0, rel=1e-15)
    expected = float((mpmath.sinh(2) - 2) / 2)
    assert planck.i0(2.0) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.813430, abs=1e-6)


@pytest.mark.parametrize("x", [0.0, 0.25, 1.0, 3.3, 7.0, 10.0])
def test_i0_matches_quadrature_of_w_squared(seed, x):
    tol = Tolerance(abs_tol=1e-13, rel_tol=1e-14, max_subdivisions=200)
    numeric = integrate(lambda y: seed.w(y) ** 2, 0.0, x, tol)
    assert abs(seed.i0(x) - numeric) < 1e-8


@pytest.mark.parametrize("x", [1e-8, 1e-4, 0.01, 0.3, -0.02, -2.0])
def test_i0_small_argument_precision(seed, x):
    A, B, h = (mpmath.mpf(v) for v in (seed.A, seed.B, seed.hbar))
    xm = mpmath.mpf(x)
    exact = A * A * mpmath.expm1(h * xm) / h + 2 * A * B * xm - B * B * mpmath.expm1(-h * xm) / h
    assert seed.i0(x) == pytest.approx(float(exact), rel=1e-13)


def test_i0_negative_x_is_negative(seed):
    for x in (-0.5, -2.0, -8.0):
        assert seed.i0(x) < 0


@settings(max_examples=50, deadline=None)
@given(A=st.floats(0.01, 3), B=st.floats(0.0, 3), x=st.floats(0.0, 10), dx=st.floats(1e-3, 1))
def test_i0_monotone_when_coefficients_share_sign(A, B, x, dx):
    seed = ZeroModeSeed(A, B)
    assert seed.i0(x + dx) > seed.i0(x)


def test_planck_i0_monotone():
    planck = ZeroModeSeed.planck()
    values = [planck.i0(x) for x in np.linspace(0.01, 10, 200)]
    assert all(b > a for a, b in zip(values, values[1:]))


@settings(max_examples=50, deadline=None)
@given(
    A=st.floats(-2, 2), B=st.floats(-2, 2), c=st.floats(0.1, 50), sign=st.sampled_from([-1, 1]),
    x=st.floats(-6, 6),
)
def test_log_derivative_is_scale_invariant(A, B, c, sign, x):
    if abs(A) + abs(B) < 1e-3:
        return
    seed = ZeroModeSeed(A, B)
    scaled = seed.scaled(sign * c)
    try:
        f = ActionEvaluator(seed).f_particular(x)
    except ArithmeticError:
        return
    assert ActionEvaluator(scaled).f_particular(x) == pytest.approx(f, rel=1e-12, abs=1e-12)


def test_seed_json_forms():
    assert ZeroModeSeed.from_json("vacuum") == ZeroModeSeed(1.0, 0.0, 1.0)
    assert ZeroModeSeed.from_json({"A": 2, "B": -1, "hbar": 0.5}) == ZeroModeSeed(2.0, -1.0, 0.5)
    assert ZeroModeSeed.from_json("planck", hbar=3.0).hbar == 3.0
    seed = ZeroModeSeed(0.3, 0.7, 2.0)
    assert ZeroModeSeed.from_json(seed.to_json()) == seed


def test_seed_preconditions():
    with pytest.raises(PreconditionError):
        ZeroModeSeed(0.0, 0.0)
    with pytest.raises(PreconditionError):
        ZeroModeSeed(1.0, 0.0, hbar=0.0)
    with pytest.raises(PreconditionError):
        ZeroModeSeed.named("thermal")
    with pytest.raises(PreconditionError):
        ZeroModeSeed.from_json({"A": 1})


def test_overflow_is_a_range_error_but_logs_stay_finite():
    seed = ZeroModeSeed.vacuum()
    with pytest.raises(RangeError):
        seed.w(2000.0)
    with pytest.raises(RangeError):
        seed.i0(2000.0)
    assert seed.log_abs_w(2000.0) == pytest.approx(1000.0)
    assert seed.w(1400.0) == pytest.approx(math.exp(700.0), rel=1e-12)


def test_scaled_i0_matches_direct_form(seed):
    for x in (-30.0, 0.5, 12.0, 40.0):
        assert seed.i0_scaled(x) == pytest.approx(seed.i0(x) * math.exp(-abs(x)), rel=1e-13)
    big = seed.i0_scaled(900.0)
    assert math.isfinite(big) and big > 0
