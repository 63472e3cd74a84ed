import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux_thermo import numerics
from darboux_thermo.errors import ConvergenceError, EvaluationError, PreconditionError
from darboux_thermo.numerics import Bracket, Tolerance, derivative, find_root, integrate


def test_integrate_constant():
    assert integrate(lambda y: 0.5, 0.0, 2.0) == pytest.approx(1.0, abs=1e-14)


def test_integrate_planck_mode_square():
    expected = (math.sinh(1.0) - 1.0) / 2.0
    assert integrate(lambda y: math.sinh(y / 2) ** 2, 0.0, 1.0) == pytest.approx(expected, abs=1e-12)


def test_integrate_exponential():
    assert integrate(math.exp, 0.0, math.log(2.0)) == pytest.approx(1.0, abs=1e-12)


def test_integrate_reversed_and_empty():
    assert integrate(math.exp, 1.0, 1.0) == 0.0
    assert integrate(math.exp, 1.0, 0.0) == pytest.approx(1.0 - math.e, abs=1e-12)


def test_integrate_reports_last_estimate_on_failure():
    tol = Tolerance(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=2)
    with pytest.raises(ConvergenceError) as info:
        integrate(math.sqrt, 0.0, 1.0, tol)
    assert info.value.estimate == pytest.approx(2.0 / 3.0, abs=1e-3)
    assert info.value.error > 0


def test_integrate_rejects_non_finite_samples():
    with pytest.raises(EvaluationError):
        integrate(lambda y: math.inf if y > 0.3 else 1.0, 0.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(
    amp=st.floats(-3, 3),
    rate=st.floats(-2, 2),
    freq=st.floats(0, 3),
    a=st.floats(-2, 2),
    gaps=st.tuples(st.floats(0.01, 2), st.floats(0.01, 2)),
)
def test_integrate_is_additive(amp, rate, freq, a, gaps):
    def f(y):
        return amp * math.exp(rate * y) + math.sin(freq * y)

    b, c = a + gaps[0], a + gaps[0] + gaps[1]
    tol = Tolerance()
    whole = integrate(f, a, c, tol)
    parts = integrate(f, a, b, tol) + integrate(f, b, c, tol)
    bound = 2 * 3 * max(tol.abs_tol, tol.rel_tol * abs(whole))
    assert abs(whole - parts) <= bound


def test_derivative_polynomial():
    assert derivative(lambda x: x * x, 3.0, 1) == pytest.approx(6.0, abs=1e-8)
    assert derivative(lambda x: x * x, 3.0, 2) == pytest.approx(2.0, abs=1e-6)


def test_derivative_of_coth_form():
    expected = float(-mpmath.csch(1) ** 2 / 4)
    got = derivative(lambda x: 0.5 / math.tanh(x / 2), 2.0, 1)
    assert got == pytest.approx(expected, abs=1e-9)
    assert expected == pytest.approx(-0.1810154152, abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(x=st.floats(0.1, 10.0), which=st.sampled_from(["exp", "sinh", "coth"]))
def test_derivative_matches_analytic(x, which):
    f, df = {
        "exp": (math.exp, math.exp),
        "sinh": (math.sinh, math.cosh),
        # the Planck action form; bare coth is too flat near x=10 for 1e-6 relative
        "coth": (lambda t: 0.5 / math.tanh(t / 2), lambda t: -0.25 / math.sinh(t / 2) ** 2),
    }[which]
    assert derivative(f, x, 1) == pytest.approx(df(x), rel=1e-6)


def test_derivative_errors():
    with pytest.raises(EvaluationError):
        derivative(lambda x: math.inf, 1.0)
    with pytest.raises(PreconditionError):
        derivative(math.exp, 1.0, order=3)


def test_find_root_examples():
    assert find_root(lambda x: x - 1.0, Bracket(0.0, 2.0)) == pytest.approx(1.0, abs=1e-10)
    assert find_root(lambda x: math.exp(x) - 2.0, Bracket(0.0, 1.0)) == pytest.approx(
        math.log(2.0), abs=1e-10
    )


def test_find_root_planck_i0_level():
    def f(x):
        return (x - math.sinh(x)) / 2 + 1.0

    # brute-force scan for the sign change, then plain bisection
    xs = [1.0 + 3.0 * i / 30000 for i in range(30001)]
    lo = next(a for a, b in zip(xs, xs[1:]) if f(a) > 0 >= f(b))
    hi = lo + 1e-4
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if f(mid) > 0 else (lo, mid)
    root = find_root(f, Bracket(1.0, 4.0))
    assert root == pytest.approx(lo, abs=1e-9)
    assert abs(f(root)) <= 1e-10


def test_find_root_rejects_bad_brackets():
    with pytest.raises(PreconditionError):
        Bracket(1.0, 1.0)
    with pytest.raises(PreconditionError):
        find_root(lambda x: x * x + 1, Bracket(-1.0, 1.0))


@settings(max_examples=60, deadline=None)
@given(root=st.floats(-5, 5), scale=st.floats(0.1, 10), cubic=st.booleans())
def test_find_root_residual_within_abs_tol(root, scale, cubic):
    def f(x):
        d = x - root
        return scale * (d + d ** 3 if cubic else math.expm1(d))

    tol = Tolerance()
    r = find_root(f, Bracket(root - 3.0, root + 2.5), tol)
    assert abs(f(r)) <= tol.abs_tol or abs(r - root) <= tol.rel_tol * abs(r) * 10


def test_tolerance_defaults_and_parsing(monkeypatch):
    assert Tolerance() == Tolerance(1e-10, 1e-10, 60)
    assert Tolerance.parse("1e-12") == Tolerance(1e-12, 1e-12)
    assert Tolerance.parse("abs=1e-8,max=80") == Tolerance(abs_tol=1e-8, max_subdivisions=80)
    with pytest.raises(PreconditionError):
        Tolerance.parse("tight")
    with pytest.raises(PreconditionError):
        Tolerance(abs_tol=0.0)
    monkeypatch.setenv(numerics.TOL_ENV_VAR, "rel=1e-6")
    assert numerics.default_tolerance() == Tolerance(rel_tol=1e-6)


@pytest.mark.parametrize("z", [1e-9, 1e-4, 0.01, 0.3, 0.49, 0.5, 2.0, -0.2, -3.0])
def test_sinh_minus_x_is_accurate(z):
    exact = mpmath.sinh(z) - z
    assert numerics.sinh_minus_x(z) == pytest.approx(float(exact), rel=1e-14)
