"""Numerical plumbing shared by the verification paths.

Adaptive Gauss-Legendre quadrature, Richardson-extrapolated central
differences and a bracketing root finder.  Everything here is a pure
function of its arguments.
"""

import heapq
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, EvaluationError, PreconditionError

TOL_ENV_VAR = "DARBOUX_THERMO_TOL"

_EPS = sys.float_info.epsilon
_H1 = _EPS ** (1.0 / 3.0)
_H2 = _EPS ** 0.25

_GL_ORDER = 10
_GL_NODES, _GL_WEIGHTS = (tuple(a) for a in np.polynomial.legendre.leggauss(_GL_ORDER))


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 60

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise PreconditionError("tolerances must be positive")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise PreconditionError("max_subdivisions must be a positive integer")

    @classmethod
    def parse(cls, text):
        """Build a tolerance from ``"1e-12"`` or ``"abs=1e-12,rel=1e-9,max=80"``."""
        text = text.strip()
        try:
            value = float(text)
        except ValueError:
            pass
        else:
            return cls(abs_tol=value, rel_tol=value)
        fields = {}
        keys = {"abs": "abs_tol", "rel": "rel_tol", "max": "max_subdivisions"}
        for part in text.split(","):
            key, sep, val = part.partition("=")
            key = key.strip()
            if not sep or key not in keys:
                raise PreconditionError(f"cannot parse tolerance spec {text!r}")
            field = keys[key]
            fields[field] = int(val) if field == "max_subdivisions" else float(val)
        return cls(**fields)


def default_tolerance():
    """Library default, overridden by the ``DARBOUX_THERMO_TOL`` environment variable."""
    text = os.environ.get(TOL_ENV_VAR)
    if text:
        return Tolerance.parse(text)
    return Tolerance()


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise PreconditionError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")


def _checked(f, x):
    y = f(x)
    if not math.isfinite(y):
        raise EvaluationError(f"non-finite sample f({x!r}) = {y!r}")
    return y


def _gauss(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * math.fsum(w * _checked(f, mid + half * t) for t, w in zip(_GL_NODES, _GL_WEIGHTS))


def _panel(f, a, b, whole):
    m = 0.5 * (a + b)
    left = _gauss(f, a, m)
    right = _gauss(f, m, b)
    refined = left + right
    return refined, abs(refined - whole), left, right


def integrate(f, lo, hi, tol=None):
    """Integrate ``f`` over ``[lo, hi]`` to ``max(abs_tol, rel_tol*|Q|)``.

    Globally adaptive: each panel is estimated by a 10-point Gauss-Legendre
    rule on both halves, the error by comparison with the rule on the whole
    panel, and the worst panel is bisected until the summed error bound
    meets the tolerance.  ``tol.max_subdivisions`` caps the number of
    bisections.  ``hi < lo`` returns the negated integral.
    """
    tol = tol or default_tolerance()
    if hi == lo:
        return 0.0
    if hi < lo:
        return -integrate(f, hi, lo, tol)

    whole = _gauss(f, lo, hi)
    refined, err, left, right = _panel(f, lo, hi, whole)
    # heap entries: (-error, a, b, refined estimate, left half, right half)
    heap = [(-err, lo, hi, refined, left, right)]
    total, total_err = refined, err
    splits = 0
    while total_err > max(tol.abs_tol, tol.rel_tol * abs(total)):
        if splits >= tol.max_subdivisions:
            raise ConvergenceError(
                f"quadrature on [{lo}, {hi}] did not converge after {splits} subdivisions",
                estimate=total,
                error=total_err,
            )
        neg_err, a, b, est, left, right = heapq.heappop(heap)
        m = 0.5 * (a + b)
        children = [_panel(f, a, m, left) + (a, m), _panel(f, m, b, right) + (m, b)]
        for c_est, c_err, c_left, c_right, c_a, c_b in children:
            heapq.heappush(heap, (-c_err, c_a, c_b, c_est, c_left, c_right))
        splits += 1
        total = math.fsum(entry[3] for entry in heap)
        total_err = math.fsum(-entry[0] for entry in heap)
    return total


def _step(x, h):
    # make x +/- h exactly representable so the divisor is the true spacing
    return (x + h) - x


def derivative(f, x, order=1):
    """Central finite-difference derivative of order 1 or 2 at ``x``.

    Step ``cbrt(eps)*max(1,|x|)`` (order 1) or ``eps**0.25*max(1,|x|)``
    (order 2), refined by one Richardson halving.
    """
    scale = max(1.0, abs(x))
    if order == 1:
        def diff(h):
            return (_checked(f, x + h) - _checked(f, x - h)) / (2.0 * h)
        h = _step(x, _H1 * scale)
    elif order == 2:
        fx = _checked(f, x)

        def diff(h):
            return (_checked(f, x + h) - 2.0 * fx + _checked(f, x - h)) / (h * h)
        h = _step(x, _H2 * scale)
    else:
        raise PreconditionError(f"derivative order must be 1 or 2, got {order!r}")
    coarse = diff(h)
    fine = diff(_step(x, 0.5 * h))
    return (4.0 * fine - coarse) / 3.0


def find_root(f, bracket, tol=None, max_iter=200):
    """Root of ``f`` inside ``bracket`` by bisection with secant steps.

    The secant point is taken when it lands strictly inside the current
    bracket; a plain bisection is forced whenever two consecutive steps
    fail to halve the bracket, so convergence is never slower than
    bisection by more than a factor of two.
    """
    tol = tol or default_tolerance()
    lo, hi = bracket.lo, bracket.hi
    f_lo, f_hi = _checked(f, lo), _checked(f, hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise PreconditionError(f"f does not change sign on [{lo}, {hi}]")

    width = hi - lo
    slow_steps = 0
    r = 0.5 * (lo + hi)
    for _ in range(max_iter):
        if slow_steps >= 2:
            r = 0.5 * (lo + hi)
            slow_steps = 0
        else:
            r = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            if not lo < r < hi:
                r = 0.5 * (lo + hi)
        f_r = _checked(f, r)
        if abs(f_r) <= tol.abs_tol:
            return r
        if math.copysign(1.0, f_r) == math.copysign(1.0, f_lo):
            lo, f_lo = r, f_r
        else:
            hi, f_hi = r, f_r
        if hi - lo <= tol.rel_tol * abs(r):
            return r
        slow_steps = slow_steps + 1 if hi - lo > 0.5 * width else 0
        width = hi - lo
    raise ConvergenceError(
        f"root finding on [{bracket.lo}, {bracket.hi}] did not converge",
        estimate=r,
        error=hi - lo,
    )


def sinh_minus_x(z):
    """``sinh(z) - z`` without cancellation for small ``|z|``."""
    if abs(z) >= 0.5:
        return math.sinh(z) - z
    z2 = z * z
    term = z * z2 / 6.0
    total = term
    n = 3
    while abs(term) > _EPS * abs(total) * 0.25:
        term *= z2 / ((n + 1) * (n + 2))
        total += term
        n += 2
    return total
