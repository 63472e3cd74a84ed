"""Thermodynamics built on an action ``f(x)``, ``x = beta * omega`` (``k_B = 1``)."""

import math
from dataclasses import asdict, dataclass
from typing import Callable, NamedTuple

from .errors import DegenerateCycleError, PreconditionError

_DEGENERATE = 1e-12


@dataclass(frozen=True)
class CarnotConfig:
    """Single-mode oscillator Carnot cycle; defaults are the reference cycle used throughout the tests.

    ``a = beta_hot*omega_1``, ``b = beta_cold*omega_2``,
    ``u = 2c = beta_cold*omega_3``, ``v = beta_hot*omega_4``.
    """

    t_cold: float = 0.25
    t_hot: float = 1.0
    a: float = 1.0
    b: float = 4.0
    v: float = 2.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("t_cold", "t_hot", "a", "b", "v", "c"):
            if not getattr(self, name) > 0:
                raise PreconditionError(f"CarnotConfig.{name} must be positive")

    @property
    def u(self):
        return 2.0 * self.c

    @property
    def carnot_limit(self):
        return 1.0 - self.t_cold / self.t_hot

    def replace(self, **changes):
        return CarnotConfig(**{**asdict(self), **changes})

    @classmethod
    def from_json(cls, obj):
        return cls(**{k: float(v) for k, v in obj.items()})

    def to_json(self):
        return asdict(self)


@dataclass(frozen=True)
class ResistanceModel:
    """Caller-supplied ``R(omega, beta) >= 0``."""

    func: Callable[[float, float], float]
    name: str = "custom"

    @classmethod
    def constant(cls, r0=1.0):
        if r0 < 0:
            raise PreconditionError("resistance must be non-negative")
        return cls(lambda omega, beta: r0, name=f"constant({r0!r})")

    def __call__(self, omega, beta):
        r = self.func(omega, beta)
        if r < 0:
            raise PreconditionError(f"R({omega!r}, {beta!r}) = {r!r} is negative")
        return r


class CarnotResult(NamedTuple):
    eta: float
    valid: bool


def internal_energy(ev, omega, beta):
    """``U = omega * f(beta * omega)``."""
    return omega * ev.f_general(beta * omega)


def entropy_antiderivative(ev, x, constant=0.0):
    """Closed-form ``integral^x f_g``: ``ln|w| - ln|1 + I0/lam|`` (+ ``constant``).

    The ``lam``-dependent term is normalized to vanish as ``lam -> inf``, so
    the result tends pointwise to ``ln|w|``.  At ``lam = 0`` it is ``ln|w/I0|``.
    """
    ev.f_general(x)  # raises on the singular locus and at zeros of w
    value = ev.seed.log_abs_w(x)
    if ev.lam == 0.0:
        value -= math.log(abs(ev.seed.i0(x)))
    elif ev.finite:
        r = ev.seed.i0(x) / ev.lam
        value -= math.log1p(r) if r > -1.0 else math.log(abs(1.0 + r))
    return value + constant


def entropy_two_var(ev, x, y, constant=0.0):
    """``s(x, y) = x f_g(y) - integral^x f_g``; the diagonal is the ordinary entropy."""
    return x * ev.f_general(y) - entropy_antiderivative(ev, x, constant)


def entropy(ev, x, constant=0.0):
    return entropy_two_var(ev, x, x, constant)


def heat_capacity(ev, x):
    """``C = dU/dT`` at fixed ``omega``: ``-x^2 f_g'(x)``."""
    return -x * x * ev.f_general_prime(x)


def carnot_efficiency(ev, cfg, constant=0.0):
    """Efficiency of the oscillator Carnot cycle built on ``ev``.

    ``eta = 1 - (T_cold/T_hot) [s(b,a) - s(u,u)] / [s(a,a) - s(v,u)]``.
    ``valid`` is true when both entropy differences are strictly positive;
    the efficiency is reported unclamped either way.
    """
    s = lambda x, y: entropy_two_var(ev, x, y, constant)  # noqa: E731
    a, b, u, v = cfg.a, cfg.b, cfg.u, cfg.v
    numerator = s(b, a) - s(u, u)
    denominator = s(a, a) - s(v, u)
    if abs(denominator) <= _DEGENERATE:
        raise DegenerateCycleError(f"degenerate cycle: entropy denominator {denominator!r}")
    eta = 1.0 - (cfg.t_cold / cfg.t_hot) * numerator / denominator
    return CarnotResult(eta, numerator > 0 and denominator > 0)


def fdt_spectrum(ev, r, omega, beta):
    """Noise power density ``(omega/pi) R(omega, beta) f_g(beta*omega)``."""
    if not omega > 0:
        raise PreconditionError("omega must be positive")
    resistance = r(omega, beta)
    if resistance == 0:
        return 0.0
    return omega / math.pi * resistance * ev.f_general(beta * omega)
