"""Zero modes ``w(x) = A exp(hbar x/2) + B exp(-hbar x/2)`` of ``w'' = (hbar/2)^2 w``."""

import math
from dataclasses import dataclass

from .errors import PreconditionError, RangeError
from .numerics import sinh_minus_x

# beyond this exponent the direct closed forms overflow a double
_LOG_MAX = 700.0

NAMED_SEEDS = ("planck", "vacuum", "symmetric")


def _safe_exp(log_value, what):
    if log_value > 709.0:
        raise RangeError(f"{what} overflows (log magnitude {log_value:.1f})")
    return math.exp(log_value)


@dataclass(frozen=True)
class ZeroModeSeed:
    """Coefficients of the growing (``A``) and decaying (``B``) branches."""

    A: float
    B: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.A == 0 and self.B == 0:
            raise PreconditionError("zero mode coefficients (A, B) must not both vanish")
        if not self.hbar > 0:
            raise PreconditionError(f"hbar must be positive, got {self.hbar!r}")

    @classmethod
    def planck(cls, hbar=1.0):
        """Antisymmetric mode ``sinh(hbar x/2)``; its log-derivative is the Planck action."""
        return cls(0.5, -0.5, hbar)

    @classmethod
    def vacuum(cls, hbar=1.0):
        """Pure growing mode ``exp(hbar x/2)``; constant action ``hbar/2``."""
        return cls(1.0, 0.0, hbar)

    @classmethod
    def symmetric(cls, hbar=1.0):
        """Symmetric mode ``cosh(hbar x/2)``; Fermi-Dirac action at negative ``x``."""
        return cls(0.5, 0.5, hbar)

    @classmethod
    def named(cls, name, hbar=1.0):
        if name not in NAMED_SEEDS:
            raise PreconditionError(f"unknown seed {name!r}; expected one of {NAMED_SEEDS}")
        return getattr(cls, name)(hbar)

    @classmethod
    def from_json(cls, obj, hbar=None):
        """Accept a seed name or a ``{"A", "B", "hbar"}`` mapping.

        ``hbar``, when given, overrides whatever the object carries.
        """
        if isinstance(obj, str):
            return cls.named(obj, 1.0 if hbar is None else hbar)
        try:
            h = obj.get("hbar", 1.0) if hbar is None else hbar
            return cls(float(obj["A"]), float(obj["B"]), float(h))
        except (KeyError, TypeError, AttributeError) as exc:
            raise PreconditionError(f"invalid seed object {obj!r}") from exc

    def to_json(self):
        return {"A": self.A, "B": self.B, "hbar": self.hbar}

    def scaled(self, c):
        return ZeroModeSeed(c * self.A, c * self.B, self.hbar)

    @property
    def k(self):
        """Half the scale, ``hbar/2``; ``w'' = k**2 w``."""
        return 0.5 * self.hbar

    def branches(self, x):
        """Return ``(den, num)`` with ``w = exp(k|x|) den`` and ``w' = k exp(k|x|) num``.

        Both are O(1) for every finite ``x`` and are formed with ``expm1``
        so the cancellation at a zero of ``w`` is resolved exactly.
        """
        A, B = self.A, self.B
        if x >= 0:
            e = math.expm1(-self.hbar * x)
            return (A + B) + B * e, (A - B) - B * e
        e = math.expm1(self.hbar * x)
        return (A + B) + A * e, (A - B) + A * e

    def log_abs_w(self, x):
        """``ln|w(x)|``, finite for any ``x`` that is not a zero of ``w``."""
        den, _ = self.branches(x)
        return self.k * abs(x) + math.log(abs(den))

    def w(self, x):
        den, _ = self.branches(x)
        if den == 0.0:
            return 0.0
        return math.copysign(_safe_exp(self.k * abs(x) + math.log(abs(den)), "w"), den)

    def w_prime(self, x):
        _, num = self.branches(x)
        if num == 0.0:
            return 0.0
        return self.k * math.copysign(_safe_exp(self.k * abs(x) + math.log(abs(num)), "w'"), num)

    def w_second(self, x):
        return self.k * self.k * self.w(x)

    def i0(self, x):
        """``I0(x) = integral of w(y)^2 from 0 to x`` in closed form.

        Written as ``(A+B)^2 x + (A^2+B^2)(sinh(hx)-hx)/h + (A^2-B^2)(cosh(hx)-1)/h``
        so each piece is free of cancellation near ``x = 0``.
        """
        A, B, h = self.A, self.B, self.hbar
        z = h * x
        if abs(z) > _LOG_MAX:
            raise RangeError(f"I0 overflows at x={x!r}")
        half = math.sinh(0.5 * z)
        return (
            (A + B) ** 2 * x
            + (A * A + B * B) * sinh_minus_x(z) / h
            + (A * A - B * B) * 2.0 * half * half / h
        )

    def i0_scaled(self, x):
        """``I0(x) * exp(-hbar|x|)``, finite for arbitrarily large ``|x|``."""
        A, B, h = self.A, self.B, self.hbar
        z = h * abs(x)
        if z <= _LOG_MAX:
            return self.i0(x) * math.exp(-z)
        t = math.exp(-z)
        sign = 1.0 if x >= 0 else -1.0
        sinh_t = sign * 0.5 * (1.0 - t * t)
        cosh_m1_t = 0.5 * (1.0 + t * t) - t
        return (
            (A + B) ** 2 * x * t
            + (A * A + B * B) * (sinh_t - h * x * t) / h
            + (A * A - B * B) * cosh_m1_t / h
        )
