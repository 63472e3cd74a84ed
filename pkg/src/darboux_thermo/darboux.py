"""One-parameter Darboux deformation of oscillator actions.

Starting from a zero mode ``w`` of ``w'' = V1 w`` (``V1 = (hbar/2)^2``), the
particular action ``f_p = w'/w`` solves ``f' + f^2 = V1``.  The general
solution of the partner equation ``-f' + f^2 = V2`` is

    f_g(x; lam) = f_p(x) - w(x)^2 / (I0(x) + lam),

which tends to ``f_p`` as ``lam -> inf``.  Everything below is evaluated
through the ratio ``q = w^2 / (I0 + lam)`` and its exact derivative
``q' = 2 f_p q - q^2``; no logarithm is ever differenced.
"""

import math
from dataclasses import dataclass, field

from . import numerics
from .errors import DomainError, PreconditionError, SingularityError
from .zeromode import ZeroModeSeed

INF = math.inf

RICCATI_KINDS = ("bosonic", "fermionic", "bosonic-general")
SCHRODINGER_MODES = ("bosonic", "fermionic-particular", "fermionic-general", "bosonic-general")

# switch q to the exp(-hbar|x|)-scaled representation past this exponent
_SCALED_FROM = 600.0


def parse_lambda(value):
    """Accept a real, or the tokens ``inf`` / ``"inf"`` for the undeformed action."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "infinite"):
            return INF
        value = float(text)
    value = float(value)
    if math.isnan(value) or value == -INF:
        raise PreconditionError(f"invalid Darboux parameter {value!r}")
    return value


def format_lambda(lam):
    return "inf" if math.isinf(lam) else repr(lam)


def scaled_residual(*terms):
    """Sum of ``terms`` divided by ``max(1, largest |term|)``.

    A residual of an identity whose individual terms are of size ``M`` is
    only meaningful down to ``M * eps``; this scaling keeps the check
    absolute for O(1) terms and relative for large ones.
    """
    scale = max(1.0, max(abs(t) for t in terms))
    return math.fsum(terms) / scale


def _quotient(g, h):
    """Value and first two derivatives of ``g/h`` from ``(g, g', g'')`` and ``(h, h', h'')``."""
    g0, g1, g2 = g
    h0, h1, h2 = h
    u = g0 / h0
    u1 = (g1 - u * h1) / h0
    u2 = (g2 - 2.0 * u1 * h1 - u * h2) / h0
    return u, u1, u2


@dataclass(frozen=True)
class ActionEvaluator:
    """Immutable evaluator of the actions and potentials for one ``(seed, lam)`` pair.

    ``lam = inf`` gives back the particular action.  ``perturb`` adds a
    constant to ``f_general`` only; it exists to test that the residual
    checks catch a wrong action.
    """

    seed: ZeroModeSeed
    lam: float = INF
    singular_guard: float = None
    perturb: float = 0.0
    _guard: float = field(init=False, repr=False, compare=False)
    _w_guard: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", parse_lambda(self.lam))
        guard = self.singular_guard
        if guard is None:
            # |I0 + lam| is formed with absolute error ~ eps*|lam|
            guard = 1e-12 * (1.0 if math.isinf(self.lam) else max(1.0, abs(self.lam)))
            w_guard = 1e-12
        elif not guard > 0:
            raise PreconditionError("singular_guard must be positive")
        else:
            w_guard = guard
        object.__setattr__(self, "_guard", guard)
        object.__setattr__(self, "_w_guard", w_guard)

    @classmethod
    def from_json(cls, obj):
        """Build from ``{"seed": <name or {A, B, hbar}>, "lambda": real | "inf"}``."""
        try:
            seed = ZeroModeSeed.from_json(obj["seed"])
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"invalid evaluator object {obj!r}") from exc
        return cls(seed, parse_lambda(obj.get("lambda", "inf")))

    def to_json(self):
        return {"seed": self.seed.to_json(), "lambda": format_lambda(self.lam)}

    def with_lambda(self, lam):
        return ActionEvaluator(self.seed, lam, self.singular_guard, self.perturb)

    @property
    def finite(self):
        return not math.isinf(self.lam)

    # -- particular solution -------------------------------------------------

    def _branches(self, x):
        den, num = self.seed.branches(x)
        if den == 0.0 or self.seed.k * abs(x) + math.log(abs(den)) < math.log(self._w_guard):
            raise DomainError(f"zero mode vanishes at x={x!r}", x=x, lam=self.lam)
        return den, num

    def f_particular(self, x):
        """``w'/w``: coth for planck, constant for vacuum, tanh for symmetric."""
        den, num = self._branches(x)
        return self.seed.k * num / den

    def f_particular_prime(self, x):
        # from the Wronskian: (w'/w)' = 4 k^2 A B exp(-hbar|x|) / den^2
        den, _ = self._branches(x)
        s = self.seed
        return 4.0 * s.k * s.k * s.A * s.B * math.exp(-s.hbar * abs(x)) / (den * den)

    # -- deformation ---------------------------------------------------------

    def _ratio(self, x):
        """``q = w^2 / (I0 + lam)``; zero for ``lam = inf``."""
        den, _ = self._branches(x)
        if not self.finite:
            return 0.0
        s = self.seed
        z = s.hbar * abs(x)
        if z <= _SCALED_FROM:
            d = s.i0(x) + self.lam
            if abs(d) <= self._guard:
                raise SingularityError(
                    f"I0(x) + lambda vanishes at x={x!r}, lambda={self.lam!r}", x=x, lam=self.lam
                )
            w = s.w(x)
            return w * w / d
        t = math.exp(-z)
        d = s.i0_scaled(x) + self.lam * t
        if d == 0.0:
            raise SingularityError(f"I0(x) + lambda vanishes at x={x!r}", x=x, lam=self.lam)
        return den * den / d

    def f_general(self, x):
        return self.f_particular(x) - self._ratio(x) + self.perturb

    def f_general_prime(self, x):
        f_p = self.f_particular(x)
        q = self._ratio(x)
        return self.f_particular_prime(x) - 2.0 * f_p * q + q * q

    def potential_v1(self, x):
        self._branches(x)
        return self.seed.k ** 2

    def potential_v2(self, x):
        f_p = self.f_particular(x)
        return -self.f_particular_prime(x) + f_p * f_p

    def potential_v1g(self, x):
        """``V1 - 2 d^2/dx^2 ln(I0 + lam)``, i.e. ``V1 - 2 q'``."""
        f_p = self.f_particular(x)
        q = self._ratio(x)
        return self.potential_v1(x) - 2.0 * (2.0 * f_p * q - q * q)

    def bernoulli_v(self, x):
        """``v = (I0 + lam)/w^2``, the Bernoulli-ansatz function with ``f_g = f_p - 1/v``."""
        if not self.finite:
            raise PreconditionError("bernoulli_v requires a finite lambda")
        q = self._ratio(x)
        if q == 0.0:
            raise DomainError(f"zero mode vanishes at x={x!r}", x=x, lam=self.lam)
        return 1.0 / q

    # -- residuals -----------------------------------------------------------

    def _d(self, f, x, analytic, numeric):
        return numerics.derivative(f, x, 1) if numeric else analytic(x)

    def riccati_residual(self, kind, x, numeric=False):
        """Scaled residual of one of the three Riccati identities.

        ``bosonic``: ``f_p' + f_p^2 - V1``; ``fermionic``: ``-f_g' + f_g^2 - V2``;
        ``bosonic-general``: ``f_g' + f_g^2 - V1g``.  With ``numeric=True`` the
        derivative of the action is taken by finite differences instead.
        """
        if kind == "bosonic":
            f = self.f_particular(x)
            df = self._d(self.f_particular, x, self.f_particular_prime, numeric)
            return scaled_residual(df, f * f, -self.potential_v1(x))
        if kind == "fermionic":
            f = self.f_general(x)
            df = self._d(self.f_general, x, self.f_general_prime, numeric)
            return scaled_residual(-df, f * f, -self.potential_v2(x))
        if kind == "bosonic-general":
            f = self.f_general(x)
            df = self._d(self.f_general, x, self.f_general_prime, numeric)
            return scaled_residual(df, f * f, -self.potential_v1g(x))
        raise PreconditionError(f"unknown Riccati kind {kind!r}; expected one of {RICCATI_KINDS}")

    def _zero_mode_jets(self, x):
        s = self.seed
        self._branches(x)
        w, w1, w2 = s.w(x), s.w_prime(x), s.w_second(x)
        if self.finite:
            d = s.i0(x) + self.lam
            if abs(d) <= self._guard:
                raise SingularityError(
                    f"I0(x) + lambda vanishes at x={x!r}, lambda={self.lam!r}", x=x, lam=self.lam
                )
            i0_jet = (d, w * w, 2.0 * w * w1)
        else:
            i0_jet = None
        return (w, w1, w2), i0_jet

    def zero_mode(self, which, x):
        """``(u, u', u'')`` for one of the four zero modes, from closed forms.

        ``bosonic``: ``w``; ``fermionic-particular``: ``1/w``;
        ``fermionic-general``: ``(I0 + lam)/w``; ``bosonic-general``:
        ``w/(I0 + lam)``.  At ``lam = inf`` the general modes are replaced by
        their finite rescaled limits ``1/w`` and ``w``.
        """
        w_jet, i0_jet = self._zero_mode_jets(x)
        if which == "bosonic" or (which == "bosonic-general" and i0_jet is None):
            return w_jet
        if which == "fermionic-particular" or (which == "fermionic-general" and i0_jet is None):
            return _quotient((1.0, 0.0, 0.0), w_jet)
        if which == "fermionic-general":
            return _quotient(i0_jet, w_jet)
        if which == "bosonic-general":
            return _quotient(w_jet, i0_jet)
        raise PreconditionError(
            f"unknown zero mode {which!r}; expected one of {SCHRODINGER_MODES}"
        )

    def schrodinger_residual(self, which, x, numeric=False):
        """Scaled residual ``u'' - V u`` of a zero-mode equation.

        The potential paired with each mode: ``V1`` for ``bosonic``, ``V2``
        for both fermionic modes, ``V1g`` for ``bosonic-general``.
        """
        u, _, u2 = self.zero_mode(which, x)
        if numeric:
            u2 = numerics.derivative(lambda y: self.zero_mode(which, y)[0], x, 2)
        if which == "bosonic":
            v = self.potential_v1(x)
        elif which == "bosonic-general":
            v = self.potential_v1g(x)
        else:
            v = self.potential_v2(x)
        return scaled_residual(u2, -v * u)

    def bernoulli_residual(self, x, numeric=False):
        """Scaled residual of ``v' + 2 v f_p = 1``."""
        if not self.finite:
            raise PreconditionError("bernoulli_residual requires a finite lambda")
        w_jet, i0_jet = self._zero_mode_jets(x)
        w, w1, w2 = w_jet
        w_sq_jet = (w * w, 2.0 * w * w1, 2.0 * (w1 * w1 + w * w2))
        v, dv, _ = _quotient(i0_jet, w_sq_jet)
        if numeric:
            dv = numerics.derivative(self.bernoulli_v, x, 1)
        return scaled_residual(dv, 2.0 * v * self.f_particular(x), -1.0)


def f_particular(seed, x):
    return ActionEvaluator(seed).f_particular(x)


def f_thermal(hbar, x):
    """Pure thermal action ``hbar / (exp(hbar x) - 1)``."""
    z = hbar * x
    if z == 0.0:
        raise SingularityError("thermal action is singular at x=0", x=x)
    if z > 700.0:
        return hbar * math.exp(-z)
    return hbar / math.expm1(z)


def f_thermal_prime(hbar, x):
    z = hbar * x
    if z == 0.0:
        raise SingularityError("thermal action is singular at x=0", x=x)
    if z > 700.0:
        return -hbar * hbar * math.exp(-z)
    return -hbar * hbar / (math.expm1(z) * -math.expm1(-z))


def bernoulli_thermal_residual(hbar, x):
    """Scaled residual of ``f_T' + hbar f_T + f_T^2 = 0``."""
    f = f_thermal(hbar, x)
    return scaled_residual(f_thermal_prime(hbar, x), hbar * f, f * f)


def singularity_locus(seed, x):
    """The ``lam`` at which ``f_general`` blows up at ``x``: ``-I0(x)``."""
    return -seed.i0(x)
