"""Identity and limit checks run by ``darboux-thermo verify``."""

import math

import numpy as np

from . import thermo
from .darboux import (
    RICCATI_KINDS,
    SCHRODINGER_MODES,
    ActionEvaluator,
    bernoulli_thermal_residual,
    singularity_locus,
)
from .errors import DarbouxThermoError
from .zeromode import NAMED_SEEDS, ZeroModeSeed

IDENTITY_LAMBDAS = (0.3, 1.0, 10.0, 1e6)
ANALYTIC_THRESHOLD = 1e-9
BERNOULLI_THRESHOLD = 1e-10
NUMERIC_THRESHOLD = 1e-5


def identity_grid(n=50, lo=0.05, hi=20.0):
    return [float(x) for x in np.geomspace(lo, hi, n)]


def _max_abs(values):
    return max((abs(v) for v in values), default=0.0)


def _evaluators(hbar, perturb):
    for name in NAMED_SEEDS:
        seed = ZeroModeSeed.named(name, hbar)
        for lam in IDENTITY_LAMBDAS:
            yield ActionEvaluator(seed, lam, perturb=perturb)


def _sweep(evaluators, xs, fn):
    """Evaluate ``fn(ev, x)`` everywhere, skipping points on a singular locus."""
    out = []
    for ev in evaluators:
        for x in xs:
            try:
                out.append(fn(ev, x))
            except DarbouxThermoError:
                continue
    return out


def lambda_limit_sup(seed, lam, xs):
    ev = ActionEvaluator(seed, lam)
    return max(abs(ev.f_general(x) - ev.f_particular(x)) for x in xs)


def run_checks(hbar=1.0, perturb=0.0):
    """Return ``{name: {"max_residual", "threshold", "pass"}}`` for the full suite."""
    xs = identity_grid()
    evs = list(_evaluators(hbar, perturb))
    checks = {}

    def record(name, value, threshold):
        checks[name] = {
            "max_residual": value,
            "threshold": threshold,
            "pass": bool(value < threshold),
        }

    for kind in RICCATI_KINDS:
        key = kind.replace("-", "_")
        res = _sweep(evs, xs, lambda ev, x: ev.riccati_residual(kind, x))
        record(f"riccati_{key}", _max_abs(res), ANALYTIC_THRESHOLD)
        res = _sweep(evs, xs, lambda ev, x: ev.riccati_residual(kind, x, numeric=True))
        record(f"riccati_{key}_finite_difference", _max_abs(res), NUMERIC_THRESHOLD)

    for mode in SCHRODINGER_MODES:
        key = mode.replace("-", "_")
        res = _sweep(evs, xs, lambda ev, x: ev.schrodinger_residual(mode, x))
        record(f"schrodinger_{key}", _max_abs(res), ANALYTIC_THRESHOLD)
        res = _sweep(evs, xs, lambda ev, x: ev.schrodinger_residual(mode, x, numeric=True))
        record(f"schrodinger_{key}_finite_difference", _max_abs(res), NUMERIC_THRESHOLD)

    res = _sweep(evs, xs, lambda ev, x: ev.bernoulli_residual(x))
    record("bernoulli_v", _max_abs(res), BERNOULLI_THRESHOLD)
    record(
        "bernoulli_thermal",
        _max_abs(bernoulli_thermal_residual(hbar, x) for x in xs),
        BERNOULLI_THRESHOLD,
    )

    # f_g - f_p = -w^2/(I0 + lam) must decay like 1/lam; report the sup at 1e8
    limit_xs = [float(x) for x in np.linspace(0.1, 10.0, 100)]
    worst_sup, worst_ratio_err = 0.0, 0.0
    for name in NAMED_SEEDS:
        seed = ZeroModeSeed.named(name, hbar)
        sup7 = lambda_limit_sup(seed, 1e7, limit_xs)
        sup8 = lambda_limit_sup(seed, 1e8, limit_xs)
        worst_sup = max(worst_sup, sup8)
        worst_ratio_err = max(worst_ratio_err, abs(sup7 / sup8 - 10.0) / 10.0)
    record("lambda_limit_sup_at_1e8", worst_sup, 1e-3)
    record("lambda_limit_decay_per_decade", worst_ratio_err, 0.05)

    vac = ActionEvaluator(ZeroModeSeed.vacuum(hbar), perturb=perturb)
    vac_xs = [float(x) for x in np.linspace(0.2, 20.0, 100)]
    record(
        "vacuum_entropy_zero",
        _max_abs(thermo.entropy(vac, x) for x in vac_xs),
        1e-12,
    )

    planck = ZeroModeSeed.planck(hbar)
    loc_xs = [float(x) for x in np.linspace(0.0, 6.0, 61)]
    record(
        "singularity_locus_closed_form",
        _max_abs(
            singularity_locus(planck, x) - (hbar * x - math.sinh(hbar * x)) / (2.0 * hbar)
            for x in loc_xs
        ),
        1e-12,
    )

    cfg = thermo.CarnotConfig()
    worst_eta = -math.inf
    for c in np.linspace(0.3, 4.0, 40):
        for lam in [*np.geomspace(0.5, 1e4, 20), math.inf]:
            ev = ActionEvaluator(planck, float(lam), perturb=perturb)
            try:
                res = thermo.carnot_efficiency(ev, cfg.replace(c=float(c)))
            except DarbouxThermoError:
                continue
            if res.valid:
                worst_eta = max(worst_eta, res.eta)
    record("carnot_max_valid_efficiency", worst_eta, cfg.carnot_limit)
    return checks


def run_verification(hbar=1.0, perturb=0.0):
    checks = run_checks(hbar, perturb)
    return {"checks": checks, "pass": all(c["pass"] for c in checks.values())}
