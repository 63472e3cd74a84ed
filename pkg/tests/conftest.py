import mpmath
import pytest

from darboux_thermo import ActionEvaluator, ZeroModeSeed

mpmath.mp.dps = 50

ACCEPTANCE_LINES = []


def planck_action_hp(x):
    """Planck action (1/2) coth(x/2) at hbar=1, evaluated in 50 digits."""
    return mpmath.coth(mpmath.mpf(x) / 2) / 2


def planck_entropy_hp(x, y):
    """Two-variable entropy x f_P(y) - ln sinh(x/2) with zero constant."""
    x = mpmath.mpf(x)
    return x * planck_action_hp(y) - mpmath.log(mpmath.sinh(x / 2))


@pytest.fixture(params=["planck", "vacuum", "symmetric"])
def seed(request):
    return ZeroModeSeed.named(request.param)


@pytest.fixture
def planck():
    return ActionEvaluator(ZeroModeSeed.planck())


@pytest.fixture
def vacuum():
    return ActionEvaluator(ZeroModeSeed.vacuum())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
