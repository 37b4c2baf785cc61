import sys

import pytest
from hypothesis import HealthCheck, settings

from rrlab.ideals import IdealHandle
from rrlab.poly import RingCtx

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EX215_I = ("x^6", "x^4*y^2", "x^3*y^3", "x^2*y^4", "x*y^5", "y^6")
EX215_J = ("x^6", "y^6+x^4*y^2")
EX34_MOD = ("x^2+y^5", "x*y+u^4", "x*z+v^3")


@pytest.fixture(scope="session")
def ctx2():
    return RingCtx.make(["x", "y"])


@pytest.fixture(scope="session")
def ctx3():
    return RingCtx.make(["x", "y", "z"])


@pytest.fixture(scope="session")
def ideal2(ctx2):
    return lambda *gens: IdealHandle.parse(ctx2, gens)


@pytest.fixture(scope="session")
def ex215(ctx2):
    return IdealHandle.parse(ctx2, EX215_I), IdealHandle.parse(ctx2, EX215_J)


@pytest.fixture(scope="session")
def ex34_ctx():
    return RingCtx.make(["x", "y", "z", "u", "v"], 32003, EX34_MOD)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
