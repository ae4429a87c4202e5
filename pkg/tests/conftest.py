import random

import pytest

from coherentpairs import NuParam, charlier, kravchuk, smop_from_moments

OMEGA1 = NuParam.omega(1)
LATTICES = [NuParam.omega(1), NuParam.omega(-2), NuParam.q(2), NuParam.q("1/3")]


@pytest.fixture(scope="session")
def C1():
    return charlier(1)


@pytest.fixture(scope="session")
def P1(C1):
    return smop_from_moments(C1, 18)


@pytest.fixture(scope="session")
def K20():
    return kravchuk(20, "1/2")


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        for key, value in report.user_properties:
            if key == "criterion":
                crit = value
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _ACCEPTANCE.get(crit, True)
        _ACCEPTANCE[crit] = prev and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {crit:>2}: {'PASS' if _ACCEPTANCE[crit] else 'FAIL'}")
