import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from hyperpair.curve import CurveParams  # noqa: E402
from hyperpair.pairings import PairingContext  # noqa: E402

# one "criterion N: PASS/FAIL ..." line per acceptance criterion
ACCEPTANCE = []


def report(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda x: int(x.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# ordinary genus-2 curve over F_89 with r = 233 | #Jac, k = 4; it also has a
# degenerate divisor [(14, 75)] - inf of order r
REF_P, REF_F, REF_R = 89, (24, 74, 21, 47, 0, 1), 233
# a small F_7 context, r = 5, k = 4
SMALL_P, SMALL_F, SMALL_R = 7, (1, 5, 1, 0, 0, 1), 5


@pytest.fixture(scope="session")
def ref_ctx():
    return PairingContext(CurveParams.from_ints(REF_P, list(REF_F)), REF_R)


@pytest.fixture(scope="session")
def small_ctx():
    return PairingContext(CurveParams.from_ints(SMALL_P, list(SMALL_F)), SMALL_R)
