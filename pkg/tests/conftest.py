from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cliffrep.fields import field

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELD_NAMES = ["qq", "gf2", "gf7", "gf4", "gf9", "gf2^3", "cyc3", "cyc4", "cyc5"]


@pytest.fixture(params=FIELD_NAMES)
def any_exact_field(request):
    return field(request.param)


def least_prime_1_mod(d: int) -> int:
    p = d + 1
    while True:
        if p > 1 and all(p % k for k in range(2, int(p**0.5) + 1)) and p % d == 1:
            return p
        p += 1


# one summary line per acceptance criterion -------------------------------

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    label = getattr(report, "criterion", None)
    if label is None:
        for key, value in report.user_properties:
            if key == "criterion":
                label = value
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[report.nodeid] = (label, "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _CRITERIA.values():
        terminalreporter.write_line(f"{outcome}  {label}")
