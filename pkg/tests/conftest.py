import os
import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERION = re.compile(r"test_ac(\d+)_")
_verdicts: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _CRITERION.match(item.name)
    if not m or rep.when != "call":
        return
    doc = (item.function.__doc__ or "").strip().splitlines()[0]
    if rep.passed and not hasattr(rep, "wasxfail"):
        verdict = "PASS"
    else:
        verdict = "FAIL"
    _verdicts[int(m.group(1))] = (verdict, doc)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_verdicts):
        verdict, doc = _verdicts[k]
        terminalreporter.write_line(f"AC-{k} {verdict}: {doc}")
