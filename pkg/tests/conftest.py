"""Keeps the tests directory importable and echoes acceptance results.

Each acceptance criterion is one test in test_acceptance.py; the hook
below prints a [PASS]/[FAIL] line per criterion so the gate is readable
straight off the terminal regardless of capture settings.
"""


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else "FAIL"
    print(f"\n[{status}] {name}", flush=True)
