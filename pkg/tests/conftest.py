import re
from collections import OrderedDict

CRITERIA = OrderedDict(
    [
        ("A1", "identity suite (composition, product, band-limit, modulation)"),
        ("A2", "convolution identities and Young-type inequality"),
        ("A3", "modular/norm sandwiches and classical norms"),
        ("A4", "Gaussian closed form"),
        ("A5", "Gaussian scaling slopes"),
        ("A6", "Gaussian moment limit and growth"),
        ("A7", "blow-up exponent for violating triples"),
        ("A8", "localization over rectangles"),
        ("A9", "maximal-operator suite"),
        ("A10", "weights suite"),
        ("A11", "sharp maximal bound"),
        ("A12", "weighted multiplier bound"),
        ("A13", "Hormander symbol analysis"),
        ("A14", "determinism"),
    ]
)

_outcomes: dict = {}
_PATTERN = re.compile(r"test_a(\d+)_")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    key = f"A{int(m.group(1))}"
    if report.when == "call" or (report.when == "setup" and report.failed):
        _outcomes.setdefault(key, []).append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key, desc in CRITERIA.items():
        results = _outcomes.get(key)
        if results is None:
            terminalreporter.write_line(f"{key:<4} NOT RUN  {desc}")
            continue
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        suffix = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"{key:<4} {'PASS' if ok else 'FAIL'}     {desc}{suffix}")

