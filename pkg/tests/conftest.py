import pytest

CRITERIA = {
    1: "general bound on s-bridgeless corpus",
    2: "even bound on g-bridgeless corpus",
    3: "corollary bound on both corpora",
    4: "double covers of eulerian graphs and generalized barbells",
    5: "leaf and {1,2} multiplicity bands",
    6: "H-graph barbell host and {0,1,2,3}-cover contracts",
    7: "oracle domination and named oracle values",
    8: "minimal signature check agrees with negativeness",
    9: "switching invariance of covers",
    10: "unsigned cover bound and named values",
    11: "pruned pair-cover length limit",
    12: "chained bound identity",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by this test")
    config.addinivalue_line("markers", "slow: large corpus runs")


def pytest_runtest_logreport(report):
    marks = getattr(report, "criteria", None)
    if not marks:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for n in marks:
            _outcomes.setdefault(n, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _outcomes:
            continue
        status = "PASS" if all(_outcomes[n]) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n}: {CRITERIA[n]}")
