CRITERIA = {
    1: "construction soundness",
    2: "group/monoid dictionary",
    3: "lemma suite",
    4: "Jordan-Hoelder and Schreier refinement",
    5: "nilpotency class and derived length transfer",
    6: "nilpotency-side lemmas",
    7: "determinism",
    8: "probes",
}

_outcomes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = report.user_properties and dict(report.user_properties).get("criterion")
    if n:
        _outcomes.setdefault(n, []).append(report.outcome)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, label in CRITERIA.items():
        got = _outcomes.get(n)
        if got is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(o == "passed" for o in got) else "FAIL"
        tr.write_line(f"criterion {n} ({label}): {status}")
