from hypothesis import settings

settings.register_profile("package", deadline=None, max_examples=50)
settings.load_profile("package")

# (number, description, passed, detail), filled by test_acceptance.py
ACCEPTANCE_RESULTS = []


def record_criterion(number: int, description: str, passed: bool, detail: str = ""):
    ACCEPTANCE_RESULTS.append((number, description, passed, detail))
    assert passed, f"criterion {number:02d} ({description}): {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:02d} {status}  {description}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
