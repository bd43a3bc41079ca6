import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print the one-line-per-criterion acceptance report after capture."""
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "_RESULTS", None) if mod else None
    if results:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
