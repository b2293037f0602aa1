def pytest_terminal_summary(terminalreporter):
    # repeat the acceptance verdicts at the end of the run
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
