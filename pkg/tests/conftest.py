import json
import os

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def frozen():
    with open(os.path.join(FIXTURES, "frozen.json")) as fh:
        return json.load(fh)


# pass/fail lines recorded by the acceptance suite; echoed after the run so
# they survive output capture
acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
