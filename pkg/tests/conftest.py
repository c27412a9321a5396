import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    accept = sys.modules.get("test_acceptance")
    if accept is not None and accept.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in accept.RESULTS:
            terminalreporter.write_line(line)
