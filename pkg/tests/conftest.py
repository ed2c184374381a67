import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    import _support

    if _support.ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _support.ACCEPTANCE:
            terminalreporter.write_line(line)
