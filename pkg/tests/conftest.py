from hypothesis import HealthCheck, settings

# Property tests are reproducible: fixed derivation of examples, no deadline
# (exact rational arithmetic has uneven cost).
settings.register_profile(
    "flagforge",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("flagforge")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
