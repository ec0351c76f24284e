import random

import pytest

from hfok import kernels


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    """Each importable kernel implementation in turn."""
    return kernels.available_backends()[request.param]


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.RESULTS[num])
