import sys

import pytest
from hypothesis import settings

from copdiff import evc_from_measure
from copdiff.catalog import band_measure, mixed_measure, shipped_instances

settings.register_profile("ci", max_examples=50, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def band_evc():
    return evc_from_measure(band_measure())


@pytest.fixture(scope="session")
def mixed_evc():
    return evc_from_measure(mixed_measure())


SHIPPED = shipped_instances()


@pytest.fixture(params=sorted(SHIPPED), scope="session")
def shipped(request):
    return SHIPPED[request.param]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
