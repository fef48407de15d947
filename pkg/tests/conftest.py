import pytest

from hyperspectra.spectrum import enumerate_spectrum
from hyperspectra.surfaces import pants_group


@pytest.fixture(scope="session")
def cusped():
    return pants_group(True)


@pytest.fixture(scope="session")
def cusped_spectrum_4(cusped):
    return enumerate_spectrum(cusped, 4.0, 2.0)


@pytest.fixture(scope="session")
def cusped_diagram(cusped):
    from hyperspectra.cusps import build_horoball_diagram

    return build_horoball_diagram(cusped, (1,), 0.1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in sorted(RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(r.line())
