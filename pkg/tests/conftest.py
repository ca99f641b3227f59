import pytest

from gdm.finite_field import FieldParams, GaloisField
from gdm.mux import GdmConfig

REF_FRAME = (0, 1, 1, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1)
# Powers of alpha, None for zero
REF_SPECTRUM = (0, None, None, 10, None, 5, 5, 10, None, 5, 10, 5, 10, 10, 5)
SHORT_FRAME = (0, 1, 1, 0, 1)
SHORT_SPECTRUM = (0, 7, 14, 11, 13)


@pytest.fixture(scope="session")
def gf16():
    return GaloisField(FieldParams.from_bits("10011"))


@pytest.fixture(scope="session")
def cfg15():
    return GdmConfig(FieldParams.from_bits("10011"), 15)


@pytest.fixture(scope="session")
def cfg5():
    return GdmConfig(FieldParams.from_bits("10011"), 5)


def as_powers(values):
    return tuple(v.log for v in values)


# -- acceptance reporting ---------------------------------------------------

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for mark_id, title in getattr(report, "criterion", ()):
        _ACCEPTANCE.append((mark_id, title, report.outcome, report.duration))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for mark_id, title, outcome, duration in _ACCEPTANCE:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {mark_id:<5} {title}  ({duration:.2f} s)")
