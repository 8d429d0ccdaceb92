from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import pytest

from multidedup.dedup import Record
from multidedup.multireal import MultiReal
from multidedup.multiset import Multiset, MultiPoint

hypothesis.settings.register_profile("fast", max_examples=20)
hypothesis.settings.register_profile("thorough", max_examples=1000)

ATTRS = "abcde"

# exact values keep the algebraic laws bit-exact
values = st.one_of(
    st.integers(-50, 50),
    st.fractions(min_value=-20, max_value=20, max_denominator=8),
)
multireals = st.builds(MultiReal, values, st.integers(0, 40))
nonneg_multireals = st.builds(
    MultiReal, st.one_of(st.integers(0, 50), st.fractions(0, 20, max_denominator=8)), st.integers(0, 40)
)
multisets = st.dictionaries(st.sampled_from(ATTRS), st.integers(0, 5)).map(Multiset)
points = st.builds(MultiPoint, st.sampled_from(ATTRS), st.integers(1, 6))
real_points = st.builds(
    MultiPoint, st.integers(-20, 20).map(lambda n: Fraction(n, 4)), st.integers(1, 7)
)


@st.composite
def datasets(draw, max_size=25):
    bags = draw(st.lists(multisets, max_size=max_size))
    return [Record(f"r{i:03d}", m) for i, m in enumerate(bags)]


@pytest.fixture
def stream_records():
    return [
        Record("T1", Multiset({"a": 1, "b": 2})),
        Record("T2", Multiset({"a": 1, "b": 1})),
        Record("T3", Multiset({"b": 2, "c": 1})),
    ]


_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = _acceptance_marker(report)
    if marker is None:
        return
    if report.when == "call" or report.failed:
        _acceptance[marker] = "PASS" if report.passed else "FAIL"


def _acceptance_marker(report):
    for key, value in report.user_properties:
        if key == "acceptance":
            return value
    return None


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is not None and ("acceptance", marker.args) not in item.user_properties:
        item.user_properties.append(("acceptance", marker.args))
    yield


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), status in sorted(_acceptance.items()):
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
