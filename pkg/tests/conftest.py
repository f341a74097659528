from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cdk.cdcore import Element

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-3, 3), st.sampled_from([1, 1, 1, 2]))


def elements(level, pure=False, doubly_pure=False):
    size = 1 << level

    def build(cs):
        cs = list(cs)
        if pure or doubly_pure:
            cs[0] = Fraction(0)
        if doubly_pure:
            cs[size // 2] = Fraction(0)
        return Element(level, tuple(cs))

    return st.lists(small_rationals, min_size=size, max_size=size).map(build)


def same_level(k, levels=st.integers(0, 5), **kw):
    """A tuple of k elements sharing a randomly drawn level."""
    return levels.flatmap(lambda n: st.tuples(*[elements(n, **kw)] * k))


@pytest.fixture
def E():
    return Element.basis


_criteria = []


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    status = "PASS" if call.excinfo is None else "FAIL"
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    line = f"criterion {number:>2} {status}  {title}"
    _criteria.append((number, line + (f"  [{detail}]" if detail else "")))


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_criteria):
            terminalreporter.write_line(line)
