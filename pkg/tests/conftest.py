import numpy as np
import pytest

from harmconv import AnalyticSeries, ClassKind, ClassTag


def random_normalized(rng, order, decay=2):
    """Random series z + sum c_k z^k with |c_k| <= 1/k**decay (k >= 2)."""
    k = np.arange(order + 1, dtype=float)
    mag = rng.uniform(0.0, 1.0, order + 1) / np.maximum(k, 1.0) ** decay
    c = mag * np.exp(2j * np.pi * rng.uniform(size=order + 1))
    c[0], c[1] = 0.0, 1.0
    return AnalyticSeries(c)


def random_coanalytic(rng, order, decay=2):
    """Random g with g(0) = g'(0) = 0 and |b_k| <= 1/k**decay."""
    g = random_normalized(rng, order, decay).coeffs.copy()
    g[1] = 0.0
    return AnalyticSeries(g)


def random_member(rng, kind: ClassKind, phi: AnalyticSeries):
    """A random map in the class W^kind(phi)."""
    return ClassTag(kind, phi).build(random_coanalytic(rng, phi.order))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# -- acceptance summary -----------------------------------------------------------
#
# Tests marked ``@pytest.mark.acceptance(number, title)`` get one PASS/FAIL line
# each in the terminal summary, together with any "summary" property they record.

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, title = marker.args
    notes = "; ".join(v for k, v in item.user_properties if k == "summary")
    _ACCEPTANCE[number] = ("PASS" if rep.passed else "FAIL", title, notes)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, notes = _ACCEPTANCE[number]
        line = f"criterion {number:>2} {status}  {title}"
        terminalreporter.write_line(line + (f"  [{notes}]" if notes else ""))
