import pytest
from hypothesis import HealthCheck, settings

from dixmier.datum import compute_trace, quantize
from dixmier.examples import build_metaplectic, load_example
from dixmier.poly import MultiPoly
from dixmier.star import StarProduct

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def a1():
    return build_metaplectic(1)


@pytest.fixture(scope="session")
def a1_inv():
    return load_example("a1-invariants")


@pytest.fixture(scope="session")
def a2():
    return build_metaplectic(2)


@pytest.fixture(scope="session")
def trace_a1(a1):
    return compute_trace(a1, 12)


@pytest.fixture(scope="session")
def q_a1(a1):
    return quantize(a1, 8)


@pytest.fixture(scope="session")
def star_a1(q_a1):
    return StarProduct(q_a1)


@pytest.fixture(scope="session")
def q_a2(a2):
    return quantize(a2, 4)


@pytest.fixture(scope="session")
def xy():
    return tuple(MultiPoly.gen(("x", "y"), v) for v in "xy")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
