import pytest
from hypothesis import strategies as st

from dilute_riemann import cases
from dilute_riemann.model import ModelParams, State
from dilute_riemann.riemann import RiemannData
from dilute_riemann.waves import locus_n, rarefaction2_n_of_h

ACCEPTANCE_LINES = []


@pytest.fixture
def params():
    return ModelParams(2.307)


@pytest.fixture(scope="session")
def shock_data():
    return cases.shock_data()


@pytest.fixture(scope="session")
def rarefaction_data():
    return cases.rarefaction_data()


@st.composite
def omega_states(draw, h_min=0.05, h_max=3.0, phi_min=1e-3, phi_max=0.999):
    h = draw(st.floats(h_min, h_max))
    phi = draw(st.floats(phi_min, phi_max))
    return State(h, phi * h)


def random_riemann_data(rng, p):
    """Random data, mostly built on an allowed wave sequence; returns (kind, data)."""
    h = rng.uniform(0.1, 2.0)
    L = State(h, h * rng.uniform(0.01, 0.95))
    kind = rng.integers(5)
    if kind == 0:  # on the 2-shock locus
        hr = L.h * rng.uniform(0.2, 0.99)
        nr = locus_n(hr, L, p)
        R = State(hr, nr) if 0 < nr < hr else State(hr, 0.5 * hr)
    elif kind == 1:  # on the 2-rarefaction curve
        hr = L.h * rng.uniform(1.01, 3.0)
        R = State(hr, rarefaction2_n_of_h(L, hr, p))
    elif kind == 2:  # same height, concentration rising
        R = State(L.h, rng.uniform(L.n, 0.999 * L.h))
    elif kind == 3:  # composite
        M = State(L.h, rng.uniform(L.n, L.h))
        hr = L.h * rng.uniform(1.01, 3.0)
        R = State(hr, rarefaction2_n_of_h(M, hr, p))
    else:
        hr = rng.uniform(0.1, 2.0)
        R = State(hr, hr * rng.uniform(0.01, 0.95))
    return kind, RiemannData(L, R)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__ == "test_acceptance":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        ACCEPTANCE_LINES.append(f"{'PASS' if rep.passed else 'FAIL'}  {doc}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
