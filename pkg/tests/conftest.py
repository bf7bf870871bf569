import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sharpconj.trigpoly import TrigPoly

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE = []


def record_acceptance(criterion: str, passed: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")


@st.composite
def trig_polys(draw, max_terms=6, max_freq=40):
    freqs = draw(st.lists(st.integers(1, max_freq), min_size=1, max_size=max_terms, unique=True))
    freqs.sort()
    parts = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
    coeffs = [complex(draw(parts), draw(parts)) for _ in freqs]
    if all(abs(c) < 1e-3 for c in coeffs):
        coeffs[0] = 1.0
    return TrigPoly(freqs, coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
