from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from metacirc.metacirculant import MetacirculantSpec
from metacirc.search import s_set_orbits, units

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@st.composite
def valid_specs(draw, max_length: int = 40, min_m: int = 2, max_m: int = 6):
    """A valid spec built from a random choice of S-set orbits."""
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(1, max(1, max_length // m)))
    alpha = draw(st.sampled_from(units(n)))
    sets = []
    for orbits in s_set_orbits(m, n, alpha):
        keep = draw(st.lists(st.booleans(), min_size=len(orbits), max_size=len(orbits)))
        sets.append(frozenset(x for o, b in zip(orbits, keep) if b for x in o))
    return MetacirculantSpec(m, n, alpha, tuple(sets))


@st.composite
def raw_specs(draw, max_length: int = 24):
    """Arbitrary S-sets, valid or not."""
    m = draw(st.integers(2, 5))
    n = draw(st.integers(1, max(1, max_length // m)))
    alpha = draw(st.integers(0, max(0, n - 1)))
    sets = tuple(frozenset(draw(st.sets(st.integers(0, n - 1), max_size=n))) for _ in range(m // 2 + 1))
    return MetacirculantSpec(m, n, alpha, sets)


def naive_weights(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Weight counts by materialising every codeword from its selection."""
    rows, length = a.shape
    sel = (np.arange(1 << rows)[:, None] >> np.arange(rows)) & 1
    ca = (sel @ a.astype(np.int64)) & 1
    cb = (sel @ b.astype(np.int64)) & 1
    weights = (ca | cb).sum(axis=1)
    return np.bincount(weights, minlength=length + 1)


@pytest.fixture(scope="session")
def fx():
    from metacirc.fixtures import default_fixtures

    return default_fixtures()


def phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@pytest.fixture(scope="session")
def sweeps36(fx):
    """Full 2^36 enumerators of both length-36 codes, computed once per session."""
    import time

    from metacirc.addcode import code_from_graph, weight_distribution

    out = {}
    for name in ("g36_1", "g36_2"):
        code = code_from_graph(fx.preset(name).graph())
        t0 = time.perf_counter()
        wd = weight_distribution(code)
        out[name] = (wd, time.perf_counter() - t0)
    return out
