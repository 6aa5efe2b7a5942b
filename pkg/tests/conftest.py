import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mhyperg.partitions import Partition

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ALPHAS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]


def partitions(max_size: int = 6, max_len: int | None = None):
    """Strategy drawing partitions with |lam| <= max_size and at most max_len parts."""
    cap = max_len or max_size
    return st.lists(st.integers(0, max_size), max_size=cap).map(
        lambda xs: Partition(sorted(xs, reverse=True))).filter(lambda p: p.size <= max_size)


def rationals(lo: int = 1, hi: int = 12, max_den: int = 6):
    return st.builds(Fraction, st.integers(lo * max_den, hi * max_den), st.integers(1, max_den)) \
        .filter(lambda q: lo <= q <= hi)


alphas = st.sampled_from(ALPHAS)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("MHYPERG_CACHE_DIR", str(tmp_path))
    return tmp_path


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
