import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from reviewaf import fixture_path, parse_review_json
from reviewaf.af_core import Framework

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def load_fixture(name):
    return parse_review_json(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture
def sample_review():
    return load_fixture("corpus/sample_review.json")


@pytest.fixture
def root_only():
    return load_fixture("corpus/root_only.json")


@pytest.fixture
def chain4():
    return load_fixture("chain4.json")


@pytest.fixture
def unanswered():
    return load_fixture("unanswered.json")


@st.composite
def frameworks(draw, max_size=12, min_size=0):
    """Generic frameworks; cycles and self-attacks allowed."""
    n = draw(st.integers(min_size, max_size))
    keys = [f"a{i}" for i in range(n)]
    if n == 0:
        return Framework((), ())
    pair = st.tuples(st.sampled_from(keys), st.sampled_from(keys))
    attacks = draw(st.lists(pair, max_size=3 * n))
    return Framework(tuple(keys), tuple(attacks))


@st.composite
def acyclic_frameworks(draw, max_size=12):
    """Attacks only go from higher to lower index, so the graph is a DAG."""
    n = draw(st.integers(1, max_size))
    keys = [f"a{i}" for i in range(n)]
    if n == 1:
        return Framework(tuple(keys), ())
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    raw = draw(st.lists(pair, max_size=3 * n))
    attacks = [(keys[max(i, j)], keys[min(i, j)]) for i, j in raw]
    return Framework(tuple(keys), tuple(attacks))


def random_framework(rng: random.Random, max_size=12) -> Framework:
    n = rng.randint(1, max_size)
    keys = tuple(f"a{i}" for i in range(n))
    m = rng.randint(0, 2 * n)
    attacks = tuple((rng.choice(keys), rng.choice(keys)) for _ in range(m))
    return Framework(keys, attacks)


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    label = dict(report.user_properties).get("criterion")
    if label is not None and report.when == "call":
        _ACCEPTANCE.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
