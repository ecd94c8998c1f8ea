from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from prioclust.generate import GeneratorConfig, generate_random

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def R(*xs):
    return [Fraction(x) for x in xs]


def random_instance(seed, **overrides):
    cfg = dict(n_clients=12, n_facilities=5, k=2, coord_range=40, layout="grid",
               requirement_fraction=Fraction(2, 3))
    cfg.update(overrides)
    return generate_random(GeneratorConfig(**cfg), seed)


seeds = st.integers(min_value=0, max_value=10**6)


@pytest.fixture
def line6():
    """Six points on a line: clients at 0, 1, 3, 7 and facilities at 8, 20."""
    from prioclust.generate import line_instance
    return line_instance([0, 1, 3, 7], [8, 20], [1, 1, 1, 1], k=1, requirements=[3])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
