import random
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("rumin", max_examples=40, deadline=None)
settings.load_profile("rumin")


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def nrng():
    return np.random.default_rng(20240601)


def rational(rng: random.Random, span: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def pytest_terminal_summary(terminalreporter):
    """One verdict line per acceptance criterion that ran."""
    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
