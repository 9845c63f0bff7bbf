import os
import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from hodgemc.samplers import seed_from_env

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


@pytest.fixture(scope="session")
def contexts():
    """Φ_C contexts (two stages) for the passing diagram fixtures."""
    from hodgemc import fixtures as fx
    from hodgemc.vmhs import build_context
    return {name: build_context(mk(), 2) for name, mk in fx.all_diagrams().items()}


# criterion number -> one-line verdict, filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
