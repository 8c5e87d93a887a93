"""Shared fixtures and the hypothesis profile."""

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from afp.models.scenario import Scenario
from afp.repositories import load_scenario
from afp.scenarios import build, build_mini

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "afp",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("afp")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def corridor_document() -> dict:
    return json.loads((FIXTURES / "corridor.json").read_text())


@pytest.fixture
def corridor(corridor_document) -> Scenario:
    return load_scenario(corridor_document)


@pytest.fixture
def robust_not_resilient() -> Scenario:
    return load_scenario(FIXTURES / "robust_not_resilient.json")


@pytest.fixture
def resilient_not_robust() -> Scenario:
    return load_scenario(FIXTURES / "resilient_not_robust.json")


@pytest.fixture(scope="session")
def gridbot() -> Scenario:
    return build()


@pytest.fixture(scope="session")
def mini() -> Scenario:
    return build_mini()


@pytest.fixture(scope="session")
def mini_open() -> Scenario:
    return build_mini(blocked=False)
