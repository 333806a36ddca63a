from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("fellb", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("fellb")

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture
def instances():
    return INSTANCES
