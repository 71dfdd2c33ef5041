from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from mvk.constants import PrecisionContext

settings.register_profile(
    "mvk", deadline=None, max_examples=30, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("mvk")


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(256)


@pytest.fixture(scope="session")
def ctx128():
    return PrecisionContext(128)
