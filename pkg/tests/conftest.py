import numpy as np
import pytest

from models import AuditConfig

SMALL_LADDER = [1e-1, 1e-2, 1e-3, 1e-4]


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def audit_config():
    """Factory for small, fast audit configs."""

    def make(suite: str, **overrides) -> AuditConfig:
        values = dict(
            suite=suite,
            samples=40,
            ladder=SMALL_LADDER,
            pairs_per_rung=12,
            seed=42,
        )
        values.update(overrides)
        return AuditConfig(**values)

    return make
