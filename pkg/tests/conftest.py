from __future__ import annotations

import pytest

from bergmanzeros.weights import QuadratureConfig


@pytest.fixture(scope="session")
def cfg() -> QuadratureConfig:
    return QuadratureConfig()
