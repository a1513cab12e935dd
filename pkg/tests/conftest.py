"""Fixtures partagées"""
import numpy as np
import pytest
from loguru import logger


@pytest.fixture
def rng():
    """Générateur reproductible"""
    return np.random.default_rng(42)


@pytest.fixture(autouse=True)
def _quiet_logs():
    """Les sinks loguru ajoutés par la CLI ne survivent pas au test"""
    yield
    logger.remove()
