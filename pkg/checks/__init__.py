"""
Martinet Fields - Property Checks Module
"""

from .property_checks import (
    PropertyCheck,
    PropertyCheckEngine,
    PropertyCheckResult,
    random_fraction,
    random_jet,
    random_psi,
)

__all__ = [
    'PropertyCheck',
    'PropertyCheckEngine',
    'PropertyCheckResult',
    'random_fraction',
    'random_jet',
    'random_psi',
]
