"""
Martinet Fields - Jets Module
"""

from .power_series import (
    Flat,
    Jet,
    jet_order,
    ps_add,
    ps_compose,
    ps_derive,
    ps_integrate,
    ps_mul,
    ps_reciprocal,
    ps_reversion,
)

__all__ = [
    'Flat',
    'Jet',
    'jet_order',
    'ps_add',
    'ps_compose',
    'ps_derive',
    'ps_integrate',
    'ps_mul',
    'ps_reciprocal',
    'ps_reversion',
]
