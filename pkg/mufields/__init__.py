"""
Martinet Fields - μ-Fields Module
"""

from .fields import (
    AlphaResidual,
    Field3,
    Hamiltonian,
    MartinetForm,
    MuResidual,
    PlanarMuField,
    SymbolicField,
    field_from_function,
    function_from_field,
    hamiltonian,
    jet_to_sympy,
    lie_derivative_alpha,
    lie_derivative_mu,
    lift_to_3d,
)
from .diffeos import (
    ConjugacyReport,
    MuDiffeo,
    MuMap,
    mu_diffeo,
    pullback_mu_residual,
    pushforward,
    verify_conjugacy,
)

__all__ = [
    'AlphaResidual', 'Field3', 'Hamiltonian', 'MartinetForm', 'MuResidual',
    'PlanarMuField', 'SymbolicField', 'field_from_function', 'function_from_field',
    'hamiltonian', 'jet_to_sympy', 'lie_derivative_alpha', 'lie_derivative_mu', 'lift_to_3d',
    'ConjugacyReport', 'MuDiffeo', 'MuMap', 'mu_diffeo', 'pullback_mu_residual',
    'pushforward', 'verify_conjugacy',
]
