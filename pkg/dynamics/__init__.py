"""
Martinet Fields - Dynamics Module
"""

from .equilibria import (
    EquilibriumReport,
    EquilibriumType,
    FixedLineReport,
    RealRoot,
    classify_eigenvalues,
    equilibria_on_line,
    field_equilibria,
    fixed_line_detect,
    real_roots,
)
from .integrator import EnsembleResult, Trajectory, integrate_ensemble, integrate_trajectory
from .portrait import PortraitArtifact, phase_portrait, seed_points
from .bifurcation import BifurcationDiagram, SaddleSweep, a_sweep, bifurcation_sweep

__all__ = [
    'EquilibriumReport', 'EquilibriumType', 'FixedLineReport', 'RealRoot',
    'classify_eigenvalues', 'equilibria_on_line', 'field_equilibria', 'fixed_line_detect', 'real_roots',
    'EnsembleResult', 'Trajectory', 'integrate_ensemble', 'integrate_trajectory',
    'PortraitArtifact', 'phase_portrait', 'seed_points',
    'BifurcationDiagram', 'SaddleSweep', 'a_sweep', 'bifurcation_sweep',
]
