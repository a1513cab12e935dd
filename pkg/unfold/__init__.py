"""
Martinet Fields - Unfoldings Module
"""

from .unfoldings import PlanarUnfolding, UnfoldingFamily, f2_family, unfold_1d, unfold_planar

__all__ = ['PlanarUnfolding', 'UnfoldingFamily', 'f2_family', 'unfold_1d', 'unfold_planar']
