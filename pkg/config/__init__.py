"""
Martinet Fields - Configuration Module
"""

from .settings import MartinetConfig, config

__all__ = ['MartinetConfig', 'config']
