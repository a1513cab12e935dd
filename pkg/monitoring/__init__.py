"""
Martinet Fields - Monitoring Module
"""

from .metrics_exporter import MetricsExporter

__all__ = ['MetricsExporter']
