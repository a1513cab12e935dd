"""
MARTINET FIELDS - CONFIGURATION CENTRALISÉE
===========================================
"""

import os
from dataclasses import dataclass, field
from typing import Tuple
from dotenv import load_dotenv

load_dotenv()


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def _env_box(name: str, default: Tuple[float, float, float, float]) -> Tuple[float, float, float, float]:
    raw = os.getenv(name)
    if not raw:
        return default
    x0, x1, y0, y1 = (float(v) for v in raw.split(':'))
    return (x0, x1, y0, y1)


@dataclass
class MartinetConfig:
    """Configuration centralisée pour Martinet Fields"""

    # Jets
    trunc_order: int = field(default_factory=lambda: _env_int('MARTINET_TRUNC_ORDER', 16))
    zero_tol: float = field(default_factory=lambda: _env_float('MARTINET_ZERO_TOL', 1e-9))

    # Champs μ
    fd_step: float = field(default_factory=lambda: _env_float('MARTINET_FD_STEP', 1e-5))
    residual_tol: float = field(default_factory=lambda: _env_float('MARTINET_RESIDUAL_TOL', 1e-6))
    fit_degree: int = field(default_factory=lambda: _env_int('MARTINET_FIT_DEGREE', 8))
    conjugacy_tol: float = 1e-8

    # Racines / équilibres
    root_interval: Tuple[float, float] = field(default_factory=lambda: (
        _env_float('MARTINET_ROOT_LO', -10.0), _env_float('MARTINET_ROOT_HI', 10.0)
    ))
    root_tol: float = field(default_factory=lambda: _env_float('MARTINET_ROOT_TOL', 1e-10))
    multiplicity_tol: float = field(default_factory=lambda: _env_float('MARTINET_MULTIPLICITY_TOL', 1e-8))
    eig_tol: float = field(default_factory=lambda: _env_float('MARTINET_EIG_TOL', 1e-8))

    # Intégration
    rk4_step: float = field(default_factory=lambda: _env_float('MARTINET_RK4_STEP', 1e-3))
    bounding_box: Tuple[float, float, float, float] = field(
        default_factory=lambda: _env_box('MARTINET_BOX', (-5.0, 5.0, -5.0, 5.0))
    )

    # Portraits
    portrait_step: float = field(default_factory=lambda: _env_float('MARTINET_PORTRAIT_STEP', 5e-3))
    portrait_max_steps: int = field(default_factory=lambda: _env_int('MARTINET_PORTRAIT_MAX_STEPS', 2000))
    svg_pixels: int = 800

    # Bifurcations
    bisection_tol: float = field(default_factory=lambda: _env_float('MARTINET_BISECTION_TOL', 1e-6))
    n_jobs: int = field(default_factory=lambda: _env_int('MARTINET_N_JOBS', 1))

    # Sorties
    float_digits: int = 17

    # Infrastructure
    log_level: str = field(default_factory=lambda: os.getenv('MARTINET_LOG_LEVEL', 'WARNING'))
    log_file: str = field(default_factory=lambda: os.getenv('MARTINET_LOG_FILE', ''))
    metrics_file: str = field(default_factory=lambda: os.getenv('MARTINET_METRICS_FILE', ''))


config = MartinetConfig()
