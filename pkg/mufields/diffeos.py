#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               DIFFÉOMORPHISMES PRÉSERVANT μ                                  ║
║                                                                              ║
║  φ(x, y) = ((1+x)/ψ'(y) - 1, ψ(y)),  ψ(0) = 0, ψ'(0) = 1                     ║
║  Action induite sur les fonctions génératrices: g = f(ψ)/ψ'                  ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple, Union

import numpy as np
from loguru import logger

from config import config
from jets import Jet, ps_compose, ps_derive, ps_reciprocal
from jets.power_series import _is_zero
from utils.errors import InadmissiblePsi

from .fields import check_domain, field_from_function, sample_grid


@dataclass(frozen=True)
class MuDiffeo:
    """ψ admissible: ψ(0) = 0 et ψ'(0) = 1"""
    psi: Jet

    def __post_init__(self):
        c = self.psi.coeffs
        if len(c) < 2 or not _is_zero(c[0], self.psi.exact) or not _is_zero(c[1] - 1, self.psi.exact):
            linear = c[1] if len(c) > 1 else 0
            raise InadmissiblePsi(f"ψ(0)={c[0]}, ψ'(0)={linear}: il faut ψ(0)=0 et ψ'(0)=1")


@dataclass(frozen=True)
class MuMap:
    """Application plane φ associée à ψ"""
    diffeo: MuDiffeo

    @cached_property
    def psi_prime(self) -> Jet:
        return ps_derive(self.diffeo.psi)

    @cached_property
    def psi_second(self) -> Jet:
        return ps_derive(self.psi_prime)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        return (1.0 + x) / self.psi_prime.evaluate(y) - 1.0, self.diffeo.psi.evaluate(y) + 0.0 * x

    def jacobian(self, x, y):
        """Dφ = [[1/ψ', -(1+x)ψ''/ψ'²], [0, ψ']], renvoyée terme à terme"""
        x = np.asarray(x, dtype=float)
        dpsi = self.psi_prime.evaluate(y)
        ddpsi = self.psi_second.evaluate(y)
        return 1.0 / dpsi + 0.0 * x, -(1.0 + x) * ddpsi / dpsi ** 2, 0.0 * x, dpsi + 0.0 * x


@dataclass
class ConjugacyReport:
    """Résultat de la vérification D φ·Y = X∘φ"""
    max_residual: float
    tol: float
    passed: bool
    samples: int
    box: Tuple[float, float]
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'max_residual': self.max_residual,
            'tol': self.tol,
            'passed': self.passed,
            'samples': self.samples,
            'box': list(self.box),
            **self.details
        }


def _as_diffeo(psi: Union[MuDiffeo, Jet]) -> MuDiffeo:
    return psi if isinstance(psi, MuDiffeo) else MuDiffeo(psi)


def mu_diffeo(psi: Union[MuDiffeo, Jet]) -> MuMap:
    """ψ ↦ φ"""
    return MuMap(_as_diffeo(psi))


def pushforward(f: Jet, psi: Union[MuDiffeo, Jet]) -> Jet:
    """
    g = f(ψ)/ψ' au même ordre que f.

    ψ est lu comme le polynôme que son jet décrit: ψ' est complété de zéros.
    Pour un ψ tronqué (composée, réversion), seul l'ordre N-1 de g est
    déterminé; passer ψ à l'ordre N+1 pour fixer aussi l'ordre N.
    """
    diffeo = _as_diffeo(psi)
    order = f.trunc_order
    inner = diffeo.psi.with_order(order)
    dpsi = ps_derive(diffeo.psi).with_order(order)
    return ps_compose(f, inner) * ps_reciprocal(dpsi)


def pullback_mu_residual(phi: MuMap, points: Optional[Tuple[np.ndarray, np.ndarray]] = None) -> float:
    """max |φ*μ - μ| sur les points: φ*μ = (1+φ1)(∂φ2/∂x dx + ∂φ2/∂y dy)"""
    xs, ys = sample_grid() if points is None else (np.asarray(points[0], float), np.asarray(points[1], float))
    check_domain(xs)
    phi1, _ = phi(xs, ys)
    _, _, dphi2_dx, dphi2_dy = phi.jacobian(xs, ys)
    r_dx = (1.0 + phi1) * dphi2_dx
    r_dy = (1.0 + phi1) * dphi2_dy - (1.0 + xs)
    return float(max(np.max(np.abs(r_dx)), np.max(np.abs(r_dy))))


def verify_conjugacy(f: Jet, g: Jet, psi: Union[MuDiffeo, Jet],
                     sample_box: Tuple[float, float] = (0.5, 0.1),
                     tol: Optional[float] = None, samples: int = 100) -> ConjugacyReport:
    """max ‖Dφ·Y - X∘φ‖ avec X = X_f, Y = X_g sur |x| ≤ bx, |y| ≤ by"""
    tol = config.conjugacy_tol if tol is None else tol
    phi = mu_diffeo(psi)
    X = field_from_function(f)
    Y = field_from_function(g)

    n = max(int(round(np.sqrt(samples))), 2)
    xs, ys = sample_grid(sample_box[0], sample_box[1], n)
    check_domain(xs)

    yu, yv = Y(xs, ys)
    a11, a12, a21, a22 = phi.jacobian(xs, ys)
    px, py = phi(xs, ys)
    xu, xv = X(px, py)

    residual = np.hypot(a11 * yu + a12 * yv - xu, a21 * yu + a22 * yv - xv)
    max_residual = float(np.max(residual))
    passed = bool(max_residual <= tol)

    if not passed:
        logger.debug(f"Conjugaison rejetée: résidu {max_residual:.3e} > {tol:.1e}")

    return ConjugacyReport(
        max_residual=max_residual,
        tol=tol,
        passed=passed,
        samples=int(xs.size),
        box=tuple(sample_box),
        details={'pullback_residual': pullback_mu_residual(phi, (xs, ys))}
    )
