#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               ÉQUILIBRES SUR LA DROITE INVARIANTE x = -1                     ║
║                                                                              ║
║  • Isolation de toutes les racines réelles (points critiques + bissection)   ║
║  • Type local: col / nœud / foyer / dégénéré                                 ║
║  • Droites de points fixes (racines multiples, champ nul)                    ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from config import config
from jets import Jet
from jets.power_series import _is_zero
from unfold import PlanarUnfolding, UnfoldingFamily

MAX_BISECTIONS = 200


class RealRoot(NamedTuple):
    value: float
    multiplicity: int


class EquilibriumType(Enum):
    SADDLE = "saddle"
    NODE = "node"
    FOCUS = "focus"
    DEGENERATE = "degenerate"
    ON_FIXED_LINE = "on-fixed-line"


@dataclass
class EquilibriumReport:
    """Équilibre (−1, y*) et sa linéarisation"""
    point: Tuple[float, float]
    eigenvalues: Tuple[complex, complex]
    type: EquilibriumType
    residual: float
    multiplicity: int = 1
    fixed_line: bool = False

    def to_dict(self) -> dict:
        return {
            'point': [float(self.point[0]), float(self.point[1])],
            'eigenvalues': [[float(np.real(e)), float(np.imag(e))] for e in self.eigenvalues],
            'type': self.type.value,
            'residual': float(self.residual),
            'multiplicity': self.multiplicity,
            'fixed_line': self.fixed_line,
        }


@dataclass
class FixedLineReport:
    """Droite horizontale (ou plan entier) de points fixes"""
    kind: str  # 'x_axis' | 'plane'
    y: Optional[float]
    description: str

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'y': self.y, 'description': self.description}


# ══════════════════════════════════════════════════════════════════════════════
# RACINES RÉELLES
# ══════════════════════════════════════════════════════════════════════════════

def _trim(poly: np.polynomial.Polynomial) -> np.polynomial.Polynomial:
    coef = np.trim_zeros(np.asarray(poly.coef, dtype=float), 'b')
    return np.polynomial.Polynomial(coef if coef.size else [0.0])


def _polish(poly, root: float, u: float, v: float) -> float:
    """Quelques pas de Newton, gardés seulement s'ils restent dans [u, v] et réduisent |p|"""
    deriv = poly.deriv()
    best, best_val = root, abs(float(poly(root)))
    for _ in range(5):
        slope = float(deriv(best))
        if slope == 0.0 or best_val == 0.0:
            break
        candidate = best - float(poly(best)) / slope
        value = abs(float(poly(candidate)))
        if not (u <= candidate <= v) or value >= best_val:
            break
        best, best_val = candidate, value
    return best


def _bisect(poly, u: float, v: float, pu: float, tol: float) -> float:
    lo, hi = u, v
    m = 0.5 * (u + v)
    for _ in range(MAX_BISECTIONS):
        m = 0.5 * (u + v)
        pm = float(poly(m))
        if pm == 0.0 or (v - u <= tol and abs(pm) <= tol) or m <= u or m >= v:
            break
        if np.sign(pm) == np.sign(pu):
            u, pu = m, pm
        else:
            v = m
    return _polish(poly, m, lo, hi)


def _isolate(poly: np.polynomial.Polynomial, lo: float, hi: float, tol: float) -> List[float]:
    """
    Racines de poly dans [lo, hi] (poly non nul).

    Les points critiques (racines de poly') découpent [lo, hi] en intervalles
    de monotonie; un point critique où |poly| ≤ tol est une racine multiple.
    """
    degree = poly.degree()
    if degree <= 0:
        return []
    if degree == 1:
        c0, c1 = poly.coef
        root = -c0 / c1
        return [root] if lo <= root <= hi else []

    critical = _isolate(_trim(poly.deriv()), lo, hi, tol)
    knots = [lo] + [c for c in critical if lo < c < hi] + [hi]
    values = [float(poly(t)) for t in knots]

    roots = [t for t, p in zip(knots, values) if abs(p) <= tol]
    for (u, pu), (v, pv) in zip(zip(knots, values), zip(knots[1:], values[1:])):
        if abs(pu) <= tol or abs(pv) <= tol:
            continue
        if np.sign(pu) != np.sign(pv):
            roots.append(_bisect(poly, u, v, pu, tol))

    roots.sort()
    unique: List[float] = []
    for r in roots:
        if not unique or r - unique[-1] > 1e3 * tol:
            unique.append(r)
    return unique


def _multiplicity(poly: np.polynomial.Polynomial, root: float, tol: float) -> int:
    m, deriv = 1, poly.deriv()
    while m < poly.degree() and abs(float(deriv(root))) < tol:
        m += 1
        deriv = deriv.deriv()
    return m


def real_roots(p: Union[Jet, Sequence[float]], interval: Optional[Tuple[float, float]] = None,
               root_tol: Optional[float] = None,
               multiplicity_tol: Optional[float] = None) -> List[RealRoot]:
    """Toutes les racines réelles d'un polynôme non nul dans l'intervalle, avec multiplicité"""
    lo, hi = config.root_interval if interval is None else interval
    tol = config.root_tol if root_tol is None else root_tol
    mult_tol = config.multiplicity_tol if multiplicity_tol is None else multiplicity_tol

    coef = p.float_coeffs if isinstance(p, Jet) else np.asarray(p, dtype=float)
    poly = _trim(np.polynomial.Polynomial(coef))
    if poly.degree() == 0 and poly.coef[0] == 0.0:
        return []

    roots = [RealRoot(float(r), _multiplicity(poly, r, mult_tol)) for r in _isolate(poly, lo, hi, tol)]
    logger.debug(f"{len(roots)} racine(s) réelle(s) dans [{lo}, {hi}]")
    return roots


# ══════════════════════════════════════════════════════════════════════════════
# ÉQUILIBRES
# ══════════════════════════════════════════════════════════════════════════════

def classify_eigenvalues(eigenvalues: Sequence[complex], multiplicity: int = 1,
                         eig_tol: Optional[float] = None) -> EquilibriumType:
    tol = config.eig_tol if eig_tol is None else eig_tol
    eigs = np.asarray(eigenvalues, dtype=complex)

    if multiplicity >= 2 or np.any(np.abs(eigs) <= tol):
        return EquilibriumType.DEGENERATE
    if np.any(np.abs(eigs.imag) > tol):
        # valeurs propres imaginaires pures: non hyperbolique
        if np.all(np.abs(eigs.real) <= tol):
            return EquilibriumType.DEGENERATE
        return EquilibriumType.FOCUS
    if eigs.real[0] * eigs.real[1] < 0:
        return EquilibriumType.SADDLE
    return EquilibriumType.NODE


def field_equilibria(field, root_tol: Optional[float] = None,
                     interval: Optional[Tuple[float, float]] = None) -> List[EquilibriumReport]:
    """Équilibres d'un champ engendré par f (attribut `f`) sur x = -1"""
    f = field.f
    if f.is_zero(0.0):
        return [EquilibriumReport(point=(-1.0, 0.0), eigenvalues=(0j, 0j),
                                  type=EquilibriumType.ON_FIXED_LINE, residual=0.0,
                                  multiplicity=0, fixed_line=True)]

    reports = []
    for root in real_roots(f, interval, root_tol):
        eigs = tuple(complex(e) for e in np.linalg.eigvals(field.jacobian(-1.0, root.value)))
        kind = classify_eigenvalues(eigs, root.multiplicity)
        u, v = field(-1.0, root.value)
        reports.append(EquilibriumReport(
            point=(-1.0, root.value),
            eigenvalues=eigs,
            type=kind,
            residual=float(np.hypot(u, v)),
            multiplicity=root.multiplicity,
            fixed_line=root.multiplicity >= 2
        ))
    return reports


def equilibria_on_line(k: int, a, lambdas: Sequence, root_tol: Optional[float] = None,
                       interval: Optional[Tuple[float, float]] = None) -> List[EquilibriumReport]:
    """Équilibres du déploiement F(λ) sur la droite invariante x = -1"""
    field = PlanarUnfolding(UnfoldingFamily(k, a, tuple(lambdas)))
    return field_equilibria(field, root_tol, interval)


def fixed_line_detect(field) -> Optional[FixedLineReport]:
    """L'axe des x est une droite de points fixes ssi f(0) = f'(0) = 0"""
    f = field.f
    if f.is_zero(0.0):
        return FixedLineReport('plane', None, "champ nul: tout point est fixe (cas dégénéré)")

    c = f.coeffs
    if f.trunc_order >= 1 and _is_zero(c[0], f.exact, 0.0) and _is_zero(c[1], f.exact, 0.0):
        return FixedLineReport('x_axis', 0.0, "l'axe des x est une droite de points fixes")
    return None
