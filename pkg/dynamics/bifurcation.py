#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               BALAYAGES DE BIFURCATION DE LA FAMILLE F₂                      ║
║                                                                              ║
║  • Balayage en λ₁: nombre d'équilibres sur x = -1 (1 ou 3)                   ║
║  • Valeurs critiques par bissection sur les changements de comptage          ║
║  • Balayage en a (λ₁ = 0): le col traverse l'axe des x fixe en a = 0         ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from config import config
from unfold import f2_family
from utils.errors import InvalidParameter

from .equilibria import EquilibriumType, field_equilibria


@dataclass
class BifurcationDiagram:
    """Comptage des équilibres par valeur de λ₁ et valeurs critiques détectées"""
    a: float
    l2: float
    l1_values: np.ndarray
    counts: List[int]
    critical_values: List[float] = field(default_factory=list)

    def count_at(self, l1: float) -> int:
        return self.counts[int(np.argmin(np.abs(self.l1_values - l1)))]

    def regimes(self) -> List[int]:
        """Comptages successifs, sans les échantillons posés sur une valeur critique"""
        out: List[int] = []
        for c in self.counts:
            if c % 2 == 1 and (not out or out[-1] != c):
                out.append(c)
        return out

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'l1': self.l1_values, 'count': self.counts})

    def to_dict(self) -> dict:
        return {
            'a': self.a,
            'l2': self.l2,
            'samples': len(self.counts),
            'critical_values': self.critical_values,
            'regimes': self.regimes(),
        }


@dataclass
class SaddleSweep:
    """Position du col sur x = -1 le long d'un balayage en a"""
    l1: float
    l2: float
    a_values: np.ndarray
    saddle_y: List[float]
    counts: List[int]
    crossings: List[float] = field(default_factory=list)
    merge_intervals: List[Tuple[float, float]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'a': self.a_values, 'saddle_y': self.saddle_y, 'count': self.counts})

    def to_dict(self) -> dict:
        return {'l1': self.l1, 'l2': self.l2, 'samples': len(self.counts), 'crossings': self.crossings,
                'merge_intervals': [list(m) for m in self.merge_intervals]}


# ══════════════════════════════════════════════════════════════════════════════
# ÉVALUATIONS ÉLÉMENTAIRES (sérialisables pour joblib)
# ══════════════════════════════════════════════════════════════════════════════

def count_equilibria(a: float, l1: float, l2: float) -> int:
    return len(field_equilibria(f2_family(float(a), float(l1), float(l2))))


def saddle_position(a: float, l1: float, l2: float) -> Tuple[float, int]:
    """(y du col le plus proche de l'axe des x ou NaN, nombre d'équilibres)"""
    reports = field_equilibria(f2_family(float(a), float(l1), float(l2)))
    saddles = [eq.point[1] for eq in reports if eq.type == EquilibriumType.SADDLE]
    if not saddles:
        return float('nan'), len(reports)
    return min(saddles, key=abs), len(reports)


def _bisect_change(state_at: Callable[[float], object], lo: float, hi: float, tol: float,
                   from_hi: bool = False) -> float:
    """Réduire [lo, hi] jusqu'à tol autour du premier changement de state_at vu depuis lo (ou hi)"""
    ref = state_at(hi if from_hi else lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (state_at(mid) == ref) != from_hi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _merge(values: List[float], tol: float) -> List[float]:
    merged: List[float] = []
    for v in sorted(values):
        if merged and v - merged[-1] <= 2.0 * tol:
            merged[-1] = 0.5 * (merged[-1] + v)
        else:
            merged.append(v)
    return merged


# ══════════════════════════════════════════════════════════════════════════════
# BALAYAGES
# ══════════════════════════════════════════════════════════════════════════════

def bifurcation_sweep(a: float, l2: float, l1_range: Tuple[float, float], samples: int,
                      tol: Optional[float] = None, n_jobs: Optional[int] = None) -> BifurcationDiagram:
    """Comptage des équilibres de F₂ pour λ₁ ∈ l1_range, ordre des échantillons préservé"""
    if samples < 2:
        raise InvalidParameter(f"--l1: au moins 2 échantillons, reçu {samples}")
    tol = config.bisection_tol if tol is None else tol
    n_jobs = config.n_jobs if n_jobs is None else n_jobs

    values = np.linspace(l1_range[0], l1_range[1], samples)
    counts = Parallel(n_jobs=n_jobs)(delayed(count_equilibria)(a, l1, l2) for l1 in values)

    critical = []
    for i in range(samples - 1):
        if counts[i] != counts[i + 1]:
            critical.append(_bisect_change(lambda l1: count_equilibria(a, l1, l2),
                                           float(values[i]), float(values[i + 1]), tol))
    critical = _merge(critical, tol)

    logger.debug(f"Balayage λ₁: {len(critical)} valeur(s) critique(s) {critical}")
    return BifurcationDiagram(a=a, l2=l2, l1_values=values, counts=list(counts), critical_values=critical)


def a_sweep(l1: float, l2: float, a_range: Tuple[float, float], samples: int,
            tol: Optional[float] = None, n_jobs: Optional[int] = None) -> SaddleSweep:
    """Position du col quand a traverse 0; fusion avec l'axe fixe localisée par bissection"""
    if samples < 2:
        raise InvalidParameter(f"--a: au moins 2 échantillons, reçu {samples}")
    tol = config.bisection_tol if tol is None else tol
    n_jobs = config.n_jobs if n_jobs is None else n_jobs

    values = np.linspace(a_range[0], a_range[1], samples)
    results = Parallel(n_jobs=n_jobs)(delayed(saddle_position)(a, l1, l2) for a in values)
    saddle_y = [r[0] for r in results]
    counts = [r[1] for r in results]

    def side(a: float) -> float:
        y = saddle_position(a, l1, l2)[0]
        return 0.0 if np.isnan(y) else float(np.sign(y))

    crossings = []
    merges = []
    finite = [i for i, y in enumerate(saddle_y) if not np.isnan(y) and y != 0.0]
    for i, j in zip(finite, finite[1:]):
        if np.sign(saddle_y[i]) != np.sign(saddle_y[j]):
            lo, hi = float(values[i]), float(values[j])
            left = _bisect_change(side, lo, hi, tol)
            right = _bisect_change(side, lo, hi, tol, from_hi=True)
            # le col se confond avec l'axe fixe sur [left, right] à la tolérance des racines près
            merges.append((left, right))
            crossings.append(0.5 * (left + right))

    logger.debug(f"Balayage en a: traversée(s) de l'axe en {crossings}")
    return SaddleSweep(l1=l1, l2=l2, a_values=values, saddle_y=saddle_y, counts=counts,
                       crossings=_merge(crossings, tol), merge_intervals=merges)
