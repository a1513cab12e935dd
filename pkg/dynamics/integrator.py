#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               INTÉGRATEUR RK4 À PAS FIXE                                     ║
║                                                                              ║
║  • Ensemble vectorisé: toutes les graines avancent ensemble                  ║
║  • Arrêt par graine: sortie de boîte ou état non fini                        ║
║  • Rapport de conservation max |H(t) - H(0)|                                 ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from config import config
from utils.errors import InvalidParameter, NonFiniteState

COMPLETED = "completed"
OUT_OF_BOX = "out_of_box"
NON_FINITE = "non_finite"

Box = Tuple[float, float, float, float]


@dataclass
class EnsembleResult:
    """Chemins (pas, graine, 2) remplis de NaN après l'arrêt de chaque graine"""
    times: np.ndarray
    paths: np.ndarray
    stop_index: np.ndarray
    reasons: List[str]

    def path(self, i: int) -> np.ndarray:
        return self.paths[:self.stop_index[i] + 1, i, :]

    def path_times(self, i: int) -> np.ndarray:
        return self.times[:self.stop_index[i] + 1]


@dataclass
class Trajectory:
    times: np.ndarray
    points: np.ndarray
    stop_reason: str
    hamiltonian_drift: Optional[float] = None

    @property
    def completed(self) -> bool:
        return self.stop_reason == COMPLETED

    def to_dict(self) -> dict:
        return {
            'stop_reason': self.stop_reason,
            'steps': int(len(self.times) - 1),
            't_final': float(self.times[-1]),
            'end': [float(v) for v in self.points[-1]],
            'hamiltonian_drift': self.hamiltonian_drift,
        }


def _evaluate(field, state: np.ndarray) -> np.ndarray:
    u, v = field(state[:, 0], state[:, 1])
    out = np.empty_like(state)
    out[:, 0] = u
    out[:, 1] = v
    return out


def _rk4_step(field, state: np.ndarray, h: float) -> np.ndarray:
    k1 = _evaluate(field, state)
    k2 = _evaluate(field, state + 0.5 * h * k1)
    k3 = _evaluate(field, state + 0.5 * h * k2)
    k4 = _evaluate(field, state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _in_box(state: np.ndarray, box: Box) -> np.ndarray:
    x0, x1, y0, y1 = box
    return (state[:, 0] >= x0) & (state[:, 0] <= x1) & (state[:, 1] >= y0) & (state[:, 1] <= y1)


def integrate_ensemble(field, starts: Sequence[Sequence[float]], t_end: float,
                       step: Optional[float] = None, box: Optional[Box] = None,
                       max_steps: Optional[int] = None) -> EnsembleResult:
    """
    RK4 à pas fixe sur toutes les graines à la fois (t_end < 0: temps rétrograde).

    Une graine sortie de la boîte ou devenue non finie est figée; son dernier
    sommet valide est à stop_index.
    """
    step = config.rk4_step if step is None else step
    box = config.bounding_box if box is None else box
    if step <= 0:
        raise InvalidParameter(f"--step: pas strictement positif attendu, reçu {step}")

    n_steps = int(round(abs(t_end) / step))
    if max_steps is not None:
        n_steps = min(n_steps, max_steps)
    h = step if t_end >= 0 else -step

    state = np.array(starts, dtype=float).reshape(-1, 2)
    n = state.shape[0]
    paths = np.full((n_steps + 1, n, 2), np.nan)
    paths[0] = state
    stop_index = np.full(n, n_steps, dtype=int)
    reasons = [COMPLETED] * n
    active = np.isfinite(state).all(axis=1) & _in_box(state, box)
    for i in np.flatnonzero(~active):
        stop_index[i] = 0
        reasons[i] = NON_FINITE if not np.isfinite(state[i]).all() else OUT_OF_BOX

    with np.errstate(over='ignore', invalid='ignore'):
        for s in range(1, n_steps + 1):
            if not active.any():
                break
            idx = np.flatnonzero(active)
            new = _rk4_step(field, state[idx], h)

            finite = np.isfinite(new).all(axis=1)
            inside = finite & _in_box(np.where(finite[:, None], new, 0.0), box)
            for pos in np.flatnonzero(~inside):
                stop_index[idx[pos]] = s - 1
                reasons[idx[pos]] = OUT_OF_BOX if finite[pos] else NON_FINITE
            active[idx[~inside]] = False

            keep = idx[inside]
            state[keep] = new[inside]
            paths[s, keep] = new[inside]

    times = h * np.arange(n_steps + 1)
    return EnsembleResult(times=times, paths=paths, stop_index=stop_index, reasons=reasons)


def integrate_trajectory(field, start: Tuple[float, float], t_end: float,
                         step: Optional[float] = None, box: Optional[Box] = None) -> Trajectory:
    """Trajectoire unique avec rapport de conservation si le champ a un hamiltonien"""
    result = integrate_ensemble(field, [start], t_end, step, box)
    points = result.path(0)
    trajectory = Trajectory(times=result.path_times(0), points=points, stop_reason=result.reasons[0])

    if hasattr(field, 'hamiltonian'):
        H = field.hamiltonian()
        values = H(points[:, 0], points[:, 1])
        trajectory.hamiltonian_drift = float(np.max(np.abs(values - values[0])))

    if not trajectory.completed:
        logger.debug(f"Intégration arrêtée à t={trajectory.times[-1]:.6g} ({trajectory.stop_reason})")
        raise NonFiniteState(
            f"état hors domaine à t={trajectory.times[-1]:.6g} ({trajectory.stop_reason})",
            trajectory=trajectory,
            reason=trajectory.stop_reason
        )
    return trajectory
