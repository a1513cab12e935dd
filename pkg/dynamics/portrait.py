#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               PORTRAITS DE PHASE (SVG / CSV)                                 ║
║                                                                              ║
║  • Graines sur grille uniforme, intégration avant et arrière                 ║
║  • Équilibres superposés: col rouge, nœud bleu, dégénéré noir                ║
║  • Droites de points fixes en pointillés                                     ║
║  • Sorties stables octet par octet d'un lancement à l'autre                  ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

import io
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
from loguru import logger  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from config import config  # noqa: E402
from utils.errors import InvalidParameter  # noqa: E402

from .equilibria import EquilibriumType, field_equilibria, fixed_line_detect  # noqa: E402
from .integrator import COMPLETED, NON_FINITE, integrate_ensemble  # noqa: E402

Window = Tuple[float, float, float, float]

EQUILIBRIUM_COLORS = {
    EquilibriumType.SADDLE: 'red',
    EquilibriumType.NODE: 'blue',
    EquilibriumType.FOCUS: 'green',
    EquilibriumType.DEGENERATE: 'black',
    EquilibriumType.ON_FIXED_LINE: 'black',
}

SVG_MAX_VERTICES = 200


@dataclass
class PortraitArtifact:
    """Contenu texte du portrait et rapport de génération"""
    format: str
    content: str
    report: dict = dc_field(default_factory=dict)

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='') as fh:
            fh.write(self.content)
        return path


def _validate(window: Window, seed_grid: int, out_format: str) -> None:
    if len(window) != 4 or not np.all(np.isfinite(window)):
        raise InvalidParameter(f"--window: rectangle fini attendu, reçu {window}")
    x0, x1, y0, y1 = window
    if x0 >= x1 or y0 >= y1:
        raise InvalidParameter(f"--window: bornes inversées {window}")
    if seed_grid < 1:
        raise InvalidParameter(f"--grid: entier positif attendu, reçu {seed_grid}")
    if out_format not in ('svg', 'csv'):
        raise InvalidParameter(f"--out: format 'svg' ou 'csv' attendu, reçu {out_format!r}")


def seed_points(window: Window, seed_grid: int) -> np.ndarray:
    """Centres des cellules d'une grille n×n, ordre ligne par ligne"""
    x0, x1, y0, y1 = window
    xs = x0 + (np.arange(seed_grid) + 0.5) * (x1 - x0) / seed_grid
    ys = y0 + (np.arange(seed_grid) + 0.5) * (y1 - y0) / seed_grid
    gx, gy = np.meshgrid(xs, ys, indexing='ij')
    return np.column_stack([gx.ravel(), gy.ravel()])


def _trajectories(field, seeds: np.ndarray, step: float, max_steps: int,
                  box: Window) -> Tuple[List[Tuple[int, np.ndarray, np.ndarray]], dict]:
    u, v = field(seeds[:, 0], seeds[:, 1])
    speed = np.hypot(np.broadcast_to(u, seeds[:, 0].shape), np.broadcast_to(v, seeds[:, 1].shape))
    fixed = speed == 0.0

    counts = {'seeds': int(len(seeds)), 'fixed': int(fixed.sum()), 'completed': 0, 'escaped': 0, 'failed': 0}
    moving = np.flatnonzero(~fixed)
    runs = {}
    for direction in (1, -1):
        runs[direction] = integrate_ensemble(field, seeds[moving], direction * step * max_steps,
                                             step, box, max_steps)

    trajectories = []
    for i in range(len(seeds)):
        if fixed[i]:
            trajectories.append((2 * i, np.zeros(1), seeds[i:i + 1]))
            continue
        pos = int(np.searchsorted(moving, i))
        for direction, offset in ((1, 0), (-1, 1)):
            result = runs[direction]
            reason = result.reasons[pos]
            if reason == NON_FINITE:
                counts['failed'] += 1
                continue
            counts['completed' if reason == COMPLETED else 'escaped'] += 1
            trajectories.append((2 * i + offset, result.path_times(pos), result.path(pos)))
    return trajectories, counts


def _render_svg(trajectories, window: Window, equilibria, fixed_ys: List[float]) -> str:
    px = config.svg_pixels
    fig = Figure(figsize=(px / 100.0, px / 100.0), dpi=100)
    ax = fig.add_axes([0.08, 0.08, 0.88, 0.88])
    x0, x1, y0, y1 = window
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_xlabel('x')
    ax.set_ylabel('y')

    segments, points = [], []
    for _, _, path in trajectories:
        if len(path) == 1:
            points.append(path[0])
            continue
        stride = max(1, int(np.ceil(len(path) / SVG_MAX_VERTICES)))
        segments.append(np.vstack([path[::stride], path[-1:]]))
    ax.add_collection(LineCollection(segments, colors='#1f77b4', linewidths=0.6))
    if points:
        pts = np.asarray(points)
        ax.scatter(pts[:, 0], pts[:, 1], s=4, color='#1f77b4')

    for y in fixed_ys:
        ax.axhline(y, linestyle=':', color='black', linewidth=1.2)
    for eq in equilibria:
        ax.scatter([eq.point[0]], [eq.point[1]], s=40, color=EQUILIBRIUM_COLORS[eq.type], zorder=3)

    buffer = io.StringIO()
    with matplotlib.rc_context({'svg.hashsalt': 'martinet-fields'}):
        fig.savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()


def _render_csv(trajectories) -> str:
    frames = [
        pd.DataFrame({'trajectory_id': tid, 't': times, 'x': path[:, 0], 'y': path[:, 1]})
        for tid, times, path in trajectories
    ]
    frame = pd.concat(frames, ignore_index=True) if frames else \
        pd.DataFrame(columns=['trajectory_id', 't', 'x', 'y'])
    return frame.to_csv(index=False, float_format=f"%.{config.float_digits}g", lineterminator="\n")


def phase_portrait(field, window: Window, seed_grid: int, out_format: str = 'svg',
                   step: Optional[float] = None, max_steps: Optional[int] = None) -> PortraitArtifact:
    """Portrait de phase d'un champ plan sur la fenêtre (x0, x1, y0, y1)"""
    _validate(window, seed_grid, out_format)
    step = config.portrait_step if step is None else step
    max_steps = config.portrait_max_steps if max_steps is None else max_steps

    x0, x1, y0, y1 = window
    dx, dy = 0.5 * (x1 - x0), 0.5 * (y1 - y0)
    box = (x0 - dx, x1 + dx, y0 - dy, y1 + dy)

    seeds = seed_points(window, seed_grid)
    trajectories, counts = _trajectories(field, seeds, step, max_steps, box)
    if counts['failed']:
        logger.warning(f"⚠️ {counts['failed']} trajectoire(s) non finie(s) ignorée(s)")

    equilibria, fixed_ys = [], []
    if hasattr(field, 'f'):
        equilibria = field_equilibria(field)
        fixed_ys = sorted({eq.point[1] for eq in equilibria
                           if eq.fixed_line and eq.type != EquilibriumType.ON_FIXED_LINE})
        fixed = fixed_line_detect(field)
        if fixed is not None and fixed.kind == 'x_axis' and not any(abs(y) < 1e-9 for y in fixed_ys):
            fixed_ys.insert(0, 0.0)

    if out_format == 'svg':
        content = _render_svg(trajectories, window, equilibria, fixed_ys)
    else:
        content = _render_csv(trajectories)

    report = {
        **counts,
        'trajectories': len(trajectories),
        'equilibria': [eq.to_dict() for eq in equilibria],
        'fixed_lines': fixed_ys,
        'format': out_format,
    }
    logger.debug(f"Portrait: {report['trajectories']} trajectoires, {counts['escaped']} sorties de boîte")
    return PortraitArtifact(format=out_format, content=content, report=report)
