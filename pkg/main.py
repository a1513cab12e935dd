#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               MARTINET FIELDS - CLI ORCHESTRATOR                             ║
║                                                                              ║
║  classify | conjugate | verify | unfold | equilibria | portrait | sweep      ║
║  saddle-sweep | selfcheck                                                    ║
║                                                                              ║
║  Sorties JSON sur stdout, CSV/SVG via --out                                  ║
║  Codes retour: 0 succès, 2 erreur de validation, 1 erreur de calcul          ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO

from loguru import logger

from checks import PropertyCheckEngine
from classify import classify_field
from config import config
from dynamics import (
    a_sweep,
    bifurcation_sweep,
    equilibria_on_line,
    fixed_line_detect,
    phase_portrait,
)
from jets import Jet
from monitoring import MetricsExporter
from mufields import (
    MartinetForm,
    PlanarMuField,
    lie_derivative_alpha,
    lie_derivative_mu,
    lift_to_3d,
    pushforward,
    verify_conjugacy,
)
from unfold import PlanarUnfolding, UnfoldingFamily, f2_family, unfold_planar
from utils.errors import ComputationError, InvalidParameter, ValidationError
from utils.helpers import (
    parse_coefficient,
    parse_float_list,
    parse_jet_string,
    parse_range,
    parse_window,
)


@dataclass
class RunConfig:
    """Arguments d'une invocation, chaînes brutes parsées par chaque commande"""
    command: str
    jet: Optional[str] = None
    psi: Optional[str] = None
    g: Optional[str] = None
    descriptor: Optional[str] = None
    order: Optional[int] = None
    exact: bool = False
    tol: Optional[float] = None
    k: int = 2
    a: str = "1"
    lambdas: Optional[str] = None
    family: str = "f2"
    window: str = "-2:1:-2:2"
    grid: int = 20
    step: Optional[float] = None
    max_steps: Optional[int] = None
    out: Optional[str] = None
    l1: Optional[str] = None
    l2: float = 1.0
    n_jobs: Optional[int] = None
    trials: int = 10
    seed: int = 42
    log_level: Optional[str] = None
    metrics: Optional[str] = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> 'RunConfig':
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in vars(ns).items() if k in names})


# ══════════════════════════════════════════════════════════════════════════════
# PARSER
# ══════════════════════════════════════════════════════════════════════════════

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--log-level', dest='log_level', default=None, help='Niveau loguru (défaut: WARNING)')
    common.add_argument('--metrics', default=None, help='Fichier texte Prometheus')

    parser = argparse.ArgumentParser(prog='martinet', description='Martinet Fields - champs préservant μ = (1+x)dy')
    sub = parser.add_subparsers(dest='command', required=True)

    def jet_options(p, psi: bool = False, jet_required: bool = True):
        p.add_argument('--jet', required=jet_required, help='Coefficients c0,c1,... de f')
        if psi:
            p.add_argument('--psi', default=None, help='Coefficients de ψ (ψ(0)=0, ψ\'(0)=1)')
        p.add_argument('--order', type=int, default=None, help='Ordre de troncature N')
        p.add_argument('--exact', action='store_true', help='Noyau rationnel exact')

    def family_options(p):
        p.add_argument('--k', type=int, default=2, help='Codimension k ≥ 2')
        p.add_argument('--a', default="1", help='Coefficient a')
        p.add_argument('--lambda', dest='lambdas', required=True, help='λ₁,...,λ_k')

    p = sub.add_parser('classify', parents=[common], help='Classer le germe f')
    jet_options(p)

    p = sub.add_parser('conjugate', parents=[common], help='g = f(ψ)/ψ\'')
    jet_options(p, psi=True)

    p = sub.add_parser('verify', parents=[common], help='Vérifier Dφ·X_g = X_f∘φ')
    jet_options(p, psi=True, jet_required=False)
    p.add_argument('--g', default=None, help='Coefficients de g (défaut: poussée de f par ψ)')
    p.add_argument('--descriptor', default=None, help='Descripteur JSON {"f", "psi", "sign"} ou sortie de classify')
    p.add_argument('--tol', type=float, default=None, help='Tolérance du résidu')

    p = sub.add_parser('unfold', parents=[common], help='Déploiement versel F(λ)')
    family_options(p)
    p.add_argument('--exact', action='store_true', help='Noyau rationnel exact')

    p = sub.add_parser('equilibria', parents=[common], help='Équilibres sur x = -1')
    family_options(p)

    p = sub.add_parser('portrait', parents=[common], help='Portrait de phase SVG/CSV')
    family_options(p)
    p.add_argument('--family', choices=['f2', 'unfold'], default='f2')
    p.add_argument('--window', default="-2:1:-2:2", help='x0:x1:y0:y1')
    p.add_argument('--grid', type=int, default=20, help='Graines par côté')
    p.add_argument('--step', type=float, default=None)
    p.add_argument('--max-steps', dest='max_steps', type=int, default=None)
    p.add_argument('--out', required=True, help='FICHIER.svg ou FICHIER.csv')

    p = sub.add_parser('sweep', parents=[common], help='Balayage en λ₁ de F₂')
    p.add_argument('--a', default="1")
    p.add_argument('--l2', type=float, default=1.0)
    p.add_argument('--l1', required=True, help='LO:HI:N')
    p.add_argument('--n-jobs', dest='n_jobs', type=int, default=None)
    p.add_argument('--out', required=True, help='FICHIER.csv')

    p = sub.add_parser('saddle-sweep', parents=[common], help='Balayage en a à λ₁ fixé')
    p.add_argument('--l1', default="0")
    p.add_argument('--l2', type=float, default=1.0)
    p.add_argument('--a', required=True, help='LO:HI:N')
    p.add_argument('--n-jobs', dest='n_jobs', type=int, default=None)
    p.add_argument('--out', required=True, help='FICHIER.csv')

    p = sub.add_parser('selfcheck', parents=[common], help='Contrôles de propriétés')
    p.add_argument('--trials', type=int, default=10)
    p.add_argument('--seed', type=int, default=42)

    return parser


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None):
    logger.remove()
    logger.add(sys.stderr, level=(level or config.log_level).upper(),
               format="<level>{level: <8}</level> | {name}:{function} - {message}")
    if log_file:
        logger.add(log_file, rotation="1 day", level="DEBUG")


# ══════════════════════════════════════════════════════════════════════════════
# COMMANDES
# ══════════════════════════════════════════════════════════════════════════════

def _emit(data: Dict, out: TextIO):
    out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def _jet(text: Optional[str], cfg: RunConfig, flag: str = "--jet") -> Jet:
    if text is None:
        raise ValidationError(f"{flag}: valeur manquante")
    coeffs = parse_jet_string(text, cfg.exact, flag)
    if cfg.order is not None and cfg.order < 0:
        raise InvalidParameter(f"--order: entier positif attendu, reçu {cfg.order}")
    # Sans --order: troncature par défaut, jamais en dessous des coefficients fournis
    order = cfg.order if cfg.order is not None else max(config.trunc_order, len(coeffs) - 1)
    return Jet.from_coeffs(coeffs, order, cfg.exact)


def _family(cfg: RunConfig) -> UnfoldingFamily:
    if cfg.exact:
        a = parse_coefficient(cfg.a, True)
        lambdas = parse_jet_string(cfg.lambdas, True, "--lambda")
    else:
        a = _float(cfg.a, "--a")
        lambdas = parse_float_list(cfg.lambdas, "--lambda")
    return UnfoldingFamily(cfg.k, a, tuple(lambdas))


def _float(text: str, flag: str) -> float:
    try:
        return float(parse_coefficient(text, exact=False))
    except ValidationError as e:
        raise ValidationError(f"{flag}: {e}") from e


def _out_path(cfg: RunConfig, suffixes: List[str]) -> Path:
    path = Path(cfg.out)
    if path.suffix.lower().lstrip('.') not in suffixes:
        raise InvalidParameter(f"--out: extension {'/'.join(suffixes)} attendue, reçu {cfg.out!r}")
    return path


def cmd_classify(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    f = _jet(cfg.jet, cfg)
    result = classify_field(PlanarMuField(f))
    metrics.record_classification(result.germ.kind.value)
    _emit(result.to_dict(), out)
    return 0


def cmd_conjugate(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    f = _jet(cfg.jet, cfg)
    psi = _jet(cfg.psi, cfg, "--psi")
    g = pushforward(f, psi)
    _emit({'order': g.trunc_order, 'g': g.to_json()}, out)
    return 0


def _read_descriptor(path: str) -> Dict:
    """{"f": [...], "psi": [...], "sign": ±1}, ou la sortie de classify (psi, normal_form)"""
    try:
        descriptor = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise ValidationError(f"--descriptor: lecture impossible ({e})") from e
    if not isinstance(descriptor, dict):
        raise ValidationError("--descriptor: objet JSON attendu")
    for key in ('f', 'psi', 'normal_form'):
        if descriptor.get(key) is not None and not isinstance(descriptor[key], list):
            raise ValidationError(f"--descriptor: '{key}' doit être une liste de coefficients")
    return descriptor


def cmd_verify(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    f_text, psi_text, g_text, sign = cfg.jet, cfg.psi, cfg.g, 1

    if cfg.descriptor:
        descriptor = _read_descriptor(cfg.descriptor)
        joined = {k: ",".join(str(v) for v in descriptor[k])
                  for k in ('f', 'psi', 'normal_form') if descriptor.get(k) is not None}
        f_text = f_text if f_text is not None else joined.get('f')
        psi_text = psi_text if psi_text is not None else joined.get('psi')
        g_text = g_text if g_text is not None else joined.get('normal_form')
        sign = descriptor.get('sign', 1)

    f = _jet(f_text, cfg)
    psi = _jet(psi_text, cfg, "--psi")
    g = pushforward(f, psi) if g_text is None else _jet(g_text, cfg, "--g")
    try:
        form = MartinetForm(sign)
    except InvalidParameter as e:
        raise InvalidParameter(f"--descriptor: {e}") from e

    report = verify_conjugacy(f, g, psi, tol=cfg.tol)
    # Le relèvement de X_f préserve α = (1+x)dy ± z dz
    alpha = lie_derivative_alpha(lift_to_3d(PlanarMuField(f)), form)
    report.details['sign'] = form.sign
    report.details['alpha_preserved'] = alpha.is_zero
    report.passed = report.passed and alpha.is_zero

    metrics.record_conjugacy(report.passed, report.max_residual)
    _emit(report.to_dict(), out)
    if not report.passed:
        logger.warning(f"⚠️ Conjugaison non vérifiée: résidu {report.max_residual:.3e}")
        return 1
    return 0


def cmd_unfold(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    field = PlanarUnfolding(_family(cfg))
    data = field.to_dict()
    data['preserves_mu'] = lie_derivative_mu(field).is_zero()
    _emit(data, out)
    return 0


def cmd_equilibria(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    family = _family(cfg)
    reports = equilibria_on_line(family.k, family.a, family.lambdas)
    fixed = fixed_line_detect(unfold_planar(family.k, family.a, family.lambdas))
    metrics.record_equilibria(reports)
    _emit({
        'count': len(reports),
        'equilibria': [eq.to_dict() for eq in reports],
        'fixed_line': fixed.to_dict() if fixed else None,
    }, out)
    return 0


def cmd_portrait(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    path = _out_path(cfg, ['svg', 'csv'])
    window = parse_window(cfg.window, "--window")
    if cfg.family == 'f2':
        lambdas = parse_float_list(cfg.lambdas, "--lambda")
        if len(lambdas) != 2:
            raise ValidationError(f"--lambda: 2 paramètres attendus pour f2, reçu {len(lambdas)}")
        field = f2_family(_float(cfg.a, "--a"), lambdas[0], lambdas[1])
    else:
        field = PlanarUnfolding(_family(cfg))

    artifact = phase_portrait(field, window, cfg.grid, path.suffix.lower().lstrip('.'),
                              step=cfg.step, max_steps=cfg.max_steps)
    artifact.write(path)
    metrics.record_portrait(artifact.report)
    _emit({'out': str(path), **artifact.report}, out)
    return 0


def cmd_sweep(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    path = _out_path(cfg, ['csv'])
    lo, hi, n = parse_range(cfg.l1, "--l1")
    diagram = bifurcation_sweep(_float(cfg.a, "--a"), cfg.l2, (lo, hi), n, n_jobs=cfg.n_jobs)
    _write_csv(diagram.to_frame(), path)
    metrics.record_sweep(diagram.critical_values)
    _emit({'out': str(path), **diagram.to_dict()}, out)
    return 0


def cmd_saddle_sweep(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    path = _out_path(cfg, ['csv'])
    lo, hi, n = parse_range(cfg.a, "--a")
    sweep = a_sweep(_float(cfg.l1, "--l1"), cfg.l2, (lo, hi), n, n_jobs=cfg.n_jobs)
    _write_csv(sweep.to_frame(), path)
    metrics.record_sweep(sweep.crossings)
    _emit({'out': str(path), **sweep.to_dict()}, out)
    return 0


def cmd_selfcheck(cfg: RunConfig, metrics: MetricsExporter, out: TextIO) -> int:
    results = PropertyCheckEngine(seed=cfg.seed, trials=cfg.trials).run_all_checks()
    metrics.record_selfcheck(results)
    _emit(results, out)
    return 0 if results['overall_status'] == 'passed' else 1


def _write_csv(frame, path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=f"%.{config.float_digits}g", lineterminator="\n")


COMMANDS: Dict[str, Callable[[RunConfig, MetricsExporter, TextIO], int]] = {
    'classify': cmd_classify,
    'conjugate': cmd_conjugate,
    'verify': cmd_verify,
    'unfold': cmd_unfold,
    'equilibria': cmd_equilibria,
    'portrait': cmd_portrait,
    'sweep': cmd_sweep,
    'saddle-sweep': cmd_saddle_sweep,
    'selfcheck': cmd_selfcheck,
}


# ══════════════════════════════════════════════════════════════════════════════
# ENTRÉE
# ══════════════════════════════════════════════════════════════════════════════

def run(cfg: RunConfig, metrics: Optional[MetricsExporter] = None, out: Optional[TextIO] = None) -> int:
    """Exécuter une commande: 0 succès, 2 validation, 1 calcul"""
    metrics = metrics or MetricsExporter()
    out = out or sys.stdout
    start = time.perf_counter()

    try:
        status = COMMANDS[cfg.command](cfg, metrics, out)
    except ValidationError as e:
        logger.debug(f"Validation: {e}")
        print(f"{cfg.command}: erreur: {e}", file=sys.stderr)
        status = 2
    except ComputationError as e:
        logger.debug(f"Calcul: {e}")
        print(f"{cfg.command}: échec du calcul: {e}", file=sys.stderr)
        status = 1

    metrics.record_command(cfg.command, status, time.perf_counter() - start)
    metrics.export(cfg.metrics or config.metrics_file)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    cfg = RunConfig.from_namespace(ns)
    setup_logging(cfg.log_level, config.log_file)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
