#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               METRICS EXPORTER                                               ║
║                                                                              ║
║  Compteurs Prometheus d'une exécution CLI:                                   ║
║  • Classifications par type de germe                                         ║
║  • Vérifications de conjugaison                                              ║
║  • Équilibres par type local                                                 ║
║  • Graines de portrait par issue                                             ║
║  • Durée des commandes                                                       ║
║                                                                              ║
║  Export en fichier texte (node_exporter textfile collector)                   ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from pathlib import Path
from typing import Dict, Iterable, Optional

from loguru import logger
from prometheus_client import (
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    Info,
    write_to_textfile,
)

VERSION = "1.0.0"


class MetricsExporter:
    """Registre de métriques privé, alimenté uniquement par la CLI"""

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        self.registry = registry or CollectorRegistry()

        # ══════════════════════════════════════════════════════════════════════
        # CLASSIFICATION
        # ══════════════════════════════════════════════════════════════════════

        self.classifications = Counter(
            'martinet_classifications_total',
            'Germ classifications by type',
            ['type'],
            registry=self.registry
        )

        self.conjugacy_checks = Counter(
            'martinet_conjugacy_checks_total',
            'Conjugacy verifications by outcome',
            ['outcome'],
            registry=self.registry
        )

        self.conjugacy_residual = Gauge(
            'martinet_conjugacy_last_residual',
            'Last conjugacy residual (max over samples)',
            registry=self.registry
        )

        # ══════════════════════════════════════════════════════════════════════
        # DYNAMICS
        # ══════════════════════════════════════════════════════════════════════

        self.equilibria = Counter(
            'martinet_equilibria_total',
            'Equilibria found on x=-1 by local type',
            ['type'],
            registry=self.registry
        )

        self.portrait_seeds = Counter(
            'martinet_portrait_seeds_total',
            'Portrait trajectories by outcome',
            ['outcome'],
            registry=self.registry
        )

        self.critical_values = Gauge(
            'martinet_sweep_critical_values',
            'Critical parameter values detected by the last sweep',
            registry=self.registry
        )

        # ══════════════════════════════════════════════════════════════════════
        # HEALTH
        # ══════════════════════════════════════════════════════════════════════

        self.selfcheck_passed = Gauge(
            'martinet_selfcheck_passed',
            'Property check status (1=passed, 0=failed)',
            ['check'],
            registry=self.registry
        )

        self.commands = Counter(
            'martinet_commands_total',
            'CLI commands by exit status',
            ['command', 'status'],
            registry=self.registry
        )

        self.command_duration = Histogram(
            'martinet_command_duration_seconds',
            'CLI command duration',
            ['command'],
            registry=self.registry
        )

        self.build_info = Info(
            'martinet',
            'Martinet fields toolkit information',
            registry=self.registry
        )
        self.build_info.info({'version': VERSION})

    # ══════════════════════════════════════════════════════════════════════════
    # ENREGISTREMENT
    # ══════════════════════════════════════════════════════════════════════════

    def record_classification(self, germ_type: str):
        self.classifications.labels(type=germ_type).inc()

    def record_conjugacy(self, passed: bool, residual: float):
        self.conjugacy_checks.labels(outcome='passed' if passed else 'failed').inc()
        self.conjugacy_residual.set(residual)

    def record_equilibria(self, reports: Iterable):
        for eq in reports:
            self.equilibria.labels(type=eq.type.value).inc()

    def record_portrait(self, report: Dict):
        for outcome in ('completed', 'escaped', 'failed', 'fixed'):
            self.portrait_seeds.labels(outcome=outcome).inc(report.get(outcome, 0))

    def record_sweep(self, critical_values: Iterable[float]):
        self.critical_values.set(len(list(critical_values)))

    def record_selfcheck(self, results: Dict):
        for name, check in results.get('checks', {}).items():
            self.selfcheck_passed.labels(check=name).set(1 if check.get('passed') else 0)

    def record_command(self, command: str, status: int, duration: float):
        self.commands.labels(command=command, status=str(status)).inc()
        self.command_duration.labels(command=command).observe(duration)

    # ══════════════════════════════════════════════════════════════════════════
    # EXPORT
    # ══════════════════════════════════════════════════════════════════════════

    def export(self, path) -> Optional[Path]:
        """Écrire le registre au format texte Prometheus"""
        if not path:
            return None
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            write_to_textfile(str(path), self.registry)
            logger.debug(f"📊 Métriques écrites dans {path}")
            return path
        except OSError as e:
            logger.error(f"❌ Erreur export métriques: {e}")
            return None
