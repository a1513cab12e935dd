#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               AUTO-VÉRIFICATION DES PROPRIÉTÉS                               ║
║                                                                              ║
║  Contrôles (tirages reproductibles, graine fixe):                            ║
║  • Anneau des jets: distributivité, réciproque, réversion                    ║
║  • Composition associative, règle de dérivation en chaîne                    ║
║  • Résidus L_X μ et L_X α nuls pour X = X_f                                  ║
║  • Invariance de (k, a, d) par poussée en avant                              ║
║  • Absence de singularité hyperbolique, φ*μ = μ                              ║
║  • Conservation du hamiltonien le long de RK4                                ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from classify import classify_field, classify_germ
from dynamics import integrate_trajectory
from jets import Jet, ps_compose, ps_derive, ps_reciprocal, ps_reversion
from mufields import (
    MartinetForm,
    PlanarMuField,
    lie_derivative_alpha,
    lie_derivative_mu,
    lift_to_3d,
    mu_diffeo,
    pullback_mu_residual,
    pushforward,
)


# ══════════════════════════════════════════════════════════════════════════════
# TIRAGES
# ══════════════════════════════════════════════════════════════════════════════

def random_fraction(rng: np.random.Generator, bound: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))


def random_jet(rng: np.random.Generator, order: int, exact: bool = True, vanish_below: int = 0,
               leading: Optional[int] = None, bound: int = 5) -> Jet:
    """Jet aléatoire nul sous `vanish_below`, coefficient de y^leading forcé non nul"""
    coeffs = [Fraction(0)] * vanish_below + [random_fraction(rng, bound) for _ in range(order + 1 - vanish_below)]
    if leading is not None:
        while coeffs[leading] == 0:
            coeffs[leading] = random_fraction(rng, bound)
    jet = Jet.from_coeffs(coeffs, order, exact=True)
    return jet if exact else jet.as_float()


def random_psi(rng: np.random.Generator, order: int, scale: int = 10, exact: bool = True) -> Jet:
    """ψ = y + c2 y² + c3 y³ avec |c| ≤ 1/scale"""
    coeffs = [0, 1] + [Fraction(int(rng.integers(-1, 2)), scale) for _ in range(2)]
    jet = Jet.from_coeffs(coeffs, order, exact=True)
    return jet if exact else jet.as_float()


@dataclass
class PropertyCheck:
    name: str
    description: str
    run: Callable[[np.random.Generator, int], Tuple[bool, float]]


@dataclass
class PropertyCheckResult:
    check: str
    passed: bool
    max_error: float
    trials: int
    details: Dict = field(default_factory=dict)


# ══════════════════════════════════════════════════════════════════════════════
# CONTRÔLES
# ══════════════════════════════════════════════════════════════════════════════

def _check_ring(rng, trials):
    for _ in range(trials):
        a, b, c = (random_jet(rng, 6) for _ in range(3))
        if (a + b) * c != a * c + b * c or a * b != b * a:
            return False, 1.0
    return True, 0.0


def _check_reciprocal(rng, trials):
    for _ in range(trials):
        a = random_jet(rng, 6, leading=0)
        if a * ps_reciprocal(a) != Jet.constant(1, 6):
            return False, 1.0
    return True, 0.0


def _check_reversion(rng, trials):
    for _ in range(trials):
        g = random_jet(rng, 6, vanish_below=1, leading=1)
        g = g * ps_reciprocal(Jet.constant(g[1], 6))
        if ps_compose(g, ps_reversion(g)) != Jet.identity(6):
            return False, 1.0
    return True, 0.0


def _check_compose(rng, trials):
    for _ in range(trials):
        f = random_jet(rng, 5)
        g, h = random_jet(rng, 5, vanish_below=1), random_jet(rng, 5, vanish_below=1)
        if ps_compose(f, ps_compose(g, h)) != ps_compose(ps_compose(f, g), h):
            return False, 1.0
    return True, 0.0


def _check_chain_rule(rng, trials):
    for _ in range(trials):
        f, g = random_jet(rng, 6), random_jet(rng, 6, vanish_below=1)
        lhs = ps_derive(ps_compose(f, g))
        rhs = ps_compose(ps_derive(f), g.with_order(5)) * ps_derive(g)
        if lhs != rhs:
            return False, 1.0
    return True, 0.0


def _check_mu_residual(rng, trials):
    for _ in range(trials):
        X = PlanarMuField(random_jet(rng, 6))
        if not lie_derivative_mu(X).is_zero():
            return False, 1.0
        for sign in (1, -1):
            if not lie_derivative_alpha(lift_to_3d(X), MartinetForm(sign)).is_zero:
                return False, 1.0
    return True, 0.0


def _check_conjugacy_invariance(rng, trials):
    for i in range(trials):
        k = 2 + i % 2
        order = 2 * k + 4
        f = random_jet(rng, order, vanish_below=k, leading=k)
        g = pushforward(f, random_psi(rng, order))
        if classify_germ(g).invariants() != classify_germ(f).invariants():
            return False, 1.0
    return True, 0.0


def _check_no_hyperbolic(rng, trials):
    for i in range(trials):
        k = 2 + i % 2
        f = random_jet(rng, 2 * k + 1, vanish_below=k, leading=k)
        result = classify_field(PlanarMuField(f))
        if result.eigenvalues is None or any(e != 0 for e in result.eigenvalues):
            return False, 1.0
    return True, 0.0


def _check_pullback(rng, trials):
    worst = 0.0
    for _ in range(trials):
        phi = mu_diffeo(random_psi(rng, 6))
        worst = max(worst, pullback_mu_residual(phi))
    return worst <= 1e-9, worst


def _check_hamiltonian(rng, trials):
    worst = 0.0
    for _ in range(trials):
        a = float(rng.uniform(0.5, 1.5))
        X = PlanarMuField(Jet.from_coeffs([0.0, a], 4, exact=False))
        trajectory = integrate_trajectory(X, (0.0, float(rng.uniform(0.05, 0.2))), 1.0, step=1e-2)
        worst = max(worst, trajectory.hamiltonian_drift)
    return worst <= 1e-8, worst


class PropertyCheckEngine:
    """Moteur d'auto-vérification"""

    def __init__(self, seed: int = 42, trials: int = 10):
        self.seed = seed
        self.trials = trials

        self.checks: List[PropertyCheck] = [
            PropertyCheck("ring_axioms", "(a+b)·c = a·c + b·c, a·b = b·a", _check_ring),
            PropertyCheck("reciprocal", "a · (1/a) = 1", _check_reciprocal),
            PropertyCheck("reversion", "g ∘ g⁻¹ = y", _check_reversion),
            PropertyCheck("compose_associativity", "f∘(g∘h) = (f∘g)∘h", _check_compose),
            PropertyCheck("chain_rule", "(f∘g)' = (f'∘g)·g'", _check_chain_rule),
            PropertyCheck("lie_residuals", "L_X μ = 0 et L_X α = 0 pour X = X_f", _check_mu_residual),
            PropertyCheck("conjugacy_invariance", "(k, a, d) invariants par ψ", _check_conjugacy_invariance),
            PropertyCheck("no_hyperbolic_singularity", "valeurs propres nulles en 0", _check_no_hyperbolic),
            PropertyCheck("pullback_mu", "φ*μ = μ", _check_pullback),
            PropertyCheck("hamiltonian_conservation", "H conservé par RK4", _check_hamiltonian),
        ]

    def run_check(self, check: PropertyCheck) -> PropertyCheckResult:
        rng = np.random.default_rng(self.seed)
        passed, max_error = check.run(rng, self.trials)
        logger.debug(f"Contrôle {check.name}: {'OK' if passed else 'ÉCHEC'} (erreur {max_error:.3e})")
        return PropertyCheckResult(check.name, bool(passed), float(max_error), self.trials,
                                   {'description': check.description})

    def run_all_checks(self) -> Dict:
        """Exécuter tous les contrôles"""
        logger.info("🧪 Démarrage des contrôles de propriétés...")

        results = {
            'seed': self.seed,
            'trials': self.trials,
            'checks': {},
            'overall_status': 'passed',
        }

        for check in self.checks:
            try:
                result = self.run_check(check)
                results['checks'][check.name] = {
                    'passed': result.passed,
                    'max_error': result.max_error,
                    'description': check.description,
                }
                if not result.passed:
                    results['overall_status'] = 'failed'

            except Exception as e:
                logger.error(f"Erreur contrôle {check.name}: {e}")
                results['checks'][check.name] = {'passed': False, 'error': str(e)}
                results['overall_status'] = 'error'

        logger.info(f"🧪 Contrôles terminés: {results['overall_status'].upper()}")
        return results
