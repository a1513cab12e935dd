#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               DÉPLOIEMENTS VERSELS DES MODÈLES X_k                           ║
║                                                                              ║
║  F(λ, y) = a y^k + Σ_{i<k} λ_i y^(k-1-i) + λ_k y^(2k-1)                      ║
║  F(λ, x, y) = -(1+x)·∂F/∂y ∂x + F ∂y                                         ║
║                                                                              ║
║  Famille F₂ (k = 2): y² + λ₁ + λ₂ y³, a = 0 autorisé pour le balayage        ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from jets import Jet
from mufields import Hamiltonian, PlanarMuField, jet_to_sympy
from mufields.fields import X_SYM
from utils.errors import BadArity, InvalidParameter
from utils.helpers import to_json_value

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class UnfoldingFamily:
    """Paramètres (k, a, λ₁..λ_k) d'un déploiement"""
    k: int
    a: Number
    lambdas: Tuple[Number, ...]
    allow_zero_a: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'lambdas', tuple(self.lambdas))
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 2:
            raise InvalidParameter(f"--k: entier ≥ 2 attendu, reçu {self.k!r}")
        if len(self.lambdas) != self.k:
            raise BadArity(f"--lambda: {self.k} paramètres attendus, reçu {len(self.lambdas)}")
        if self.a == 0 and not self.allow_zero_a:
            raise InvalidParameter("--a: le coefficient a doit être non nul")

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in (self.a, *self.lambdas))


def _family_jets(family: UnfoldingFamily, order: Optional[int], exact: bool) -> Tuple[Jet, Jet]:
    k, a, lam = family.k, family.a, family.lambdas
    order = 2 * k - 1 if order is None else max(order, 2 * k - 1)

    y_comp = [0] * (order + 1)
    y_comp[k] += a
    for i in range(1, k):
        y_comp[k - 1 - i] += lam[i - 1]
    y_comp[2 * k - 1] += lam[k - 1]

    # i = k-1: facteur (k-1-i) = 0 devant y^(-1), terme absent
    bracket = [0] * (order + 1)
    bracket[k - 1] += a * k
    for i in range(1, k - 1):
        bracket[k - 2 - i] += (k - 1 - i) * lam[i - 1]
    bracket[2 * k - 2] += (2 * k - 1) * lam[k - 1]

    return Jet.from_coeffs(y_comp, order, exact), Jet.from_coeffs(bracket, order, exact)


def unfold_1d(k: int, a: Number, lambdas: Sequence[Number],
              order: Optional[int] = None, exact: Optional[bool] = None) -> Jet:
    """Polynôme a y^k + Σ λ_i y^(k-1-i) + λ_k y^(2k-1), ordre 2k-1 par défaut"""
    family = UnfoldingFamily(k, a, lambdas)
    exact = family.exact if exact is None else exact
    return _family_jets(family, order, exact)[0]


@dataclass(frozen=True)
class PlanarUnfolding:
    """Membre F(λ, ·, ·) du déploiement plan"""
    family: UnfoldingFamily
    order: Optional[int] = None

    @cached_property
    def _jets(self) -> Tuple[Jet, Jet]:
        return _family_jets(self.family, self.order, self.family.exact)

    @property
    def y_component(self) -> Jet:
        return self._jets[0]

    @property
    def x_bracket(self) -> Jet:
        """Crochet de la composante x: aky^(k-1) + Σ(k-1-i)λ_i y^(k-2-i) + (2k-1)λ_k y^(2k-2)"""
        return self._jets[1]

    @property
    def f(self) -> Jet:
        return self.y_component

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        return -(1.0 + x) * self.x_bracket.evaluate(y), self.y_component.evaluate(y) + 0.0 * x

    def jacobian(self, x: float, y: float) -> np.ndarray:
        return self.as_mu_field().jacobian(x, y)

    def symbolic_components(self) -> Tuple[sympy.Expr, sympy.Expr]:
        return -(1 + X_SYM) * jet_to_sympy(self.x_bracket), jet_to_sympy(self.y_component)

    def as_mu_field(self) -> PlanarMuField:
        return PlanarMuField(self.y_component)

    def hamiltonian(self) -> Hamiltonian:
        return Hamiltonian(self.y_component)

    def to_dict(self) -> dict:
        return {
            'k': self.family.k,
            'a': to_json_value(self.family.a),
            'lambdas': [to_json_value(v) for v in self.family.lambdas],
            'x_component': {'factor': '-(1+x)', 'coefficients': self.x_bracket.to_json()},
            'y_component': {'coefficients': self.y_component.to_json()},
        }


def unfold_planar(k: int, a: Number, lambdas: Sequence[Number],
                  order: Optional[int] = None) -> PlanarUnfolding:
    """Champ plan du déploiement, composante y = unfold_1d(k, a, λ)"""
    return PlanarUnfolding(UnfoldingFamily(k, a, lambdas), order)


def f2_family(a: Number, l1: Number, l2: Number) -> PlanarUnfolding:
    """F₂ = -(1+x)[2ay + 3λ₂y²]∂x + (ay² + λ₁ + λ₂y³)∂y"""
    return PlanarUnfolding(UnfoldingFamily(2, a, (l1, l2), allow_zero_a=True))
