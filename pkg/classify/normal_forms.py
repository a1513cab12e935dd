#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               CLASSIFICATION DES GERMES - FORMES NORMALES                    ║
║                                                                              ║
║  Modèles locaux:                                                             ║
║  • X_0 = a ∂y                            (f(0) ≠ 0)                          ║
║  • X_1 = -a(1+x)∂x + a y ∂y              (f(0) = 0, f'(0) ≠ 0)               ║
║  • X_k, invariants (k, a, d)             (f = a y^k + ..., k ≥ 2)            ║
║                                                                              ║
║  Les conjugaisons sont tangentes à l'identité: a n'est jamais normalisé.     ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Optional, Union

import sympy
from loguru import logger

from jets import Flat, Jet, jet_order, ps_integrate, ps_reciprocal, ps_reversion
from jets.power_series import _is_zero
from mufields import PlanarMuField, function_from_field, jet_to_sympy, pushforward
from mufields.fields import Y_SYM
from utils.errors import InsufficientOrder, LeadingCoefficientZero, ZeroConstantTerm
from utils.helpers import to_json_value

Number = Union[int, float, Fraction]


class GermKind(Enum):
    REGULAR0 = "regular0"
    REGULAR1 = "regular1"
    DEGENERATE = "degenerate"
    FLAT = "flat"


def _fmt(value: Number) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return f"{value:g}"


@dataclass
class GermClass:
    """Résultat de classification d'un germe f"""
    kind: GermKind
    order: int
    a: Optional[Number] = None
    k: Optional[int] = None
    d: Optional[Number] = None
    psi: Optional[Jet] = None
    normal_form: Optional[Jet] = None

    @property
    def name(self) -> str:
        if self.kind == GermKind.FLAT:
            return "flat"
        return f"X_{self.k}"

    @property
    def label(self) -> str:
        if self.kind == GermKind.FLAT:
            return f"flat (N={self.order})"
        if self.kind == GermKind.DEGENERATE:
            return f"{self.name}, a={_fmt(self.a)}, d={_fmt(self.d)}"
        return f"{self.name}, a={_fmt(self.a)}"

    def invariants(self):
        return self.k, self.a, self.d

    def to_dict(self) -> dict:
        if self.kind == GermKind.FLAT:
            return {'type': self.kind.value, 'order': self.order}
        return {
            'type': self.kind.value,
            'k': self.k,
            'a': to_json_value(self.a),
            'd': None if self.d is None else to_json_value(self.d),
            'psi': self.psi.to_json() if self.psi is not None else None,
            'normal_form': self.normal_form.to_json() if self.normal_form is not None else None,
            'label': self.label,
        }


class DegenerateForm(NamedTuple):
    k: int
    a: Number
    d: Number
    psi: Jet


class RescaledModel(NamedTuple):
    """± y^k + d' y^(2k-1), obtenu avec y ↦ c·y (ψ'(0) = c ≠ 1)"""
    sign: int
    d: float
    scale: float


@dataclass
class FieldClassification:
    """Classification d'un champ plan avec son modèle local"""
    germ: GermClass
    model: str
    jacobian: Optional[List[List[Number]]] = None
    eigenvalues: Optional[List[Number]] = None
    rescaled: Optional[RescaledModel] = None

    @property
    def label(self) -> str:
        return self.germ.label

    def to_dict(self) -> dict:
        data = self.germ.to_dict()
        data['model'] = self.model
        if self.jacobian is not None:
            data['jacobian'] = [[to_json_value(v) for v in row] for row in self.jacobian]
            data['eigenvalues'] = [to_json_value(v) for v in self.eigenvalues]
        if self.rescaled is not None:
            data['rescaled'] = self.rescaled._asdict()
        return data


# ══════════════════════════════════════════════════════════════════════════════
# NORMALISATIONS
# ══════════════════════════════════════════════════════════════════════════════

def normalize_regular(f: Jet) -> Jet:
    """
    Cas f(0) = a ≠ 0: ψ = y + ∫(a/f - 1), i.e. ψ' = a/f et f·ψ' = a.

    Renvoyé à l'ordre N+1 pour que ψ' soit connu jusqu'à l'ordre N.
    """
    a = f.coeffs[0]
    if _is_zero(a, f.exact):
        raise ZeroConstantTerm("normalisation régulière: f(0) = 0")
    dpsi = ps_reciprocal(f) * a
    return ps_integrate(dpsi, max_order=f.trunc_order + 1)


def _normalize_order_by_order(f: Jet, k: int, a: Number) -> Jet:
    """
    ψ = y + Σ p_j y^j tel que f(ψ)/ψ' = a y^k (+ d y^(2k-1)) mod y^(N+1).

    Ajouter p y^j à ψ modifie g à l'ordre k+j-1 de a(k-j)p: tous les ordres
    sont éliminables sauf j = k, où reste l'invariant d.
    """
    order = f.trunc_order
    psi = Jet.identity(order, f.exact)

    for j in range(2, order - k + 2):
        if j == k:
            continue
        m = k + j - 1
        residue = pushforward(f, psi).coeffs[m]
        if residue == 0:
            continue
        p = -residue / (a * (k - j))
        psi = psi + Jet.monomial(j, p, order, f.exact)
        logger.debug(f"ordre {m}: p_{j} = {p}")

    return psi


def normalize_linear(f: Jet) -> Jet:
    """Cas f(0) = 0, f'(0) = a ≠ 0: ψ avec f(ψ)/ψ' = a y mod y^(N+1)"""
    if not _is_zero(f.coeffs[0], f.exact) or f.trunc_order < 1 or _is_zero(f.coeffs[1], f.exact):
        raise LeadingCoefficientZero("linéarisation: il faut f(0) = 0 et f'(0) ≠ 0")
    return _normalize_order_by_order(f, 1, f.coeffs[1])


def normalize_degenerate(f: Jet, k: Optional[int] = None) -> DegenerateForm:
    """(k, a, d, ψ) avec f(ψ)/ψ' = a y^k + d y^(2k-1) mod y^(N+1)"""
    detected = jet_order(f)
    if k is None:
        if isinstance(detected, Flat) or detected < 2:
            raise LeadingCoefficientZero(f"pas de singularité dégénérée (ordre du jet: {detected})")
        k = detected
    elif detected != k:
        raise LeadingCoefficientZero(f"coefficient de y^{k} nul ou termes d'ordre inférieur (ordre {detected})")

    if f.trunc_order < 2 * k - 1:
        raise InsufficientOrder(f"k={k} demande N ≥ {2 * k - 1}, reçu N={f.trunc_order}")

    a = f.coeffs[k]
    psi = _normalize_order_by_order(f, k, a)
    d = pushforward(f, psi).coeffs[2 * k - 1]
    return DegenerateForm(k, a, d, psi)


def rescaled_model(k: int, a: Number, d: Number) -> RescaledModel:
    """
    Forme normale sous conjugaison linéaire quelconque y ↦ c·y.

    Le coefficient de y^k devient a c^(k-1): +1 pour k pair, signe de a pour k impair.
    """
    a, d = float(a), float(d)
    scale = abs(a) ** (-1.0 / (k - 1))
    if k % 2 == 0:
        scale = scale if a > 0 else -scale
        sign = 1
    else:
        sign = 1 if a > 0 else -1
    return RescaledModel(sign=sign, d=d / a ** 2, scale=scale)


# ══════════════════════════════════════════════════════════════════════════════
# CLASSIFICATION
# ══════════════════════════════════════════════════════════════════════════════

def classify_germ(f: Jet, zero_tol: Optional[float] = None) -> GermClass:
    """Type du germe, invariants et conjugaison ψ avec pushforward(f, ψ) = forme normale"""
    order = f.trunc_order
    m = jet_order(f, zero_tol)

    if isinstance(m, Flat):
        logger.warning(f"⚠️ Germe plat jusqu'à l'ordre {order}: classification indéterminée")
        return GermClass(kind=GermKind.FLAT, order=order)

    if m == 0:
        a = f.coeffs[0]
        psi = ps_reversion(normalize_regular(f))
        return GermClass(GermKind.REGULAR0, order, a=a, k=0, psi=psi,
                         normal_form=Jet.constant(a, order, f.exact))

    if m == 1:
        a = f.coeffs[1]
        psi = normalize_linear(f)
        return GermClass(GermKind.REGULAR1, order, a=a, k=1, psi=psi,
                         normal_form=Jet.monomial(1, a, order, f.exact))

    if order < 2 * m - 1:
        raise InsufficientOrder(f"k={m} demande N ≥ {2 * m - 1}, reçu N={order}")

    k, a, d, psi = normalize_degenerate(f, m)
    normal = Jet.monomial(k, a, order, f.exact) + Jet.monomial(2 * k - 1, d, order, f.exact)
    logger.debug(f"Germe dégénéré: k={k}, a={a}, d={d}")
    return GermClass(GermKind.DEGENERATE, order, a=a, k=k, d=d, psi=psi, normal_form=normal)


def _model_string(normal: Optional[Jet]) -> str:
    if normal is None:
        return "0"
    fy = jet_to_sympy(normal)
    fp = sympy.diff(fy, Y_SYM)
    parts = []
    if fp != 0:
        parts.append(f"-(1 + x)*({sympy.sstr(fp)})*d/dx")
    if fy != 0:
        parts.append(f"({sympy.sstr(fy)})*d/dy")
    return " + ".join(parts) if parts else "0"


def classify_field(X) -> FieldClassification:
    """Classification d'un champ préservant μ, modèle local et jacobienne à l'origine"""
    f = X.f if isinstance(X, PlanarMuField) else function_from_field(X)
    germ = classify_germ(f)

    result = FieldClassification(germ=germ, model=_model_string(germ.normal_form))

    # X(0,0) = (-f'(0), f(0)): jacobienne triangulaire supérieure, diagonale (-f'(0), f'(0))
    c = f.coeffs
    if f.trunc_order >= 2 and _is_zero(c[0], f.exact) and _is_zero(c[1], f.exact):
        zero = c[0] * 0
        result.jacobian = [[zero - c[1], zero - 2 * c[2]], [zero, zero + c[1]]]
        result.eigenvalues = [result.jacobian[0][0], result.jacobian[1][1]]

    if germ.kind == GermKind.DEGENERATE:
        result.rescaled = rescaled_model(germ.k, germ.a, germ.d)

    return result
