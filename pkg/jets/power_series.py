#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               JETS - SÉRIES ENTIÈRES TRONQUÉES                               ║
║                                                                              ║
║  Deux noyaux de coefficients:                                                ║
║  • exact (Fraction) pour la classification et les invariants                 ║
║  • flottant (float64 / numpy) pour la dynamique                              ║
║                                                                              ║
║  Toute l'arithmétique est modulo y^(N+1).                                    ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from config import config
from utils.errors import (
    NonUnitLinearTerm,
    NonzeroInnerConstant,
    ValidationError,
    ZeroConstantTerm,
)
from utils.helpers import parse_coefficient, to_json_value

Number = Union[int, float, Fraction]


def _coerce(value: Number, exact: bool) -> Number:
    if exact:
        return value if isinstance(value, Fraction) else parse_coefficient(value, exact=True)
    return value if type(value) is float else float(value)


def _is_zero(value: Number, exact: bool, tol: Optional[float] = None) -> bool:
    if exact:
        return value == 0
    return abs(value) <= (config.zero_tol if tol is None else tol)


@dataclass(frozen=True)
class Flat:
    """Jet identiquement nul jusqu'à l'ordre N"""
    order: int


@dataclass(frozen=True)
class Jet:
    """Jet tronqué c0 + c1*y + ... + cN*y^N"""
    coeffs: Tuple[Number, ...]
    exact: bool = True

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValidationError("un jet a au moins un coefficient")
        wanted = Fraction if self.exact else float
        if not all(type(c) is wanted for c in self.coeffs):
            object.__setattr__(self, 'coeffs', tuple(_coerce(c, self.exact) for c in self.coeffs))

    # ══════════════════════════════════════════════════════════════════════════
    # CONSTRUCTEURS
    # ══════════════════════════════════════════════════════════════════════════

    @classmethod
    def from_coeffs(cls, values: Iterable[Number], order: Optional[int] = None, exact: bool = True) -> 'Jet':
        """Jet à partir d'une liste, complétée de zéros ou tronquée à `order`"""
        coeffs = list(values)
        if order is None:
            order = max(len(coeffs) - 1, 0)
        coeffs = (coeffs + [0] * (order + 1))[:order + 1]
        return cls(tuple(coeffs), exact)

    @classmethod
    def zero(cls, order: int, exact: bool = True) -> 'Jet':
        return cls.from_coeffs([0], order, exact)

    @classmethod
    def constant(cls, value: Number, order: int, exact: bool = True) -> 'Jet':
        return cls.from_coeffs([value], order, exact)

    @classmethod
    def identity(cls, order: int, exact: bool = True) -> 'Jet':
        return cls.monomial(1, 1, order, exact)

    @classmethod
    def monomial(cls, power: int, coeff: Number, order: int, exact: bool = True) -> 'Jet':
        values = [0] * (order + 1)
        if power <= order:
            values[power] = coeff
        return cls(tuple(values), exact)

    # ══════════════════════════════════════════════════════════════════════════
    # ACCÈS / CONVERSIONS
    # ══════════════════════════════════════════════════════════════════════════

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, index: int) -> Number:
        return self.coeffs[index]

    def __len__(self) -> int:
        return len(self.coeffs)

    def with_order(self, order: int) -> 'Jet':
        """Tronquer ou compléter de zéros"""
        return Jet.from_coeffs(self.coeffs, order, self.exact)

    def as_float(self) -> 'Jet':
        return self if not self.exact else Jet(tuple(float(c) for c in self.coeffs), exact=False)

    @cached_property
    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def evaluate(self, y):
        """Évaluation flottante (scalaire ou tableau numpy)"""
        return np.polyval(self.float_coeffs[::-1], y)

    def is_zero(self, tol: Optional[float] = None) -> bool:
        return all(_is_zero(c, self.exact, tol) for c in self.coeffs)

    def to_json(self) -> List[Union[int, float, str]]:
        return [to_json_value(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Union[int, float, str]], order: Optional[int] = None,
                  exact: Optional[bool] = None) -> 'Jet':
        """Les chaînes "p/q" et entiers sont exacts; un flottant bascule le jet en noyau flottant"""
        if exact is None:
            exact = not any(isinstance(v, float) for v in data)
        return cls.from_coeffs([parse_coefficient(v, exact) for v in data], order, exact)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            if i == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(y^{self.trunc_order + 1})"

    # ══════════════════════════════════════════════════════════════════════════
    # OPÉRATEURS
    # ══════════════════════════════════════════════════════════════════════════

    def _lift(self, other: Union['Jet', Number]) -> 'Jet':
        if isinstance(other, Jet):
            return other
        exact = self.exact and not isinstance(other, float)
        return Jet.constant(other, self.trunc_order, exact)

    def __add__(self, other):
        return ps_add(self, self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ps_add(self, -self._lift(other))

    def __rsub__(self, other):
        return ps_add(self._lift(other), -self)

    def __neg__(self):
        return Jet(tuple(-c for c in self.coeffs), self.exact)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return ps_mul(self, other)
        exact = self.exact and not isinstance(other, float)
        factor = _coerce(other, exact)
        return Jet(tuple(_coerce(c, exact) * factor for c in self.coeffs), exact)

    __rmul__ = __mul__


# ══════════════════════════════════════════════════════════════════════════════
# OPÉRATIONS
# ══════════════════════════════════════════════════════════════════════════════

def _common(a: Jet, b: Jet) -> Tuple[Jet, Jet, int, bool]:
    """Aligner deux jets: ordre minimal, noyau flottant dès qu'un des deux l'est"""
    order = min(a.trunc_order, b.trunc_order)
    exact = a.exact and b.exact
    if not exact:
        a, b = a.as_float(), b.as_float()
    return a, b, order, exact


def ps_add(a: Jet, b: Jet) -> Jet:
    """Somme coefficient par coefficient"""
    a, b, order, exact = _common(a, b)
    return Jet(tuple(a.coeffs[i] + b.coeffs[i] for i in range(order + 1)), exact)


def ps_mul(a: Jet, b: Jet) -> Jet:
    """Produit de Cauchy tronqué"""
    a, b, order, exact = _common(a, b)

    if not exact:
        product = np.convolve(a.float_coeffs[:order + 1], b.float_coeffs[:order + 1])[:order + 1]
        return Jet(tuple(float(c) for c in product), exact=False)

    out = [Fraction(0)] * (order + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs[:order + 1]):
        if ai == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ai * bc[j]
    return Jet(tuple(out), exact=True)


def ps_reciprocal(a: Jet, zero_tol: Optional[float] = None) -> Jet:
    """b tel que a*b = 1 mod y^(N+1)"""
    c0 = a.coeffs[0]
    if _is_zero(c0, a.exact, zero_tol):
        raise ZeroConstantTerm(f"inverse impossible: terme constant nul ({c0})")

    inv0 = Fraction(1) / c0 if a.exact else 1.0 / c0
    b = [inv0]
    for n in range(1, a.trunc_order + 1):
        s = sum(a.coeffs[i] * b[n - i] for i in range(1, n + 1))
        b.append(-s * inv0)
    return Jet(tuple(b), a.exact)


def ps_compose(f: Jet, g: Jet, zero_tol: Optional[float] = None) -> Jet:
    """f∘g par schéma de Horner sur les jets (g(0) = 0)"""
    if not _is_zero(g.coeffs[0], g.exact, zero_tol):
        raise NonzeroInnerConstant(f"composition avec g(0) = {g.coeffs[0]} ≠ 0")

    f, g, order, exact = _common(f, g)
    g = g.with_order(order)

    result = Jet.constant(f.coeffs[order], order, exact)
    for i in range(order - 1, -1, -1):
        result = ps_mul(result, g) + Jet.constant(f.coeffs[i], order, exact)
    return result


def ps_derive(f: Jet) -> Jet:
    """Dérivée terme à terme (ordre N-1)"""
    if f.trunc_order == 0:
        return Jet.zero(0, f.exact)
    return Jet(tuple(i * f.coeffs[i] for i in range(1, f.trunc_order + 1)), f.exact)


def ps_integrate(f: Jet, max_order: Optional[int] = None) -> Jet:
    """Primitive nulle en 0 (ordre N+1, plafonné)"""
    cap = max(config.trunc_order, f.trunc_order) if max_order is None else max_order
    order = min(f.trunc_order + 1, cap)

    if f.exact:
        tail = [f.coeffs[i] / (i + 1) for i in range(f.trunc_order + 1)]
    else:
        tail = [f.coeffs[i] / (i + 1.0) for i in range(f.trunc_order + 1)]
    return Jet.from_coeffs([0] + tail, order, f.exact)


def ps_reversion(g: Jet, zero_tol: Optional[float] = None) -> Jet:
    """Inverse de composition h: g∘h = h∘g = id mod y^(N+1)"""
    order = g.trunc_order
    if order < 1 or not _is_zero(g.coeffs[0], g.exact, zero_tol) or _is_zero(g.coeffs[1], g.exact, zero_tol):
        raise NonUnitLinearTerm(f"réversion impossible: g(0)={g.coeffs[0]}, g'(0)={g.coeffs[1] if order else 0}")

    inv1 = Fraction(1) / g.coeffs[1] if g.exact else 1.0 / g.coeffs[1]
    identity = Jet.identity(order, g.exact)

    # Chaque passe fixe au moins un ordre de plus
    h = identity * inv1
    for _ in range(order):
        defect = ps_compose(g, h) - identity
        if defect.is_zero(0.0):
            break
        h = h - defect * inv1
    return h


def jet_order(f: Jet, zero_tol: Optional[float] = None) -> Union[int, Flat]:
    """Plus petit indice m avec c_m non nul, Flat(N) sinon"""
    for m, c in enumerate(f.coeffs):
        if not _is_zero(c, f.exact, zero_tol):
            return m
    logger.debug(f"Jet plat jusqu'à l'ordre {f.trunc_order}")
    return Flat(f.trunc_order)
