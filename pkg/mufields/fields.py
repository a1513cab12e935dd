#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               CHAMPS PRÉSERVANT μ = (1+x)dy                                  ║
║                                                                              ║
║  • Bijection f ↔ X_f = -(1+x)f'(y)∂x + f(y)∂y                                ║
║  • Résidus de dérivée de Lie (symboliques ou différences finies)             ║
║  • Relèvement 3-D et forme de Martinet α = (1+x)dy ± z dz                    ║
║  • Hamiltonien H = μ(X) = (1+x)f(y)                                          ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Optional, Tuple, Union

import numpy as np
import sympy
from loguru import logger

from config import config
from jets import Jet, ps_derive
from utils.errors import DomainError, InvalidParameter, NotMuPreserving

X_SYM, Y_SYM, Z_SYM = sympy.symbols('x y z', real=True)

PlanarCallable = Callable[[Any, Any], Tuple[Any, Any]]


def jet_to_sympy(f: Jet, var: sympy.Symbol = Y_SYM) -> sympy.Expr:
    """Polynôme sympy (rationnels exacts si le jet est exact)"""
    if f.exact:
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in f.coeffs]
    else:
        coeffs = [sympy.Float(c) for c in f.coeffs]
    return sympy.Add(*[c * var ** i for i, c in enumerate(coeffs)])


def sympy_to_jet(expr: sympy.Expr, order: int, var: sympy.Symbol = Y_SYM) -> Jet:
    """Développement de Taylor en 0 d'une expression d'une variable"""
    series = sympy.series(expr, var, 0, order + 1).removeO() if expr.has(var) else expr
    poly = sympy.Poly(sympy.expand(series), var)
    raw = poly.all_coeffs()[::-1]
    exact = all(c.is_Rational for c in raw)
    if exact:
        values = [Fraction(int(c.p), int(c.q)) for c in raw]
    else:
        values = [float(c) for c in raw]
    return Jet.from_coeffs(values, order, exact)


def sample_grid(half_x: float = 0.5, half_y: float = 0.5, n: int = 10,
                center: Tuple[float, float] = (0.0, 0.0)) -> Tuple[np.ndarray, np.ndarray]:
    """Grille déterministe n×n centrée (aucun tirage aléatoire)"""
    xs = np.linspace(center[0] - half_x, center[0] + half_x, n)
    ys = np.linspace(center[1] - half_y, center[1] + half_y, n)
    gx, gy = np.meshgrid(xs, ys, indexing='ij')
    return gx.ravel(), gy.ravel()


def check_domain(xs) -> None:
    """Hors module dynamique, on reste dans x > -1"""
    if np.any(np.asarray(xs) <= -1.0):
        raise DomainError("évaluation demandée sur x <= -1 (hors du domaine de μ)")


def _evaluate_planar(X: PlanarCallable, xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    u, v = X(xs, ys)
    u = np.broadcast_to(np.asarray(u, dtype=float), xs.shape)
    v = np.broadcast_to(np.asarray(v, dtype=float), xs.shape)
    return u, v


# ══════════════════════════════════════════════════════════════════════════════
# TYPES
# ══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class Hamiltonian:
    """H(x, y) = (1+x) f(y)"""
    f: Jet

    def __call__(self, x, y):
        return (1.0 + np.asarray(x, dtype=float)) * self.f.evaluate(y)

    def gradient(self, x, y):
        """(∂H/∂x, ∂H/∂y)"""
        return self.f.evaluate(y), (1.0 + np.asarray(x, dtype=float)) * ps_derive(self.f).evaluate(y)

    def symbolic(self) -> sympy.Expr:
        return (1 + X_SYM) * jet_to_sympy(self.f)


@dataclass(frozen=True)
class PlanarMuField:
    """X_f = -(1+x)f'(y)∂x + f(y)∂y, porté par sa fonction génératrice f"""
    f: Jet

    @cached_property
    def f_prime(self) -> Jet:
        return ps_derive(self.f)

    @cached_property
    def f_second(self) -> Jet:
        return ps_derive(self.f_prime)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        return -(1.0 + x) * self.f_prime.evaluate(y), self.f.evaluate(y) + 0.0 * x

    def jacobian(self, x: float, y: float) -> np.ndarray:
        fp = float(self.f_prime.evaluate(y))
        fpp = float(self.f_second.evaluate(y))
        return np.array([[-fp, -(1.0 + x) * fpp],
                         [0.0, fp]])

    def symbolic_components(self) -> Tuple[sympy.Expr, sympy.Expr]:
        fy = jet_to_sympy(self.f)
        return -(1 + X_SYM) * sympy.diff(fy, Y_SYM), fy

    def hamiltonian(self) -> Hamiltonian:
        return Hamiltonian(self.f)


@dataclass(frozen=True)
class SymbolicField:
    """Champ plan donné par deux expressions sympy en (x, y)"""
    components: Tuple[sympy.Expr, sympy.Expr]

    @classmethod
    def from_strings(cls, x_component: str, y_component: str) -> 'SymbolicField':
        local = {'x': X_SYM, 'y': Y_SYM}
        return cls((sympy.sympify(x_component, locals=local), sympy.sympify(y_component, locals=local)))

    @cached_property
    def _numeric(self):
        return sympy.lambdify((X_SYM, Y_SYM), self.components, 'numpy')

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        u, v = self._numeric(x, y)
        return np.broadcast_to(np.asarray(u, dtype=float), x.shape), np.broadcast_to(np.asarray(v, dtype=float), x.shape)

    def symbolic_components(self) -> Tuple[sympy.Expr, sympy.Expr]:
        return self.components


@dataclass(frozen=True)
class MartinetForm:
    """α = (1+x)dy + sign·z dz"""
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameter(f"signe de la forme de Martinet: ±1 attendu, reçu {self.sign}")

    def symbolic(self) -> Tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
        """Coefficients (dx, dy, dz)"""
        return sympy.Integer(0), 1 + X_SYM, self.sign * Z_SYM


@dataclass(frozen=True)
class Field3:
    """Champ de R³ donné par ses trois composantes sympy en (x, y, z)"""
    components: Tuple[sympy.Expr, sympy.Expr, sympy.Expr]

    @classmethod
    def from_strings(cls, *exprs: str) -> 'Field3':
        local = {'x': X_SYM, 'y': Y_SYM, 'z': Z_SYM}
        return cls(tuple(sympy.sympify(e, locals=local) for e in exprs))

    @cached_property
    def _numeric(self):
        return sympy.lambdify((X_SYM, Y_SYM, Z_SYM), self.components, 'numpy')

    def __call__(self, x, y, z):
        shape = np.broadcast(np.asarray(x), np.asarray(y), np.asarray(z)).shape
        return tuple(np.broadcast_to(np.asarray(c, dtype=float), shape) for c in self._numeric(x, y, z))


@dataclass(frozen=True)
class MuResidual:
    """Coefficients (dx, dy) de L_X μ"""
    r_dx: Any
    r_dy: Any
    mode: str  # 'symbolic' | 'sampled'

    @property
    def max_abs(self) -> float:
        if self.mode == 'symbolic':
            if self.r_dx == 0 and self.r_dy == 0:
                return 0.0
            xs, ys = sample_grid()
            numeric = sympy.lambdify((X_SYM, Y_SYM), (self.r_dx, self.r_dy), 'numpy')
            values = [np.broadcast_to(np.asarray(c, dtype=float), xs.shape) for c in numeric(xs, ys)]
            return float(max(np.max(np.abs(v)) for v in values))
        return float(max(np.max(np.abs(self.r_dx)), np.max(np.abs(self.r_dy))))

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs <= tol


@dataclass(frozen=True)
class AlphaResidual:
    """Membres de gauche du système L_X α = 0, coefficients (dx, dy, dz)"""
    r_dx: sympy.Expr
    r_dy: sympy.Expr
    r_dz: sympy.Expr

    @property
    def is_zero(self) -> bool:
        return self.r_dx == 0 and self.r_dy == 0 and self.r_dz == 0

    def evaluate(self, x, y, z):
        numeric = sympy.lambdify((X_SYM, Y_SYM, Z_SYM), (self.r_dx, self.r_dy, self.r_dz), 'numpy')
        shape = np.broadcast(np.asarray(x), np.asarray(y), np.asarray(z)).shape
        return tuple(np.broadcast_to(np.asarray(c, dtype=float), shape) for c in numeric(x, y, z))


# ══════════════════════════════════════════════════════════════════════════════
# OPÉRATIONS
# ══════════════════════════════════════════════════════════════════════════════

def field_from_function(f: Jet) -> PlanarMuField:
    """f ↦ X_f"""
    return PlanarMuField(f)


def lie_derivative_mu(X: Union[PlanarMuField, SymbolicField, PlanarCallable],
                      points: Optional[Tuple[np.ndarray, np.ndarray]] = None,
                      h: Optional[float] = None) -> MuResidual:
    """
    L_X μ = d(ι_X μ) + ι_X dμ = (1+x)∂X2/∂x dx + (X1 + (1+x)∂X2/∂y) dy

    Symbolique et exact pour tout objet exposant `symbolic_components()`,
    différences finies centrées (pas h) pour une fonction boîte noire.
    """
    if hasattr(X, 'symbolic_components'):
        x1, x2 = X.symbolic_components()
        r_dx = sympy.expand((1 + X_SYM) * sympy.diff(x2, X_SYM))
        r_dy = sympy.expand(x1 + (1 + X_SYM) * sympy.diff(x2, Y_SYM))
        return MuResidual(r_dx, r_dy, 'symbolic')

    h = config.fd_step if h is None else h
    xs, ys = sample_grid() if points is None else (np.asarray(points[0], float), np.asarray(points[1], float))
    check_domain(xs - h)

    u, _ = _evaluate_planar(X, xs, ys)
    _, v_xp = _evaluate_planar(X, xs + h, ys)
    _, v_xm = _evaluate_planar(X, xs - h, ys)
    _, v_yp = _evaluate_planar(X, xs, ys + h)
    _, v_ym = _evaluate_planar(X, xs, ys - h)

    dv_dx = (v_xp - v_xm) / (2.0 * h)
    dv_dy = (v_yp - v_ym) / (2.0 * h)
    return MuResidual((1.0 + xs) * dv_dx, u + (1.0 + xs) * dv_dy, 'sampled')


def function_from_field(X: Union[PlanarMuField, SymbolicField, PlanarCallable],
                        order: Optional[int] = None, tol: Optional[float] = None) -> Jet:
    """X_f ↦ μ(X_f)/(1+x) = f"""
    order = config.trunc_order if order is None else order

    if isinstance(X, PlanarMuField):
        return X.f

    residual = lie_derivative_mu(X)
    tol = (0.0 if residual.mode == 'symbolic' else config.residual_tol) if tol is None else tol
    if residual.max_abs > tol:
        raise NotMuPreserving(f"résidu de L_X μ = {residual.max_abs:.3e} > {tol:.1e}")

    if hasattr(X, 'symbolic_components'):
        _, x2 = X.symbolic_components()
        return sympy_to_jet(sympy.expand(x2.subs(X_SYM, 0)), order)

    # Boîte noire: f(y) = X2(0, y), ajusté sur des nœuds de Tchebychev
    degree = min(config.fit_degree, order)
    nodes = 0.5 * np.cos(np.pi * (np.arange(4 * degree + 1) + 0.5) / (4 * degree + 1))
    _, values = _evaluate_planar(X, np.zeros_like(nodes), nodes)
    poly = np.polynomial.Polynomial.fit(nodes, values, degree).convert()

    # Contrôle hors des nœuds: un f de degré > degree ne se laisse pas ajuster
    check_ys = np.linspace(-0.5, 0.5, 2 * degree + 3)
    _, expected = _evaluate_planar(X, np.zeros_like(check_ys), check_ys)
    fit_residual = float(np.max(np.abs(poly(check_ys) - expected)))
    if fit_residual > config.residual_tol:
        logger.warning(f"⚠️ f mal reconstruite: écart {fit_residual:.3e} > {config.residual_tol:.1e} "
                       f"(degré d'ajustement {degree}, MARTINET_FIT_DEGREE)")

    coeffs = np.where(np.abs(poly.coef) <= config.zero_tol, 0.0, poly.coef)
    logger.debug(f"f reconstruite par ajustement de degré {degree} (écart {fit_residual:.1e})")
    return Jet.from_coeffs([float(c) for c in coeffs], order, exact=False)


def lie_derivative_alpha(X3: Field3, form: MartinetForm) -> AlphaResidual:
    """
    Système L_X α = 0 pour α = (1+x)dy ± z dz:
      (1+x)∂X2/∂x ± z∂X3/∂x
      X1 + (1+x)∂X2/∂y ± z∂X3/∂y
      (1+x)∂X2/∂z ± X3 ± z∂X3/∂z
    """
    x1, x2, x3 = X3.components
    s = form.sign
    r_dx = sympy.expand((1 + X_SYM) * sympy.diff(x2, X_SYM) + s * Z_SYM * sympy.diff(x3, X_SYM))
    r_dy = sympy.expand(x1 + (1 + X_SYM) * sympy.diff(x2, Y_SYM) + s * Z_SYM * sympy.diff(x3, Y_SYM))
    r_dz = sympy.expand((1 + X_SYM) * sympy.diff(x2, Z_SYM) + s * x3 + s * Z_SYM * sympy.diff(x3, Z_SYM))
    return AlphaResidual(r_dx, r_dy, r_dz)


def lift_to_3d(X: PlanarMuField) -> Field3:
    """(X1, X2) indépendants de z, troisième composante identiquement nulle"""
    x1, x2 = X.symbolic_components()
    return Field3((x1, x2, sympy.Integer(0)))


def hamiltonian(X: PlanarMuField) -> Hamiltonian:
    """H = μ(X) = (1+x) f(y)"""
    return X.hamiltonian()
