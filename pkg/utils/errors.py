"""
Martinet Fields - Exceptions

ValidationError: entrée invalide (code de sortie CLI 2)
ComputationError: échec du calcul lui-même (code de sortie CLI 1)
"""

from typing import Any, Optional


class MartinetError(Exception):
    """Racine de toutes les erreurs du projet"""


class ValidationError(MartinetError):
    """Précondition violée par l'entrée"""


class ComputationError(MartinetError):
    """Le calcul n'a pas pu aboutir"""


# Jets
class ZeroConstantTerm(ValidationError):
    """Inverse demandé d'un jet de terme constant nul"""


class NonzeroInnerConstant(ValidationError):
    """Composition f∘g avec g(0) ≠ 0"""


class NonUnitLinearTerm(ValidationError):
    """Réversion d'un jet non inversible (g(0) ≠ 0 ou g'(0) = 0)"""


# Champs μ
class InadmissiblePsi(ValidationError):
    """ψ ne vérifie pas ψ(0)=0, ψ'(0)=1"""


class DomainError(ValidationError):
    """Point d'évaluation hors du domaine x > -1"""


class NotMuPreserving(ComputationError):
    """Le champ ne préserve pas μ = (1+x)dy"""


# Classification
class InsufficientOrder(ValidationError):
    """Ordre de troncature trop faible pour lire l'invariant d"""


class LeadingCoefficientZero(ValidationError):
    """Coefficient dominant a nul à l'ordre annoncé"""


# Dépliements
class BadArity(ValidationError):
    """Nombre de paramètres λ différent de k"""


class InvalidParameter(ValidationError):
    """Paramètre numérique hors de son domaine"""


# Dynamique
class NonFiniteState(ComputationError):
    """Trajectoire sortie de la boîte ou devenue non finie"""

    def __init__(self, message: str, trajectory: Optional[Any] = None, reason: str = "non_finite"):
        super().__init__(message)
        self.trajectory = trajectory
        self.reason = reason
