#!/usr/bin/env python3
"""
╔══════════════════════════════════════════════════════════════════════════════╗
║               MARTINET FIELDS - HELPERS                                      ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from fractions import Fraction
from typing import List, Tuple, Union

from .errors import ValidationError

Number = Union[int, float, Fraction]


def parse_coefficient(text: Union[str, Number], exact: bool = True) -> Number:
    """Convertir un coefficient ("p/q", "0.1", 3, 2.5) vers le noyau demandé"""
    if isinstance(text, bool):
        raise ValidationError(f"coefficient invalide: {text!r}")

    try:
        if isinstance(text, str):
            value = Fraction(text.strip())
        elif isinstance(text, float):
            # str() évite de récupérer le développement binaire exact de 0.1
            value = Fraction(str(text))
        else:
            value = Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ValidationError(f"coefficient invalide: {text!r} ({e})") from e

    return value if exact else float(value)


def parse_jet_string(text: str, exact: bool = True, flag: str = "--jet") -> List[Number]:
    """Parser "c0,c1,..." en liste de coefficients"""
    if text is None or not text.strip():
        raise ValidationError(f"{flag}: liste de coefficients vide")
    try:
        return [parse_coefficient(part, exact) for part in text.split(',')]
    except ValidationError as e:
        raise ValidationError(f"{flag}: {e}") from e


def parse_float_list(text: str, flag: str = "--lambda") -> List[float]:
    """Parser "1.0,-0.02" en liste de flottants"""
    if text is None or not text.strip():
        raise ValidationError(f"{flag}: liste vide")
    try:
        return [float(part) for part in text.split(',')]
    except ValueError as e:
        raise ValidationError(f"{flag}: valeur non numérique dans {text!r}") from e


def parse_range(text: str, flag: str) -> Tuple[float, float, int]:
    """Parser "LO:HI:N" (échantillonnage d'un paramètre)"""
    parts = text.split(':') if text else []
    if len(parts) != 3:
        raise ValidationError(f"{flag}: format attendu LO:HI:N, reçu {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ValidationError(f"{flag}: valeur non numérique dans {text!r}") from e
    if n < 2:
        raise ValidationError(f"{flag}: au moins 2 échantillons requis")
    if not lo < hi:
        raise ValidationError(f"{flag}: LO doit être < HI")
    return lo, hi, n


def parse_window(text: str, flag: str = "--window") -> Tuple[float, float, float, float]:
    """Parser "x0:x1:y0:y1" en rectangle fini"""
    parts = text.split(':') if text else []
    if len(parts) != 4:
        raise ValidationError(f"{flag}: format attendu x0:x1:y0:y1, reçu {text!r}")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts)
    except ValueError as e:
        raise ValidationError(f"{flag}: valeur non numérique dans {text!r}") from e
    if not (x0 < x1 and y0 < y1):
        raise ValidationError(f"{flag}: rectangle vide {text!r}")
    return x0, x1, y0, y1


def to_json_value(value: Number) -> Union[int, float, str]:
    """Rationnels en "p/q" (entiers en nombre), flottants en nombre"""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    return float(value)
