"""
Martinet Fields - Classification Module
"""

from .normal_forms import (
    DegenerateForm,
    FieldClassification,
    GermClass,
    GermKind,
    RescaledModel,
    classify_field,
    classify_germ,
    normalize_degenerate,
    normalize_linear,
    normalize_regular,
    rescaled_model,
)

__all__ = [
    'DegenerateForm',
    'FieldClassification',
    'GermClass',
    'GermKind',
    'RescaledModel',
    'classify_field',
    'classify_germ',
    'normalize_degenerate',
    'normalize_linear',
    'normalize_regular',
    'rescaled_model',
]
