"""
Martinet Fields - Utils Module
"""

from .helpers import (
    parse_coefficient,
    parse_jet_string,
    parse_float_list,
    parse_range,
    parse_window,
    to_json_value
)

__all__ = [
    'parse_coefficient',
    'parse_jet_string',
    'parse_float_list',
    'parse_range',
    'parse_window',
    'to_json_value'
]
