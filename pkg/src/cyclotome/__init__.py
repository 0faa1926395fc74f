"""Exact computation and checking of cyclotomic numbers over finite fields."""

from __future__ import annotations

from .config import CheckFailed, CyclotomeError, LimitError, Limits, ParameterError
from .cyclotomy import (
    CycloParams,
    CycloTable,
    Method,
    cyclotomic_number_enum,
    cyclotomic_number_gcd,
    cyclotomic_number_rank,
    cyclotomic_table,
    make_params,
)
from .field import FieldContext, FieldElement, construct_field, field_for_order

__all__ = [
    "CheckFailed",
    "CycloParams",
    "CycloTable",
    "CyclotomeError",
    "FieldContext",
    "FieldElement",
    "LimitError",
    "Limits",
    "Method",
    "ParameterError",
    "construct_field",
    "cyclotomic_number_enum",
    "cyclotomic_number_gcd",
    "cyclotomic_number_rank",
    "cyclotomic_table",
    "field_for_order",
    "make_params",
]

__version__ = "0.1.0"
