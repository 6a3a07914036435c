"""Exact Gauss sums of multiplicative characters over GF(2^s)."""

from .charsum import (
    CharacterSpec,
    GaussSumRecord,
    a_sum,
    character,
    character_spec,
    cubic_character,
    gauss_sum,
    gauss_sum_closed_form,
    gauss_sum_via_trace_class,
    gauss_sum_via_twist,
    kummer_sum,
    m_counts,
    parseval_total,
    shifted_self_sum,
    theorem2_factorization,
    total_sum,
)
from .cyclotomic import CycloSum, EisensteinInt
from .gf2field import FieldContext, build_field, find_irreducible

__version__ = "0.1.0"
