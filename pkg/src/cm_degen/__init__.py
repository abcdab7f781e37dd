"""Stable degenerations of Cohen-Macaulay modules over A_n simple singularities."""

from .catalog import (
    DomainError,
    ExprSyntaxError,
    SingularitySpec,
    StableModule,
    classify,
    knoerrer_reduce,
    parse_module,
    shift,
    syzygy,
    tau,
)
from .ar_quiver import ar_triangle, quiver, star_condition
from .oracle import AUTO, hom_table, stable_hom_dim
from .homtab import HomTable, delta, hom_vector, leq_hom
from .k0 import k0_class, k0_presentation, same_class
from .degen import chain, hasse, irredundant_expression, leq_st, witness
from .verify import Report

__version__ = "0.1.0"

__all__ = [
    "DomainError", "ExprSyntaxError", "SingularitySpec", "StableModule", "classify",
    "knoerrer_reduce", "parse_module", "shift", "syzygy", "tau", "ar_triangle", "quiver",
    "star_condition", "AUTO", "hom_table", "stable_hom_dim", "HomTable", "delta", "hom_vector",
    "leq_hom", "k0_class", "k0_presentation", "same_class", "chain", "hasse",
    "irredundant_expression", "leq_st", "witness", "Report",
]
