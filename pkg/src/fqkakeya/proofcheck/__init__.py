"""Finite linear-algebra renderings of the polynomial-method arguments."""

from .conditions import (
    ConditionIndex,
    ConditionSystem,
    VanishingOrderSpec,
    condition_row,
    line_rows,
    order2_rows,
    rank,
    to_polynomial,
    wp_condition_index_set,
)
from .lemmas import (
    KernelReport,
    codim_bound_lemma4,
    theorem_inequality_audit,
    verify_lemma_3dim,
    verify_zero_lemma,
    wp_codim_at_origin,
    wp_system,
)
from .monomials import (
    MonomialSet,
    dim_v_closed_form,
    monomial_set_3d,
    monomial_set_degree,
    monomial_set_general,
)
from .polytopes import (
    PolytopeRegion,
    disjoint_union_identity,
    lattice_points,
    polytope_count,
    polytope_volume_exact,
)

__all__ = [
    "ConditionIndex",
    "ConditionSystem",
    "KernelReport",
    "MonomialSet",
    "PolytopeRegion",
    "VanishingOrderSpec",
    "codim_bound_lemma4",
    "condition_row",
    "dim_v_closed_form",
    "disjoint_union_identity",
    "lattice_points",
    "line_rows",
    "monomial_set_3d",
    "monomial_set_degree",
    "monomial_set_general",
    "order2_rows",
    "polytope_count",
    "polytope_volume_exact",
    "rank",
    "theorem_inequality_audit",
    "to_polynomial",
    "verify_lemma_3dim",
    "verify_zero_lemma",
    "wp_codim_at_origin",
    "wp_condition_index_set",
    "wp_system",
]
