"""Filtration-theoretic invariants of m-primary ideals."""

from .filtration import (
    ReductionCert,
    RRReport,
    VVTable,
    depth_flags,
    find_minimal_reduction,
    random_combination,
    ratliff_rush,
    rr_closure_of_power,
    reduction_number,
    superficial_check,
    tame_superficial_sequence,
    vv_table,
)
from .hilbert import HilbertData, binom, hilbert, lemma32_check, wang_torsion_length
from .audit import (
    AUDITED_STATEMENTS,
    AuditReport,
    colon_criterion_213,
    invariance_experiment,
    proposition_audit,
)

__all__ = [
    "AUDITED_STATEMENTS", "AuditReport", "HilbertData", "RRReport", "ReductionCert", "VVTable",
    "binom", "colon_criterion_213", "depth_flags", "find_minimal_reduction", "hilbert",
    "invariance_experiment", "lemma32_check", "proposition_audit", "random_combination",
    "ratliff_rush", "rr_closure_of_power", "reduction_number", "superficial_check",
    "tame_superficial_sequence", "vv_table", "wang_torsion_length",
]
