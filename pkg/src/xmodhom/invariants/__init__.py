from .core import (
    classifying_cohomology,
    classifying_homology,
    cohomology_with_1ai_coefficients,
    d_cohomology,
    d_cohomology_relative,
    d_homology,
    d_homology_relative,
    equivariant_cohomology,
    pi1_surjection,
    relative_cohomology,
    relative_homology,
)
from .report import RECORD_FIELDS, RECORD_HEADER, Check, InvariantReport, records_header
from .suites import (
    counterexample_suite,
    degree0_suite,
    equivariant_consistency,
    les_suite,
    mg0_crossed_module,
    splitting_check_mg0,
    theorem32,
    tot_sign_check,
    uct_check,
)

__all__ = [
    "Check",
    "InvariantReport",
    "RECORD_FIELDS",
    "RECORD_HEADER",
    "classifying_cohomology",
    "classifying_homology",
    "cohomology_with_1ai_coefficients",
    "counterexample_suite",
    "d_cohomology",
    "d_cohomology_relative",
    "d_homology",
    "d_homology_relative",
    "degree0_suite",
    "equivariant_cohomology",
    "equivariant_consistency",
    "les_suite",
    "mg0_crossed_module",
    "pi1_surjection",
    "records_header",
    "relative_cohomology",
    "relative_homology",
    "splitting_check_mg0",
    "theorem32",
    "tot_sign_check",
    "uct_check",
]
