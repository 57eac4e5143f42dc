from .bruteforce import (
    CongruenceClass,
    FiniteCoefficients,
    RelativeClassification,
    RelativeExtension,
    SingularExtension1Ai,
    SingularExtensionA10,
    alpha,
    alpha_inverse,
    baer_sum,
    classify_congruence,
    enumerate_relative,
    enumerate_singular_1ai,
    enumerate_singular_a10,
    find_congruence,
    finite_coefficients,
    split_extension_a10,
)
from .suite import extensions_suite

__all__ = [
    "CongruenceClass",
    "FiniteCoefficients",
    "RelativeClassification",
    "RelativeExtension",
    "SingularExtension1Ai",
    "SingularExtensionA10",
    "alpha",
    "alpha_inverse",
    "baer_sum",
    "classify_congruence",
    "enumerate_relative",
    "enumerate_singular_1ai",
    "enumerate_singular_a10",
    "extensions_suite",
    "find_congruence",
    "finite_coefficients",
    "split_extension_a10",
]
