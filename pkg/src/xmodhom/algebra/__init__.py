"""Exact integer linear algebra: Smith forms, presented abelian groups, complexes."""

from .abelian import (
    AbelianMap,
    PresentedAbelianGroup,
    cokernel,
    compose,
    cyclic,
    diagonalize,
    direct_sum,
    ext_group,
    hom_group,
    image,
    kernel,
    subquotient,
    tensor_product,
    tor_product,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    ExactnessReport,
    LongExactSequence,
    connecting_sequence,
    homology_at,
    verify_exact,
)
from .matrix import IntMatrix, SmithDecomposition, smith_normal_form


def canonical_form(G: PresentedAbelianGroup):
    return G.canonical_form()
