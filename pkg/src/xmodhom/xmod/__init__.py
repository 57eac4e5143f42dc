"""Crossed modules, cat1-groups, crossed squares and the Der/Diff functors."""

from .coefficients import (
    EquivariantModule,
    PiCoefficients,
    semidirect_coefficients,
    trivial_coefficients,
    validate_pi_coefficients,
)
from .crossed import (
    Cat1Group,
    CrossedModule,
    PrecrossedModule,
    from_cat1,
    homotopy_groups,
    to_cat1,
    validate_crossed_module,
    validate_precrossed_module,
    xmod_isomorphism,
)
from .functors import der_precrossed, der_xmod, diff_fast, diff_xmod
from .squares import (
    Cat1CrossedModule,
    CrossedSquare,
    cat1_xmod_to_square,
    crossed_square_validate,
    square_to_cat1_xmod,
)
