"""Finite groups, G-modules, bar complexes and cyclic closed forms."""

from .bar import bar_chain_complex, bar_cochain_complex, derivation_group, group_cohomology, group_homology
from .cyclic import INFINITY, cyclic_cohomology, cyclic_homology, free_abelian_rank2_cohomology
from .finite import FiniteGroup, GroupAction, GroupHom, semidirect_product
from .modules import GModule, coinvariants, hom_over_group, induced_module, invariants, tensor_over_group
from .relative import equivariant_cochain_complex, relative_chain_complex, relative_cochain_complex
