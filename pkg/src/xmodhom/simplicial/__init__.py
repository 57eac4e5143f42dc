"""The simplicial group N^-1 of a crossed module, nerve bicomplexes and beta complexes."""

from .bicomplex import Bicomplex, totalize
from .nerve import TruncatedSimplicialGroup, constant_simplicial_group, moore_complex, n_inverse
from .nerve_complex import beta_chain, beta_cochain, beta_sequence, nerve_bicomplex, nerve_total_complex
