"""D_n, D^n, classifying-space, relative and equivariant (co)homology.

``D_n(X, A)`` and ``D^n(X, A)`` are computed as ``H_{n+2}`` of the beta
complexes.  For aspherical ``X`` they can also be read off the relative
(co)homology of ``G -> pi_1`` one degree up, which gives an independent
second route.
"""

from __future__ import annotations

from ..algebra.abelian import PresentedAbelianGroup
from ..algebra.complexes import homology_at
from ..config import DEFAULT_BUDGET, Budget
from ..errors import DegreeTooLarge, InapplicableSuite
from ..groups.finite import GroupAction, GroupHom
from ..groups.modules import GModule
from ..groups.relative import equivariant_cochain_complex, relative_chain_complex, relative_cochain_complex
from ..simplicial.nerve_complex import beta_chain, beta_cochain, nerve_total_complex
from ..xmod.coefficients import EquivariantModule, PiCoefficients
from ..xmod.crossed import CrossedModule, pi1_projection
from ..xmod.functors import der_xmod, diff_with_coefficients


def _need(top: int, budget: Budget) -> None:
    if top > budget.max_total:
        raise DegreeTooLarge(f"total degree {top} needed, budget allows {budget.max_total}")


def _degree(n: int) -> None:
    if n < 0:
        raise ValueError("degree must be non-negative")


def d_homology(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> PresentedAbelianGroup:
    """``D_n(X, A) = H_{n+2}(beta_*(X, A))``."""
    _degree(n)
    _need(n + 3, budget)
    return homology_at(beta_chain(X, A, n + 3, budget, cache_dir), n + 2)


def d_cohomology(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> PresentedAbelianGroup:
    """``D^n(X, A) = H^{n+2}(beta^*(X, A))``."""
    _degree(n)
    _need(n + 3, budget)
    return homology_at(beta_cochain(X, A, n + 3, budget, cache_dir), n + 2)


def classifying_homology(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> PresentedAbelianGroup:
    """``H_n(B X, A)`` from the totalized nerve bicomplex."""
    _degree(n)
    _need(n + 1, budget)
    return homology_at(nerve_total_complex(X, A, n + 1, False, budget, cache_dir), n)


def classifying_cohomology(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> PresentedAbelianGroup:
    """``H^n(B X, A)`` from the totalized nerve bicomplex."""
    _degree(n)
    _need(n + 1, budget)
    return homology_at(nerve_total_complex(X, A, n + 1, True, budget, cache_dir), n)


def cohomology_with_1ai_coefficients(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> PresentedAbelianGroup:
    """Cohomology of ``X`` with coefficients in ``(1, A, i)``; the same groups as ``H^n(B X, A)``."""
    return classifying_cohomology(X, A, n, budget, cache_dir)


def relative_homology(f: GroupHom, M: GModule, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    """``H_n(G', G; A)``: homology of ``ker(C_*(G, A) -> C_*(G', A))``; ``M`` is a ``G'``-module."""
    _degree(n)
    return homology_at(relative_chain_complex(f, M, n + 1, budget), n)


def relative_cohomology(f: GroupHom, M: GModule, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    """``H^n(G', G; A)``: cohomology of ``coker(C^*(G', A) -> C^*(G, A))``."""
    _degree(n)
    return homology_at(relative_cochain_complex(f, M, n + 1, budget), n)


def equivariant_cohomology(action: GroupAction, A: EquivariantModule, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    """``H^n_G(T, A)``: cohomology of the kernel of restriction ``C^*(T x| G, A) -> C^*(G, A)``."""
    _degree(n)
    A.validate()
    return homology_at(equivariant_cochain_complex(action, A.t_module, A.g_module, n + 1, budget), n)


def pi1_surjection(X: CrossedModule) -> GroupHom:
    """``G -> pi_1``; for aspherical ``X`` this is the surjection ``X`` comes from."""
    return pi1_projection(X)


def d_homology_relative(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    """Second route for aspherical ``X``: ``A (x) Diff`` at ``n = 0``, ``H_{n+1}(pi_1, G; A)`` above."""
    _aspherical(X)
    if n == 0:
        return diff_with_coefficients(X, A)
    return relative_homology(pi1_surjection(X), A.module, n + 1, budget)


def d_cohomology_relative(X: CrossedModule, A: PiCoefficients, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    """Second route for aspherical ``X``: ``Der`` at ``n = 0``, ``H^{n+1}(pi_1, G; A)`` above."""
    _aspherical(X)
    if n == 0:
        return der_xmod(X, A)
    return relative_cohomology(pi1_surjection(X), A.module, n + 1, budget)


def _aspherical(X: CrossedModule) -> None:
    if not X.is_aspherical():
        raise InapplicableSuite("the relative route needs an aspherical crossed module")
