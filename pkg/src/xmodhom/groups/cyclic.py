"""Closed forms for cyclic groups and the rank-2 Koszul complex of ``Z^2``.

``C_infinity`` never appears as a :class:`FiniteGroup`; its modules are
given by a single automorphism ``sigma``.
"""

from __future__ import annotations

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup, direct_sum, subquotient
from ..algebra.matrix import hstack
from ..errors import InvalidModule, NonCommuting
from .modules import GModule


class _Infinity:
    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


def _generator_and_norm(m: int, M: GModule) -> tuple[AbelianMap, AbelianMap]:
    G = M.group
    if G.order != m:
        raise InvalidModule(f"module is over a group of order {G.order}, not {m}")
    gens = [g for g in G.elements() if G.element_order(g) == m]
    if not gens:
        raise InvalidModule("group is not cyclic")
    sigma = M.action[gens[0]]
    A = M.coefficients
    N = AbelianMap.zero(A, A)
    for g in G.elements():
        N = N + M.action[g]
    return sigma, N


def _minus_one(f: AbelianMap) -> AbelianMap:
    return f - AbelianMap.identity(f.source)


def cyclic_cohomology(m, M, n: int) -> PresentedAbelianGroup:
    """``H^n(C_m, A)`` from the periodic resolution; ``m = INFINITY`` takes ``M = sigma``."""
    if m is INFINITY:
        sigma = M if isinstance(M, AbelianMap) else M.action[1]
        A = sigma.source
        zero_in = AbelianMap.zero(PresentedAbelianGroup(0), A)
        zero_out = AbelianMap.zero(A, PresentedAbelianGroup(0))
        if n == 0:
            return subquotient(zero_in, _minus_one(sigma))[0]
        if n == 1:
            return subquotient(_minus_one(sigma), zero_out)[0]
        return PresentedAbelianGroup(0)
    sigma, N = _generator_and_norm(m, M)
    A = M.coefficients
    s1 = _minus_one(sigma)
    if n == 0:
        return subquotient(AbelianMap.zero(PresentedAbelianGroup(0), A), s1)[0]
    if n % 2 == 0:
        return subquotient(N, s1)[0]  # A^C / NA
    return subquotient(s1, N)[0]  # ker N / (sigma - 1)A


def cyclic_homology(m: int, M: GModule, n: int) -> PresentedAbelianGroup:
    """``H_n(C_m, A)``: coinvariants, then ``A^C/NA`` (odd) and ``ker N/(sigma-1)A`` (even)."""
    sigma, N = _generator_and_norm(m, M)
    A = M.coefficients
    s1 = _minus_one(sigma)
    if n == 0:
        return subquotient(s1, AbelianMap.zero(A, PresentedAbelianGroup(0)))[0]
    if n % 2 == 1:
        return subquotient(N, s1)[0]
    return subquotient(s1, N)[0]


def free_abelian_rank2_cohomology(A: PresentedAbelianGroup, sigma: AbelianMap, tau: AbelianMap, n: int) -> PresentedAbelianGroup:
    """Cohomology of ``Z^2`` via ``0 -> A -> A^2 -> A -> 0``."""
    if not sigma.then(tau).equals(tau.then(sigma)):
        raise NonCommuting("sigma and tau do not commute")
    s1, t1 = _minus_one(sigma), _minus_one(tau)
    A2 = direct_sum([A, A])
    d0 = AbelianMap(A, A2, hstack([s1.matrix, t1.matrix]), check=False)
    from ..algebra.matrix import vstack

    d1 = AbelianMap(A2, A, vstack([t1.matrix, s1.matrix.scale(-1)]), check=False)
    zero = PresentedAbelianGroup(0)
    if n == 0:
        return subquotient(AbelianMap.zero(zero, A), d0)[0]
    if n == 1:
        return subquotient(d0, d1)[0]
    if n == 2:
        return subquotient(d1, AbelianMap.zero(A, zero))[0]
    return zero
