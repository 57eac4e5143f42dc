"""Modules over finite groups with presented abelian coefficients.

The action of ``g`` is stored as a matrix ``rho(g)`` acting on row vectors,
``g.x = x @ rho(g)``, so multiplicativity reads ``rho(gh) = rho(h) @ rho(g)``.
"""

from __future__ import annotations

from typing import Sequence

from ..algebra.abelian import (
    AbelianMap,
    PresentedAbelianGroup,
    diagonalize,
    direct_sum,
    kernel,
)
from ..algebra.matrix import IntMatrix, vstack
from ..errors import GroupMismatch, InvalidModule, NotSurjective
from .finite import FiniteGroup, GroupHom


class GModule:
    """A ``ZG``-module: coefficients plus one automorphism per group element."""

    __slots__ = ("group", "coefficients", "action", "_diag")

    def __init__(
        self,
        group: FiniteGroup,
        coefficients: PresentedAbelianGroup,
        action: Sequence[IntMatrix | AbelianMap | Sequence[Sequence[int]]],
        check: bool = True,
    ):
        self.group = group
        self.coefficients = coefficients
        mats = []
        for a in action:
            if isinstance(a, AbelianMap):
                a = a.matrix
            elif not isinstance(a, IntMatrix):
                a = IntMatrix(a, coefficients.generators)
            mats.append(a)
        self.action = tuple(AbelianMap(coefficients, coefficients, m, check=False) for m in mats)
        self._diag = None
        if check:
            self.validate()

    def validate(self) -> None:
        G, A = self.group, self.coefficients
        if len(self.action) != G.order:
            raise InvalidModule("one action matrix per group element required")
        for g, f in enumerate(self.action):
            if not f.is_well_defined():
                raise InvalidModule(f"action of {g} is not well defined on the coefficients")
        if not self.action[0].equals(AbelianMap.identity(A)):
            raise InvalidModule("identity must act trivially")
        for g in G.elements():
            for h in G.elements():
                lhs = self.action[G.table[g][h]]
                rhs = self.action[h].then(self.action[g])
                if not lhs.equals(rhs):
                    raise InvalidModule(f"action is not multiplicative at ({g}, {h})")

    # constructors

    @classmethod
    def trivial(cls, group: FiniteGroup, coefficients: PresentedAbelianGroup) -> "GModule":
        ident = IntMatrix.identity(coefficients.generators)
        return cls(group, coefficients, [ident] * group.order, check=False)

    @classmethod
    def from_signs(cls, group: FiniteGroup, coefficients: PresentedAbelianGroup, signs: Sequence[int]) -> "GModule":
        """``g`` acts as multiplication by ``signs[g]`` (a character to ``{+1, -1}``)."""
        n = coefficients.generators
        return cls(group, coefficients, [IntMatrix.identity(n).scale(s) for s in signs])

    @classmethod
    def cyclic(cls, group: FiniteGroup, coefficients: PresentedAbelianGroup, sigma) -> "GModule":
        """Module over a cyclic group whose element ``1`` acts by ``sigma``."""
        if isinstance(sigma, AbelianMap):
            sigma = sigma.matrix
        elif not isinstance(sigma, IntMatrix):
            sigma = IntMatrix(sigma, coefficients.generators)
        mats = [IntMatrix.identity(coefficients.generators)]
        for _ in range(1, group.order):
            mats.append(mats[-1] @ sigma)
        return cls(group, coefficients, mats)

    def pullback(self, f: GroupHom) -> "GModule":
        """The ``f.source``-module obtained by restricting along ``f``."""
        if f.target != self.group:
            raise GroupMismatch("pullback along a map into a different group")
        return GModule(f.source, self.coefficients, [self.action[f.images[x]].matrix for x in f.source.elements()], check=False)

    def act(self, g: int, v: Sequence[int]) -> list[int]:
        return self.action[g](v)

    def is_trivial(self) -> bool:
        ident = AbelianMap.identity(self.coefficients)
        return all(f.equals(ident) for f in self.action)

    def diagonalized(self) -> "GModule":
        """An isomorphic module whose coefficients have a diagonal presentation."""
        if self._diag is None:
            if self.coefficients.orders is not None:
                self._diag = self
            else:
                D, to_d, from_d = diagonalize(self.coefficients)
                mats = [from_d.matrix @ f.matrix @ to_d.matrix for f in self.action]
                self._diag = GModule(self.group, D, mats, check=False)
        return self._diag

    def fingerprint(self) -> tuple:
        """Hashable summary used as a cache key."""
        return (
            self.group.table,
            self.coefficients.generators,
            tuple(sorted(tuple(sorted(r.items())) for r in self.coefficients.relations.sparse_rows())),
            tuple(f.matrix.entries for f in self.action),
        )

    def __repr__(self) -> str:
        return f"GModule({self.group!r}, {self.coefficients!r})"


def invariants(M: GModule) -> PresentedAbelianGroup:
    """``A^G`` as the kernel of ``a -> (g.a - a)_g``."""
    A = M.coefficients
    G = M.group
    if G.order == 1:
        return A
    targets = direct_sum([A] * (G.order - 1))
    n = A.generators
    rows = [dict() for _ in range(n)]
    for k, g in enumerate(range(1, G.order)):
        m = M.action[g].matrix
        for i in range(n):
            r = m.row(i)
            for j, v in r.items():
                rows[i][k * n + j] = rows[i].get(k * n + j, 0) + v
            rows[i][k * n + i] = rows[i].get(k * n + i, 0) - 1
    f = AbelianMap(A, targets, IntMatrix.from_sparse(n, targets.generators, rows), check=False)
    return kernel(f)[0]


def coinvariants(M: GModule) -> PresentedAbelianGroup:
    """``A_G = A / <g.a - a>``."""
    A = M.coefficients
    extra = []
    for g in range(1, M.group.order):
        extra.append(M.action[g].matrix - IntMatrix.identity(A.generators))
    rel = vstack([A.relations] + extra, A.generators)
    return PresentedAbelianGroup(A.generators, rel)


def induced_module(target: FiniteGroup, along: GroupHom, M: GModule) -> GModule:
    """``Z[Q] (x)_{ZG} M = M / <n.m - m : n in ker(along)>`` for surjective ``along: G -> Q``."""
    if along.source != M.group or along.target != target:
        raise GroupMismatch("along must map the module's group onto the target group")
    if not along.is_surjective():
        raise NotSurjective("induced_module needs a surjective homomorphism")
    A = M.coefficients
    n = A.generators
    extra = [M.action[k].matrix - IntMatrix.identity(n) for k in along.kernel() if k != 0]
    coeffs = PresentedAbelianGroup(n, vstack([A.relations] + extra, n))
    lift = along.section()
    mats = [M.action[lift[q]].matrix for q in target.elements()]
    return GModule(target, coeffs, mats, check=False)


def tensor_over_group(A: GModule, M: GModule) -> PresentedAbelianGroup:
    """``A (x)_{ZG} M``: ``A (x)_Z M`` modulo ``g^{-1}a (x) m - a (x) g m``."""
    if A.group != M.group:
        raise GroupMismatch("tensor_over_group needs modules over the same group")
    G = A.group
    na, nm = A.coefficients.generators, M.coefficients.generators
    N = na * nm
    rows = []
    for r in A.coefficients.relations.sparse_rows():
        for j in range(nm):
            rows.append({i * nm + j: v for i, v in r.items()})
    for s in M.coefficients.relations.sparse_rows():
        for i in range(na):
            rows.append({i * nm + j: v for j, v in s.items()})
    for g in range(1, G.order):
        ra = A.action[G.inverse[g]].matrix
        rm = M.action[g].matrix
        for i in range(na):
            for j in range(nm):
                row: dict = {}
                for k, v in ra.row(i).items():
                    row[k * nm + j] = row.get(k * nm + j, 0) + v
                for l, v in rm.row(j).items():
                    row[i * nm + l] = row.get(i * nm + l, 0) - v
                rows.append(row)
    return PresentedAbelianGroup(N, IntMatrix.from_sparse(len(rows), N, rows))


def hom_over_group(M: GModule, A: GModule) -> tuple[PresentedAbelianGroup, AbelianMap]:
    """``Hom_{ZG}(M, A)`` as a kernel inside ``A^{gens(M)}``.

    The returned inclusion sends a homomorphism to the tuple of images of
    the generators of ``M``.
    """
    if A.group != M.group:
        raise GroupMismatch("hom_over_group needs modules over the same group")
    G = M.group
    nm = M.coefficients.generators
    Acoef = A.coefficients
    na = Acoef.generators
    source = direct_sum([Acoef] * nm)
    cols: list[list[dict]] = [[dict() for _ in range(na)] for _ in range(nm)]  # per source block k, per A-gen
    nblocks = 0

    def new_block():
        nonlocal nblocks
        nblocks += 1
        return nblocks - 1

    # relations of M must map to zero
    for r in M.coefficients.relations.sparse_rows():
        b = new_block()
        for k, v in r.items():
            for i in range(na):
                cols[k][i][b * na + i] = cols[k][i].get(b * na + i, 0) + v
    # equivariance phi(g.e_j) = g.phi(e_j)
    for g in range(1, G.order):
        rm = M.action[g].matrix
        ra = A.action[g].matrix
        for j in range(nm):
            b = new_block()
            for k, v in rm.row(j).items():
                for i in range(na):
                    cols[k][i][b * na + i] = cols[k][i].get(b * na + i, 0) + v
            for i in range(na):
                for l, v in ra.row(i).items():
                    cols[j][i][b * na + l] = cols[j][i].get(b * na + l, 0) - v
    target = direct_sum([Acoef] * nblocks)
    rows = [cols[k][i] for k in range(nm) for i in range(na)]
    f = AbelianMap(source, target, IntMatrix.from_sparse(nm * na, target.generators, rows), check=False)
    return kernel(f)


def module_direct_sum(mods: Sequence[GModule]) -> GModule:
    from ..algebra.matrix import block_diagonal

    G = mods[0].group
    coeffs = direct_sum([m.coefficients for m in mods])
    mats = [block_diagonal([m.action[g].matrix for m in mods]) for g in G.elements()]
    return GModule(G, coeffs, mats, check=False)


def permutation_module(group: FiniteGroup, perms: Sequence[Sequence[int]], relations: IntMatrix | None = None) -> GModule:
    """Free abelian group on a ``group``-set, optionally modulo ``relations``.

    ``perms[g][x]`` is ``g.x``.  The relations must be stable under the action.
    """
    n = len(perms[0])
    A = PresentedAbelianGroup(n, relations) if relations is not None else PresentedAbelianGroup.free(n)
    mats = [IntMatrix.from_sparse(n, n, ({p[x]: 1} for x in range(n))) for p in perms]
    return GModule(group, A, mats, check=False)
