"""Finitely presented abelian groups and homomorphisms between them.

A group is ``Z^n`` modulo the row lattice of its relation matrix.  Two groups
compare equal when their canonical forms agree, i.e. equality means
isomorphism, not equality of presentations.

>>> G = PresentedAbelianGroup(2, IntMatrix([[2, 0], [0, 4]]))
>>> G.canonical_form()
([2, 4], 0)
>>> double = AbelianMap(cyclic(4), cyclic(4), IntMatrix([[2]]))
>>> kernel(double)[0].canonical_form()
([2], 0)
"""

from __future__ import annotations

from functools import reduce
from math import gcd, prod
from typing import Sequence

from ..errors import IllFormedMap
from .matrix import (
    HnfSolver,
    IntMatrix,
    block_diagonal,
    hnf_rows,
    invariant_factors,
    left_kernel,
    smith_normal_form,
    solve_hnf,
    vstack,
)


def _diagonal_invariants(orders: Sequence[int]) -> tuple[list[int], int]:
    """Canonical form of ``(+) Z/d_i`` (``d_i = 0`` meaning ``Z``) without an SNF."""
    free = sum(1 for d in orders if d == 0)
    ds = sorted(d for d in orders if d > 1)
    # pairwise (gcd, lcm) sweeps produce the divisibility chain
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            a, b = ds[i], ds[j]
            g = gcd(a, b)
            ds[i], ds[j] = g, a // g * b
    return [d for d in ds if d > 1], free


class PresentedAbelianGroup:
    """``Z^generators`` modulo the row lattice of ``relations``."""

    __slots__ = ("generators", "relations", "_canon", "_hnf", "_orders")

    def __init__(self, generators: int, relations: IntMatrix | Sequence[Sequence[int]] | None = None):
        if relations is None:
            relations = IntMatrix.zeros(0, generators)
        elif not isinstance(relations, IntMatrix):
            relations = IntMatrix(relations, generators)
        if relations.ncols != generators:
            raise ValueError("relation width must equal the number of generators")
        self.generators = generators
        self.relations = relations
        self._canon = None
        self._hnf = None
        self._orders = False

    @classmethod
    def diagonal(cls, orders: Sequence[int]) -> "PresentedAbelianGroup":
        """``(+) Z/d_i``, with ``d_i = 0`` giving a free summand."""
        rows = [{i: d} for i, d in enumerate(orders) if d != 0]
        rel = IntMatrix.from_sparse(len(rows), len(orders), rows)
        g = cls(len(orders), rel)
        g._orders = tuple(orders)
        return g

    @classmethod
    def free(cls, n: int) -> "PresentedAbelianGroup":
        return cls.diagonal([0] * n)

    @classmethod
    def from_invariants(cls, torsion: Sequence[int], free_rank: int = 0) -> "PresentedAbelianGroup":
        return cls.diagonal(list(torsion) + [0] * free_rank)

    @property
    def orders(self) -> tuple[int, ...] | None:
        """Generator orders when the presentation is diagonal, else ``None``."""
        if self._orders is False:
            orders = [0] * self.generators
            ok = True
            for r in self.relations.sparse_rows():
                if len(r) > 1:
                    ok = False
                    break
                if len(r) == 1:
                    (j, v), = r.items()
                    orders[j] = gcd(orders[j], abs(v))
            self._orders = tuple(orders) if ok else None
        return self._orders

    def canonical_form(self) -> tuple[list[int], int]:
        if self._canon is None:
            orders = self.orders
            if orders is not None:
                torsion, free = _diagonal_invariants(orders)
            else:
                facs = invariant_factors(self.relations)
                torsion = [d for d in facs if d > 1]
                free = self.generators - len(facs)
            self._canon = (torsion, free)
        return list(self._canon[0]), self._canon[1]

    @property
    def torsion(self) -> list[int]:
        return self.canonical_form()[0]

    @property
    def free_rank(self) -> int:
        return self.canonical_form()[1]

    def order(self) -> int | float:
        torsion, free = self.canonical_form()
        return float("inf") if free else prod(torsion)

    def is_trivial(self) -> bool:
        torsion, free = self.canonical_form()
        return not torsion and not free

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def relation_basis(self) -> list[list[int]]:
        """Hermite basis of the relation lattice (memoized)."""
        if self._hnf is None:
            self._hnf = hnf_rows(self.relations)
        return self._hnf

    def contains(self, v: Sequence[int]) -> bool:
        """Whether the vector ``v`` lies in the relation lattice, i.e. is zero in the group."""
        if not any(v):
            return True
        orders = self.orders
        if orders is not None:
            return all((x == 0) if d == 0 else (x % d == 0) for x, d in zip(v, orders))
        return solve_hnf(self.relation_basis(), v) is not None

    def is_zero_vector(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    def reduce_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        """A canonical representative of the class of ``v`` (diagonal presentations only)."""
        orders = self.orders
        if orders is None:
            raise ValueError("reduce_vector needs a diagonal presentation")
        return tuple(x % d if d else x for x, d in zip(v, orders))

    def elements(self):
        """All elements as coordinate tuples (finite diagonal presentations only)."""
        orders = self.orders
        if orders is None or 0 in orders:
            raise ValueError("elements() needs a finite diagonal presentation")
        from itertools import product as iproduct

        return list(iproduct(*(range(d) for d in orders)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PresentedAbelianGroup):
            return NotImplemented
        return self.canonical_form() == other.canonical_form()

    def __hash__(self) -> int:
        t, f = self.canonical_form()
        return hash((tuple(t), f))

    def describe(self) -> str:
        torsion, free = self.canonical_form()
        parts = [f"Z/{t}" for t in torsion] + ["Z"] * free
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<{self.describe()}>"


def cyclic(n: int) -> PresentedAbelianGroup:
    """``Z/n``; ``cyclic(0)`` is ``Z``."""
    return PresentedAbelianGroup.diagonal([n])


def trivial_group() -> PresentedAbelianGroup:
    return PresentedAbelianGroup(0)


class AbelianMap:
    """Homomorphism given on generators: generator ``i`` goes to row ``i`` of ``matrix``."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: PresentedAbelianGroup, target: PresentedAbelianGroup, matrix, check: bool = True):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix, target.generators)
        if matrix.shape != (source.generators, target.generators):
            raise IllFormedMap(f"matrix shape {matrix.shape} does not match {source.generators}x{target.generators}")
        self.source, self.target, self.matrix = source, target, matrix
        if check and not self.is_well_defined():
            raise IllFormedMap("a source relator does not map into the target relation lattice")

    def is_well_defined(self) -> bool:
        rel = self.source.relations
        if rel.nrows == 0:
            return True
        img = rel @ self.matrix
        return all(self.target.contains(r) for r in img.tolist())

    @classmethod
    def zero(cls, source, target) -> "AbelianMap":
        return cls(source, target, IntMatrix.zeros(source.generators, target.generators), check=False)

    @classmethod
    def identity(cls, group) -> "AbelianMap":
        return cls(group, group, IntMatrix.identity(group.generators), check=False)

    def __call__(self, v: Sequence[int]) -> list[int]:
        return self.matrix.vec_mul(v)

    def then(self, other: "AbelianMap") -> "AbelianMap":
        """``other o self``."""
        if self.target.generators != other.source.generators:
            raise IllFormedMap("maps are not composable")
        return AbelianMap(self.source, other.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: "AbelianMap") -> "AbelianMap":
        return AbelianMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "AbelianMap") -> "AbelianMap":
        return AbelianMap(self.source, self.target, self.matrix - other.matrix, check=False)

    def scale(self, c: int) -> "AbelianMap":
        return AbelianMap(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        orders = self.target.orders
        if orders is not None:
            return all(
                (v % orders[j] == 0) if orders[j] else v == 0
                for r in self.matrix.sparse_rows()
                for j, v in r.items()
            )
        return all(self.target.contains(r) for r in self.matrix.tolist())

    def equals(self, other: "AbelianMap") -> bool:
        """Equality as homomorphisms (matrices may differ by target relations)."""
        return (self - other).is_zero()

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self) -> str:
        return f"AbelianMap({self.source!r} -> {self.target!r}, {self.matrix!r})"


def compose(g: AbelianMap, f: AbelianMap) -> AbelianMap:
    """``g o f``."""
    return f.then(g)


def _in_coordinates(basis: list[list[int]], rows: list[list[int]]) -> list[list[int]]:
    solver = HnfSolver(basis)
    out = []
    for r in rows:
        x = solver.solve(r)
        if x is None:
            raise IllFormedMap("vector outside the expected sublattice")
        out.append(x)
    return out


def _compressed_columns(M: IntMatrix, used: list[int], orders) -> tuple[list[list[int]], list[int]]:
    """Columns spanning the same lattice as ``used``, per target order.

    ``x -> x M`` into ``(+) Z/o`` only sees the span of the columns of each
    order ``o`` (plus ``o Z^n``), so a class with more columns than rows is
    replaced by a Hermite basis of that span.
    """
    n = M.nrows
    by_order: dict[int, list[int]] = {}
    for j in used:
        by_order.setdefault(orders[j], []).append(j)
    vecs = {j: [0] * n for j in used}
    for i, r in enumerate(M.sparse_rows()):
        for j, v in r.items():
            vecs[j][i] = v
    cols, col_orders = [], []
    for o, js in sorted(by_order.items()):
        vs = [vecs[j] for j in js]
        if len(js) > n:
            if o:
                vs = [[x % o for x in v] for v in vs] + [[o * int(i == k) for i in range(n)] for k in range(n)]
            vs = hnf_rows(vs, n)
        cols.extend(vs)
        col_orders.extend([o] * len(vs))
    return cols, col_orders


def preimage_lattice(f: AbelianMap) -> list[list[int]]:
    """Hermite basis of ``{x in Z^n : f(x) = 0 in the target}``."""
    n = f.source.generators
    orders = f.target.orders
    if orders is not None:
        # only the target coordinates that f touches matter
        used = sorted({j for r in f.matrix.sparse_rows() for j in r})
        cols, col_orders = _compressed_columns(f.matrix, used, orders)
        m = len(cols)
        body = IntMatrix([[c[i] for c in cols] for i in range(n)], m)
        rel_rows = [{k: o} for k, o in enumerate(col_orders) if o]
        stacked = vstack([body, IntMatrix.from_sparse(len(rel_rows), m, rel_rows)])
    else:
        stacked = vstack([f.matrix, f.target.relations])
    kern = left_kernel(stacked)
    return hnf_rows([r[:n] for r in kern], n)


def kernel(f: AbelianMap) -> tuple[PresentedAbelianGroup, AbelianMap]:
    """Kernel with its inclusion into the source."""
    if not f.is_well_defined():
        raise IllFormedMap("kernel of an ill-formed map")
    n = f.source.generators
    K = preimage_lattice(f)
    k = len(K)
    rel = _in_coordinates(K, f.source.relations.tolist()) if f.source.relations.nrows else []
    group = PresentedAbelianGroup(k, IntMatrix(rel, k))
    incl = AbelianMap(group, f.source, IntMatrix(K, n), check=False)
    return group, incl


def cokernel(f: AbelianMap) -> tuple[PresentedAbelianGroup, AbelianMap]:
    """Cokernel with its projection from the target."""
    if not f.is_well_defined():
        raise IllFormedMap("cokernel of an ill-formed map")
    T = f.target
    rel = vstack([T.relations, f.matrix], T.generators)
    group = PresentedAbelianGroup(T.generators, rel)
    proj = AbelianMap(T, group, IntMatrix.identity(T.generators), check=False)
    return group, proj


def image(f: AbelianMap) -> PresentedAbelianGroup:
    """The image ``f(source)``, presented as ``source / ker f``."""
    K = preimage_lattice(f)
    n = f.source.generators
    return PresentedAbelianGroup(n, IntMatrix(K, n) if K else IntMatrix.zeros(0, n))


def subquotient(incoming: AbelianMap, outgoing: AbelianMap) -> tuple[PresentedAbelianGroup, list[list[int]]]:
    """``ker(outgoing) / im(incoming)`` for composable maps with zero composite.

    Returns the group together with the Hermite basis of the cycle lattice,
    whose rows give the generators of the result in the middle group's coordinates.
    """
    mid = incoming.target
    K = preimage_lattice(outgoing)
    k = len(K)
    rows = []
    if mid.relations.nrows:
        rows.extend(mid.relations.tolist())
    if incoming.matrix.nrows:
        rows.extend(r for r, sp in zip(incoming.matrix.tolist(), incoming.matrix.sparse_rows()) if sp)
    rel = _in_coordinates(K, rows) if rows else []
    return PresentedAbelianGroup(k, IntMatrix(rel, k) if rel else IntMatrix.zeros(0, k)), K


def direct_sum(groups: Sequence[PresentedAbelianGroup]) -> PresentedAbelianGroup:
    if all(g.orders is not None for g in groups):
        return PresentedAbelianGroup.diagonal([d for g in groups for d in g.orders])
    n = sum(g.generators for g in groups)
    return PresentedAbelianGroup(n, block_diagonal([g.relations for g in groups]) if groups else IntMatrix.zeros(0, 0))


def map_direct_sum(maps: Sequence[AbelianMap]) -> AbelianMap:
    return AbelianMap(
        direct_sum([f.source for f in maps]),
        direct_sum([f.target for f in maps]),
        block_diagonal([f.matrix for f in maps]),
        check=False,
    )


def diagonalize(G: PresentedAbelianGroup) -> tuple[PresentedAbelianGroup, AbelianMap, AbelianMap]:
    """Canonical diagonal presentation ``D`` with inverse isomorphisms ``G -> D`` and ``D -> G``.

    Unit invariant factors are dropped, so every generator of ``D`` has order
    ``t_i >= 2`` or is free.
    """
    n = G.generators
    if n == 0:
        return G, AbelianMap.identity(G), AbelianMap.identity(G)
    basis = G.relation_basis()
    R = IntMatrix(basis, n) if basis else IntMatrix.zeros(0, n)
    if R.nrows == 0:
        D = PresentedAbelianGroup.free(n)
        return D, AbelianMap(G, D, IntMatrix.identity(n), check=False), AbelianMap(D, G, IntMatrix.identity(n), check=False)
    snf = smith_normal_form(R)
    V = snf.V
    # y = x V are the new coordinates; V^{-1} maps them back
    Vinv = _unimodular_inverse(V)
    diag = [snf.S[i, i] for i in range(snf.rank)] + [0] * (n - snf.rank)
    keep = [i for i, d in enumerate(diag) if d != 1]
    D = PresentedAbelianGroup.diagonal([diag[i] for i in keep])
    to_d = AbelianMap(G, D, V.select_cols(keep), check=False)
    from_d = AbelianMap(D, G, Vinv.select_rows(keep), check=False)
    return D, to_d, from_d


def _unimodular_inverse(V: IntMatrix) -> IntMatrix:
    n = V.nrows
    aug = [r + [int(i == j) for j in range(n)] for i, r in enumerate(V.tolist())]
    for c in range(n):
        while True:
            nz = [i for i in range(c, n) if aug[i][c]]
            k = min(nz, key=lambda i: abs(aug[i][c]))
            aug[c], aug[k] = aug[k], aug[c]
            done = True
            for i in range(n):
                if i != c and aug[i][c]:
                    q = aug[i][c] // aug[c][c]
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[c])]
                    if aug[i][c] and i > c:
                        done = False
            if done:
                break
        if aug[c][c] < 0:
            aug[c] = [-a for a in aug[c]]
    for c in range(n):
        for i in range(n):
            if i != c and aug[i][c]:
                q = aug[i][c] // aug[c][c]
                aug[i] = [a - q * b for a, b in zip(aug[i], aug[c])]
    return IntMatrix([r[n:] for r in aug], n)


# closed forms on cyclic decompositions

def _cyclic_terms(G: PresentedAbelianGroup) -> list[int]:
    torsion, free = G.canonical_form()
    return list(torsion) + [0] * free


def tensor_product(A: PresentedAbelianGroup, B: PresentedAbelianGroup) -> PresentedAbelianGroup:
    """``A (x)_Z B`` via cyclic decompositions (``Z/a (x) Z/b = Z/gcd``)."""
    return PresentedAbelianGroup.diagonal([gcd(a, b) for a in _cyclic_terms(A) for b in _cyclic_terms(B)])


def tor_product(A: PresentedAbelianGroup, B: PresentedAbelianGroup) -> PresentedAbelianGroup:
    out = []
    for a in _cyclic_terms(A):
        for b in _cyclic_terms(B):
            if a and b:
                out.append(gcd(a, b))
    return PresentedAbelianGroup.diagonal(out)


def hom_group(A: PresentedAbelianGroup, B: PresentedAbelianGroup) -> PresentedAbelianGroup:
    out = []
    for a in _cyclic_terms(A):
        for b in _cyclic_terms(B):
            if a == 0:
                out.append(b)
            elif b != 0:
                out.append(gcd(a, b))
            # Hom(Z/a, Z) = 0
    return PresentedAbelianGroup.diagonal(out)


def ext_group(A: PresentedAbelianGroup, B: PresentedAbelianGroup) -> PresentedAbelianGroup:
    out = []
    for a in _cyclic_terms(A):
        if a == 0:
            continue
        for b in _cyclic_terms(B):
            out.append(a if b == 0 else gcd(a, b))
    return PresentedAbelianGroup.diagonal(out)


def order_of(G: PresentedAbelianGroup) -> int | float:
    return G.order()


def lcm_list(xs: Sequence[int]) -> int:
    return reduce(lambda a, b: a // gcd(a, b) * b, xs, 1)
