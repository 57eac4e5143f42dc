"""Bounded chain and cochain complexes of presented abelian groups.

Degrees outside the stored range carry the zero group.  Chain complexes
store ``d_n : C_n -> C_{n-1}``; cochain complexes store ``d^n : C^n -> C^{n+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..errors import CompositionNonzero, IllFormedMap, NotExact
from .abelian import (
    AbelianMap,
    PresentedAbelianGroup,
    kernel,
    subquotient,
)
from .matrix import HnfSolver, IntMatrix, axpy, sparse_echelon
from .reduction import reduce_sequence

ZERO = PresentedAbelianGroup(0)

# complexes whose total rank exceeds this go through the sparse reduction
SPARSE_THRESHOLD = 150


class ChainComplex:
    """A bounded complex; ``cochain=True`` flips the direction of the differential."""

    def __init__(
        self,
        groups: Mapping[int, PresentedAbelianGroup],
        differentials: Mapping[int, AbelianMap],
        cochain: bool = False,
    ):
        if not groups:
            raise ValueError("a complex needs at least one degree")
        lo, hi = min(groups), max(groups)
        if sorted(groups) != list(range(lo, hi + 1)):
            raise ValueError("degrees must form a contiguous range")
        self.lo, self.hi = lo, hi
        self.cochain = cochain
        self.groups = dict(groups)
        self.differentials = dict(differentials)
        step = 1 if cochain else -1
        for n, d in self.differentials.items():
            if n not in self.groups or n + step not in self.groups:
                raise ValueError(f"differential at degree {n} leaves the degree range")
            if d.source.generators != self.groups[n].generators or d.target.generators != self.groups[n + step].generators:
                raise IllFormedMap(f"differential at degree {n} has the wrong shape")
        self._reduced = None

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def truncated(self, hi: int) -> "ChainComplex":
        """The same complex restricted to degrees ``lo..hi``."""
        if hi >= self.hi:
            return self
        step = 1 if self.cochain else -1
        groups = {n: g for n, g in self.groups.items() if n <= hi}
        diffs = {n: d for n, d in self.differentials.items() if n <= hi and n + step <= hi}
        return ChainComplex(groups, diffs, cochain=self.cochain)

    def group(self, n: int) -> PresentedAbelianGroup:
        return self.groups.get(n, ZERO)

    def outgoing(self, n: int) -> AbelianMap:
        """The differential leaving degree ``n``."""
        step = 1 if self.cochain else -1
        d = self.differentials.get(n)
        return d if d is not None else AbelianMap.zero(self.group(n), self.group(n + step))

    def incoming(self, n: int) -> AbelianMap:
        """The differential arriving at degree ``n``."""
        step = 1 if self.cochain else -1
        d = self.differentials.get(n - step)
        return d if d is not None else AbelianMap.zero(self.group(n - step), self.group(n))

    def ranks(self) -> dict[int, int]:
        return {n: g.generators for n, g in self.groups.items()}

    def composition_is_zero(self, n: int) -> bool:
        """Whether the composite through degree ``n`` vanishes."""
        f, g = self.incoming(n), self.outgoing(n)
        if f.matrix.nrows == 0 or g.matrix.ncols == 0:
            return True
        return (f.matrix @ g.matrix).nnz() == 0 or f.then(g).is_zero()

    def check(self) -> None:
        for n in self.degrees:
            if not self.composition_is_zero(n):
                raise CompositionNonzero(n)

    def is_diagonal(self) -> bool:
        return all(g.orders is not None for g in self.groups.values())

    def reduced(self) -> "ChainComplex":
        """A homology-equivalent complex after exact sparse reduction (memoized)."""
        if self._reduced is None:
            self._reduced = _reduce(self)
        return self._reduced

    def __repr__(self) -> str:
        kind = "cochain" if self.cochain else "chain"
        return f"ChainComplex({kind}, ranks={self.ranks()})"


def _sequence_order(C: ChainComplex) -> list[int]:
    return list(C.degrees) if C.cochain else list(reversed(C.degrees))


def _reduce(C: ChainComplex) -> ChainComplex:
    degs = _sequence_order(C)
    orders = [list(C.group(n).orders) for n in degs]
    maps = []
    for n in degs[:-1]:
        maps.append(list(C.outgoing(n).matrix.sparse_rows()))
    new_orders, new_maps, _ = reduce_sequence(orders, maps)
    groups = {n: PresentedAbelianGroup.diagonal(o) for n, o in zip(degs, new_orders)}
    diffs = {}
    step = 1 if C.cochain else -1
    for k, n in enumerate(degs[:-1]):
        src, tgt = groups[n], groups[n + step]
        diffs[n] = AbelianMap(src, tgt, IntMatrix.from_sparse(src.generators, tgt.generators, new_maps[k]), check=False)
    out = ChainComplex(groups, diffs, cochain=C.cochain)
    out._reduced = out
    return out


def homology_at(C: ChainComplex, n: int) -> PresentedAbelianGroup:
    """``ker d / im d`` at degree ``n`` (cohomology for cochain complexes)."""
    if not C.composition_is_zero(n):
        raise CompositionNonzero(n)
    if C.is_diagonal() and sum(C.ranks().values()) > SPARSE_THRESHOLD:
        R = C.reduced()
        return subquotient(R.incoming(n), R.outgoing(n))[0]
    return subquotient(C.incoming(n), C.outgoing(n))[0]


def homology(C: ChainComplex, n: int) -> PresentedAbelianGroup:
    return homology_at(C, n)


@dataclass
class HomologyData:
    """Homology at one degree with explicit cycle representatives."""

    group: PresentedAbelianGroup
    cycles: list  # Hermite basis rows, in the chain group's coordinates
    _solver: HnfSolver | None = field(default=None, repr=False, compare=False)

    def coordinates(self, cycle: Sequence[int]) -> list[int]:
        if self._solver is None:
            self._solver = HnfSolver(self.cycles)
        x = self._solver.solve(cycle)
        if x is None:
            raise IllFormedMap("vector is not a cycle")
        return x


def homology_data(C: ChainComplex, n: int) -> HomologyData:
    if not C.composition_is_zero(n):
        raise CompositionNonzero(n)
    group, basis = subquotient(C.incoming(n), C.outgoing(n))
    return HomologyData(group, basis)


class ChainMap:
    """Degreewise maps ``f_n : A_n -> B_n`` commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: Mapping[int, AbelianMap]):
        self.source, self.target = source, target
        self.maps = dict(maps)

    def at(self, n: int) -> AbelianMap:
        f = self.maps.get(n)
        return f if f is not None else AbelianMap.zero(self.source.group(n), self.target.group(n))

    def commutes(self) -> bool:
        for n in self.source.degrees:
            lhs = self.at(n).then(self.target.outgoing(n))
            step = 1 if self.source.cochain else -1
            rhs = self.source.outgoing(n).then(self.at(n + step))
            if not lhs.equals(rhs):
                return False
        return True


def induced_map(f: ChainMap, n: int, hs: HomologyData, ht: HomologyData) -> AbelianMap:
    """The map ``H_n(source) -> H_n(target)`` in the given cycle bases."""
    fn = f.at(n)
    rows = [ht.coordinates(fn(c)) for c in hs.cycles]
    return AbelianMap(hs.group, ht.group, IntMatrix(rows, ht.group.generators), check=False)


@dataclass
class JunctionReport:
    index: int
    exact: bool
    image: tuple
    kernel: tuple
    defect: tuple
    composite_zero: bool


@dataclass
class ExactnessReport:
    junctions: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(j.exact for j in self.junctions)

    def first_failure(self):
        for j in self.junctions:
            if not j.exact:
                return j
        return None

    def summary(self) -> str:
        lines = []
        for j in self.junctions:
            status = "exact" if j.exact else "NOT exact"
            lines.append(f"junction {j.index}: {status}; im={j.image} ker={j.kernel} defect={j.defect}")
        return "\n".join(lines)


def verify_exact(seq: Sequence[AbelianMap]) -> ExactnessReport:
    """Check ``im f_i = ker f_{i+1}`` at every interior junction of ``seq``."""
    from .abelian import image

    report = ExactnessReport()
    for i in range(len(seq) - 1):
        f, g = seq[i], seq[i + 1]
        if f.target.generators != g.source.generators:
            raise IllFormedMap(f"maps {i} and {i + 1} are not composable")
        comp_zero = f.then(g).is_zero()
        im = image(f).canonical_form()
        ker = kernel(g)[0].canonical_form()
        if comp_zero:
            defect = subquotient(f, g)[0].canonical_form()
            exact = defect == ([], 0)
        else:
            defect = None
            exact = False
        report.junctions.append(
            JunctionReport(i, exact, (im[0], im[1]), (ker[0], ker[1]), defect and (defect[0], defect[1]), comp_zero)
        )
    return report


def check_short_exact(incl: AbelianMap, proj: AbelianMap) -> str | None:
    """Return a reason string if ``0 -> A -> B -> C -> 0`` fails to be exact."""
    if not incl.then(proj).is_zero():
        return "composite nonzero"
    if not incl.is_injective():
        return "inclusion not injective"
    if not proj.is_surjective():
        return "projection not surjective"
    if not subquotient(incl, proj)[0].is_trivial():
        return "ker(proj) != im(incl)"
    return None


@dataclass
class LongExactSequence:
    """``... -> H_n(A) -> H_n(B) -> H_n(C) -> H_{n-1}(A) -> ...`` with explicit maps."""

    terms: list  # (label, degree, group)
    maps: list  # AbelianMap between consecutive terms
    complex: ChainComplex

    def report(self) -> ExactnessReport:
        return verify_exact(self.maps)


def connecting_sequence(incl: ChainMap, proj: ChainMap) -> LongExactSequence:
    """Long exact (co)homology sequence of a degreewise short exact sequence.

    Full triples run over degrees ``lo..hi-1``.  A chain sequence starts with
    ``H_hi(C)`` and ends with an explicit zero; a cochain sequence starts with
    an explicit zero and ends with ``H^hi(A)``.  The boundary terms at ``hi``
    are computed in the truncated complexes, so only their maps matter: every
    junction of degree below ``hi`` is a genuine exactness check.
    """
    A, B, C = incl.source, incl.target, proj.target
    if proj.source is not B:
        raise IllFormedMap("inclusion target and projection source differ")
    lo = max(A.lo, B.lo, C.lo)
    hi = min(A.hi, B.hi, C.hi)
    for n in range(lo, hi + 1):
        reason = check_short_exact(incl.at(n), proj.at(n))
        if reason is not None:
            raise NotExact(n, reason)
    cochain = B.cochain
    # homological direction: chain goes down, cochain goes up
    if cochain:
        degs = list(range(lo, hi + 1))
        step = 1
    else:
        degs = list(range(hi, lo - 1, -1))
        step = -1
    HA = {n: homology_data(A, n) for n in degs}
    HB = {n: homology_data(B, n) for n in degs}
    HC = {n: homology_data(C, n) for n in degs}
    terms, maps = [], []
    if cochain:
        terms.append(("0", None, ZERO))
        maps.append(AbelianMap.zero(ZERO, HA[lo].group))
    for idx, n in enumerate(degs):
        if cochain and n == hi:
            terms.append(("A", n, HA[n].group))
            break
        if not cochain and n == hi:
            terms.append(("C", n, HC[n].group))
            maps.append(_connecting_map(incl, proj, n, step, HC[n], HA[n + step]))
            continue
        terms += [("A", n, HA[n].group), ("B", n, HB[n].group), ("C", n, HC[n].group)]
        maps.append(induced_map(incl, n, HA[n], HB[n]))
        maps.append(induced_map(proj, n, HB[n], HC[n]))
        if n + step in HA:
            maps.append(_connecting_map(incl, proj, n, step, HC[n], HA[n + step]))
    if not cochain:
        terms.append(("0", None, ZERO))
        maps.append(AbelianMap.zero(terms[-2][2], ZERO))
    groups = {i: t[2] for i, t in enumerate(terms)}
    diffs = {i: m for i, m in enumerate(maps)}
    cx = ChainComplex(groups, diffs, cochain=True)
    return LongExactSequence(terms, maps, cx)


class _LatticeSolver:
    """Solves ``x @ rows == y`` for many ``y`` after one sparse echelon pass with tracked combinations."""

    def __init__(self, rows: Sequence[dict]):
        self.pivots, _ = sparse_echelon(rows, track=True)

    def solve(self, y: Sequence[int]) -> dict | None:
        y = {j: v for j, v in enumerate(y) if v}
        x: dict = {}
        for col, pr, pc in self.pivots:
            v = y.get(col)
            if not v:
                continue
            q, rem = divmod(v, pr[col])
            if rem:
                return None
            y = axpy(y, pr, -q)
            x = axpy(x, pc, q)
        return None if y else x


def _solver_for(f: AbelianMap) -> _LatticeSolver:
    """Solver for ``x @ [f; relations of the target] == y``."""
    return _LatticeSolver(f.matrix.sparse_rows() + f.target.relations.sparse_rows())


def _solve(solver: _LatticeSolver, y: Sequence[int], width: int) -> list[int]:
    x = solver.solve(y)
    if x is None:
        raise NotExact(None, "no integral lift")
    out = [0] * width
    for k, v in x.items():
        if k < width:
            out[k] = v
    return out


def _connecting_map(incl: ChainMap, proj: ChainMap, n: int, step: int, hc: HomologyData, ha: HomologyData) -> AbelianMap:
    B = proj.source
    p = proj.at(n)
    i_next = incl.at(n + step)
    d = B.outgoing(n)
    lift_p, pull_i = _solver_for(p), _solver_for(i_next)
    rows = []
    for c in hc.cycles:
        b = _solve(lift_p, c, p.source.generators)
        # d(b) lies in the image of the inclusion; pull it back
        a = _solve(pull_i, d(b), i_next.source.generators)
        rows.append(ha.coordinates(a))
    return AbelianMap(hc.group, ha.group, IntMatrix(rows, ha.group.generators), check=False)
