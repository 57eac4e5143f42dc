"""First-quadrant double complexes and their totalization.

Both differentials are stored so that they commute; the sign is applied
once, in :func:`totalize`.  The default convention is
``d = d_vertical + (-1)^q d_horizontal`` with ``q`` the vertical degree of
the source entry; ``sign="p"`` switches to ``(-1)^p d_vertical + d_horizontal``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup, direct_sum
from ..algebra.complexes import ChainComplex
from ..algebra.matrix import IntMatrix
from ..errors import CompositionNonzero, InsufficientRectangle

ZERO = PresentedAbelianGroup(0)


@dataclass
class Bicomplex:
    """Entries ``(p, q)`` with ``p + q <= extent``; missing entries inside that range are zero.

    Chain orientation: horizontal ``(p, q) -> (p-1, q)``, vertical
    ``(p, q) -> (p, q-1)``.  Cochain orientation reverses both.
    """

    entries: dict
    horizontal: dict = field(default_factory=dict)
    vertical: dict = field(default_factory=dict)
    extent: int = 0
    cochain: bool = False

    def entry(self, p: int, q: int) -> PresentedAbelianGroup:
        return self.entries.get((p, q), ZERO)

    def _map(self, store: dict, p: int, q: int, tp: int, tq: int) -> AbelianMap:
        f = store.get((p, q))
        return f if f is not None else AbelianMap.zero(self.entry(p, q), self.entry(tp, tq))

    def h(self, p: int, q: int) -> AbelianMap:
        s = 1 if self.cochain else -1
        return self._map(self.horizontal, p, q, p + s, q)

    def v(self, p: int, q: int) -> AbelianMap:
        s = 1 if self.cochain else -1
        return self._map(self.vertical, p, q, p, q + s)

    def check(self) -> "Bicomplex":
        """Both directions square to zero and the squares commute (inside the extent)."""
        s = 1 if self.cochain else -1
        for (p, q) in self.entries:
            for name, a, b in (
                ("horizontal", self.h(p, q), self.h(p + s, q)),
                ("vertical", self.v(p, q), self.v(p, q + s)),
            ):
                if a.matrix.nrows and b.matrix.ncols and not a.then(b).is_zero():
                    raise CompositionNonzero((name, p, q))
            hv = self.h(p, q).then(self.v(p + s, q))
            vh = self.v(p, q).then(self.h(p, q + s))
            if hv.matrix.nrows and hv.matrix.ncols and not (hv - vh).is_zero():
                raise CompositionNonzero(("square", p, q))
        return self


def totalize(B: Bicomplex, max_degree: int, sign: str = "q") -> ChainComplex:
    """``Tot_n = (+)_{p+q=n} B_{pq}`` for ``0 <= n <= max_degree``."""
    if max_degree > B.extent:
        raise InsufficientRectangle(f"entries reach total degree {B.extent}, {max_degree} requested")
    s = 1 if B.cochain else -1
    cells = {n: [(p, n - p) for p in range(n + 1)] for n in range(max_degree + 1)}
    offsets = {}
    groups = {}
    for n, cs in cells.items():
        off = 0
        for c in cs:
            offsets[c] = off
            off += B.entry(*c).generators
        groups[n] = direct_sum([B.entry(*c) for c in cs]) if cs else ZERO
    diffs = {}
    for n in range(max_degree + 1):
        m = n + s
        if m < 0 or m > max_degree:
            continue
        rows = []
        for (p, q) in cells[n]:
            hsign = (-1) ** q if sign == "q" else 1
            vsign = 1 if sign == "q" else (-1) ** p
            hm = B.h(p, q).matrix.sparse_rows() if (p + s, q) in offsets else None
            vm = B.v(p, q).matrix.sparse_rows() if (p, q + s) in offsets else None
            ho = offsets.get((p + s, q))
            vo = offsets.get((p, q + s))
            for i in range(B.entry(p, q).generators):
                r: dict = {}
                if vm is not None:
                    for j, x in vm[i].items():
                        r[vo + j] = r.get(vo + j, 0) + vsign * x
                if hm is not None:
                    for j, x in hm[i].items():
                        r[ho + j] = r.get(ho + j, 0) + hsign * x
                rows.append(r)
        src, tgt = groups[n], groups[m]
        diffs[n] = AbelianMap(src, tgt, IntMatrix.from_sparse(src.generators, tgt.generators, rows), check=False)
    return ChainComplex(groups, diffs, cochain=B.cochain)
