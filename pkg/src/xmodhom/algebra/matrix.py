"""Exact integer matrices, Smith and Hermite normal forms.

Matrices act on row vectors throughout the package: the image of the i-th
basis vector under a map with matrix ``M`` is row ``i`` of ``M``, so maps
compose as ``x -> x @ M1 @ M2``.

Storage is sparse by rows (a tuple of ``{column: value}`` dicts) because the
nerve differentials are large and very sparse.  Dense algorithms convert to
lists of lists first.

>>> smith_normal_form(IntMatrix([[2, 4], [6, 8]])).invariant_factors
[2, 4]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x*a + y*b = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """Immutable integer matrix with sparse row storage."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]] = (), ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = tuple({j: int(v) for j, v in enumerate(r) if v} for r in rows)
        self._hash = None

    @classmethod
    def from_sparse(cls, nrows: int, ncols: int, rows: Iterable[dict]) -> "IntMatrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols = nrows, ncols
        m._rows = tuple({j: v for j, v in r.items() if v} for r in rows)
        m._hash = None
        if len(m._rows) != nrows:
            raise ValueError("row count mismatch")
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls.from_sparse(nrows, ncols, ({} for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_sparse(n, n, ({i: 1} for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], ncols: int | None = None) -> "IntMatrix":
        ncols = len(entries) if ncols is None else ncols
        return cls.from_sparse(len(entries), ncols, ({i: d} for i, d in enumerate(entries)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major entries, length ``nrows * ncols``."""
        return tuple(v for r in self.tolist() for v in r)

    def row(self, i: int) -> dict:
        return self._rows[i]

    def sparse_rows(self) -> tuple[dict, ...]:
        return self._rows

    def tolist(self) -> list[list[int]]:
        out = []
        for r in self._rows:
            dense = [0] * self.ncols
            for j, v in r.items():
                dense[j] = v
            out.append(dense)
        return out

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i].get(j, 0)

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def transpose(self) -> "IntMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return IntMatrix.from_sparse(self.ncols, self.nrows, cols)

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._rows
        out = []
        for r in self._rows:
            acc: dict = {}
            for k, v in r.items():
                for j, w in orows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.append(acc)
        return IntMatrix.from_sparse(self.nrows, other.ncols, out)

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self._rows, other._rows):
            acc = dict(a)
            for j, v in b.items():
                acc[j] = acc.get(j, 0) + sign * v
            out.append(acc)
        return IntMatrix.from_sparse(self.nrows, self.ncols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix.from_sparse(self.nrows, self.ncols, ({j: c * v for j, v in r.items()} for r in self._rows))

    def vec_mul(self, x: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        out = [0] * self.ncols
        for xi, r in zip(x, self._rows):
            if xi:
                for j, v in r.items():
                    out[j] += xi * v
        return out

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_sparse(len(idx), self.ncols, (self._rows[i] for i in idx))

    def select_cols(self, idx: Sequence[int]) -> "IntMatrix":
        pos = {j: k for k, j in enumerate(idx)}
        return IntMatrix.from_sparse(
            self.nrows, len(idx), ({pos[j]: v for j, v in r.items() if j in pos} for r in self._rows)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))
        return self._hash

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            return f"IntMatrix({self.tolist()})"
        return f"IntMatrix(<{self.nrows}x{self.ncols}, nnz={self.nnz()}>)"


def vstack(mats: Sequence[IntMatrix], ncols: int | None = None) -> IntMatrix:
    if ncols is None:
        ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column mismatch in vstack")
        rows.extend(m.sparse_rows())
    return IntMatrix.from_sparse(len(rows), ncols, rows)


def block_diagonal(mats: Sequence[IntMatrix]) -> IntMatrix:
    rows, off = [], 0
    for m in mats:
        rows.extend({j + off: v for j, v in r.items()} for r in m.sparse_rows())
        off += m.ncols
    return IntMatrix.from_sparse(len(rows), off, rows)


def hstack(mats: Sequence[IntMatrix]) -> IntMatrix:
    n = mats[0].nrows
    rows = [dict() for _ in range(n)]
    off = 0
    for m in mats:
        if m.nrows != n:
            raise ValueError("row mismatch in hstack")
        for i, r in enumerate(m.sparse_rows()):
            for j, v in r.items():
                rows[i][j + off] = v
        off += m.ncols
    return IntMatrix.from_sparse(n, off, rows)


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("determinant of non-square matrix")
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# Smith normal form

@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``S`` diagonal and ``U``, ``V`` unimodular."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    rank: int
    invariant_factors: list


def _snf_dense(M: list[list[int]], track: bool, n: int | None = None):
    m = len(M)
    if n is None:
        n = len(M[0]) if m else 0
    S = [r[:] for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in S:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in V:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, c):  # row dst += c * row src
        rs, rd = S[src], S[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += c * rs[j]
        if track:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += c * us[j]

    def add_col(dst, src, c):  # col dst += c * col src
        for r in S:
            if r[src]:
                r[dst] += c * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += c * r[src]

    t = 0
    while t < min(m, n):
        # deterministic pivot: smallest absolute value, first in row-major order
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    if q:
                        add_row(i, t, -q)
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    if q:
                        add_col(j, t, -q)
                    if S[t][j]:
                        clean = False
            if clean:
                break
            # move the smallest remainder in row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if S[i][t] and abs(S[i][t]) < best[0]:
                    best = (abs(S[i][t]), i, t)
            for j in range(t + 1, n):
                if S[t][j] and abs(S[t][j]) < best[0]:
                    best = (abs(S[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        t += 1
    r = t
    # enforce the divisibility chain on the diagonal
    for i in range(r):
        for j in range(i + 1, r):
            a, b = S[i][i], S[j][j]
            if b % a == 0:
                continue
            g, x, y = _xgcd(a, b)
            add_col(i, j, 1)  # rows i,j now read [a, 0], [b, b]
            # row op [[x, y], [-b/g, a/g]] on rows i, j
            ri, rj = S[i], S[j]
            S[i] = [x * u + y * v for u, v in zip(ri, rj)]
            S[j] = [(-b // g) * u + (a // g) * v for u, v in zip(ri, rj)]
            if track:
                ui, uj = U[i], U[j]
                U[i] = [x * u + y * v for u, v in zip(ui, uj)]
                U[j] = [(-b // g) * u + (a // g) * v for u, v in zip(ui, uj)]
            add_col(j, i, -(S[i][j] // S[i][i]))
    for i in range(r):
        if S[i][i] < 0:
            S[i] = [-v for v in S[i]]
            if track:
                U[i] = [-v for v in U[i]]
    return S, U, V, r


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms, ``U @ A @ V == S``."""
    m, n = A.shape
    S, U, V, r = _snf_dense(A.tolist(), True, n)
    return SmithDecomposition(
        S=IntMatrix(S, n),
        U=IntMatrix(U, m),
        V=IntMatrix(V, n),
        rank=r,
        invariant_factors=[S[i][i] for i in range(r)],
    )


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero diagonal of the Smith form, without tracking transforms.

    The relation lattice is first compacted to a Hermite basis, which keeps
    tall relation matrices cheap.
    """
    basis = hnf_rows(A)
    if not basis:
        return []
    S, _, _, r = _snf_dense(basis, False)
    return [S[i][i] for i in range(r)]


# Hermite forms and lattices

def axpy(a: dict, b: dict, q: int) -> dict:
    """``a + q b`` on sparse vectors."""
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + q * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def sparse_echelon(rows: Sequence[dict], track: bool = False) -> tuple[list[tuple[int, dict, dict]], list[dict]]:
    """Integer row echelon form of sparse rows.

    Returns ``(pivots, zero)``: ``pivots`` lists ``(column, row, combination)``
    with strictly increasing columns, and ``zero`` the combinations of the
    input rows that vanish (only when ``track``).  Combinations are sparse
    dicts over the input row indices.
    """
    work = [(dict(r), {i: 1} if track else {}) for i, r in enumerate(rows)]
    zero = [c for r, c in work if not r]
    work = [w for w in work if w[0]]
    pivots = []
    while work:
        col = min(min(r) for r, _ in work)
        nz = [w for w in work if col in w[0]]
        rest = [w for w in work if col not in w[0]]
        while len(nz) > 1:
            nz.sort(key=lambda w: (abs(w[0][col]), len(w[0])))
            pr, pc = nz[0]
            pv = pr[col]
            nxt = [nz[0]]
            for r, c in nz[1:]:
                q = r[col] // pv
                r = axpy(r, pr, -q)
                if track:
                    c = axpy(c, pc, -q)
                if col in r:
                    nxt.append((r, c))
                elif r:
                    rest.append((r, c))
                else:
                    zero.append(c)
            nz = nxt
        pivots.append((col, nz[0][0], nz[0][1]))
        work = rest
    return pivots, zero


def _reduce_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and strictly increasing in column; entries above a
    pivot are reduced into ``[0, pivot)``.  Zero rows are dropped.
    """
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    return _dense(_hnf_sparse(sparse), ncols)


def _hnf_sparse(rows: Sequence[dict]) -> list[dict]:
    pivots, _ = sparse_echelon(rows)
    basis = []
    for col, r, _ in pivots:
        basis.append((col, r if r[col] > 0 else {k: -v for k, v in r.items()}))
    for k, (c, piv) in enumerate(basis):
        p = piv[c]
        for i in range(k):
            q = basis[i][1].get(c, 0) // p
            if q:
                basis[i] = (basis[i][0], axpy(basis[i][1], piv, -q))
    return [r for _, r in basis]


def _dense(rows: list[dict], ncols: int) -> list[list[int]]:
    out = []
    for r in rows:
        d = [0] * ncols
        for j, v in r.items():
            d[j] = v
        out.append(d)
    return out


def hnf_rows(A: IntMatrix | list[list[int]], ncols: int | None = None) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return _reduce_rows(A.tolist(), A.ncols)
    return _reduce_rows([list(r) for r in A], ncols if ncols is not None else (len(A[0]) if A else 0))


class HnfSolver:
    """Repeated solves of ``x @ basis == y`` against one Hermite basis, on sparse rows."""

    __slots__ = ("pivots",)

    def __init__(self, basis: list[list[int]]):
        self.pivots = []
        for piv in basis:
            row = {j: v for j, v in enumerate(piv) if v}
            self.pivots.append((min(row), row))

    def solve(self, y: Sequence[int]) -> list[int] | None:
        y = {j: v for j, v in enumerate(y) if v}
        x = [0] * len(self.pivots)
        for i, (c, row) in enumerate(self.pivots):
            v = y.get(c)
            if not v:
                continue
            q, r = divmod(v, row[c])
            if r:
                return None
            x[i] = q
            for j, w in row.items():
                t = y.get(j, 0) - q * w
                if t:
                    y[j] = t
                else:
                    y.pop(j, None)
        return None if y else x


def solve_hnf(basis: list[list[int]], y: Sequence[int]) -> list[int] | None:
    """Coefficients ``x`` with ``x @ basis == y``, or ``None`` if ``y`` is not in the lattice."""
    return HnfSolver(basis).solve(y)


def left_kernel(A: IntMatrix | list[list[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis (Hermite form) of ``{x : x @ A == 0}``."""
    if isinstance(A, IntMatrix):
        rows = list(A.sparse_rows())
    else:
        rows = [{j: v for j, v in enumerate(r) if v} for r in A]
    m = len(rows)
    if m == 0:
        return []
    _, zero = sparse_echelon(rows, track=True)
    return _dense(_hnf_sparse(zero), m)
