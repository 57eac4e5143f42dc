"""On-disk memo of totalized complexes.

Files are gzip-compressed text: a version header, then the degree range,
the generator orders per degree and each differential as sparse rows.
Deleting the cache never changes results.
"""

from __future__ import annotations

import gzip
import hashlib
import os

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup
from ..algebra.complexes import ChainComplex
from ..algebra.matrix import IntMatrix

VERSION = "xmodhom-cache 1"
ENV_VAR = "XMODHOM_CACHE_DIR"


def resolve_dir(cache_dir: str | None) -> str | None:
    return cache_dir or os.environ.get(ENV_VAR) or None


def make_key(*parts) -> str:
    return hashlib.sha256(repr((VERSION,) + parts).encode()).hexdigest()


def _path(cache_dir: str, key: str) -> str:
    return os.path.join(cache_dir, f"{key}.cx.gz")


def store(cache_dir: str, key: str, C: ChainComplex) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    lines = [VERSION, f"range {C.lo} {C.hi} {int(C.cochain)}"]
    for n in C.degrees:
        lines.append(f"orders {n} " + " ".join(map(str, C.group(n).orders)))
    for n, d in sorted(C.differentials.items()):
        m = d.matrix
        lines.append(f"matrix {n} {m.nrows} {m.ncols}")
        for r in m.sparse_rows():
            lines.append(" ".join(f"{j}:{v}" for j, v in sorted(r.items())))
    tmp = _path(cache_dir, key) + ".tmp"
    with gzip.open(tmp, "wt", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, _path(cache_dir, key))


def load(cache_dir: str, key: str) -> ChainComplex | None:
    path = _path(cache_dir, key)
    if not os.path.exists(path):
        return None
    with gzip.open(path, "rt", encoding="ascii") as fh:
        lines = fh.read().split("\n")
    if not lines or lines[0] != VERSION:
        return None
    it = iter(lines[1:])
    _, lo, hi, cochain = next(it).split()
    lo, hi, cochain = int(lo), int(hi), bool(int(cochain))
    groups = {}
    for _ in range(lo, hi + 1):
        parts = next(it).split()
        groups[int(parts[1])] = PresentedAbelianGroup.diagonal([int(x) for x in parts[2:]])
    diffs = {}
    step = 1 if cochain else -1
    for line in it:
        if not line.startswith("matrix"):
            continue
        _, n, nr, nc = line.split()
        n, nr, nc = int(n), int(nr), int(nc)
        rows = []
        for _ in range(nr):
            rows.append({int(a): int(b) for a, b in (e.split(":") for e in next(it).split())})
        diffs[n] = AbelianMap(groups[n], groups[n + step], IntMatrix.from_sparse(nr, nc, rows), check=False)
    return ChainComplex(groups, diffs, cochain=cochain)
