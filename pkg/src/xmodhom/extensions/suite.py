"""Extension counts against cohomology orders, as an :class:`InvariantReport`."""

from __future__ import annotations

from itertools import product
from math import gcd, lcm

from ..config import DEFAULT_BUDGET, Budget
from ..invariants.core import classifying_cohomology, d_cohomology, pi1_surjection, relative_cohomology
from ..invariants.report import InvariantReport
from ..xmod.coefficients import PiCoefficients
from ..xmod.crossed import CrossedModule
from .bruteforce import (
    baer_sum,
    classify_congruence,
    enumerate_relative,
    enumerate_singular_1ai,
    enumerate_singular_a10,
    split_extension_a10,
)


def extensions_suite(X: CrossedModule, A: PiCoefficients, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> InvariantReport:
    """``|E^1| = |D^1|``, 1Ai classes ``= |H^2(B X, A)|``, Baer-sum group laws and, for aspherical ``X``, relative classes."""
    name = f"{X.name or 'instance'} / {A.coefficients.describe()}"
    rep = InvariantReport(name, "extensions", None, None, "enumeration|cohomology")

    ai = classify_congruence(enumerate_singular_1ai(X, A), "1ai")
    h2 = classifying_cohomology(X, A, 2, budget, cache_dir)
    rep.add("(1,A,i) classes = |H^2(BX, A)|", len(ai) == h2.order(), f"{len(ai)} vs {h2.describe()}")

    a10 = enumerate_singular_a10(X, A)
    classes = classify_congruence(a10, "a10")
    d1 = d_cohomology(X, A, 1, budget, cache_dir)
    rep.add("(A,1,0) classes = |D^1|", len(classes) == d1.order(), f"{len(classes)} vs {d1.describe()}")
    rep.value = d1

    owner = {}
    for i, c in enumerate(classes):
        for E in c.members:
            owner[E.key] = i
    split = owner[split_extension_a10(X, A).key]
    reps = [c.representative for c in classes]

    def add(i, j):
        return owner[baer_sum(reps[i], reps[j]).key]

    table = [[add(i, j) for j in range(len(reps))] for i in range(len(reps))]
    rep.add("split class is neutral for the Baer sum", all(table[split][i] == i for i in range(len(reps))))
    rep.add("Baer sum is commutative", all(table[i][j] == table[j][i] for i in range(len(reps)) for j in range(len(reps))))
    rep.add(
        "Baer sum is associative",
        all(table[table[i][j]][k] == table[i][table[j][k]] for i in range(len(reps)) for j in range(len(reps)) for k in range(len(reps))),
    )
    orders = sorted(_element_orders(table, split))
    want = sorted(_element_orders_of(d1))
    rep.add("class group has the element orders of D^1", orders == want, f"{orders} vs {want}")

    if X.is_aspherical():
        f = pi1_surjection(X)
        rel = enumerate_relative(f, A.module)
        h = relative_cohomology(f, A.module, 2, budget)
        rep.add("relative classes = |H^2(pi_1, G; A)|", rel.count == h.order(), f"{rel.count} vs {h.describe()}")
        rep.add("relative classes biject with (A,1,0) classes", rel.count == len(rel.a10_classes) == len(classes))
    return rep


def _element_orders(table: list[list[int]], zero: int) -> list[int]:
    out = []
    for x in range(len(table)):
        k, y = 1, x
        while y != zero:
            y = table[y][x]
            k += 1
        out.append(k)
    return out


def _element_orders_of(G) -> list[int]:
    torsion = G.torsion
    out = []
    for v in product(*[range(t) for t in torsion]):
        o = 1
        for a, t in zip(v, torsion):
            o = lcm(o, t // gcd(a, t))
        out.append(o)
    return out
