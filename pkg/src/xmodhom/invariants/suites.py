"""Verification suites: each check computes both sides independently."""

from __future__ import annotations

from ..algebra.abelian import (
    AbelianMap,
    PresentedAbelianGroup,
    direct_sum,
    ext_group,
    hom_group,
    tensor_product,
    tor_product,
)
from ..algebra.complexes import connecting_sequence, homology_at
from ..algebra.matrix import IntMatrix
from ..config import DEFAULT_BUDGET, Budget
from ..errors import InapplicableSuite
from ..groups.bar import group_cohomology, group_homology
from ..groups.cyclic import INFINITY, cyclic_cohomology, free_abelian_rank2_cohomology
from ..groups.finite import FiniteGroup, GroupAction, GroupHom
from ..groups.modules import GModule
from ..simplicial.nerve_complex import beta_sequence, nerve_total_complex
from ..xmod.coefficients import (
    EquivariantModule,
    PiCoefficients,
    element_index,
    finite_abelian_group,
    trivial_coefficients,
    validate_pi_coefficients,
)
from ..xmod.crossed import CrossedModule, validate_crossed_module
from ..xmod.functors import der_precrossed, der_xmod, diff_with_coefficients
from .core import (
    classifying_cohomology,
    classifying_homology,
    d_cohomology,
    d_cohomology_relative,
    d_homology,
    d_homology_relative,
    equivariant_cohomology,
)
from .report import InvariantReport


def _cf(G: PresentedAbelianGroup):
    return tuple(G.canonical_form())


def _same(a: PresentedAbelianGroup, b: PresentedAbelianGroup) -> bool:
    return a.canonical_form() == b.canonical_form()


def _name(X, A=None) -> str:
    base = getattr(X, "name", None) or "instance"
    if A is not None:
        base += f" / {getattr(A, 'name', None) or A.coefficients.describe()}"
    return base


def _order(G: PresentedAbelianGroup):
    return G.order()


# two-route invariants


def degree0_suite(X: CrossedModule, A: PiCoefficients, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> InvariantReport:
    """``D_0 = A (x) Diff`` and ``D^0 = Der`` against the beta complexes."""
    rep = InvariantReport(_name(X, A), "degree0", 0, None, "beta")
    dh = d_homology(X, A, 0, budget, cache_dir)
    fast = diff_with_coefficients(X, A, fast=True)
    slow = diff_with_coefficients(X, A, fast=False)
    rep.add("H_2(beta) = A (x) Diff (induced module)", _same(dh, fast), f"{dh.describe()} vs {fast.describe()}")
    rep.add("H_2(beta) = A (x) Diff (presentation)", _same(dh, slow), f"{dh.describe()} vs {slow.describe()}")
    dc = d_cohomology(X, A, 0, budget, cache_dir)
    der = der_xmod(X, A)
    rep.add("H^2(beta) = Der", _same(dc, der), f"{dc.describe()} vs {der.describe()}")
    rep.value = dc
    rep.routes = {"beta": _cf(dc), "der": _cf(der)}
    return rep


def theorem32(X: CrossedModule, A: PiCoefficients, degrees=(1, 2), budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> InvariantReport:
    """Beta route against relative (co)homology of ``G -> pi_1`` for aspherical ``X``."""
    if not X.is_aspherical():
        raise InapplicableSuite("theorem32 needs an aspherical crossed module")
    rep = InvariantReport(_name(X, A), "theorem32", None, None, "beta|relative")
    for n in degrees:
        a, b = d_cohomology(X, A, n, budget, cache_dir), d_cohomology_relative(X, A, n, budget)
        rep.add(f"D^{n} = H^{n + 1}(pi_1, G; A)", _same(a, b), f"{a.describe()} vs {b.describe()}")
        a, b = d_homology(X, A, n, budget, cache_dir), d_homology_relative(X, A, n, budget)
        rep.add(f"D_{n} = H_{n + 1}(pi_1, G; A)", _same(a, b), f"{a.describe()} vs {b.describe()}")
    return rep


def equivariant_consistency(X: CrossedModule, A: PiCoefficients, budget: Budget = DEFAULT_BUDGET) -> InvariantReport:
    """``H^1_G(T, A)``, ``Der_G(T, A)`` and ``Der(X, A)`` for a crossed module with ``pi_1``-coefficients."""
    E = EquivariantModule.from_pi_coefficients(X, A).validate()
    h1 = equivariant_cohomology(X.action, E, 1, budget)
    dp = der_precrossed(X, E)
    dx = der_xmod(X, A)
    rep = InvariantReport(_name(X, A), "equivariant", 1, h1, "kernel-complex")
    rep.routes = {"kernel-complex": _cf(h1), "der_precrossed": _cf(dp), "der_xmod": _cf(dx)}
    rep.add("H^1_G(T, A) = Der_G(T, A)", _same(h1, dp), f"{h1.describe()} vs {dp.describe()}")
    rep.add("Der_G(T, A) = Der(X, A)", _same(dp, dx), f"{dp.describe()} vs {dx.describe()}")
    return rep


def tot_sign_check(X: CrossedModule, A: PiCoefficients, max_total: int = 4, budget: Budget = DEFAULT_BUDGET) -> InvariantReport:
    """Homology of the nerve complex does not depend on where the Tot sign goes."""
    rep = InvariantReport(_name(X, A), "tot-sign", None, None, "sign=q|sign=p")
    for cochain in (False, True):
        Cq = nerve_total_complex(X, A, max_total, cochain, budget, sign="q")
        Cp = nerve_total_complex(X, A, max_total, cochain, budget, sign="p")
        for n in range(max_total):
            a, b = homology_at(Cq, n), homology_at(Cp, n)
            kind = "H^" if cochain else "H_"
            rep.add(f"{kind}{n} agrees under both conventions", _same(a, b), f"{a.describe()} vs {b.describe()}")
    return rep


# universal coefficients


def uct_check(X: CrossedModule, A: PresentedAbelianGroup, n: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> InvariantReport:
    """``D^n(A)`` and ``D_n(A)`` against ``Hom/Ext`` and ``(x)/Tor`` of the integral ``D_*``."""
    Z = trivial_coefficients(X, PresentedAbelianGroup.free(1), "Z")
    Ac = trivial_coefficients(X, A)
    dz_n = d_homology(X, Z, n, budget, cache_dir)
    dz_prev = d_homology(X, Z, n - 1, budget, cache_dir) if n >= 1 else PresentedAbelianGroup(0)
    dn_coh = d_cohomology(X, Ac, n, budget, cache_dir)
    dn_hom = d_homology(X, Ac, n, budget, cache_dir)
    ext, hom = ext_group(dz_prev, A), hom_group(dz_n, A)
    tens, tor = tensor_product(dz_n, A), tor_product(dz_prev, A)
    rep = InvariantReport(_name(X, Ac), "uct", n, dn_coh, "beta")
    rep.routes = {"beta": _cf(dn_coh), "uct": _cf(direct_sum([ext, hom]))}
    rep.add(
        "|D^n(A)| = |Ext(D_{n-1}(Z), A)| |Hom(D_n(Z), A)|",
        _order(dn_coh) == _order(ext) * _order(hom),
        f"{_order(dn_coh)} vs {_order(ext)} * {_order(hom)}",
    )
    rhs = direct_sum([ext, hom])
    rep.add("D^n(A) = Ext + Hom", _same(dn_coh, rhs), f"{dn_coh.describe()} vs {rhs.describe()}")
    rhs = direct_sum([tens, tor])
    rep.add("D_n(A) = D_n(Z) (x) A + Tor(D_{n-1}(Z), A)", _same(dn_hom, rhs), f"{dn_hom.describe()} vs {rhs.describe()}")
    return rep


# long exact sequences


def les_suite(X: CrossedModule, A: PiCoefficients, max_n: int = 4, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> InvariantReport:
    """Long exact sequences of the beta short exact sequences, with every term identified.

    Complexes are built through degree ``max_n + 1`` so the sequences are
    exact through degree ``max_n``.
    """
    rep = InvariantReport(_name(X, A), "les", max_n, None, "beta-ses")
    top = max_n + 1
    for cochain in (False, True):
        data = beta_sequence(X, A, top, cochain, budget, cache_dir)
        les = connecting_sequence(data.inclusion, data.projection)
        ex = les.report()
        kind = "cohomology" if cochain else "homology"
        bad = ex.first_failure()
        rep.add(f"{kind} sequence exact at {len(ex.junctions)} junctions", ex.exact, "" if bad is None else f"junction {bad.index}")
        # label each term: constant part, total complex, beta
        roles = {"A": "beta", "B": "tot", "C": "const"} if cochain else {"A": "const", "B": "tot", "C": "beta"}
        for label, n, grp in les.terms:
            if n is None or n > max_n:
                continue
            role = roles[label]
            if role == "const":
                want = group_cohomology(A.g_module, n, budget) if cochain else group_homology(A.g_module, n, budget)
                what = f"H{'^' if cochain else '_'}{n}(G, A)"
            elif role == "tot":
                want = (classifying_cohomology if cochain else classifying_homology)(X, A, n, budget, cache_dir)
                what = f"H{'^' if cochain else '_'}{n}(BX, A)"
                if n == 1:
                    pi = group_cohomology(A.module, 1, budget) if cochain else group_homology(A.module, 1, budget)
                    rep.add(f"{kind}: degree 1 of BX equals pi_1 {kind}", _same(grp, pi), f"{grp.describe()} vs {pi.describe()}")
            else:
                if n >= 2:
                    want = (d_cohomology if cochain else d_homology)(X, A, n - 2, budget, cache_dir)
                    what = f"D{'^' if cochain else '_'}{n - 2}"
                else:
                    want = PresentedAbelianGroup(0)
                    what = "0"
            rep.add(f"{kind}: term {what}", _same(grp, want), f"{grp.describe()} vs {want.describe()}")
        # low-degree tail in terms of Diff and Der
        zero_deg = 2
        for label, n, grp in les.terms:
            if roles.get(label) == "beta" and n == zero_deg:
                other = der_xmod(X, A) if cochain else diff_with_coefficients(X, A)
                rep.add(f"{kind}: beta term in degree 2 is {'Der' if cochain else 'A (x) Diff'}", _same(grp, other), f"{grp.describe()} vs {other.describe()}")
    return rep


# crossed modules (M, G, 0)


def mg0_crossed_module(M: GModule, name: str | None = None) -> CrossedModule:
    """``(M, G, 0)`` for a finite ``G``-module ``M``."""
    Md = M.diagonalized()
    orders = Md.coefficients.orders
    Mg, elems = finite_abelian_group(Md.coefficients)
    G = M.group
    maps = []
    for g in G.elements():
        mat = Md.action[g].matrix
        maps.append([element_index(orders, mat.vec_mul(v)) for v in elems])
    act = GroupAction(G, Mg, maps)
    return validate_crossed_module(CrossedModule(Mg, G, GroupHom.trivial(Mg, G), act, name))


def splitting_check_mg0(M: GModule, A: GModule, max_n: int = 3, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> InvariantReport:
    """``H_n(B(M, G, 0), A) = H_n(G, A) + D_{n-2}`` and the cohomology mirror for ``2 <= n <= max_n``."""
    X = mg0_crossed_module(M, "(M,G,0)")
    Ac = validate_pi_coefficients(X, A)
    rep = InvariantReport(_name(X, Ac), "splitting", max_n, None, "nerve|bar+beta")
    for n in range(2, max_n + 1):
        lhs = classifying_homology(X, Ac, n, budget, cache_dir)
        rhs = direct_sum([group_homology(A, n, budget), d_homology(X, Ac, n - 2, budget, cache_dir)])
        rep.add(f"H_{n}(BX, A) = H_{n}(G, A) + D_{n - 2}", _same(lhs, rhs), f"{lhs.describe()} vs {rhs.describe()}")
        lhs = classifying_cohomology(X, Ac, n, budget, cache_dir)
        rhs = direct_sum([group_cohomology(A, n, budget), d_cohomology(X, Ac, n - 2, budget, cache_dir)])
        rep.add(f"H^{n}(BX, A) = H^{n}(G, A) + D^{n - 2}", _same(lhs, rhs), f"{lhs.describe()} vs {rhs.describe()}")
    if M.is_trivial() and A.is_trivial() and max_n >= 3:
        _order_feasibility(rep, X, Ac, M, A, budget, cache_dir)
    return rep


def _order_feasibility(rep: InvariantReport, X, Ac, M: GModule, A: GModule, budget, cache_dir) -> None:
    """Low-degree sequences for ``(M, G, 0)`` constrain ``|D_1|`` and ``|D^1|`` (trivial actions)."""
    G = M.group
    Mc, Acoef = M.coefficients, A.coefficients
    triv = lambda B: GModule.trivial(G, B)
    h1_tens = group_homology(triv(tensor_product(Mc, Acoef)), 1, budget)
    h0_tor = group_homology(triv(tor_product(Mc, Acoef)), 0, budget)
    d1 = d_homology(X, Ac, 1, budget, cache_dir)
    a, b, d = _order(h1_tens), _order(h0_tor), _order(d1)
    ok = all(x != float("inf") for x in (a, b, d)) and d % a == 0 and (a * b) % d == 0
    rep.add("|H_1(G, M (x) A)| divides |D_1| divides |H_1(G, M (x) A)| |H_0(G, Tor(M, A))|", ok, f"{a}, {d}, {a}*{b}")
    h1_hom = group_cohomology(triv(hom_group(Mc, Acoef)), 1, budget)
    h0_ext = group_cohomology(triv(ext_group(Mc, Acoef)), 0, budget)
    dc1 = d_cohomology(X, Ac, 1, budget, cache_dir)
    a, b, d = _order(h1_hom), _order(h0_ext), _order(dc1)
    ok = all(x != float("inf") for x in (a, b, d)) and d % a == 0 and (a * b) % d == 0
    rep.add("|H^1(G, Hom(M, A))| divides |D^1| divides |H^1(G, Hom(M, A))| |H^0(G, Ext(M, A))|", ok, f"{a}, {d}, {a}*{b}")


# the infinite cyclic counterexample


def counterexample_suite(max_n: int = 3) -> list[InvariantReport]:
    """``X = (2Z, Z, i)`` acting on ``Z/4`` through ``sigma = -1``.

    ``D^n`` comes from ``H^{n+2}(C_2; A)`` in closed form, ``H^{n+1}_{C_inf}(2Z, A)``
    from the Koszul complex of ``Z^2`` with actions ``(id, sigma)``.
    """
    A = PresentedAbelianGroup.diagonal([4])
    sigma = AbelianMap(A, A, IntMatrix([[-1]]))
    ident = AbelianMap.identity(A)
    C2 = FiniteGroup.cyclic(2)
    M = GModule.cyclic(C2, A, sigma)
    name = "(2Z,Z,i) / Z/4 sign"
    out = []
    for n in range(1, max_n + 1):
        dn = cyclic_cohomology(2, M, n + 2)
        heq = free_abelian_rank2_cohomology(A, ident, sigma, n + 1)
        rep = InvariantReport(name, "counterexample", n, dn, "cyclic|koszul")
        rep.routes = {"cyclic": _cf(dn), "koszul": _cf(heq)}
        if n == 1:
            coinv = cyclic_cohomology(INFINITY, sigma, 1)
            rep.add("D^1 = Z/2", dn.canonical_form() == ([2], 0), dn.describe())
            rep.add("H^2_Cinf(H, A) = A_Cinf = Z/2", _same(heq, coinv) and heq.canonical_form() == ([2], 0), f"{heq.describe()} vs {coinv.describe()}")
            rep.add("D^1 = H^2_Cinf(H, A)", _same(dn, heq))
        else:
            rep.add(f"D^{n} = Z/2", dn.canonical_form() == ([2], 0), dn.describe())
            rep.add(f"H^{n + 1}_Cinf(H, A) = 0", heq.is_trivial(), heq.describe())
            rep.add(f"D^{n} != H^{n + 1}_Cinf(H, A)", not _same(dn, heq))
        out.append(rep)
    return out
