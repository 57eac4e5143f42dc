"""Command line front end: ``validate``, ``invariants``, ``verify`` and ``corpus-run``.

Exit codes: 0 when every emitted check passes, 1 on a failed check or an
invalid instance, 2 on usage, parse or applicability errors, 3 when a
budget is exceeded.
"""

from __future__ import annotations

import argparse
import glob
import os
import sys
import time

from ..algebra.abelian import PresentedAbelianGroup
from ..config import DEFAULT_BUDGET
from ..errors import BudgetExceeded, InapplicableSuite, ParseError, XModError
from ..extensions.suite import extensions_suite
from ..groups.bar import group_cohomology, group_homology
from ..invariants.core import (
    classifying_cohomology,
    classifying_homology,
    d_cohomology,
    d_cohomology_relative,
    d_homology,
    d_homology_relative,
    equivariant_cohomology,
    pi1_surjection,
    relative_cohomology,
    relative_homology,
)
from ..invariants.report import InvariantReport, records_header
from ..invariants.suites import (
    counterexample_suite,
    degree0_suite,
    les_suite,
    splitting_check_mg0,
    theorem32,
    uct_check,
)
from ..xmod.coefficients import EquivariantModule, PiCoefficients, abelianization_module, validate_pi_coefficients
from ..xmod.crossed import CrossedModule, from_cat1, homotopy_groups, to_cat1, xmod_isomorphism
from ..xmod.functors import der_precrossed, der_xmod, diff_with_coefficients
from .instance import Instance, load_instance

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
WHICH = ("der", "diff", "dh", "dc", "bh", "bc", "rel", "eq")
SUITES = ("axioms", "degree0", "theorem32", "uct", "les", "splitting", "extensions", "counterexample")


class Context:
    def __init__(self, args):
        self.args = args
        self.cache_dir = args.cache_dir
        self.timing = args.timing
        self.records = args.format == "records"
        self.header_done = False
        self.failed = False

    def budget(self, inst: Instance | None):
        b = inst.budget if inst is not None else DEFAULT_BUDGET
        if self.args.budget is not None:
            b = b.with_(max_total=self.args.budget)
        return b

    def emit(self, rep: InvariantReport) -> None:
        if not rep.passed:
            self.failed = True
        if self.records:
            if not self.header_done:
                print(records_header())
                self.header_done = True
            print(rep.record_line(self.timing))
        else:
            print(rep.text(self.timing))
        sys.stdout.flush()

    def timed(self, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        dt = time.perf_counter() - t0
        for rep in out if isinstance(out, list) else [out]:
            rep.wall_time = dt
        return out


# helpers


def _cf(G: PresentedAbelianGroup):
    torsion, free = G.canonical_form()
    return tuple(torsion), free


def _describe_group(H) -> str:
    if H.order == 1:
        return "0"
    if not H.is_abelian():
        return f"nonabelian of order {H.order}"
    return abelianization_module(H).coefficients.describe()


def _crossed(inst: Instance) -> CrossedModule:
    if inst.kind != "crossed":
        raise InapplicableSuite("this command needs a crossed module, not a precrossed one")
    X = inst.xmod
    bad = X.equivariance_failure()
    if bad is None:
        bad = X.peiffer_failure()
    if bad is not None:
        raise XModError(f"instance is not a crossed module (witness {bad}); run 'validate'")
    return X


def _coefficients(inst: Instance, which: str | None) -> list[PiCoefficients]:
    names = list(inst.coefficients)
    if which is not None:
        if which not in inst.coefficients:
            raise InapplicableSuite(f"no coefficient module named '{which}'")
        names = [which]
    if not names:
        raise InapplicableSuite("the instance declares no coefficient modules")
    return [validate_pi_coefficients(inst.xmod, inst.coefficients[c], c) for c in names]


def _label(inst: Instance, A: PiCoefficients | None = None) -> str:
    return inst.name if A is None else f"{inst.name} / {A.name}"


def _two_routes(label, invariant, n, routes: dict) -> InvariantReport:
    first = next(iter(routes))
    value = routes[first]
    rep = InvariantReport(label, invariant, n, value, first)
    rep.routes = {k: _cf(v) for k, v in routes.items()}
    if len(routes) > 1:
        rep.agreement = len(set(rep.routes.values())) == 1
    return rep


# validate


def axioms_report(inst: Instance) -> InvariantReport:
    X = inst.xmod
    rep = InvariantReport(inst.name, "axioms", None, None, "tables")
    bad = X.equivariance_failure()
    rep.add("equivariance mu(g.t) = g mu(t) g^-1", bad is None, "" if bad is None else f"witness g={bad[0]}, t={bad[1]}")
    if inst.kind == "crossed":
        bad = X.peiffer_failure()
        rep.add("Peiffer identity mu(t).t' = t t' t^-1", bad is None, "" if bad is None else f"witness t={bad[0]}, t'={bad[1]}")
        if rep.passed:
            Y = from_cat1(to_cat1(X))
            rep.add("cat1 round trip gives an isomorphic crossed module", xmod_isomorphism(X, Y) is not None)
    for cname, M in inst.coefficients.items():
        try:
            validate_pi_coefficients(X, M, cname)
            rep.add(f"coefficients {cname} are a pi_1-module", True)
        except XModError as exc:
            rep.add(f"coefficients {cname} are a pi_1-module", False, str(exc))
    return rep


def cmd_validate(ctx: Context, inst: Instance) -> None:
    rep = axioms_report(inst)
    ctx.emit(rep)
    if not rep.passed:
        return
    X = inst.xmod
    hg = homotopy_groups(X)
    aspherical = hg.pi2.order == 1
    if ctx.records:
        for inv, H in (("pi_1", hg.pi1), ("pi_2", hg.pi2)):
            if H.is_abelian():
                ctx.emit(InvariantReport(inst.name, inv, None, abelianization_module(H).coefficients, "tables"))
    else:
        print(f"pi_1 = {_describe_group(hg.pi1)}")
        print(f"pi_2 = {_describe_group(hg.pi2)}")
        print(f"aspherical = {'true' if aspherical else 'false'}")


# invariants


def _invariant(ctx: Context, inst: Instance, which: str, n: int, A: PiCoefficients) -> list[InvariantReport]:
    budget, cache = ctx.budget(inst), ctx.cache_dir
    label = _label(inst, A)
    if which == "eq":
        E = EquivariantModule.from_pi_coefficients(inst.xmod, A).validate()
        routes = {"kernel-complex": equivariant_cohomology(inst.xmod.action, E, n, budget)}
        if n == 1:
            routes["der_precrossed"] = der_precrossed(inst.xmod, E)
        return [_two_routes(label, "eq", n, routes)]
    X = _crossed(inst)
    if which == "der":
        return [_two_routes(label, "der", 0, {"der": der_xmod(X, A), "beta": d_cohomology(X, A, 0, budget, cache)})]
    if which == "diff":
        routes = {
            "induced": diff_with_coefficients(X, A, fast=True),
            "presentation": diff_with_coefficients(X, A, fast=False),
            "beta": d_homology(X, A, 0, budget, cache),
        }
        return [_two_routes(label, "diff", 0, routes)]
    if which in ("dh", "dc"):
        beta, rel = (d_homology, d_homology_relative) if which == "dh" else (d_cohomology, d_cohomology_relative)
        routes = {"beta": beta(X, A, n, budget, cache)}
        if X.is_aspherical():
            routes["relative"] = rel(X, A, n, budget)
        return [_two_routes(label, which, n, routes)]
    if which in ("bh", "bc"):
        nerve, bar = (classifying_homology, group_homology) if which == "bh" else (classifying_cohomology, group_cohomology)
        routes = {"nerve": nerve(X, A, n, budget, cache)}
        if X.is_aspherical():
            routes["bar(pi_1)"] = bar(A.module, n, budget)
        return [_two_routes(label, which, n, routes)]
    if which == "rel":
        if not X.is_aspherical():
            raise InapplicableSuite("relative (co)homology needs an aspherical crossed module")
        f = pi1_surjection(X)
        out = []
        for inv, rel, beta in (("rel_h", relative_homology, d_homology), ("rel_c", relative_cohomology, d_cohomology)):
            routes = {"relative": rel(f, A.module, n, budget)}
            if n >= 2:
                routes["beta"] = beta(X, A, n - 1, budget, cache)
            out.append(_two_routes(label, inv, n, routes))
        return out
    raise InapplicableSuite(f"unknown invariant '{which}'")


def cmd_invariants(ctx: Context, inst: Instance) -> None:
    args = ctx.args
    n = args.degree if args.degree is not None else (0 if args.which in ("der", "diff") else 1)
    for A in _coefficients(inst, args.coeff):
        for rep in ctx.timed(_invariant, ctx, inst, args.which, n, A):
            ctx.emit(rep)


# verify


def _finite_trivial(coeffs: list[PiCoefficients]) -> list[PiCoefficients]:
    return [A for A in coeffs if A.module.is_trivial() and A.coefficients.is_finite()]


def _suite(ctx: Context, inst: Instance | None, suite: str) -> list[InvariantReport]:
    args = ctx.args
    if suite == "counterexample":
        return counterexample_suite(max(3, args.degree or 0))
    if inst is None:
        raise InapplicableSuite(f"suite '{suite}' needs an instance file")
    if suite == "axioms":
        return [axioms_report(inst)]
    budget, cache = ctx.budget(inst), ctx.cache_dir
    X = _crossed(inst)
    coeffs = _coefficients(inst, args.coeff)
    if suite == "degree0":
        return [degree0_suite(X, A, budget, cache) for A in coeffs]
    if suite == "theorem32":
        degrees = (args.degree,) if args.degree else (1, 2)
        return [theorem32(X, A, degrees, budget, cache) for A in coeffs]
    if suite == "uct":
        usable = _finite_trivial(coeffs)
        if not usable:
            raise InapplicableSuite("uct needs finite coefficients with trivial action")
        degrees = (args.degree,) if args.degree else (1, 2)
        return [uct_check(X, A.coefficients, n, budget, cache) for A in usable for n in degrees]
    if suite == "les":
        return [les_suite(X, A, args.degree or 3, budget, cache) for A in coeffs]
    if suite == "splitting":
        if X.mu.image() != [0] or not X.t_group.is_abelian():
            raise InapplicableSuite("splitting needs (M, G, 0) with M abelian")
        M = abelianization_module(X.t_group, X.action)
        return [splitting_check_mg0(M, A.g_module, args.degree or 3, budget, cache) for A in coeffs]
    if suite == "extensions":
        usable = [A for A in coeffs if A.coefficients.is_finite()]
        if not usable:
            raise InapplicableSuite("extensions need finite coefficients")
        return [extensions_suite(X, A, budget, cache) for A in usable]
    raise InapplicableSuite(f"unknown suite '{suite}'")


def cmd_verify(ctx: Context, inst: Instance | None) -> None:
    for rep in ctx.timed(_suite, ctx, inst, ctx.args.suite):
        ctx.emit(rep)


# corpus-run


def cmd_corpus_run(ctx: Context) -> None:
    args = ctx.args
    top = args.degree if args.degree is not None else 1
    paths = sorted(glob.glob(os.path.join(args.directory, "*.xmod")))
    if not paths:
        raise InapplicableSuite(f"no .xmod files in {args.directory}")
    for path in paths:
        inst = load_instance(path)
        rep = axioms_report(inst)
        ctx.emit(rep)
        if not rep.passed or inst.kind != "crossed":
            continue
        for A in _coefficients(inst, None):
            plan = [("der", 0), ("diff", 0)]
            plan += [(w, n) for w in ("dh", "dc") for n in range(top + 1)]
            plan += [(w, n) for w in ("bh", "bc") for n in range(top + 2)]
            for which, n in plan:
                for r in ctx.timed(_invariant, ctx, inst, which, n, A):
                    ctx.emit(r)


# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, metavar="N", help="largest total degree of any complex built (default from the file, else 5)")
    common.add_argument("--cache-dir", metavar="PATH", help="on-disk cache for nerve complexes (also XMODHOM_CACHE_DIR)")
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--timing", action="store_true", help="fill in wall times (records are then no longer reproducible)")

    p = argparse.ArgumentParser(prog="xmodhom", description="Homology and cohomology of finite crossed modules.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the axioms and print pi_1, pi_2")
    s.add_argument("path")

    s = sub.add_parser("invariants", parents=[common], help="compute one invariant by every available route")
    s.add_argument("path")
    s.add_argument("--which", choices=WHICH, required=True)
    s.add_argument("--degree", type=int)
    s.add_argument("--coeff", help="coefficient module name (default: all)")

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("path", nargs="?")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--degree", type=int)
    s.add_argument("--coeff")

    s = sub.add_parser("corpus-run", parents=[common], help="default invariants for every instance in a directory")
    s.add_argument("directory")
    s.add_argument("--degree", type=int, help="largest D-degree (default 1)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is not None and args.budget < 1:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "degree", None) is not None and args.degree < 0:
        print("error: --degree must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    ctx = Context(args)
    try:
        if args.command == "corpus-run":
            cmd_corpus_run(ctx)
        else:
            inst = load_instance(args.path) if args.path else None
            if args.command == "validate":
                cmd_validate(ctx, inst)
            elif args.command == "invariants":
                cmd_invariants(ctx, inst)
            else:
                cmd_verify(ctx, inst)
    except ParseError as exc:
        print(f"{args.path}: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InapplicableSuite as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except XModError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_FAIL if ctx.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
