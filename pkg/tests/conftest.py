import os

import pytest
from hypothesis import HealthCheck, settings

from xmodhom.algebra import PresentedAbelianGroup
from xmodhom.cli.instance import load_instance
from xmodhom.groups import FiniteGroup, GModule
from xmodhom.xmod import CrossedModule, trivial_coefficients, validate_pi_coefficients

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS = os.path.join(ROOT, "corpus")
FIXTURES = os.path.join(ROOT, "tests", "fixtures")
CORPUS_FILES = sorted(f for f in os.listdir(CORPUS) if f.endswith(".xmod"))


def corpus_instance(stem: str):
    return load_instance(os.path.join(CORPUS, stem + ".xmod"))


def corpus_pairs():
    """Every (instance, coefficient name) pair of the shipped corpus."""
    out = []
    for f in CORPUS_FILES:
        inst = load_instance(os.path.join(CORPUS, f))
        for c in inst.coefficients:
            out.append((f[:-5], c))
    return out


def coeffs(inst, name):
    return validate_pi_coefficients(inst.xmod, inst.coefficients[name], name)


def Zn(n: int) -> PresentedAbelianGroup:
    return PresentedAbelianGroup.diagonal([n])


def cf(G):
    t, f = G.canonical_form()
    return list(t), f


# standard small crossed modules


def one_c2():
    return CrossedModule.of_group(FiniteGroup.cyclic(2), "(1,C2,i)")


def z2_1_0():
    return CrossedModule.abelian(FiniteGroup.cyclic(2), "(Z/2,1,0)")


def c2_in_c4():
    return CrossedModule.normal_inclusion(FiniteGroup.cyclic(4), [0, 2], "(C2<=C4,i)")


def c2_eq_c2():
    return CrossedModule.identity(FiniteGroup.cyclic(2), "(C2=C2,id)")


def triv(X, n: int):
    return trivial_coefficients(X, Zn(n) if n else PresentedAbelianGroup.free(1))


def sign_module(G: FiniteGroup, A: PresentedAbelianGroup, signs):
    return GModule.from_signs(G, A, signs)


@pytest.fixture
def tmp_cache(tmp_path):
    return str(tmp_path / "cache")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
