import random
from pathlib import Path

import pytest

from fermext.cohomology import Cochain, coboundary
from fermext.groups import FinAbGroup, FiniteGroup

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "fermext" / "fixtures"

Z2 = FiniteGroup.cyclic(2)
Z4 = FiniteGroup.cyclic(4)
KLEIN = FiniteGroup.from_abelian(FinAbGroup([2, 2]))


def random_element(rng: random.Random, A: FinAbGroup) -> tuple:
    return A.reduce([rng.randrange(n) for n in A.invariant_factors])


def random_cochain(rng: random.Random, module, degree: int) -> Cochain:
    return Cochain.from_function(module, degree, lambda *x: random_element(rng, module.M))


def random_coboundary(rng: random.Random, module, degree: int) -> Cochain:
    return coboundary(random_cochain(rng, module, degree - 1))


@pytest.fixture
def fixtures():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
