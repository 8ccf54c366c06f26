import random

import pytest
from hypothesis import given, settings, strategies as st

from fermext import io
from fermext.actions import bosonic_lifting, rank4_rhos
from fermext.braided import POINTED_NAMES, catalog_category
from fermext.cohomology import Cochain, cells, coboundary, cohomology, qz_module, solve_coboundary
from fermext.errors import InvalidInput, NotACocycle
from fermext.groups import FiniteGroup, GModule
from fermext.obstruction import O4Input, o4, o4_value, o4_vanishes, o4_values
from fermext.qz import QZ, ZERO

from conftest import FIXTURES, KLEIN, Z2, Z4, random_coboundary

CYCLIC = [Z2, FiniteGroup.cyclic(3), Z4]


def random_input(rng, G, name=None):
    cat = catalog_category(name or rng.choice(POINTED_NAMES))
    A = cat.group
    rho = rng.choice(rank4_rhos(G, cat))
    x = bosonic_lifting(rho, cat)
    beta = {(g, a): QZ(rng.randrange(8), 8) for g in G.nonidentity() for a in A.elements() if any(a)}
    x = x.twisted(lambda g, a: beta.get((g, a), ZERO))
    mu2 = rng.choice(cohomology(rho, 2).all_representatives())
    return O4Input(x, mu2 + random_coboundary(rng, rho, 2))


def check_witness(v):
    """The witness x satisfies dx = O4 after lifting to its finer modulus."""
    K = v.witness.module.M.exponent()
    N = v.cocycle.module.M.exponent()
    lifted = Cochain(qz_module(v.cocycle.G, K), 4, {k: (x[0] * (K // N),) for k, x in v.cocycle.values.items()})
    return coboundary(v.witness) == lifted


def test_zero_mu2_gives_zero():
    x = io.parse_action(io.load(FIXTURES / "klein_action.json")).action
    inp = O4Input(x, Cochain(x.rho, 2, {}))
    assert o4(inp).is_zero()
    v = o4_vanishes(inp)
    assert v.vanishes and v.witness.is_zero()


def test_value_is_closed_form():
    rng = random.Random(4)
    inp = random_input(rng, KLEIN, "semion2+")
    O = o4(inp)
    vals = o4_values(O)
    for k in cells(KLEIN, 4):
        assert vals.get(k, ZERO) == o4_value(inp, *k)


@pytest.mark.parametrize("G", CYCLIC, ids=["Z2", "Z3", "Z4"])
def test_cyclic_vanishes_with_witness(G):
    rng = random.Random(G.n)
    for _ in range(6):
        v = o4_vanishes(random_input(rng, G))
        assert v.vanishes and check_witness(v)


def test_klein_fixture_all_mu2_classes():
    x = io.parse_action(io.load(FIXTURES / "klein_action.json")).action
    verdicts = []
    for mu2 in cohomology(x.rho, 2).all_representatives():
        v = o4_vanishes(O4Input(x, mu2))
        assert v.witness is None or check_witness(v)
        verdicts.append(v.vanishes)
    assert verdicts[0]


def test_class_invariance_exhaustive_z2():
    # every mu2 in Z^2 over Z/2 is a class representative plus a coboundary of a 1-cochain
    for name in POINTED_NAMES:
        cat = catalog_category(name)
        A = cat.group
        for rho in rank4_rhos(Z2, cat):
            x = bosonic_lifting(rho, cat)
            for mu2 in cohomology(rho, 2).all_representatives():
                base = o4(O4Input(x, mu2))
                for b in A.elements():
                    shifted = mu2 + coboundary(Cochain(rho, 1, {(1,): b}))
                    assert o4_vanishes(O4Input(x, shifted)).vanishes == o4_vanishes(O4Input(x, mu2)).vanishes
                    assert o4(O4Input(x, shifted)).module.M == base.module.M


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_class_invariance_klein(rng):
    G = KLEIN
    inp = random_input(rng, G)
    shifted = O4Input(inp.action, inp.mu2 + random_coboundary(rng, inp.mu2.module, 2))
    a, b = o4(inp), o4(shifted)
    N = max(a.module.M.exponent(), b.module.M.exponent())
    lift = lambda O: Cochain(qz_module(G, N), 4, {k: (x[0] * (N // O.module.M.exponent()),) for k, x in O.values.items()})
    diff = lift(a) - lift(b)
    K = N * G.n
    assert solve_coboundary(Cochain(qz_module(G, K), 4, {k: (x[0] * G.n,) for k, x in diff.values.items()})) is not None


def test_rejects_non_cocycle_mu2():
    x = io.parse_action(io.load(FIXTURES / "klein_action.json")).action
    with pytest.raises(NotACocycle):
        O4Input(x, Cochain(x.rho, 2, {(1, 1): (1, 0)}))


def test_rejects_wrong_module():
    x = io.parse_action(io.load(FIXTURES / "klein_action.json")).action
    with pytest.raises(InvalidInput):
        O4Input(x, Cochain(GModule.trivial(Z2, x.A), 2, {}))
