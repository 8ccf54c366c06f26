import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from fermext.cohomology import (
    Cochain,
    ModuleMap,
    ShortExactSequence,
    cells,
    coboundary,
    cohomology,
    connecting_hom,
    induced_map,
    is_cocycle,
    qz_cohomology,
    solve_coboundary,
)
from fermext.errors import BudgetExceeded, InvalidMap, InvalidSequence
from fermext.groups import FinAbGroup, FiniteGroup, GModule

from conftest import KLEIN, Z2, Z4, random_cochain

S3 = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]], "S3")
SWAP = [[1, 0], [1, 1]]  # v -> v + f on Z/2 x Z/2 with v = (1,0), f = (0,1)


def brute_order(module, n):
    """|Z^n| / |B^n| by enumerating every normalized cochain."""
    M = module.M
    cs = cells(module.G, n)
    cocycles = 0
    for vals in itertools.product(M.elements(), repeat=len(cs)):
        if is_cocycle(Cochain(module, n, dict(zip(cs, vals)))):
            cocycles += 1
    prev = cells(module.G, n - 1)
    bounds = {
        tuple(sorted(coboundary(Cochain(module, n - 1, dict(zip(prev, vals)))).values.items()))
        for vals in itertools.product(M.elements(), repeat=len(prev))
    }
    return cocycles // len(bounds)


def test_degree0_coboundary():
    rho = GModule.from_generators(Z2, FinAbGroup([2, 2]), [SWAP])
    c = Cochain(rho, 0, {(): (1, 0)})
    d = coboundary(c)
    assert d(1) == (0, 1)  # u.v - v = f


def test_degree1_trivial_example():
    mod = GModule.trivial(Z2, FinAbGroup([2]))
    d = coboundary(Cochain(mod, 1, {(1,): (1,)}))
    assert d(1, 1) == (0,)


@pytest.mark.parametrize("G", [Z2, Z4, KLEIN, S3], ids=["Z2", "Z4", "K", "S3"])
def test_d_squared_zero(G):
    rng = random.Random(G.n)
    for M in (FinAbGroup([2]), FinAbGroup([2, 2]), FinAbGroup([3])):
        mod = GModule.trivial(G, M)
        for n in (0, 1, 2):
            assert coboundary(coboundary(random_cochain(rng, mod, n))).is_zero()


def test_d_squared_twisted():
    rng = random.Random(3)
    rho = GModule.from_generators(Z4, FinAbGroup([2, 2]), [SWAP])
    for n in (0, 1, 2, 3):
        assert coboundary(coboundary(random_cochain(rng, rho, n))).is_zero()


@pytest.mark.parametrize("n,m", [(2, 2), (2, 4), (3, 3), (4, 2), (3, 2)])
def test_engine_matches_brute_force(n, m):
    mod = GModule.trivial(FiniteGroup.cyclic(n), FinAbGroup([m]))
    for k in (1, 2):
        assert cohomology(mod, k).total_order == brute_order(mod, k)


def test_twisted_against_brute_force():
    rho = GModule.from_generators(Z2, FinAbGroup([2, 2]), [SWAP])
    for k in (1, 2, 3):
        assert cohomology(rho, k).total_order == brute_order(rho, k)


def test_cyclic_gcd_table():
    for n in range(2, 9):
        for m in range(2, 9):
            mod = GModule.trivial(FiniteGroup.cyclic(n), FinAbGroup.from_orders([m]))
            for k in (1, 2, 3, 4):
                assert cohomology(mod, k).total_order == gcd(n, m), (n, m, k)


def test_h2_odd_cyclic_klein_vanishes():
    for m in (3, 5, 7):
        assert cohomology(GModule.trivial(FiniteGroup.cyclic(m), FinAbGroup([2, 2])), 2).total_order == 1


def test_qz_cohomology_cyclic():
    for m in range(2, 9):
        H = qz_cohomology(FiniteGroup.cyclic(m), 3)
        assert H.invariant_factors == [m]
    assert qz_cohomology(Z2, 4).total_order == 1
    assert qz_cohomology(Z4, 4).total_order == 1


def test_qz_cohomology_klein():
    # Kunneth: H^2(Z2^2, Q/Z) = Z/2, H^3 = (Z/2)^3
    assert qz_cohomology(KLEIN, 2).invariant_factors == [2]
    assert qz_cohomology(KLEIN, 3).invariant_factors == [2, 2, 2]
    assert qz_cohomology(S3, 3).total_order == 6


def test_representatives_are_independent():
    rho = GModule.trivial(KLEIN, FinAbGroup([2]))
    H = cohomology(rho, 2)
    reps = H.all_representatives()
    assert len(reps) == H.total_order == 8
    assert all(is_cocycle(r) for r in reps)
    for a, b in itertools.combinations(reps, 2):
        assert solve_coboundary(a - b) is None


def test_class_of_roundtrip():
    rng = random.Random(9)
    rho = GModule.from_generators(Z4, FinAbGroup([2, 2]), [SWAP])
    H = cohomology(rho, 2)
    for i, r in enumerate(H.all_representatives()):
        shifted = r + coboundary(random_cochain(rng, rho, 1))
        assert H.class_of(shifted) == H.class_of(r)


def test_solve_coboundary_witness():
    rng = random.Random(1)
    mod = GModule.trivial(KLEIN, FinAbGroup([4]))
    c = coboundary(random_cochain(rng, mod, 2))
    x = solve_coboundary(c)
    assert x is not None and coboundary(x) == c


def test_budget():
    with pytest.raises(BudgetExceeded):
        cohomology(GModule.trivial(S3, FinAbGroup([2])), 6, cap=1000)


def test_induced_identity_and_projection():
    A = FinAbGroup([2, 2])
    mod = GModule.trivial(Z2, A)
    ident = induced_map(ModuleMap(mod, mod, [[1, 0], [0, 1]]), 2)
    assert ident.kernel_order() == 1
    proj = induced_map(ModuleMap(mod, GModule.trivial(Z2, FinAbGroup([2])), [[1, 0]]), 2)
    assert proj.source.total_order == 4
    assert proj.kernel_order() == 2 == len(proj.kernel())


def test_induced_odd_cyclic_kernel_trivial():
    A = FinAbGroup([2, 2])
    mod = GModule.trivial(FiniteGroup.cyclic(3), A)
    f = induced_map(ModuleMap(mod, GModule.trivial(mod.G, FinAbGroup([2])), [[0, 1]]), 2)
    assert f.kernel_order() == 1


def test_non_equivariant_map_rejected():
    rho = GModule.from_generators(Z2, FinAbGroup([2, 2]), [SWAP])
    with pytest.raises(InvalidMap):
        ModuleMap(rho, GModule.trivial(Z2, FinAbGroup([2])), [[0, 1]])


def _klein_ses():
    rho = GModule.from_generators(Z2, FinAbGroup([2, 2]), [SWAP])
    K = GModule.trivial(Z2, FinAbGroup([2]))
    return ShortExactSequence(ModuleMap(K, rho, [[0], [1]]), ModuleMap(rho, K, [[1, 0]]))


def _z4_ses():
    rho = GModule.from_generators(Z2, FinAbGroup([4]), [[[3]]])
    K = GModule.trivial(Z2, FinAbGroup([2]))
    return ShortExactSequence(ModuleMap(K, rho, [[2]]), ModuleMap(rho, K, [[1]]))


def test_connecting_hom_examples():
    alpha = Cochain(GModule.trivial(Z2, FinAbGroup([2])), 2, {(1, 1): (1,)})
    zero = Cochain(alpha.module, 2, {})
    for ses in (_klein_ses(), _z4_ses()):
        assert connecting_hom(ses, zero).is_zero()
    # A is the regular F2[Z/2]-module here, so d2 is injective on H^2(Z/2, Z/2)
    d = connecting_hom(_klein_ses(), alpha)
    assert is_cocycle(d) and d(1, 1, 1) == (1,)
    assert solve_coboundary(d) is None and brute_class_nonzero(d)
    # Z/4 with inversion: brute force over all normalized lifts decides the class
    d4 = connecting_hom(_z4_ses(), alpha)
    assert is_cocycle(d4)
    assert (solve_coboundary(d4) is None) == (brute_class_nonzero(d4))


def brute_class_nonzero(c):
    mod, n = c.module, c.degree
    prev = cells(mod.G, n - 1)
    for vals in itertools.product(mod.M.elements(), repeat=len(prev)):
        if coboundary(Cochain(mod, n - 1, dict(zip(prev, vals)))) == c:
            return False
    return True


def test_connecting_hom_section_independent():
    for ses in (_klein_ses(), _z4_ses()):
        Q = ses.p.target
        for alpha in cohomology(Q, 2).all_representatives():
            a = connecting_hom(ses, alpha, "min")
            b = connecting_hom(ses, alpha, "max")
            assert solve_coboundary(a - b) is not None


def test_inexact_sequence_rejected():
    A = GModule.trivial(Z2, FinAbGroup([2, 2]))
    K = GModule.trivial(Z2, FinAbGroup([2]))
    with pytest.raises(InvalidSequence):
        ShortExactSequence(ModuleMap(K, A, [[1], [0]]), ModuleMap(A, K, [[1, 0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(2, 6), st.integers(1, 3), st.randoms(use_true_random=False))
def test_coboundaries_are_trivial_classes(n, m, k, rng):
    mod = GModule.trivial(FiniteGroup.cyclic(n), FinAbGroup([m]))
    c = coboundary(random_cochain(rng, mod, k - 1))
    H = cohomology(mod, k)
    assert all(x == 0 for x in H.class_of(c))
