import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fermext.braided import (
    POINTED_NAMES,
    AbelianThreeCocycle,
    abelian_coboundary,
    abelian_cocycle_generators,
    bicharacter,
    braided_autoequivalences,
    build_rank4,
    catalog_category,
    catalog_entry,
    classify_h3ab,
    combine_abelian_cocycles,
    enumerate_abelian_cocycles,
    fermions,
    is_nondegenerate,
    is_quadratic_form,
    mext_catalog,
    muger_center,
    quadratic_form,
    verify_abelian_cocycle,
)
from fermext.errors import BudgetExceeded, InvalidFermion, InvalidParameter
from fermext.groups import FinAbGroup
from fermext.qz import HALF, QZ, ZERO

KLEIN = FinAbGroup([2, 2])
Z4 = FinAbGroup([4])
V, F, VF = (1, 0), (0, 1), (1, 1)
EIGHTHS = [QZ(s, 8) for s in range(8)]


def test_catalog_shape():
    cat = mext_catalog()
    assert len(cat) == 16
    assert sum(e.is_pointed for e in cat) == 8
    assert [e.zeta_index for e in cat if not e.is_pointed] == list(range(8))
    assert catalog_entry("ising3").category is None
    with pytest.raises(InvalidParameter):
        catalog_entry("ising8")


@pytest.mark.parametrize("name", POINTED_NAMES)
def test_catalog_entries_valid(name):
    cat = catalog_category(name)
    assert verify_abelian_cocycle(cat.cocycle).valid
    assert muger_center(cat) == [cat.group.zero()]
    assert quadratic_form(cat)[cat.fermion] == HALF


def test_distinct_quadratic_forms():
    forms = {tuple(sorted(quadratic_form(catalog_category(n)).items())) for n in POINTED_NAMES}
    assert len(forms) == 8


@pytest.mark.parametrize("k", ["0", "1/4", "1/2", "3/4"])
def test_klein_family(k):
    cat = build_rank4("klein", k)
    q = quadratic_form(cat)
    assert (q[(0, 0)], q[F], q[V], q[VF]) == (ZERO, HALF, QZ.parse(k), QZ.parse(k))


def test_named_entries():
    assert build_rank4("klein", "0").label == "toric"
    assert build_rank4("klein", "1/4").label == "semion2+"
    assert build_rank4("klein", "1/2").label == "3f"
    s = build_rank4("klein", "1/4")
    assert s.cocycle.br(V, V) == QZ(1, 4)


def test_z4_family_values():
    cat = build_rank4("z4", "1/8")
    assert cat.cocycle.br((1,), (1,)) == QZ(1, 8)
    assert cat.cocycle.w((1,), (1,), (1,)) == ZERO
    assert cat.cocycle.w((3,), (2,), (3,)) == HALF
    assert quadratic_form(cat)[(1,)] == QZ(1, 8)


def test_bad_parameters():
    with pytest.raises(InvalidParameter):
        build_rank4("klein", "1/8")
    with pytest.raises(InvalidParameter):
        build_rank4("z4", "1/4")
    with pytest.raises(InvalidParameter):
        build_rank4("z8", "1/8")


def test_three_fermions():
    assert sorted(fermions(catalog_category("3f"))) == [F, V, VF]
    assert fermions(catalog_category("toric")) == [F]
    odd = AbelianThreeCocycle(FinAbGroup([5]), {}, {((1,), (1,)): QZ(1, 5)})
    assert fermions(odd) == []


def test_zero_omega_nonbilinear_c_rejected():
    coc = AbelianThreeCocycle(KLEIN, {}, {(V, V): QZ(1, 4)})
    rep = verify_abelian_cocycle(coc)
    assert not rep.valid
    assert any(v.rule.startswith("hexagon") for v in rep.violations)


def test_symmetric_center():
    coc = AbelianThreeCocycle(KLEIN, {}, {})
    assert len(muger_center(coc)) == 4
    # <f> inside the toric code: c(f,f) = 1/2 restricts to SVec, which is symmetric
    toric = catalog_category("toric")
    b = bicharacter(toric)
    assert toric.cocycle.br(F, F) == HALF and b[(F, F)] == ZERO


def test_fermion_validation():
    coc = catalog_category("toric").cocycle
    from fermext.braided import PointedSpinCategory

    with pytest.raises(InvalidFermion):
        PointedSpinCategory(coc, (1, 0))
    with pytest.raises(InvalidFermion):
        PointedSpinCategory(coc, (0, 0))


def test_aut_br_by_brute_force():
    for name in POINTED_NAMES:
        cat = catalog_category(name)
        assert len(braided_autoequivalences(cat)) == 2


def brute_h3ab_z2(N):
    """Z^3_ab / B^3_ab for A = Z/2 over (1/N)Z/Z by listing all normalized pairs."""
    A = FinAbGroup([2])
    one = (1,)
    vals = [QZ(s, N) for s in range(N)]
    valid = []
    for w, c in itertools.product(vals, repeat=2):
        coc = AbelianThreeCocycle(A, {(one, one, one): w}, {(one, one): c})
        if verify_abelian_cocycle(coc).valid:
            valid.append((w, c))
    bounds = set()
    for a in vals:
        b = abelian_coboundary(A, lambda x, y: a if x == y == one else ZERO)
        bounds.add((b.w(one, one, one), b.br(one, one)))
    return valid, bounds


def test_h3ab_z2_matches_brute_force():
    valid, bounds = brute_h3ab_z2(8)
    res = classify_h3ab(FinAbGroup([2]), 8)
    assert len(res) == len(valid) // len(bounds) == 4
    assert sorted(c.q[(1,)] for c in res.classes) == [QZ(0), QZ(1, 4), QZ(1, 2), QZ(3, 4)]


def test_h3ab_klein_is_quadratic_forms():
    # independent oracle: count quadratic forms on Z/2 x Z/2 in (1/8)Z/Z
    E = KLEIN.elements()
    forms = 0
    for vals in itertools.product(EIGHTHS, repeat=3):
        q = dict(zip(E, (ZERO,) + vals))
        forms += is_quadratic_form(KLEIN, q)
    res = classify_h3ab(KLEIN, 8)
    assert len(res) == forms == 32
    for c in res.classes:
        assert verify_abelian_cocycle(c.representative).valid
        assert quadratic_form(c.representative) == c.q


def test_h3ab_trivial_and_budget():
    assert len(classify_h3ab(FinAbGroup([]), 8)) == 1
    with pytest.raises(BudgetExceeded):
        classify_h3ab(FinAbGroup([2, 2, 2]), 8, budget=100)


def test_enumerate_limit():
    assert len(enumerate_abelian_cocycles(FinAbGroup([2]), 8)) == 4
    with pytest.raises(BudgetExceeded):
        enumerate_abelian_cocycles(KLEIN, 8, limit=10)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([[2], [3], [4], [2, 2]]), st.randoms(use_true_random=False))
def test_cohomologous_cocycles_share_q(factors, rng):
    A = FinAbGroup(factors)
    N = 4 * A.exponent()
    gens, _ = abelian_cocycle_generators(A, N)
    coc = combine_abelian_cocycles(gens, [rng.randrange(N) for _ in gens])
    table = {(a, b): QZ(rng.randrange(N), N) for a in A.elements() for b in A.elements() if any(a) and any(b)}
    shifted = coc + abelian_coboundary(A, lambda a, b: table.get((a, b), ZERO))
    assert verify_abelian_cocycle(shifted).valid
    assert quadratic_form(shifted) == quadratic_form(coc)
    q = quadratic_form(coc)
    assert is_quadratic_form(A, q)
    assert A.zero() in muger_center(coc)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([[2], [4], [2, 2]]), st.randoms(use_true_random=False))
def test_muger_center_is_subgroup(factors, rng):
    A = FinAbGroup(factors)
    gens, _ = abelian_cocycle_generators(A, 8)
    coc = combine_abelian_cocycles(gens, [rng.randrange(8) for _ in gens])
    Z = set(muger_center(coc))
    assert A.zero() in Z
    assert all(A.add(a, b) in Z for a in Z for b in Z)
