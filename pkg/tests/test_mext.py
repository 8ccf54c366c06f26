import pytest

from fermext import io
from fermext.braided import POINTED_NAMES, catalog_entry, mext_catalog
from fermext.cohomology import qz_cohomology
from fermext.errors import InvalidInput
from fermext.groups import FiniteGroup, SuperGroup
from fermext.mext import count_mext, count_preimage, d_image_membership, h3_order, lifting_triples

from conftest import FIXTURES, KLEIN

KLEIN_NAMES = POINTED_NAMES[:4]


def sg(name):
    return io.parse_supergroup(io.load(FIXTURES / name))


def test_h3_order_cyclic():
    for m in range(1, 7):
        assert h3_order(FiniteGroup.cyclic(m)) == m


@pytest.mark.parametrize("m", [1, 3])
def test_trivial_supergroups_surject(m):
    res = count_mext(sg(f"z{m}xz2.json"))
    assert res.total == 16 * m
    assert res.kernel_order == m and res.image_size == 16
    assert res.fibers_equal and res.total == res.group_total


def test_toric_fiber_odd_cyclic():
    assert count_preimage(catalog_entry("toric"), sg("z3xz2.json")) == 3


def test_semion_preimage_m1():
    assert count_preimage(catalog_entry("semion2+"), sg("z1xz2.json")) == 1


def test_z4_example():
    res = count_mext(sg("z4.json"))
    assert res.kernel_order == 4
    assert {t for t, c in res.per_target.items() if c} == set(POINTED_NAMES)
    assert all(res.per_target[n] == 4 for n in KLEIN_NAMES)
    assert res.group_total == 32


def test_z4_image_membership():
    s = sg("z4.json")
    assert not any(d_image_membership(e, s) for e in mext_catalog() if not e.is_pointed)
    assert d_image_membership(catalog_entry("toric"), s)
    assert all(d_image_membership(catalog_entry(n), s) for n in POINTED_NAMES[4:])


def test_z4_kernel_triples():
    triples = lifting_triples(catalog_entry("toric"), sg("z4.json"))
    assert len(triples) == 4
    assert all(t.rho.is_trivial() for t in triples)
    assert len({t.phi_class for t in triples}) == qz_cohomology(triples[0].rho.G, 3).total_order == 2


def test_klein_targets_always_in_image():
    for s in (sg("z4.json"), sg("z6.json"), SuperGroup.from_central_extension(KLEIN, 1)):
        for n in KLEIN_NAMES:
            assert count_preimage(catalog_entry(n), s) > 0


def test_z6():
    res = count_mext(sg("z6.json"))
    assert res.total == 48 and res.kernel_order == 3


def test_target_filter():
    res = count_mext(sg("z1xz2.json"), ["toric", "ising2"])
    assert list(res.per_target) == ["toric", "ising2"]
    with pytest.raises(InvalidInput):
        count_mext(sg("z1xz2.json"), ["nope"])


def test_json_shape():
    d = count_mext(sg("z1xz2.json")).to_json()
    assert d["total"] == 16 and len(d["targets"]) == 16
    assert d["targets"][8]["derived_by_fiber_symmetry"]
