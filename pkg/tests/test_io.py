import json

import pytest

from fermext import io
from fermext.errors import InvalidInput
from fermext.qz import QZ

from conftest import FIXTURES


def test_fixtures_parse():
    for p in sorted(FIXTURES.glob("*action*.json")):
        af = io.parse_action(io.load(p))
        assert af.action.G.n == 2
    for name in ("z4.json", "z6.json", "z1xz2.json", "z3xz2.json", "z5xz2.json", "z2_alpha.json"):
        io.parse_supergroup(io.load(FIXTURES / name))


def test_error_names_line_and_key():
    text = '{\n  "group": {"cyclic": 2},\n  "category": "toric",\n  "mu": {"1": {"x|0,1": "1/2"}}\n}'
    with pytest.raises(io.ParseError) as e:
        io.parse_action(io.loads(text, "a.json"))
    assert e.value.file == "a.json" and e.value.line == 4 and e.value.key == "x|0,1"
    assert isinstance(e.value, InvalidInput)


def test_bad_json():
    with pytest.raises(io.ParseError) as e:
        io.loads('{"group": ', "b.json")
    assert e.value.line == 1


def test_bad_rational():
    text = '{"group": {"cyclic": 2}, "category": "toric", "mu": {"1": {"1,0|1,0": "abc"}}}'
    with pytest.raises(io.ParseError, match="rational"):
        io.parse_action(io.loads(text))


def test_unknown_category():
    with pytest.raises(io.ParseError) as e:
        io.parse_action(io.loads('{"group": {"cyclic": 2}, "category": "tor"}'))
    assert e.value.key == "category"


def test_alpha_values():
    with pytest.raises(io.ParseError):
        io.parse_supergroup(io.loads('{"group": {"cyclic": 2}, "alpha": {"1|1": "1/4"}}'))
    sg = io.parse_supergroup(io.loads('{"group": {"cyclic": 2}, "alpha": {"1|1": "1/2"}}'))
    assert not sg.is_trivial_class()


def test_cocycle_formats():
    coc = io.parse_cocycle(io.loads('{"category": "3f"}'))
    assert coc.br((1, 0), (1, 0)) == QZ(1, 2)
    coc = io.parse_cocycle(io.loads('{"group": {"cyclic": 2}, "c": {"1|1": "1/4"}}'))
    assert coc.br((1,), (1,)) == QZ(1, 4)


def test_groups():
    assert io.parse_group_arg('{"permutations": [[1, 0, 2], [1, 2, 0]]}').n == 6
    assert io.parse_group_arg('{"invariant_factors": [2, 2]}').n == 4
    with pytest.raises(io.ParseError):
        io.parse_group_arg('{"cyclic": 0}')
    with pytest.raises(io.ParseError):
        io.parse_group_arg('{"dihedral": 4}')


def test_mu2_names():
    af = io.parse_action(io.load(FIXTURES / "klein_action.json"))
    mu2 = io.parse_mu2(io.Source({}), af, {"u|u": "f"})
    assert mu2(1, 1) == (0, 1)
