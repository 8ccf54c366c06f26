import json
import subprocess
import sys

import pytest

from fermext.cli import RunConfig, main, run

from conftest import FIXTURES


def cli(*args):
    p = subprocess.run([sys.executable, "-m", "fermext.cli", *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def test_cohomology_z5():
    code, out, _ = cli("cohomology", "--group", '{"cyclic":5}', "--coeffs", "qz", "--degree", "3")
    assert code == 0 and out.strip() == "Z/5"


def test_cohomology_expect_order(capsys):
    assert main(["cohomology", "--group", '{"cyclic":4}', "--coeffs", "z:2", "--degree", "2", "--expect-order", "2"]) == 0
    assert main(["cohomology", "--group", '{"cyclic":4}', "--coeffs", "z:2", "--degree", "2", "--expect-order", "3"]) == 1


def test_verify_action(capsys):
    assert main(["verify-action", str(FIXTURES / "klein_action.json")]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "valid"
    assert main(["verify-action", str(FIXTURES / "z4_action.json")]) == 1
    assert main(["verify-action", str(FIXTURES / "z4_action_consistent.json")]) == 0


def test_verify_cocycle(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"category": "z4-k5/8"}')
    assert main(["verify-cocycle", str(p)]) == 0
    p.write_text('{"group": {"invariant_factors": [2, 2]}, "c": {"1,0|1,0": "1/4"}}')
    assert main(["verify-cocycle", str(p)]) == 1


def test_usage_errors(tmp_path, capsys):
    assert main(["verify-action", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": {"cyclic": 2},\n "category": "nope"}')
    assert main(["verify-action", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.json:2" in err and "'category'" in err
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["cohomology", "--group", '{"cyclic":2}', "--degree", "1", "--budget", "0"])


def test_obstructions():
    kl = str(FIXTURES / "klein_action.json")
    assert run(RunConfig("obstruction-o3", [kl], options={"supergroup": str(FIXTURES / "z2_trivial.json")},
                         expect_zero=True))[0] == 0
    assert run(RunConfig("obstruction-o3", [kl], options={"supergroup": str(FIXTURES / "z2_alpha.json")},
                         expect_zero=True))[0] == 1
    code, out = run(RunConfig("obstruction-o4", [kl, str(FIXTURES / "mu2_trivial.json")], expect_zero=True))
    assert code == 0 and out.startswith("O4: vanishes")


def test_count_mext_text_and_json():
    cfg = RunConfig("count-mext", options={"supergroup": str(FIXTURES / "z1xz2.json"), "target": None})
    code, out = run(cfg)
    assert code == 0 and "total: 16, kernel: 1" in out
    code, out = run(RunConfig("count-mext", format="json", options={"supergroup": str(FIXTURES / "z3xz2.json"),
                                                                    "target": ["toric"]}))
    assert json.loads(out)["total"] == 3


def test_deterministic_output():
    cfg = RunConfig("classify-rank4")
    assert run(cfg) == run(cfg)
    code, out = run(RunConfig("classify-h3ab", options={"group": '{"cyclic":2}', "denominator": 8}))
    assert "4 classes" in out
