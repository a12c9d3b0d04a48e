import json
from pathlib import Path
from fractions import Fraction as Q

import pytest

from plthompson.cli import main
from plthompson.constructions import make_bump
from plthompson.folog import InterpretationData, Signature, Template
from plthompson.interp import encode_nat
from plthompson.io import load_map, load_pairs, parse_map, save_map, save_pairs
from plthompson.numbers import THOMPSON
from plthompson.plmaps import PLMap, commutator, compose, inverse, product


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def bump_file(tmp_path):
    x = make_bump(THOMPSON, Q(1, 4), Q(1, 2), 2, Q(1, 2))
    save_map(tmp_path / "x.map", x)
    return tmp_path / "x.map", x


def test_map_operations(capsys, tmp_path, bump_file):
    path, x = bump_file
    code, out, _ = run(capsys, "map", "inverse", path)
    assert code == 0 and parse_map(out) == inverse(x)
    code, out, _ = run(capsys, "map", "compose", path, path, "-o", tmp_path / "xx.map")
    assert code == 0 and load_map(tmp_path / "xx.map") == compose(x, x)
    assert run(capsys, "map", "eval", path, "1/4")[1].strip() == "1/4"
    assert run(capsys, "map", "eval", path, "--point", "3/8")[1].strip() == str(x(Q(3, 8)))
    assert "1/4" in run(capsys, "map", "support", path)[1]
    code, out, _ = run(capsys, "map", "slopes", path)
    assert code == 0 and "right slope at 0: 1" in out


def test_map_errors(capsys, tmp_path, bump_file):
    path, _ = bump_file
    code, _, err = run(capsys, "map", "eval", path)
    assert code == 2 and "usage" in err
    code, _, err = run(capsys, "map", "compose", path)
    assert code == 1 and err.startswith("error:")
    code, _, err = run(capsys, "map", "inverse", tmp_path / "missing.map")
    assert code == 1
    (tmp_path / "bad.map").write_text("2 1\n0 0\n1/3 1\n")
    assert run(capsys, "map", "inverse", tmp_path / "bad.map")[0] == 1
    assert run(capsys, "map", "frobnicate", path)[0] == 2
    assert run(capsys)[0] == 2


def test_bump_and_generators(capsys, tmp_path):
    code, out, _ = run(capsys, "bump", "--alpha", "1/4", "--beta", "3/4", "--p", "2", "--q", "1/2")
    assert code == 0 and parse_map(out) == make_bump(THOMPSON, Q(1, 4), Q(3, 4), 2, Q(1, 2))
    code, out, _ = run(capsys, "bump", "--alpha", "1/4", "--beta", "3/4", "--down")
    assert code == 0 and parse_map(out)(Q(1, 2)) < Q(1, 2)
    assert run(capsys, "bump", "--alpha", "1/3", "--beta", "3/4")[0] == 1
    code, out, _ = run(capsys, "generators", "--out-dir", tmp_path / "g")
    assert code == 0 and "ladder" in out
    assert {p.name for p in (tmp_path / "g").iterdir()} == {"a.map", "b.map", "c.map", "d.map"}


def test_wreath(capsys, tmp_path, bump_file):
    code, out, _ = run(capsys, "wreath", "eval", "a^2 b^-1 a", "-o", tmp_path / "u.map")
    assert code == 0
    code, out2, _ = run(capsys, "wreath", "decompose", tmp_path / "u.map")
    assert code == 0 and out2 == out
    code, out, _ = run(capsys, "wreath", "decompose", bump_file[0])
    assert code == 1 and out.strip() == "not-a-member"


def test_arith(capsys, tmp_path):
    for k in (2, 3, 5, 6):
        assert run(capsys, "arith", "encode", k, "-o", tmp_path / f"e{k}.map")[0] == 0
    assert run(capsys, "arith", "decode", tmp_path / "e5.map")[1].strip() == "5"
    assert run(capsys, "arith", "add", *(tmp_path / f"e{k}.map" for k in (2, 3, 5)))[1].strip() == "true"
    assert run(capsys, "arith", "add", *(tmp_path / f"e{k}.map" for k in (2, 2, 5)))[1].strip() == "false"
    code, out, _ = run(capsys, "arith", "divides", tmp_path / "e3.map", tmp_path / "e6.map", "--witness")
    assert code == 0 and out.startswith("true") and "exponent -2" in out
    assert run(capsys, "arith", "divides", tmp_path / "e5.map", tmp_path / "e6.map")[1].strip() == "false"
    assert run(capsys, "arith", "add", tmp_path / "e2.map")[0] == 1
    assert run(capsys, "arith", "encode", "0")[0] == 1
    save_map(tmp_path / "id.map", PLMap.identity(THOMPSON))
    assert run(capsys, "arith", "decode", tmp_path / "id.map")[0] == 1
    assert encode_nat(THOMPSON, 5) == load_map(tmp_path / "e5.map")


def test_commutators(capsys, tmp_path):
    x = make_bump(THOMPSON, Q(1, 4), Q(1, 2), 2, Q(1, 2))
    y = make_bump(THOMPSON, Q(3, 8), Q(5, 8), 2, Q(1, 2))
    z = make_bump(THOMPSON, Q(1, 2), Q(3, 4), 2, Q(1, 2))
    pairs = [(x, y), (y, z), (z, x), (x, z)]
    save_pairs(tmp_path / "in.txt", pairs)
    code, out, _ = run(capsys, "commutators", "decompose", tmp_path / "in.txt", "--out-dir", tmp_path / "out")
    assert code == 0 and "# rounds 2" in out
    result = load_pairs(tmp_path / "out" / "pairs.txt")
    target = product((commutator(*p) for p in pairs), THOMPSON)
    assert product((commutator(*p) for p in result), THOMPSON) == target
    assert load_map(tmp_path / "out" / "product.map") == target


def test_logic(capsys, tmp_path):
    (tmp_path / "N.struct").write_text("universe 3\nrelation R 2\n0 1\n1 2\nrelation P 1\n0\n")
    (tmp_path / "a.fo").write_text("exists x (P(x) & exists y (R(x, y)))")
    (tmp_path / "b.fo").write_text("forall x (P(x))")
    assert run(capsys, "logic", "eval", tmp_path / "N.struct", tmp_path / "a.fo")[1].strip() == "true"
    assert run(capsys, "logic", "eval", tmp_path / "N.struct", tmp_path / "b.fo")[1].strip() == "false"
    data = InterpretationData(1, Signature.of({"S": 2}), Template.of(["y"], "true"),
                              Template.of(["y", "z"], "y = z"), {"S": Template.of(["a", "b"], "R(x, a)")},
                              ("x",), (0,))
    (tmp_path / "d.json").write_text(data.to_json())
    (tmp_path / "s.fo").write_text("exists u, v (S(u, v))")
    code, out, _ = run(capsys, "logic", "reduce", tmp_path / "s.fo", tmp_path / "d.json")
    assert code == 0 and "#0" in out
    code, out, _ = run(capsys, "logic", "reduce", tmp_path / "s.fo", tmp_path / "d.json", "--keep-params")
    assert code == 0 and "R(x, " in out
    (tmp_path / "bad.fo").write_text("exists x (")
    code, _, err = run(capsys, "logic", "eval", tmp_path / "N.struct", tmp_path / "bad.fo")
    assert code == 1 and "error" in err
    assert json.loads((tmp_path / "d.json").read_text())["dim"] == 1


def test_check_interp(capsys):
    code, out, _ = run(capsys, "logic", "check-interp", "--seed", "3", "--sentences", "5", "--packages", "3")
    assert code == 0
    assert out.strip().splitlines()[-1] == "SUMMARY instances=15 mismatches=0"


def test_plot(capsys, tmp_path, bump_file):
    path, _ = bump_file
    code, out, _ = run(capsys, "plot", path, "--format", "csv")
    assert code == 0 and out.startswith("x,y,")
    assert run(capsys, "plot", path, path, "--format", "csv")[0] == 1
    code, _, _ = run(capsys, "plot", path, path, "-o", tmp_path / "g.svg")
    assert code == 0 and (tmp_path / "g.svg").read_text().startswith("<svg")


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "1", "--trials", "20", "--only", "numbers", "plmaps.chain")
    lines = out.strip().splitlines()
    assert code == 0
    assert [l.split()[1] for l in lines[:-1]] == ["numbers.log_slope", "numbers.ring", "plmaps.chain_rule"]
    assert lines[-1].startswith("SUMMARY seed=1 trials=20 checks=3 failed=0")


def test_bad_wreath_word(capsys):
    code, _, err = run(capsys, "wreath", "eval", "t^2")
    assert code == 1 and "bad word" in err


DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.mark.skipif(not DATA.is_dir(), reason="example data not present")
def test_example_data(capsys):
    assert run(capsys, "arith", "add", *(DATA / f"e{k}.map" for k in (2, 3, 5)))[1].strip() == "true"
    assert run(capsys, "wreath", "decompose", DATA / "generators" / "b.map")[0] == 0
    assert run(capsys, "logic", "eval", DATA / "structure.txt", DATA / "sentence.fo")[0] == 0
    assert run(capsys, "logic", "reduce", DATA / "functional.fo", DATA / "interpretation.json")[0] == 0
    code, out, _ = run(capsys, "commutators", "decompose", DATA / "commutators" / "pairs.txt")
    assert code == 0 and "# rounds 2" in out
