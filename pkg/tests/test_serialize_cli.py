import json

import pytest

from test_algebra import path_algebra_a2
from symtilt import cli, fixtures
from symtilt.algebra import fingerprint
from symtilt.complexes import stalk
from symtilt.endalg import EndAlgebra
from symtilt.errors import StructuralError
from symtilt.homcalc import graded_dims
from symtilt.presets import build_preset
from symtilt.serialize import (
    algebra_from_json, algebra_to_json, bundle_from_json, bundle_to_json, dumps, load_bundle,
)


def test_bundle_round_trip_preserves_end_ring():
    inst = build_preset("example3", n=2, s=2)
    data = json.loads(dumps(bundle_to_json(inst.algebra, inst.complexes)))
    A, comps = bundle_from_json(data)
    assert A == inst.algebra
    for name, X in inst.complexes.items():
        assert graded_dims(comps[name], comps[name]) == graded_dims(X, X)
    before = EndAlgebra(inst.summand_complexes(), graded=True).algebra
    after = EndAlgebra([comps[n] for n in inst.summands], graded=True).algebra
    assert fingerprint(before) == fingerprint(after)


def test_algebra_errors_carry_locations():
    data = algebra_to_json(path_algebra_a2())
    data["mult"][0] = [0, 0, 9, "1"]
    with pytest.raises(StructuralError, match=r"\$\.mult\[0\]"):
        algebra_from_json(data)
    data = algebra_to_json(path_algebra_a2())
    data["unit"] = ["1", "x", "0"]
    with pytest.raises(StructuralError, match=r"unit\[1\]"):
        algebra_from_json(data)


def test_malformed_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"algebra": {')
    with pytest.raises(StructuralError, match="line 1 column"):
        load_bundle(str(p))


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("argv", [
    ["validate", "--preset", "example1", "--n", "3", "--m", "1"],
    ["hom", "--preset", "example1", "--n", "3", "--m", "1", "--source", "A", "--target", "T2"],
    ["endring", "--preset", "example2", "--n", "3", "--m", "1"],
    ["approx", "--preset", "example1", "--n", "3", "--m", "2"],
    ["exchange", "--preset", "example1", "--n", "3", "--m", "1"],
    ["tilt", "--preset", "example3", "--n", "2", "--s", "2"],
    ["dga", "--preset", "dga_section7", "--n", "2", "--s", "2"],
    ["suite", "example2", "--n", "3", "--m", "2"],
])
def test_cli_commands_succeed(argv, capsys):
    code, out = run(argv, capsys)
    data = json.loads(out)
    assert code == 0, [c for c in data["checks"] if not c["passed"]]
    assert data["ok"] and data["command"] == argv[0]


def test_cli_hom_dims(capsys):
    code, out = run(["hom", "--preset", "example1", "--n", "3", "--m", "1",
                     "--source", "A", "--target", "A", "--degree-range=-1:1"], capsys)
    assert code == 0
    degrees = json.loads(out)["report"]["degrees"]
    assert {i: d["dim"] for i, d in degrees.items()} == {"-1": 0, "0": 3, "1": 0}
    assert len(degrees["0"]["basis"]) == 3


def test_cli_text_output(capsys):
    code, out = run(["endring", "--preset", "example1", "--n", "3", "--m", "1", "--format", "text"], capsys)
    assert code == 0 and "cartan" in out


def test_cli_input_errors_exit_2(tmp_path, capsys):
    code, out = run(["suite", "example1", "--n", "3"], capsys)
    assert code == 2 and "error" in json.loads(out)
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out = run(["validate", "--in", str(bad)], capsys)
    assert code == 2


def test_cli_exchange_on_non_symmetric_bundle(tmp_path, capsys):
    A = path_algebra_a2()
    p = tmp_path / "a2.json"
    p.write_text(dumps(bundle_to_json(A, {"P1": stalk(A, 0), "P2": stalk(A, 1)})))
    code, out = run(["validate", "--in", str(p)], capsys)
    assert code == 0
    code, out = run(["exchange", "--in", str(p), "--source", "P1", "--targets", "P2"], capsys)
    assert code == 2 and "symmetric" in json.loads(out)["error"]


def test_cli_writes_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, _ = run(["endring", "--preset", "example1", "--n", "2", "--m", "1", "--out", str(target)], capsys)
    assert code == 0 and json.loads(target.read_text())["ok"]


def test_stored_fixtures_equal_fresh_oracle_run():
    assert fixtures.generate() == fixtures.stored()


def test_fixture_shape():
    inst = fixtures.stored()["instances"]["example1_m1_n3"]
    assert inst["cartan"] == [[3, 2], [2, 4]]
    assert inst["graded_dims"]["T2->T2"] == {"-1": 1, "0": 2, "1": 1}


def test_cli_failed_verification_exits_1(capsys):
    # approximating T2 by its own shifts is outside the exchange setting
    code, out = run(["exchange", "--preset", "example1", "--n", "3", "--m", "1",
                     "--source", "T2", "--targets", "T2"], capsys)
    failed = {c["check"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert code == 1 and "graded Cartan determinants agree" in failed
