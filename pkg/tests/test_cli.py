import json

import pytest

try:
    import jsonschema
except ImportError:
    jsonschema = None

from ellvolcano.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def last_json(stdout):
    # the crater command streams lines before the JSON document
    idx = stdout.index("{")
    return json.loads(stdout[idx:])


def validate(doc, name):
    if jsonschema is None:
        pytest.skip("jsonschema unavailable")
    import importlib.resources
    ref = importlib.resources.files("ellvolcano") / "schemas" / (name + ".json")
    schema = json.loads(ref.read_text())
    jsonschema.validate(doc, schema)


SMALL = ["--p", "109", "--a", "1", "--b", "7", "--ell", "3"]
EX257 = ["--p", "257", "--a2", "206", "--a4", "221", "--a6", "33", "--ell", "2"]


class TestStructure:
    def test_general_weierstrass_base(self, capsys):
        code, out, err = run_cli(capsys, "structure", *EX257)
        assert code == 0, err
        doc = last_json(out)
        assert (doc["n1"], doc["n2"]) == (1, 1)
        validate(doc, "structure")

    def test_general_weierstrass_ext2(self, capsys):
        code, out, err = run_cli(capsys, "structure", *EX257, "--ext", "2")
        assert code == 0, err
        doc = last_json(out)
        assert (doc["n1"], doc["n2"]) == (4, 2)
        validate(doc, "structure")

    def test_missing_trace_large_field(self, capsys):
        code, out, err = run_cli(
            capsys, "structure", "--p", "619074283342666852501391",
            "--a", "1", "--b", "2", "--ell", "3")
        assert code == 2
        assert "trace" in err

    def test_curve_file_short_form(self, capsys, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text("109 1 1 7 2\n")
        code, out, err = run_cli(capsys, "structure", "--curve", str(path),
                                 "--ell", "3")
        assert code == 0, err
        doc = last_json(out)
        assert doc["n1"] >= 1

    def test_curve_file_general_form(self, capsys, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text("257 1 0 206 0 221 33 -18\n")
        code, out, err = run_cli(capsys, "structure", "--curve", str(path),
                                 "--ell", "2")
        assert code == 0, err
        assert (last_json(out)["n1"], last_json(out)["n2"]) == (1, 1)

    def test_curve_file_malformed(self, capsys, tmp_path):
        path = tmp_path / "curve.txt"
        path.write_text("1 2 3\n")
        code, out, err = run_cli(capsys, "structure", "--curve", str(path),
                                 "--ell", "2")
        assert code == 2

    def test_seed_determinism(self, capsys):
        _, out1, _ = run_cli(capsys, "structure", *SMALL, "--seed", "5")
        _, out2, _ = run_cli(capsys, "structure", *SMALL, "--seed", "5")
        assert out1 == out2


class TestOtherCommands:
    def test_level(self, capsys):
        code, out, err = run_cli(capsys, "level", *SMALL)
        assert code == 0, err
        validate(last_json(out), "level")

    def test_directions(self, capsys):
        code, out, err = run_cli(capsys, "directions", *SMALL)
        assert code == 0, err
        doc = last_json(out)
        validate(doc, "directions")
        assert doc["on_floor"] or doc["roots"]

    def test_crater_streams(self, capsys):
        code, out, err = run_cli(capsys, "crater", *SMALL)
        assert code == 0, err
        doc = last_json(out)
        validate(doc, "crater")
        streamed = [int(line.split()[1]) for line in out.splitlines()
                    if line.startswith("j ")]
        assert streamed == doc["crater"]

    def test_endo(self, capsys):
        code, out, err = run_cli(capsys, "endo", *SMALL)
        assert code == 0, err
        doc = last_json(out)
        validate(doc, "endo")
        assert doc["valuation"] + doc["conductor_valuation"] == doc["height"]

    def test_oracle_matches_directions(self, capsys):
        code, out, err = run_cli(capsys, "oracle", *SMALL)
        assert code == 0, err
        oracle_doc = last_json(out)
        validate(oracle_doc, "oracle")
        code, out, err = run_cli(capsys, "directions", *SMALL)
        dir_doc = last_json(out)
        # every pairing-reported kernel must be labeled non-descending by
        # the oracle; counts of non-descending labels must agree
        non_desc = [c for c in oracle_doc["classifications"]
                    if c["direction"] != "descending"]
        if dir_doc["on_floor"]:
            assert len(non_desc) == 1
        else:
            assert len(non_desc) == len(dir_doc["kernels"])

    def test_json_file_output(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        code, out, err = run_cli(capsys, "level", *SMALL, "--json", str(path))
        assert code == 0
        on_disk = json.loads(path.read_text())
        assert on_disk == last_json(out)

    def test_ext_gate_requires_slow(self, capsys):
        code, out, err = run_cli(
            capsys, "structure", "--p", "953202937996763",
            "--j", "34098711889917", "--trace", "1636604", "--ell", "1009")
        assert code == 4
        assert "--slow" in err


class TestBench:
    def test_tiny_grid(self, capsys):
        code, out, err = run_cli(capsys, "bench", "--grid", "3,2,1")
        assert code == 0, err
        doc = last_json(out)
        validate(doc, "bench")
        row = doc["rows"][0]
        assert row["status"] == "ok"
        assert row["pairing_mults"] > 0 and row["classical_mults"] > 0

    def test_out_of_budget_row_reports_cleanly(self, capsys):
        code, out, err = run_cli(capsys, "bench", "--grid", "31,6,5")
        assert code == 0
        row = last_json(out)["rows"][0]
        assert row["status"] != "ok"

    def test_bad_grid(self, capsys):
        code, out, err = run_cli(capsys, "bench", "--grid", "3,2")
        assert code == 2
