"""The command-line surface: exit codes, JSON schema conformance, and the
round-trip of printed group literals."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from fuchs.cli import main
from fuchs.abelian import parse_group, format_group

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "src" / "fuchs" / "data" /
     "verdict-schema.json").read_text(encoding="utf-8"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


class TestDecide:
    def test_exit_codes(self, capsys):
        assert run(capsys, "decide", "--class", "any", "Z/4Z x Z/16Z")[0] == 0
        assert run(capsys, "decide", "--class", "any", "Z/4Z x Z/32Z")[0] == 1
        assert run(capsys, "decide", "--class", "tn", "Z/4Z x Z/8Z x Z")[0] == 2
        assert run(capsys, "decide", "--class", "any", "garbage")[0] == 3

    def test_spec_example(self, capsys):
        code, doc = run_json(capsys, "decide", "--class", "any", "Z/4Z x Z/16Z")
        assert code == 0
        assert doc["verdict"] == "realisable"
        assert doc["certificate"]["fermat_prime"] == 17

    def test_finite_class(self, capsys):
        code, doc = run_json(capsys, "decide", "--class", "finite", "Z/328Z")
        assert code == 1 and doc["verdict"] == "not_realisable"
        assert run(capsys, "decide", "--class", "finite", "Z/2Z x Z")[0] == 3

    def test_tn_class(self, capsys):
        code, doc = run_json(capsys, "decide", "--class", "tn", "Z/328Z x Z")
        assert code == 0 and doc["theorem"] == "tn-rank-threshold"


class TestRank:
    def test_paper_numbers(self, capsys):
        code, doc = run_json(capsys, "rank", "Z/8Z x Z/41Z")
        assert code == 0
        assert doc == {"kind": "rank", "group": "Z/8Z x Z/41Z",
                       "g": 79, "r": 1, "case": "C1"}

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "rank", "Z/8Z x Z/41Z")
        assert "g(Z/8Z x Z/41Z) = 79" in out and "r = 1 (case C1)" in out

    def test_rejects_bad_input(self, capsys):
        assert run(capsys, "rank", "Z/9Z")[0] == 3       # odd order
        assert run(capsys, "rank", "Z/8Z x Z")[0] == 3   # free part


class TestOracles:
    def test_radical_oracle_p2(self, capsys):
        code, doc = run_json(capsys, "oracle", "radical", "--prime", "2",
                             "--exp", "3")
        assert code == 0
        assert doc["classes"] == 16
        assert doc["violations"] == []
        assert doc["mismatches"]  # the p = 2 gap is visible
        assert doc["byott_holds"] is True

    def test_radical_oracle_odd(self, capsys):
        code, doc = run_json(capsys, "oracle", "radical", "--prime", "3",
                             "--exp", "2")
        assert code == 0
        assert doc["mismatches"] == [] and doc["violations"] == []

    def test_finring_corpus(self, capsys):
        code, doc = run_json(capsys, "oracle", "finring", "--corpus")
        assert code == 0
        assert doc["all_local_formulas_hold"] is True
        assert len(doc["rings"]) >= 40

    def test_finring_file(self, capsys, tmp_path):
        from fuchs.finring import zn_ring
        path = tmp_path / "z9.ring"
        path.write_text(zn_ring(9).to_presentation(), encoding="utf-8")
        code, doc = run_json(capsys, "oracle", "finring", str(path))
        assert code == 0
        assert doc["rings"][0]["units"] == "Z/2Z x Z/3Z"


class TestModels:
    def test_example_reports(self, capsys):
        code, doc = run_json(capsys, "example", "paper-7-1")
        assert code == 0
        assert doc["nil_torsion"] == "Z/2Z x Z/2Z x Z/2Z x Z/2Z"
        assert doc["adjoint"] == "Z/2Z x Z/2Z x Z/4Z"
        assert doc["torsion_units"] == "Z/2Z x Z/2Z x Z/4Z x Z/8Z"
        assert doc["sequence_splits"] is False

    def test_model_file_flags(self, capsys, tmp_path):
        from fuchs.tnlab import example_two_model
        path = tmp_path / "m.tn"
        path.write_text(example_two_model(4).to_presentation(), encoding="utf-8")
        code, doc = run_json(capsys, "model", str(path), "--torsion-units")
        assert code == 0 and doc["torsion_units"] == "Z/4Z x Z/8Z"
        code, doc = run_json(capsys, "model", str(path), "--sequence")
        assert code == 0 and doc["sequence_splits"] is False

    def test_missing_file(self, capsys):
        assert run(capsys, "model", "/nonexistent.tn")[0] == 3


class TestTable:
    def test_cyclic_table(self, capsys):
        code, doc = run_json(capsys, "table", "cyclic", "--max", "20")
        assert code == 0
        rows = {row["n"]: row for row in doc["rows"]}
        assert rows[6]["finite"] == "realisable"
        assert rows[6]["tn_rank0"] == "realisable"
        assert rows[8]["tn_rank0"] == "not_realisable"
        assert rows[8]["min_rank_any"] == 0   # 8 = 3^2 - 1 covers it
        assert rows[9]["min_rank_any"] is None

    def test_jobs_flag(self, capsys):
        code1, doc1 = run_json(capsys, "table", "cyclic", "--max", "12")
        code2, out2, _ = run(capsys, "table", "cyclic", "--max", "12",
                             "--jobs", "2", "--json")
        assert code1 == code2 == 0
        assert doc1 == json.loads(out2)


class TestRoundTrip:
    def test_printed_literals_reparse(self, capsys):
        for text in ("Z/4Z x Z/8Z x Z^2", "z/600z", "1", "Z x Z"):
            grp = parse_group(text)
            printed = format_group(grp)
            assert parse_group(printed) == grp
