# tests/test_cli.py
"""Testes caixa-preta do CLI (códigos de saída e artefatos)"""

import hashlib
import json

import pytest

from src.main import (
    EXIT_IMPOSSIBLE,
    EXIT_INVALID,
    EXIT_IO,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    main,
)

from tests.conftest import TABLE1_CONFIG, TABLE1_CSV, TABLE8_CSV


def _digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _anonymize(tmp_path, *extra, name="out"):
    output = tmp_path / f"{name}.csv"
    report = tmp_path / f"{name}.json"
    code = main([
        "anonymize",
        "--input", str(TABLE1_CSV),
        "--config", str(TABLE1_CONFIG),
        "--output", str(output),
        "--report", str(report),
        "--omit-timing",
        *extra,
    ])
    return code, output, report


# ═══════════════════════════════════════════════════════════════════
# ANONYMIZE
# ═══════════════════════════════════════════════════════════════════

class TestAnonymizeCommand:

    def test_fixture_run(self, tmp_path):
        code, output, report_path = _anonymize(tmp_path)

        assert code == EXIT_OK
        report = json.loads(report_path.read_text(encoding="utf-8"))
        for key in ("k", "q", "privacy_achieved", "precision_loss", "discernibility",
                    "residual_count", "wall_time_ms", "trace"):
            assert key in report
        assert report["trace"][0]["vector"] == [1, 0, 0]
        assert report["trace"][0]["prgain"] == pytest.approx(0.30)
        assert report["trace"][0]["vector_label"] == "<Age^1, Gender^0, ZIP^0>"
        assert report["privacy_achieved"] == pytest.approx(0.90)
        assert report["wall_time_ms"] == 0.0
        assert "explored" not in report or report["explored"] is None

        lines = output.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "ZIP,Age,Gender,Condition"
        assert len(lines) == 1 + 18

    def test_byte_identical_reruns(self, tmp_path):
        _, out_a, rep_a = _anonymize(tmp_path, name="a")
        _, out_b, rep_b = _anonymize(tmp_path, name="b")

        assert _digest(out_a) == _digest(out_b)
        assert _digest(rep_a) == _digest(rep_b)

    def test_keep_policy_emits_every_row(self, tmp_path):
        code, output, _ = _anonymize(tmp_path, "--residual", "keep")
        assert code == EXIT_OK
        assert len(output.read_text(encoding="utf-8").splitlines()) == 21

    def test_trace_all(self, tmp_path):
        code, _, report_path = _anonymize(tmp_path, "--trace", "all", "--max-branches", "inf")
        report = json.loads(report_path.read_text(encoding="utf-8"))
        assert code == EXIT_OK
        assert report["explored"]

    def test_one_row_is_impossible(self, tmp_path):
        source = tmp_path / "one.csv"
        source.write_text("ZIP,Age,Gender,Condition\n13053,28,Male,Flu\n", encoding="utf-8")

        code = main([
            "anonymize", "--input", str(source), "--config", str(TABLE1_CONFIG),
            "--output", str(tmp_path / "o.csv"), "--report", str(tmp_path / "o.json"),
        ])

        assert code == EXIT_IMPOSSIBLE

    def test_k_override(self, tmp_path):
        code, _, _ = _anonymize(tmp_path, "--k", "21")
        assert code == EXIT_IMPOSSIBLE

    def test_k_override_below_two(self, tmp_path):
        code, _, _ = _anonymize(tmp_path, "--k", "1")
        assert code == EXIT_INVALID

    def test_missing_input(self, tmp_path):
        code = main([
            "anonymize", "--input", str(tmp_path / "nope.csv"), "--config", str(TABLE1_CONFIG),
            "--output", str(tmp_path / "o.csv"), "--report", str(tmp_path / "o.json"),
        ])
        assert code == EXIT_INVALID

    def test_invalid_config(self, tmp_path):
        config = tmp_path / "bad.json"
        config.write_text('{"k": 1}', encoding="utf-8")

        code = main([
            "anonymize", "--input", str(TABLE1_CSV), "--config", str(config),
            "--output", str(tmp_path / "o.csv"), "--report", str(tmp_path / "o.json"),
        ])

        assert code == EXIT_INVALID

    def test_unwritable_output(self, tmp_path):
        code = main([
            "anonymize", "--input", str(TABLE1_CSV), "--config", str(TABLE1_CONFIG),
            "--output", str(tmp_path / "missing-dir" / "o.csv"), "--report", str(tmp_path / "o.json"),
        ])
        assert code == EXIT_IO

    def test_report_write_failure(self, tmp_path, mocker):
        mocker.patch("src.main.write_json", side_effect=PermissionError("read-only"))
        code, _, _ = _anonymize(tmp_path)
        assert code == EXIT_IO

    def test_bad_flag(self):
        assert main(["anonymize", "--input"]) == EXIT_INVALID

    def test_undecodable_input(self, tmp_path):
        source = tmp_path / "latin1.csv"
        source.write_bytes(b"ZIP,Age,Gender,Condition\n13053,28,M\xe9le,Flu\n")

        code = main([
            "anonymize", "--input", str(source), "--config", str(TABLE1_CONFIG),
            "--output", str(tmp_path / "o.csv"), "--report", str(tmp_path / "o.json"),
        ])

        assert code == EXIT_INVALID

    def test_bom_prefixed_input(self, tmp_path):
        source = tmp_path / "excel.csv"
        source.write_bytes(b"\xef\xbb\xbf" + TABLE1_CSV.read_bytes())

        code = main([
            "anonymize", "--input", str(source), "--config", str(TABLE1_CONFIG),
            "--output", str(tmp_path / "o.csv"), "--report", str(tmp_path / "o.json"),
            "--omit-timing",
        ])

        assert code == EXIT_OK
        assert (tmp_path / "o.csv").read_text(encoding="utf-8").splitlines()[0] == "ZIP,Age,Gender,Condition"


# ═══════════════════════════════════════════════════════════════════
# VERIFY
# ═══════════════════════════════════════════════════════════════════

class TestVerifyCommand:

    def test_anonymized_output_passes(self, tmp_path):
        _, output, _ = _anonymize(tmp_path)
        assert main(["verify", "--input", str(output), "--config", str(TABLE1_CONFIG)]) == EXIT_OK

    def test_raw_table1_fails_for_k2(self):
        code = main(["verify", "--input", str(TABLE1_CSV), "--config", str(TABLE1_CONFIG), "--k", "2"])
        assert code == EXIT_VERIFY_FAILED

    def test_printed_final_table_lists_offender(self, capsys):
        code = main(["verify", "--input", str(TABLE8_CSV), "--config", str(TABLE1_CONFIG)])

        assert code == EXIT_VERIFY_FAILED
        out = capsys.readouterr().out
        assert '["mid age", "person", "1****"]: 1' in out

    def test_k_larger_than_rows(self, tmp_path):
        _, output, _ = _anonymize(tmp_path)
        code = main(["verify", "--input", str(output), "--config", str(TABLE1_CONFIG), "--k", "50"])
        assert code == EXIT_VERIFY_FAILED

    def test_missing_qi_column(self, tmp_path):
        source = tmp_path / "partial.csv"
        source.write_text("ZIP,Condition\n13053,Flu\n", encoding="utf-8")
        code = main(["verify", "--input", str(source), "--config", str(TABLE1_CONFIG)])
        assert code == EXIT_INVALID

    def test_undecodable_input(self, tmp_path):
        source = tmp_path / "latin1.csv"
        source.write_bytes(b"ZIP,Age,Gender,Condition\n13053,28,M\xe9le,Flu\n")
        code = main(["verify", "--input", str(source), "--config", str(TABLE1_CONFIG)])
        assert code == EXIT_INVALID


# ═══════════════════════════════════════════════════════════════════
# EVALUATE / EXPERIMENT
# ═══════════════════════════════════════════════════════════════════

class TestEvaluateCommand:

    def _evaluate(self, original, anonymized, output, *extra):
        return main([
            "evaluate", "--original", str(original), "--anonymized", str(anonymized),
            "--class-attr", "Condition", "--output", str(output), "--omit-timing", *extra,
        ])

    def test_identical_files(self, tmp_path, capsys):
        code = self._evaluate(TABLE1_CSV, TABLE1_CSV, tmp_path / "cmp.json")

        assert code == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["delta"] == 0.0

    def test_reruns_are_identical(self, tmp_path):
        _, anonymized, _ = _anonymize(tmp_path)
        self._evaluate(TABLE1_CSV, anonymized, tmp_path / "a.json", "--config", str(TABLE1_CONFIG))
        self._evaluate(TABLE1_CSV, anonymized, tmp_path / "b.json", "--config", str(TABLE1_CONFIG))

        assert _digest(tmp_path / "a.json") == _digest(tmp_path / "b.json")

    def test_missing_class_attribute(self, tmp_path):
        code = main([
            "evaluate", "--original", str(TABLE1_CSV), "--anonymized", str(TABLE1_CSV),
            "--class-attr", "income",
        ])
        assert code == EXIT_INVALID

    def test_undecodable_anonymized_file(self, tmp_path):
        source = tmp_path / "latin1.csv"
        source.write_bytes(b"ZIP,Age,Gender,Condition\n13053,28,M\xe9le,Flu\n")
        code = main([
            "evaluate", "--original", str(TABLE1_CSV), "--anonymized", str(source),
            "--class-attr", "Condition",
        ])
        assert code == EXIT_INVALID


class TestExperimentCommand:

    def test_grid(self, tmp_path):
        output = tmp_path / "grid.json"

        code = main([
            "experiment", "--input", str(TABLE1_CSV), "--config", str(TABLE1_CONFIG),
            "--k-values", "2,3", "--class-attr", "Condition", "--output", str(output), "--omit-timing",
        ])

        assert code == EXIT_OK
        rows = json.loads(output.read_text(encoding="utf-8"))
        assert [row["k"] for row in rows] == [2, 3]
        assert rows[1]["privacy_achieved"] == pytest.approx(0.90)
        assert all(row["q"] == 3 for row in rows)

    def test_requires_class_attribute(self, tmp_path):
        code = main([
            "experiment", "--input", str(TABLE1_CSV), "--config", str(TABLE1_CONFIG),
            "--output", str(tmp_path / "grid.json"),
        ])
        assert code == EXIT_INVALID

    def test_invalid_k_values(self, tmp_path):
        code = main([
            "experiment", "--input", str(TABLE1_CSV), "--config", str(TABLE1_CONFIG),
            "--k-values", "2,x", "--class-attr", "Condition", "--output", str(tmp_path / "grid.json"),
        ])
        assert code == EXIT_INVALID

    def test_undecodable_input(self, tmp_path):
        source = tmp_path / "latin1.csv"
        source.write_bytes(b"ZIP,Age,Gender,Condition\n13053,28,M\xe9le,Flu\n")

        code = main([
            "experiment", "--input", str(source), "--config", str(TABLE1_CONFIG),
            "--class-attr", "Condition", "--output", str(tmp_path / "grid.json"),
        ])

        assert code == EXIT_INVALID
