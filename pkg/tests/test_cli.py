import json
import subprocess
import sys

import pytest

from revfree.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")


def write_code(path, n, k, words, repetition_free=True):
    write_json(
        path,
        {"n": n, "k": k, "repetition_free": repetition_free, "words": words},
    )


class TestPlaneCommands:
    def test_build_fano(self, capsys):
        code, out, _ = run_cli(capsys, "plane", "build", "--q", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["order"] == 2
        assert len(doc["points"]) == len(doc["lines"]) == 7

    def test_build_rejects_non_prime_power(self, capsys):
        code, _, err = run_cli(capsys, "plane", "build", "--q", "6")
        assert code == 2
        assert "prime power" in err

    def test_build_verify_round_trip(self, capsys, tmp_path):
        out_path = tmp_path / "plane.json"
        code, _, _ = run_cli(capsys, "plane", "build", "--q", "3", "--out", str(out_path))
        assert code == 0
        # canonical re-serialization is bit-identical
        doc = json.loads(out_path.read_text())
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out_path.read_text()
        code, out, _ = run_cli(capsys, "plane", "verify", "--in", str(out_path))
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_verify_detects_damage(self, capsys, tmp_path):
        out_path = tmp_path / "plane.json"
        run_cli(capsys, "plane", "build", "--q", "2", "--out", str(out_path))
        doc = json.loads(out_path.read_text())
        doc["lines"][0] = doc["lines"][0][:-1]
        write_json(out_path, doc)
        code, out, _ = run_cli(capsys, "plane", "verify", "--in", str(out_path))
        assert code == 1
        report = json.loads(out)
        assert report["ok"] is False
        failed = [c["axiom"] for c in report["checks"] if not c["ok"]]
        assert "P3" in failed

    def test_malformed_json_reports_location(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"order": 2,', encoding="utf-8")
        code, _, err = run_cli(capsys, "plane", "verify", "--in", str(bad))
        assert code == 2
        assert "line" in err and "column" in err


class TestConstructCommands:
    def test_plane_code_pipeline(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        code, _, _ = run_cli(
            capsys, "construct", "plane-code", "--q", "2", "--out", str(code_path)
        )
        assert code == 0
        doc = json.loads(code_path.read_text())
        assert doc["n"] == doc["k"] == 7
        assert len(doc["words"]) == 24
        # written artifacts re-serialize bit-identically after canonicalization
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == code_path.read_text()
        code, out, _ = run_cli(capsys, "verify", "reverse-free", "--in", str(code_path))
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_plane_code_limit(self, capsys):
        code, out, _ = run_cli(capsys, "construct", "plane-code", "--q", "2", "--limit", "5")
        assert code == 0
        assert len(json.loads(out)["words"]) == 5

    def test_plane_code_sample_determinism(self, capsys):
        _, out1, _ = run_cli(
            capsys, "construct", "plane-code", "--q", "2", "--sample", "6", "--seed", "3"
        )
        _, out2, _ = run_cli(
            capsys, "construct", "plane-code", "--q", "2", "--sample", "6", "--seed", "3"
        )
        assert out1 == out2
        assert len(json.loads(out1)["words"]) == 6

    def test_sample_shortfall_warns_but_succeeds(self, capsys):
        code, out, err = run_cli(
            capsys, "construct", "plane-code", "--q", "2", "--sample", "25"
        )
        assert code == 0
        assert len(json.loads(out)["words"]) == 24
        assert "warning" in err

    def test_pad(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 3, [[2, 3, 1], [3, 1, 2]])
        code, out, _ = run_cli(
            capsys, "construct", "pad", "--in", str(code_path), "--n", "5"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["words"] == [[2, 3, 1, 4, 5], [3, 1, 2, 4, 5]]

    def test_lift(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 2, 2, [[1, 2]])
        code, out, _ = run_cli(
            capsys, "construct", "lift", "--in", str(code_path), "--n", "4"
        )
        assert code == 0
        assert json.loads(out)["words"] == [[1, 2], [1, 4], [3, 2], [3, 4]]

    def test_lift_limit(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 2, 2, [[1, 2]])
        code, out, _ = run_cli(
            capsys, "construct", "lift", "--in", str(code_path), "--n", "4", "--limit", "2"
        )
        assert json.loads(out)["words"] == [[1, 2], [1, 4]]

    def test_pad_precondition_error(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 2, [[1, 2]])
        code, _, err = run_cli(
            capsys, "construct", "pad", "--in", str(code_path), "--n", "5"
        )
        assert code == 2
        assert "permutation" in err


class TestVerifyCommands:
    def test_reverse_free_failure_prints_witness(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 3, [[1, 2, 3], [2, 1, 3]])
        code, out, _ = run_cli(capsys, "verify", "reverse-free", "--in", str(code_path))
        assert code == 1
        doc = json.loads(out)
        assert doc["ok"] is False
        assert doc["witness"]["positions"] == [1, 2]
        assert doc["witness"]["word_indices"] == [0, 1]

    @pytest.mark.parametrize("method", ["pairwise", "signature", "both"])
    def test_reverse_free_methods(self, capsys, tmp_path, method):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 3, [[1, 2, 3], [2, 3, 1], [3, 1, 2]])
        code, out, _ = run_cli(
            capsys, "verify", "reverse-free", "--in", str(code_path), "--method", method
        )
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_full_of_flips(self, capsys, tmp_path):
        flips = tmp_path / "flips.json"
        write_code(flips, 2, 2, [[1, 2], [2, 1]])
        assert run_cli(capsys, "verify", "full-of-flips", "--in", str(flips))[0] == 0
        not_flips = tmp_path / "nf.json"
        write_code(not_flips, 3, 3, [[1, 2, 3], [2, 3, 1]])
        code, out, _ = run_cli(capsys, "verify", "full-of-flips", "--in", str(not_flips))
        assert code == 1
        assert json.loads(out)["witness"]["word_indices"] == [0, 1]


class TestMatrixCommands:
    def test_count_s(self, capsys, tmp_path, fano_incidence):
        path = tmp_path / "m.json"
        write_json(path, fano_incidence.to_json_dict())
        code, out, _ = run_cli(capsys, "matrix", "count-s", "--in", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["exact_count"] == 0
        assert doc["row_pair_count"] == 21

    def test_permanent(self, capsys, tmp_path, fano_incidence):
        path = tmp_path / "m.json"
        write_json(path, fano_incidence.to_json_dict())
        code, out, _ = run_cli(capsys, "matrix", "permanent", "--in", str(path))
        assert code == 0
        assert json.loads(out)["permanent"] == 24

    def test_permanent_rejects_rectangular(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        write_json(path, {"rows": 2, "cols": 3, "ones": [[1, 1], [2, 2]]})
        code, _, err = run_cli(capsys, "matrix", "permanent", "--in", str(path))
        assert code == 2
        assert "square" in err


class TestExactCommand:
    def test_f33(self, capsys):
        code, out, _ = run_cli(capsys, "exact", "--n", "3", "--k", "3", "--mode", "F")
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == 3
        assert len(doc["witness"]) == 3

    def test_all_modes(self, capsys):
        expected = {"F": 1, "Fbar": 3, "G": 2, "Gbar": 2}
        for mode, value in expected.items():
            code, out, _ = run_cli(
                capsys, "exact", "--n", "2", "--k", "2", "--mode", mode
            )
            assert code == 0
            assert json.loads(out)["value"] == value, mode

    def test_capacity_guard(self, capsys):
        code, _, err = run_cli(capsys, "exact", "--n", "10", "--k", "5", "--mode", "Fbar")
        assert code == 2
        assert "100000" in err


class TestShrinkCommand:
    def test_trace_to_file(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 2, [[1, 2], [2, 3], [3, 1]])
        trace_path = tmp_path / "trace.json"
        code, out, _ = run_cli(
            capsys,
            "shrink",
            "run",
            "--in",
            str(code_path),
            "--threshold",
            "0",
            "--trace",
            str(trace_path),
        )
        assert code == 0
        summary = json.loads(out)
        trace = json.loads(trace_path.read_text())
        assert summary["steps"] == len(trace["steps"]) == 2
        assert trace["heavy_count"] == 1

    def test_trace_to_stdout(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 2, [[1, 2], [1, 3]])
        code, out, _ = run_cli(capsys, "shrink", "run", "--in", str(code_path))
        assert code == 0
        assert json.loads(out)["steps"] == []

    def test_rejects_non_reverse_free(self, capsys, tmp_path):
        code_path = tmp_path / "code.json"
        write_code(code_path, 3, 3, [[1, 2, 3], [2, 1, 3]])
        code, _, err = run_cli(capsys, "shrink", "run", "--in", str(code_path))
        assert code == 2
        assert "reverse" in err


class TestBoundsCommand:
    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "table", "--n", "7", "--k", "7", "--size", "24"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["exponent_achieved"] == pytest.approx(1.633, abs=1e-3)

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds",
            "table",
            "--n",
            "14",
            "--k",
            "7",
            "--size",
            "3072",
            "--fkk",
            "24",
            "--csv",
        )
        assert code == 0
        header, row = out.strip().splitlines()
        assert header.split(",")[0] == "n"
        fields = row.split(",")
        assert fields[:3] == ["14", "7", "3072"]
        assert len(fields) == 8


class TestUsageErrors:
    def test_missing_subcommand(self, capsys):
        assert run_cli(capsys, "plane")[0] == 2

    def test_unknown_flag(self, capsys):
        assert run_cli(capsys, "exact", "--n", "3", "--frobnicate")[0] == 2

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "verify", "reverse-free", "--in", "/no/such.json")
        assert code == 2


def test_module_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "revfree", "plane", "build", "--q", "2"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["order"] == 2
