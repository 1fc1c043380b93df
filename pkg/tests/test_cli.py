import json
import os
import stat
import subprocess
import sys

import pytest

from clifflab.cli import main
from clifflab.reps import MatrixRep, build_even_rep, j_family


def run_cli(*argv):
    return main(list(argv))


class TestRepgen:
    def test_round_trip(self, tmp_path):
        out = tmp_path / "rep.json"
        assert run_cli("repgen", "--rank", "5", "--kind", "even", "--out", str(out)) == 0
        rep = MatrixRep.from_json(out.read_text())
        assert rep.rank == 5 and rep.kind == "even" and rep.dim == 8
        assert rep.validate() == []

    def test_full_kind_header(self, tmp_path):
        out = tmp_path / "rep.json"
        assert run_cli("repgen", "--rank", "2", "--out", str(out)) == 0
        data = json.loads(out.read_text())
        assert data["schema"] == 1
        assert data["kind"] == "full"
        assert data["dim"] == 4
        assert len(data["generators"]) == 2
        assert len(data["generators"][0]) == 16

    def test_unsupported_rank_errors_cleanly(self, tmp_path):
        code = run_cli("repgen", "--rank", "30", "--out", str(tmp_path / "x.json"))
        assert code == 2


class TestVerify:
    def test_all_suites_pass_for_built_structure(self, tmp_path):
        rep_path = tmp_path / "rep.json"
        run_cli("repgen", "--rank", "3", "--kind", "even", "--out", str(rep_path))
        report_path = tmp_path / "report.json"
        code = run_cli(
            "verify", "--structure", str(rep_path), "--suite", "all", "--report", str(report_path)
        )
        assert code == 0
        report = json.loads(report_path.read_text())
        assert report["passed"]
        assert {s["suite"] for s in report["suites"]} == {
            "relations",
            "orthogonality",
            "hodge",
            "universality",
        }

    def test_broken_structure_fails_with_witness(self, tmp_path):
        fam = j_family(build_even_rep(3))
        mats = dict(fam.mats)
        mats[(1, 3)] = mats[(1, 2)]
        rows = [
            {"i": i, "j": j, "matrix": m.reshape(-1).tolist()} for (i, j), m in mats.items()
        ]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema": 1, "n": 4, "r": 3, "J": rows}))
        code = run_cli("verify", "--structure", str(path), "--suite", "relations")
        assert code == 1

    def test_missing_file_is_io_error(self):
        assert run_cli("verify", "--structure", "/nonexistent/s.json") == 3

    def test_malformed_file_is_reported_not_raised(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code = run_cli("verify", "--structure", str(bad))
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_hodge_suite_reports_rejection_for_rank5(self, tmp_path):
        rep_path = tmp_path / "rep.json"
        run_cli("repgen", "--rank", "5", "--kind", "even", "--out", str(rep_path))
        report_path = tmp_path / "report.json"
        code = run_cli(
            "verify", "--structure", str(rep_path), "--suite", "hodge", "--report", str(report_path)
        )
        assert code == 1
        report = json.loads(report_path.read_text())
        assert not report["passed"]


class TestCurvature:
    def test_cp4_spectrum(self, tmp_path):
        out = tmp_path / "cp4.json"
        assert run_cli("curvature", "--model", "cp4", "--check", "spectrum", "--out", str(out)) == 0
        data = json.loads(out.read_text())
        eig = data["suites"][0]["data"]["eigenvalues"]
        assert eig == [
            {"value": "0", "multiplicity": 12},
            {"value": "4", "multiplicity": 15},
            {"value": "20", "multiplicity": 1},
        ]

    def test_s8_all_checks(self, tmp_path):
        out = tmp_path / "s8.json"
        assert run_cli("curvature", "--model", "s8", "--check", "all", "--out", str(out)) == 0
        data = json.loads(out.read_text())
        assert data["passed"]
        assert data["config"]["expected_scal"] == "224"


class TestClassify:
    def test_table_markdown(self, capsys):
        assert run_cli("classify", "--table", "3", "--format", "markdown") == 0
        out = capsys.readouterr().out
        assert "curvature constancy" in out
        assert "F4/Spin(9)" in out

    def test_candidate_verdict(self, capsys):
        assert run_cli("classify", "--candidate", "case4", "--p", "5", "--q", "2") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["reason"] == "fails_divisibility_b"

    def test_table_or_candidate_required(self):
        assert run_cli("classify") == 2


class TestEmitTables:
    def test_writes_four_files_byte_stable(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        assert run_cli("emit-tables", "--dir", str(d1)) == 0
        assert run_cli("emit-tables", "--dir", str(d2)) == 0
        names = ["table1.md", "table2.md", "table3.md", "tables.json"]
        assert sorted(p.name for p in d1.iterdir()) == sorted(names)
        for name in names:
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    def test_csv_format(self, tmp_path):
        assert run_cli("emit-tables", "--dir", str(tmp_path / "c"), "--format", "csv") == 0
        raw = (tmp_path / "c" / "table3.csv").read_bytes()
        assert b"\r\n" in raw
        assert b"32k(k+3)" in raw

    @pytest.mark.skipif(os.geteuid() == 0, reason="root bypasses directory permissions")
    def test_read_only_dir_is_io_error(self, tmp_path):
        ro = tmp_path / "ro"
        ro.mkdir()
        ro.chmod(stat.S_IRUSR | stat.S_IXUSR)
        try:
            assert run_cli("emit-tables", "--dir", str(ro)) == 3
        finally:
            ro.chmod(stat.S_IRWXU)


class TestVerifyAll:
    def test_passes_and_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run_cli("verify-all", "--seed", "0", "--out", str(a)) == 0
        assert run_cli("verify-all", "--seed", "0", "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()
        report = json.loads(a.read_text())
        assert report["passed"]
        assert report["timing"] is None
        assert {s["name"] for s in report["suites"]} == {
            "dimension_tables",
            "relation_sweep",
            "rank4_split",
            "hodge_extension",
            "universality",
            "triality",
            "curvature_models",
            "centralizers",
            "classification",
        }

    def test_exit_code_and_usage(self):
        assert run_cli("no-such-command") == 2


class TestSubprocessEntry:
    def test_module_invocation(self, tmp_path):
        out = tmp_path / "tables"
        result = subprocess.run(
            [sys.executable, "-m", "clifflab.cli", "emit-tables", "--dir", str(out)],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert (out / "tables.json").exists()

    def test_version(self):
        result = subprocess.run(
            [sys.executable, "-m", "clifflab.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "clifflab" in result.stdout
