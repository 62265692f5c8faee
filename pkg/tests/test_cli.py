from __future__ import annotations

import json
import subprocess
import sys

import pytest

from kacgen import cli
from kacgen.campaigns import CaseResult
from kacgen.kac import parse


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestClasses:
    def test_b3(self, capsys):
        code, out, _ = run(capsys, "classes", "--type", "B", "--rank", "3")
        rows = out.splitlines()[1:]
        assert code == 0
        assert [r.split()[0] for r in rows] == ["3", "2,1", "1,1,1"]

    def test_2a6(self, capsys):
        _, out, _ = run(capsys, "classes", "--type", "2A", "--rank", "6")
        assert len(out.splitlines()) == 1 + 4

    def test_d3(self, capsys):
        _, out, _ = run(capsys, "classes", "--type", "D", "--rank", "3")
        rows = out.splitlines()[1:]
        assert [r.split()[0] for r in rows] == ["2,1"]


class TestDiagram:
    def test_c21(self, capsys):
        code, out, _ = run(capsys, "diagram", "--type", "C", "--rank", "3", "--partition", "2,1")
        assert code == 0
        assert out.splitlines()[1] == "2 => 1 - 1 <= 2"

    def test_2d_json(self, capsys):
        code, out, _ = run(capsys, "diagram", "--type", "2D", "--rank", "11", "--partition", "5,4,3", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert list(data["labels"].values()) == [0, 12, 3, 5, 4, 6, 6, 4, 5, 3, 12, 0]
        assert set(data) >= {"family", "rank", "twist", "partition", "m", "sigma", "labels", "b_marks", "c_marks", "orbit_sizes"}
        assert parse(out, "json").labels == (0, 12, 3, 5, 4, 6, 6, 4, 5, 3, 12, 0)

    def test_a3_all_ones(self, capsys):
        _, out, _ = run(capsys, "diagram", "--type", "A", "--rank", "3", "--partition", "3")
        assert out.splitlines()[1:] == ["1 - 1", "branch: g0=1 @ g1,g2"]

    def test_resorts_with_warning(self, capsys):
        code, out, err = run(capsys, "diagram", "--type", "C", "--rank", "3", "--partition", "1,2")
        assert code == 0 and "re-sorted" in err
        assert out.splitlines()[1] == "2 => 1 - 1 <= 2"

    def test_raw_keeps_common_factor(self, capsys):
        _, out, _ = run(capsys, "diagram", "--type", "C", "--rank", "3", "--partition", "3", "--raw")
        assert "gcd=1" in out.splitlines()[0] and "normalized=false" in out.splitlines()[0]


class TestCharpoly:
    def test_oracle_flag(self, capsys):
        code, out, err = run(capsys, "charpoly", "--type", "2A", "--rank", "4", "--partition", "3,1", "--oracle")
        data = json.loads(out)
        assert code == 0 and data["oracle_agrees"]
        assert data["rep"] == "adjoint" and len(data["expanded"]) == 16
        assert err.strip()


class TestVerify:
    def test_examples_suite(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "examples")
        summary = json.loads(out)
        assert code == 0
        assert summary["failed"] == 0 and summary["cases"] >= 10
        assert len(err.splitlines()) == summary["cases"]

    def test_rationality_b4(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "rationality", "--type", "B", "--max-rank", "4")
        assert code == 0 and json.loads(out)["failed"] == 0

    def test_injectivity_c(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "injectivity", "--type", "C", "--max-rank", "6")
        assert code == 0 and json.loads(out)["failed"] == 0

    def test_failure_exit_code(self, capsys, monkeypatch):
        fake = [CaseResult("good", True, ""), CaseResult("bad", False, "broken on purpose")]
        monkeypatch.setattr(cli, "run_suite", lambda *a, **k: fake)
        code, out, err = run(capsys, "verify", "--suite", "examples")
        assert code == 1
        assert json.loads(out)["failed"] == 1
        assert "broken on purpose" in err

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("KACGEN_MAX_RANK", "3")
        _, capped, _ = run(capsys, "verify", "--suite", "injectivity", "--type", "B")
        monkeypatch.setenv("KACGEN_MAX_RANK", "5")
        _, wider, _ = run(capsys, "verify", "--suite", "injectivity", "--type", "B")
        assert json.loads(capped)["cases"] < json.loads(wider)["cases"]


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv,code",
        [
            (["bogus"], 2),
            (["classes", "--type", "B"], 2),
            (["diagram", "--type", "C", "--rank", "3", "--partition", "2,x"], 2),
            (["verify", "--suite", "nope"], 2),
            (["classes", "--type", "E", "--rank", "6"], 3),
            (["classes", "--type", "D", "--rank", "2"], 3),
            (["diagram", "--type", "D", "--rank", "4", "--partition", "2,1,1"], 4),
        ],
    )
    def test_codes(self, capsys, argv, code):
        got, _, err = run(capsys, *argv)
        assert got == code
        assert err

    def test_inadmissible_names_constraint(self, capsys):
        _, _, err = run(capsys, "diagram", "--type", "2A", "--rank", "4", "--partition", "2,2")
        assert "odd" in err


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "kacgen", "diagram", "--type", "B", "--rank", "14", "--partition", "5,4,4,1", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.stdout
