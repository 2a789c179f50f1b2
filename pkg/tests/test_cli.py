"""Tests for the command line, run in-process through main.main."""

import json

import pytest

import main
from src.config import PROJECT_ROOT, settings
from tests.conftest import GOLDEN_DIR, SCHOOL_PATH

FIXTURES = PROJECT_ROOT / "tests" / "fixtures"


def run(capsys, *argv):
    code = main.main([*argv])
    out, err = capsys.readouterr()
    return code, out, err


def assert_same_document(actual, expected, where="$"):
    """Equal structure and text; floats equal to 1e-9 relative."""
    if isinstance(expected, dict):
        assert isinstance(actual, dict), where
        assert list(actual) == list(expected), where
        for key, value in expected.items():
            assert_same_document(actual[key], value, f"{where}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), where
        for i, (a, e) in enumerate(zip(actual, expected)):
            assert_same_document(a, e, f"{where}[{i}]")
    elif isinstance(expected, float):
        assert actual == pytest.approx(expected, rel=1e-9, abs=1e-12), where
    else:
        assert type(actual) is type(expected) and actual == expected, where


class TestSolve:
    """The solve command on the school-selection problem."""

    def test_text_matches_golden(self, capsys):
        code, out, _ = run(capsys, "solve", str(SCHOOL_PATH), "--method", "all")
        assert code == 0
        assert out == (GOLDEN_DIR / "school_all.txt").read_text(encoding="utf-8")

    def test_json_matches_golden(self, capsys):
        code, out, _ = run(capsys, "solve", str(SCHOOL_PATH), "--method", "all", "--format", "json")
        assert code == 0
        expected = json.loads((GOLDEN_DIR / "school_all.json").read_text(encoding="utf-8"))
        assert_same_document(json.loads(out), expected)

    def test_csv_matches_golden(self, capsys):
        code, out, _ = run(capsys, "solve", str(SCHOOL_PATH), "--format", "csv")
        assert code == 0
        assert out == (GOLDEN_DIR / "school_all.csv").read_text(encoding="utf-8")

    def test_lca_section(self, capsys):
        _, out, _ = run(capsys, "solve", str(SCHOOL_PATH), "--method", "lca")
        assert "  ranking: A ≻ B ≻ C\n" in out
        assert "  ranking: A ≡ C ≻ B\n" in out
        assert "Comparison" in out

    def test_ahp_json(self, capsys):
        code, out, _ = run(capsys, "solve", str(SCHOOL_PATH), "--method", "ahp", "--format", "json")
        assert code == 0
        data = json.loads(out)
        (ahp,) = data["methods"]
        assert [round(x, 4) for x in ahp["ratings"]["max_normalized"]] == [0.9705, 1.0, 0.6715]
        assert ahp["ranking"] == [["B"], ["A"], ["C"]]
        assert "comparison" not in data

    def test_precision_and_tie_tolerance(self, capsys):
        _, out, _ = run(
            capsys, "solve", str(SCHOOL_PATH), "--method", "wgm", "--precision", "2", "--tie-tol", "0.15"
        )
        assert "  ranking: A ≡ B ≻ C\n" in out
        assert "0.90" in out and "0.9007" not in out

    def test_count_worst(self, capsys):
        _, out, _ = run(capsys, "solve", str(SCHOOL_PATH), "--count-worst")
        assert "plurality (lca-best, lca-worst, ahp, wgm): A (3 of 4)" in out

    def test_bundled_problem_name(self, capsys):
        code, out, _ = run(capsys, "solve", "school.json", "--method", "wgm")
        assert code == 0
        assert "Weighted geometric means" in out

    def test_output_is_deterministic(self, capsys):
        _, first, _ = run(capsys, "solve", str(SCHOOL_PATH), "--format", "json")
        _, second, _ = run(capsys, "solve", str(SCHOOL_PATH), "--format", "json")
        assert first == second


class TestValidate:
    """The validate command."""

    def test_valid_problem(self, capsys):
        code, out, _ = run(capsys, "validate", str(SCHOOL_PATH))
        assert code == 0
        assert out.startswith("OK: 6 criteria x 3 alternatives")
        assert "spectral radius 2.5900  inconsistent" in out
        assert "friends" in out

    def test_reciprocity_violation(self, capsys):
        code, _, err = run(capsys, "validate", str(FIXTURES / "not_reciprocal.json"))
        assert code == 1
        assert "(1,2)" in err

    @pytest.mark.parametrize(
        "name, expected",
        [
            ("syntax_error.json", 2),
            ("bad_fraction.json", 2),
            ("not_reciprocal.json", 1),
            ("zero_entry.json", 1),
            ("dimension_mismatch.json", 1),
            ("not_utf8.json", 2),
        ],
    )
    def test_exit_codes(self, capsys, name, expected):
        code, out, err = run(capsys, "solve", str(FIXTURES / name))
        assert code == expected
        assert out == ""
        assert err.startswith("error: ")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", str(FIXTURES / "nope.json"))
        assert code == 2
        assert "nope.json" in err

    def test_directory_instead_of_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "validate", str(tmp_path))
        assert code == 2
        assert out == ""
        assert err.startswith("error: ")

    def test_not_utf8_names_file(self, capsys):
        code, _, err = run(capsys, "single", str(FIXTURES / "not_utf8.json"))
        assert code == 2
        assert "not_utf8.json" in err and "UTF-8" in err


class TestErrors:
    """Usage and numerical failures."""

    def test_precision_out_of_range(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main.main(["solve", str(SCHOOL_PATH), "--precision", "20"])
        assert exc.value.code == 2

    def test_negative_tie_tolerance(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main.main(["solve", str(SCHOOL_PATH), "--tie-tol", "-1"])
        assert exc.value.code == 2

    def test_missing_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main.main([])
        assert exc.value.code == 2

    def test_non_convergence(self, capsys, monkeypatch):
        monkeypatch.setattr(settings, "eigen_max_iter", 1)
        code, _, err = run(capsys, "solve", str(SCHOOL_PATH), "--method", "ahp")
        assert code == 3
        assert "did not converge" in err


class TestSingle:
    """The single command on one comparison matrix."""

    def test_lca(self, capsys):
        code, out, _ = run(capsys, "single", str(PROJECT_ROOT / "problems" / "learning.yaml"))
        assert code == 0
        assert out.startswith("lcarank 0.1.0\nMatrix: 3 x 3\n")
        assert "(lca-best)" in out and "(lca-worst)" in out

    @pytest.mark.parametrize("method", ["eig", "gmean"])
    def test_classical_csv(self, capsys, method):
        code, out, _ = run(
            capsys, "single", str(PROJECT_ROOT / "problems" / "learning.yaml"), "--method", method, "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "method,alternative,rating_max_norm,rank"
        assert lines[1:] and all(line.startswith(f"{method},") for line in lines[1:])
        assert f"{method},B,1.0000,1" in lines
