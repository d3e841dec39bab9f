"""Tests for the hmclass command line."""

import json
from pathlib import Path

import pytest

import hmclass
from hmclass.main import (
    EXIT_ERROR,
    EXIT_MISMATCH,
    EXIT_OK,
    _get_arrangement_path,
    _get_items_to_process,
    build_parser,
    load_arrangement,
    run,
)
from hmclass.corpus import p3_corpus, write_corpus
from hmclass.report import CrosscheckReport

XYZ_XY_CLASS = "(6y-1)[P^1] + (-2y^2-21y+1)[pt]"


class TestGetArrangementPath:
    """Test the _get_arrangement_path function."""

    def test_with_valid_file(self, xyz_xy_file):
        """Test with a valid file path."""
        result = _get_arrangement_path(str(xyz_xy_file))
        assert result == xyz_xy_file.resolve()
        assert result.is_file()

    def test_with_invalid_path(self):
        """Test with a path that does not exist."""
        with pytest.raises(ValueError, match="Arrangement path does not exist"):
            _get_arrangement_path("/nonexistent/path.arr")

    def test_with_directory(self, temp_corpus_dir):
        """Test with a directory where a file is expected."""
        with pytest.raises(ValueError, match="Arrangement path must be a file"):
            _get_arrangement_path(str(temp_corpus_dir))

    def test_with_directory_allowed(self, temp_corpus_dir):
        """Test with a directory when directories are accepted."""
        result = _get_arrangement_path(str(temp_corpus_dir), allow_dir=True)
        assert result.is_dir()

    def test_with_corpus_keyword(self):
        """Test with the hmclass_corpus keyword."""
        result = _get_arrangement_path("hmclass_corpus", allow_dir=True)
        assert result.is_dir()
        assert result.name == "datasample"
        assert result.resolve().parent == Path(hmclass.__file__).resolve().parent

    def test_with_corpus_file(self):
        """Test with a file inside the shipped corpus."""
        result = _get_arrangement_path("hmclass_corpus/xyz_xy.arr")
        assert result.is_file()
        assert result.name == "xyz_xy.arr"


class TestGetItemsToProcess:
    """Test the _get_items_to_process function."""

    def test_get_all_items(self, temp_corpus_dir):
        """Test that only .arr files are collected, in sorted order."""
        items = _get_items_to_process(temp_corpus_dir)
        assert [item.name for item in items] == ["triangle.arr", "xyz_xy.arr"]

    def test_get_specific_items(self, temp_corpus_dir):
        """Test getting specific items."""
        items = _get_items_to_process(temp_corpus_dir, ["xyz_xy.arr"])
        assert [item.name for item in items] == ["xyz_xy.arr"]

    def test_get_partial_specific_items(self, temp_corpus_dir):
        """Test with partially existing specific items."""
        items = _get_items_to_process(temp_corpus_dir, ["xyz_xy.arr", "missing.arr"])
        assert len(items) == 1
        assert items[0].name == "xyz_xy.arr"

    def test_single_file(self, xyz_xy_file):
        """Test that a file is processed on its own."""
        assert _get_items_to_process(xyz_xy_file) == [xyz_xy_file]

    def test_shipped_corpus(self):
        """Test that the shipped corpus holds the worked example."""
        corpus = _get_arrangement_path("hmclass_corpus", allow_dir=True)
        names = [item.name for item in _get_items_to_process(corpus)]
        assert "xyz_xy.arr" in names
        assert len(names) >= 5


class TestLoadArrangement:
    """Test reading arrangement files."""

    def test_load(self, xyz_xy_file):
        """Test loading a valid file."""
        arr = load_arrangement(xyz_xy_file)
        assert (arr.n, arr.m) == (3, 4)

    def test_unreadable(self, tmp_path):
        """Test with a path that cannot be read as text."""
        bad = tmp_path / "bad.arr"
        bad.write_bytes(b"\xff\xfe\x00")
        with pytest.raises(ValueError, match="Cannot read"):
            load_arrangement(bad)


class TestParser:
    """Test the argument parser."""

    def test_defaults(self):
        """Test default options of compute."""
        args = build_parser().parse_args(["compute", "x.arr"])
        assert args.algorithm == "both"
        assert args.format == "text"
        assert args.log_level == "WARNING"

    def test_usage_error_exits_with_one(self):
        """Test that usage errors exit with 1, not argparse's 2."""
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args(["compute", "x.arr", "--algorithm", "fast"])
        assert exc_info.value.code == EXIT_ERROR


class TestCompute:
    """Test the compute command."""

    def test_text(self, xyz_xy_file, capsys):
        """Test text output from both engines."""
        assert run(["compute", str(xyz_xy_file), "--algorithm", "both"]) == EXIT_OK
        out = capsys.readouterr().out
        assert f"ktheory: {XYZ_XY_CLASS}" in out
        assert f"spectrum pushforward: {XYZ_XY_CLASS}" in out
        assert "y[S1] + y[S2] + y[S3] + (3y-1)[S4]" in out
        assert "crosscheck: match" in out

    def test_json(self, xyz_xy_file, capsys):
        """Test JSON output."""
        assert run(["compute", str(xyz_xy_file), "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["crosscheck"]["status"] == "match"
        assert data["ktheory"]["pushforward"]["P^1"] == [[-1, 1], [6, 1]]
        assert data["input"]["path"] == str(xyz_xy_file.resolve())

    def test_corpus_keyword(self, capsys):
        """Test computing a file from the shipped corpus."""
        assert run(["compute", "hmclass_corpus/xyz_xy.arr", "--algorithm", "ktheory"]) == EXIT_OK
        out = capsys.readouterr().out
        assert f"ktheory: {XYZ_XY_CLASS}" in out
        assert "crosscheck: skipped" in out

    def test_unsupported_dimension(self, p4_file, capsys):
        """Test that P^4 input fails with a DimensionError."""
        assert run(["compute", str(p4_file), "--algorithm", "spectrum"]) == EXIT_ERROR
        assert "DimensionError" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        """Test with a file that does not exist."""
        assert run(["compute", "/nonexistent/path.arr"]) == EXIT_ERROR
        assert "Arrangement path does not exist" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        """Test that parse errors report the line number."""
        bad = tmp_path / "bad.arr"
        bad.write_text("dim 2\nhyperplane 1 0\n")
        assert run(["compute", str(bad)]) == EXIT_ERROR
        assert "ParseError: line 2" in capsys.readouterr().err

    def test_invalid_setting(self, xyz_xy_file, monkeypatch, capsys):
        """Test that an invalid environment setting is reported."""
        monkeypatch.setenv("HMCLASS_MAX_FLATS", "many")
        assert run(["compute", str(xyz_xy_file)]) == EXIT_ERROR
        assert "ConfigError" in capsys.readouterr().err

    def test_lattice_too_large(self, xyz_xy_file, monkeypatch, capsys):
        """Test that the flat cap is enforced."""
        monkeypatch.setenv("HMCLASS_MAX_FLATS", "4")
        assert run(["compute", str(xyz_xy_file)]) == EXIT_ERROR
        assert "LatticeTooLarge" in capsys.readouterr().err


class TestCheck:
    """Test the check command."""

    def test_directory(self, temp_corpus_dir, capsys):
        """Test checking every file in a directory."""
        assert run(["check", str(temp_corpus_dir)]) == EXIT_OK
        assert "2/2 arrangements match" in capsys.readouterr().out

    def test_shipped_corpus(self, capsys):
        """Test that both engines agree on the shipped corpus."""
        assert run(["check", "hmclass_corpus"]) == EXIT_OK
        assert "arrangements match" in capsys.readouterr().out

    def test_edge_through_two_points(self, capsys):
        """Test a shipped pencil line that meets two further planes in distinct points."""
        assert run(["check", "hmclass_corpus/pencil_p3_m3_zw.arr"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ktheory: (10y-1)[P^1] + (-49y+2)[pt]" in out
        assert "1/1 arrangements match" in out

    def test_generated_corpus(self, tmp_path, capsys):
        """Test checking the generated plane corpus after writing it to disk."""
        corpus = p3_corpus()
        write_corpus(tmp_path, corpus)
        assert run(["check", str(tmp_path)]) == EXIT_OK
        assert f"{len(corpus)}/{len(corpus)} arrangements match" in capsys.readouterr().out

    def test_json(self, temp_corpus_dir, capsys):
        """Test JSON output of check."""
        assert run(["check", str(temp_corpus_dir), "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["mismatches"] == []
        assert len(data["reports"]) == 2

    def test_empty_directory(self, tmp_path, capsys):
        """Test with a directory holding no arrangements."""
        assert run(["check", str(tmp_path)]) == EXIT_ERROR
        assert "No .arr files found" in capsys.readouterr().err

    def test_mismatch(self, xyz_xy_file, monkeypatch, capsys):
        """Test that a disagreement between the engines exits with 2."""
        monkeypatch.setattr(
            "hmclass.report.crosscheck",
            lambda ktheory, spectrum: CrosscheckReport(
                status="mismatch", diff_text="y[pt]"
            ),
        )
        assert run(["check", str(xyz_xy_file)]) == EXIT_MISMATCH
        out = capsys.readouterr().out
        assert "difference (spectrum - ktheory): y[pt]" in out
        assert "0/1 arrangements match" in out


class TestLattice:
    """Test the lattice command."""

    def test_text(self, xyz_xy_file, capsys):
        """Test the flat table."""
        assert run(["lattice", str(xyz_xy_file)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "chi(x) = x^4-4x^3+5x^2-2x" in out
        assert "mu(1) = 0" in out

    def test_json(self, xyz_xy_file, capsys):
        """Test JSON output of the lattice."""
        assert run(["lattice", str(xyz_xy_file), "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["charpoly"] == [0, -2, 5, -4, 1]
        mobius = {row["id"]: row["mobius"] for row in data["flats"]}
        assert mobius["S4"] == 2
        assert mobius["P1"] == -2


class TestRun:
    """Test run() argument handling."""

    def test_no_command(self, capsys):
        """Test that a missing subcommand is a usage error."""
        assert run([]) == EXIT_ERROR

    def test_help(self, capsys):
        """Test that --help exits cleanly."""
        assert run(["--help"]) == EXIT_OK
        assert "compute" in capsys.readouterr().out

    def test_log_level(self, xyz_xy_file, capsys):
        """Test that debug logging goes to stderr."""
        assert run(["--log-level", "DEBUG", "lattice", str(xyz_xy_file)]) == EXIT_OK
        assert "Building lattice" in capsys.readouterr().err
