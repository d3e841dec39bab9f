"""Command line front end for hmclass."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import BaseModel

from .config import Settings
from .errors import HMClassError
from .lattice import Arrangement, Lattice, build_lattice, parse_arrangement
from .report import (
    ALGORITHMS,
    Report,
    build_report,
    lattice_report,
    render_lattice_text,
    render_text,
    report_json,
)

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

CORPUS_KEYWORD = "hmclass_corpus"
ARRANGEMENT_SUFFIX = ".arr"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2


class CheckReport(BaseModel):
    """Reports of every file a ``check`` run looked at."""

    reports: List[Report]
    mismatches: List[str]


def _get_arrangement_path(path: str, allow_dir: bool = False) -> Path:
    """
    Resolve an arrangement path.

    Args:
        path: Path to a ``.arr`` file or directory, or the keyword "hmclass_corpus"
            (optionally followed by ``/<name>``) for the shipped corpus
        allow_dir: Accept a directory

    Returns:
        Path: Resolved path

    Raises:
        ValueError: If the path does not exist or is a directory when one is not allowed
    """
    if path == CORPUS_KEYWORD or path.startswith(CORPUS_KEYWORD + "/"):
        # The corpus ships inside the package
        base_path = Path(__file__).parent / "datasample"
        resolved_path = base_path / path[len(CORPUS_KEYWORD) + 1 :]
    else:
        resolved_path = Path(path).resolve()

    if not resolved_path.exists():
        raise ValueError(f"Arrangement path does not exist: {resolved_path}")

    if resolved_path.is_dir() and not allow_dir:
        raise ValueError(f"Arrangement path must be a file: {resolved_path}")

    return resolved_path


def _get_items_to_process(
    data_path: Path, specific_items: Optional[List[str]] = None
) -> List[Path]:
    """
    Get the list of arrangement files to process.

    Args:
        data_path: A ``.arr`` file or a directory of them
        specific_items: Optional list of file names inside ``data_path``

    Returns:
        List[Path]: Files in sorted order
    """
    if data_path.is_file():
        return [data_path]

    items = []
    if specific_items:
        for item in specific_items:
            item_path = data_path / item
            if item_path.is_file():
                items.append(item_path)
    else:
        for item in sorted(data_path.iterdir()):
            if item.is_file() and item.suffix == ARRANGEMENT_SUFFIX:
                items.append(item)

    return items


def load_arrangement(path: Path) -> Arrangement:
    """Read and parse one ``.arr`` file."""
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ValueError(f"Cannot read {path}: {e}") from e
    return parse_arrangement(text)


def load_lattice(path: Path, settings: Settings) -> Lattice:
    return build_lattice(load_arrangement(path), max_flats=settings.max_flats)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1 instead of argparse's 2, which means mismatch here."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="hmclass",
        description="Hirzebruch-Milnor classes of line and plane arrangements",
    )
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS, default="WARNING", help="Logging verbosity"
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    compute = commands.add_parser("compute", help="Compute the class of one arrangement")
    compute.add_argument("path", help=f".arr file or {CORPUS_KEYWORD}/<name>")
    compute.add_argument("--algorithm", choices=ALGORITHMS, default="both")
    compute.add_argument("--format", choices=("text", "json"), default="text")

    check = commands.add_parser("check", help="Run both engines and compare their pushforwards")
    check.add_argument("path", help=f".arr file, directory or {CORPUS_KEYWORD}")
    check.add_argument("--format", choices=("text", "json"), default="text")

    lattice = commands.add_parser("lattice", help="Print the intersection lattice")
    lattice.add_argument("path", help=f".arr file or {CORPUS_KEYWORD}/<name>")
    lattice.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr, force=True
    )


def _compute(args: argparse.Namespace, settings: Settings) -> int:
    path = _get_arrangement_path(args.path)
    report = build_report(load_lattice(path, settings), args.algorithm, str(path))
    print(report_json(report) if args.format == "json" else render_text(report))
    return EXIT_OK


def _check(args: argparse.Namespace, settings: Settings) -> int:
    data_path = _get_arrangement_path(args.path, allow_dir=True)
    items = _get_items_to_process(data_path)
    if not items:
        raise ValueError(f"No {ARRANGEMENT_SUFFIX} files found in {data_path}")

    reports = []
    mismatches = []
    for item in items:
        LOGGER.info("Checking %s", item)
        report = build_report(load_lattice(item, settings), "both", str(item))
        reports.append(report)
        if report.crosscheck.status != "match":
            mismatches.append(str(item))

    if args.format == "json":
        print(report_json(CheckReport(reports=reports, mismatches=mismatches)))
    else:
        print("\n\n".join(render_text(r) for r in reports))
        print(f"\n{len(items) - len(mismatches)}/{len(items)} arrangements match")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def _lattice(args: argparse.Namespace, settings: Settings) -> int:
    lat = load_lattice(_get_arrangement_path(args.path), settings)
    print(report_json(lattice_report(lat)) if args.format == "json" else render_lattice_text(lat))
    return EXIT_OK


COMMANDS = {"compute": _compute, "check": _check, "lattice": _lattice}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return the exit status.

    Args:
        argv: Arguments without the program name (defaults to ``sys.argv[1:]``)

    Returns:
        int: 0 on success, 2 if ``check`` found a mismatch, 1 on usage, input or engine errors

    Example:
        >>> run(["compute", "hmclass_corpus/xyz_xy.arr", "--algorithm", "both"])
        >>> run(["check", "hmclass_corpus"])
        >>> run(["lattice", "hmclass_corpus/xyz_xy.arr", "--format", "json"])
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_ERROR

    _configure_logging(args.log_level)
    try:
        settings = Settings.from_env()
        return COMMANDS[args.command](args, settings)
    except HMClassError as e:
        LOGGER.debug("Computation failed", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    """Console entry point."""
    sys.exit(run())
