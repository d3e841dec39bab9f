"""Test fixtures for hmclass tests."""

import logging

import pytest

from hmclass.corpus import xyz_xy_arrangement
from hmclass.lattice import build_lattice, parse_arrangement

XYZ_XY_TEXT = """\
# xyz(x+y) = 0
dim 3
hyperplane 1 0 0 0
hyperplane 0 1 0 0
hyperplane 0 0 1 0
hyperplane 1 1 0 0
"""

TRIANGLE_TEXT = """\
dim 2
hyperplane 1 0 0
hyperplane 0 1 0
hyperplane 0 0 1
"""


@pytest.fixture
def xyz_xy_lattice():
    """Lattice of the planes x, y, z, x+y in P^3."""
    return build_lattice(xyz_xy_arrangement())


@pytest.fixture
def triangle_lattice():
    """Lattice of the coordinate triangle in P^2."""
    return build_lattice(parse_arrangement(TRIANGLE_TEXT))


@pytest.fixture
def xyz_xy_file(tmp_path):
    """Write the xyz(x+y) arrangement to a temporary .arr file."""
    arr_file = tmp_path / "xyz_xy.arr"
    arr_file.write_text(XYZ_XY_TEXT)
    return arr_file


@pytest.fixture
def p4_file(tmp_path):
    """Coordinate hyperplanes of P^4, outside the range of the class engines."""
    rows = ["dim 4"]
    for i in range(5):
        coeffs = ["0"] * 5
        coeffs[i] = "1"
        rows.append("hyperplane " + " ".join(coeffs))
    arr_file = tmp_path / "p4.arr"
    arr_file.write_text("\n".join(rows) + "\n")
    return arr_file


@pytest.fixture
def temp_corpus_dir(tmp_path):
    """A directory holding two arrangements and a file that is not one."""
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "xyz_xy.arr").write_text(XYZ_XY_TEXT)
    (corpus / "triangle.arr").write_text(TRIANGLE_TEXT)
    (corpus / "notes.txt").write_text("not an arrangement\n")
    return corpus


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop stream handlers installed by run() so later tests do not write to a closed capture."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
    root.setLevel(logging.WARNING)
