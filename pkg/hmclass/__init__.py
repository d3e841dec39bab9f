"""hmclass - Hirzebruch-Milnor classes of hyperplane arrangements in P^2 and P^3."""

from .ktheory import GradedProjClass, hm_p3_closed, hm_pushforward, hirzebruch_pn
from .lattice import Arrangement, Lattice, build_lattice, parse_arrangement, strata_tables
from .main import run
from .report import build_report, pushforward_sigma
from .spectrum import SigmaClass, hm_p2, hm_p3

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "GradedProjClass",
    "Lattice",
    "SigmaClass",
    "build_lattice",
    "build_report",
    "hirzebruch_pn",
    "hm_p2",
    "hm_p3",
    "hm_p3_closed",
    "hm_pushforward",
    "parse_arrangement",
    "pushforward_sigma",
    "run",
    "strata_tables",
]
