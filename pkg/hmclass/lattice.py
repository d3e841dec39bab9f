"""Arrangements, intersection lattices and characteristic polynomials."""

import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ, Poly, Rational
from sympy.polys.matrices import DomainMatrix

from .algebra import RationalLike, to_rational
from .config import Settings
from .errors import DimensionError, HMClassError, LatticeTooLarge, NotReduced, ParseError

LOGGER = logging.getLogger(__name__)

X = sympy.Symbol("x")

CLASS_DIMENSIONS = (2, 3)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

Form = Tuple[Rational, ...]


def require_dimension(n: int, operation: str, allowed: Sequence[int] = CLASS_DIMENSIONS) -> None:
    """Raise DimensionError unless ``n`` is one of ``allowed``."""
    if n not in allowed:
        raise DimensionError(
            f"{operation} needs an arrangement in P^n with n in {tuple(allowed)}, got n={n}"
        )


def _canonical_form(coeffs: Sequence[RationalLike]) -> Form:
    values = [to_rational(c) for c in coeffs]
    lead = next((c for c in values if c != 0), None)
    if lead is None:
        raise HMClassError("Hyperplane form must be nonzero")
    return tuple(c / lead for c in values)


@dataclass(frozen=True)
class Arrangement:
    """
    A reduced hyperplane arrangement in P^n over the rationals.

    ``forms[i]`` holds the coefficients ``(a0, ..., an)`` of ``H_{i+1} = {a0 x0 + ... + an xn = 0}``,
    scaled so that the first nonzero coefficient is 1.
    """

    n: int
    forms: Tuple[Form, ...]

    @property
    def m(self) -> int:
        return len(self.forms)

    @classmethod
    def from_forms(cls, n: int, forms: Iterable[Sequence[RationalLike]]) -> "Arrangement":
        """
        Validate and canonicalize an arrangement.

        Args:
            n: Ambient projective dimension
            forms: Coefficient vectors of length ``n + 1``

        Returns:
            Arrangement: Canonically scaled arrangement

        Raises:
            DimensionError: If ``n < 1`` or a form has the wrong length
            HMClassError: If a form is zero or there are no forms
            NotReduced: If two forms are proportional
        """
        if n < 1:
            raise DimensionError(f"Ambient dimension must be at least 1, got {n}")
        canonical: List[Form] = []
        seen: Dict[Form, int] = {}
        for index, coeffs in enumerate(forms):
            if len(coeffs) != n + 1:
                raise DimensionError(
                    f"Hyperplane {index + 1} has {len(coeffs)} coefficients, expected {n + 1}"
                )
            form = _canonical_form(coeffs)
            if form in seen:
                raise NotReduced(
                    f"Hyperplanes {seen[form] + 1} and {index + 1} are proportional"
                )
            seen[form] = index
            canonical.append(form)
        if not canonical:
            raise HMClassError("An arrangement needs at least one hyperplane")
        return cls(n, tuple(canonical))


def _parse_rational(token: str, line_no: int) -> Rational:
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"Malformed rational {token!r}", line_no)
    numerator, _, denominator = token.partition("/")
    if denominator and int(denominator) == 0:
        raise ParseError(f"Zero denominator in {token!r}", line_no)
    return sympy.Rational(int(numerator), int(denominator) if denominator else 1)


def parse_arrangement(text: str) -> Arrangement:
    """
    Parse the ``.arr`` text format.

    Lines starting with ``#`` and blank lines are ignored. The first remaining line is
    ``dim <n>``, each following one ``hyperplane a0 a1 ... an``.

    Args:
        text: File contents

    Returns:
        Arrangement: Validated arrangement

    Raises:
        ParseError: On malformed lines, rationals or a missing header
        NotReduced: If two rows are proportional
    """
    n: Optional[int] = None
    forms: List[Form] = []
    lines: Dict[Form, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *tokens = line.split()
        if n is None:
            if keyword != "dim" or len(tokens) != 1 or not tokens[0].isdigit():
                raise ParseError(f"Expected 'dim <n>', got {line!r}", line_no)
            n = int(tokens[0])
            if n < 1:
                raise ParseError(f"Ambient dimension must be at least 1, got {n}", line_no)
            continue
        if keyword != "hyperplane":
            raise ParseError(f"Expected 'hyperplane a0 ... a{n}', got {line!r}", line_no)
        if len(tokens) != n + 1:
            raise ParseError(
                f"Hyperplane needs {n + 1} coefficients, got {len(tokens)}", line_no
            )
        coeffs = [_parse_rational(token, line_no) for token in tokens]
        if all(c == 0 for c in coeffs):
            raise ParseError("Hyperplane form must be nonzero", line_no)
        form = _canonical_form(coeffs)
        if form in lines:
            raise NotReduced(
                f"line {line_no}: hyperplane is proportional to the one on line {lines[form]}"
            )
        lines[form] = line_no
        forms.append(form)
    if n is None:
        raise ParseError("Missing 'dim <n>' header")
    if not forms:
        raise ParseError("Arrangement has no hyperplanes")
    return Arrangement(n, tuple(forms))


def format_arrangement(arr: Arrangement, comment: Optional[str] = None) -> str:
    """Inverse of :func:`parse_arrangement`."""
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(f"dim {arr.n}")
    for form in arr.forms:
        lines.append("hyperplane " + " ".join(str(c) for c in form))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Lattice
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Flat:
    """
    One intersection of hyperplanes of the cone arrangement.

    ``dim`` is the projective dimension ``n - rank``; the cone vertex of an essential
    arrangement has ``dim == -1``. ``hyperplanes`` holds 0-based indices into
    ``Arrangement.forms``.
    """

    id: str
    dim: int
    rank: int
    span_basis: Tuple[Form, ...]
    hyperplanes: FrozenSet[int]
    mobius: int

    @property
    def multiplicity(self) -> int:
        return len(self.hyperplanes)

    @property
    def affine_dim(self) -> int:
        return self.dim + 1

    def contains(self, other: "Flat") -> bool:
        """True if ``other`` is a subspace of this flat."""
        return self.hyperplanes <= other.hyperplanes


@dataclass(frozen=True)
class Lattice:
    """Intersection lattice of the affine cone of an arrangement."""

    arrangement: Arrangement
    flats: Tuple[Flat, ...]
    charpoly: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def m(self) -> int:
        return self.arrangement.m

    @property
    def ambient(self) -> Flat:
        return self.flats[0]

    @property
    def bottom(self) -> Flat:
        """The intersection of all hyperplanes."""
        return max(self.flats, key=lambda f: f.rank)

    @property
    def essential(self) -> bool:
        return self.bottom.rank == self.n + 1

    @property
    def mu_one(self) -> int:
        """``chi(0)``; zero exactly when the arrangement is not essential."""
        return self.charpoly[0]

    def flat(self, flat_id: str) -> Flat:
        for f in self.flats:
            if f.id == flat_id:
                return f
        raise KeyError(flat_id)

    def flats_of_dim(self, dim: int) -> Tuple[Flat, ...]:
        return tuple(f for f in self.flats if f.dim == dim)

    def charpoly_poly(self) -> Poly:
        """Characteristic polynomial of the cone as a Poly in ``x``."""
        return Poly.from_list(list(reversed(self.charpoly)), X, domain=QQ)

    def charpoly_at(self, value: RationalLike) -> Rational:
        x = to_rational(value)
        return sum((c * x**k for k, c in enumerate(self.charpoly)), sympy.Integer(0))


def _to_domain_matrix(rows: Sequence[Form], width: int) -> DomainMatrix:
    return DomainMatrix(
        [[QQ.from_sympy(c) for c in row] for row in rows], (len(rows), width), QQ
    )


def _rref(rows: Sequence[Form], width: int) -> Tuple[Tuple[Form, ...], int]:
    if not rows:
        return (), 0
    reduced, pivots = _to_domain_matrix(rows, width).rref()
    basis = tuple(
        tuple(QQ.to_sympy(c) for c in row) for row in reduced.to_list()[: len(pivots)]
    )
    return basis, len(pivots)


def _in_span(basis: Tuple[Form, ...], rank: int, form: Form) -> bool:
    width = len(form)
    return _to_domain_matrix(basis + (form,), width).rank() == rank


def _flat_sort_key(rank: int, indices: FrozenSet[int]) -> Tuple:
    return (rank, len(indices), tuple(sorted(indices)))


def _flat_id(n: int, rank: int, indices: FrozenSet[int], counters: Dict[str, int]) -> str:
    dim = n - rank
    if rank == 0:
        return "V"
    if rank == 1:
        (index,) = indices
        return f"H{index + 1}"
    if dim == -1:
        return "O"
    kind = {1: "S", 0: "P"}.get(dim, "F")
    counters[kind] = counters.get(kind, 0) + 1
    return f"{kind}{counters[kind]}"


def build_lattice(arr: Arrangement, max_flats: Optional[int] = None) -> Lattice:
    """
    Enumerate all flats, their Möbius values and the characteristic polynomial.

    Flats are found by breadth-first closure from the ambient space, intersecting with one
    hyperplane at a time and deduplicating on the reduced row-echelon basis of the span
    of the defining forms.

    Args:
        arr: Arrangement
        max_flats: Cap on the number of flats (defaults to ``Settings.from_env().max_flats``)

    Returns:
        Lattice: Flats sorted by (rank, multiplicity, hyperplane indices)

    Raises:
        LatticeTooLarge: If enumeration exceeds ``max_flats``
    """
    if max_flats is None:
        max_flats = Settings.from_env().max_flats
    width = arr.n + 1
    LOGGER.info("Building lattice of %d hyperplanes in P^%d", arr.m, arr.n)

    found: Dict[Tuple[Form, ...], Tuple[int, FrozenSet[int]]] = {(): (0, frozenset())}
    queue = deque([((), 0, frozenset())])
    while queue:
        basis, rank, indices = queue.popleft()
        for j, form in enumerate(arr.forms):
            if j in indices:
                continue
            new_basis, new_rank = _rref(basis + (form,), width)
            if new_basis in found:
                continue
            new_indices = frozenset(
                i
                for i, other in enumerate(arr.forms)
                if i in indices or i == j or _in_span(new_basis, new_rank, other)
            )
            found[new_basis] = (new_rank, new_indices)
            if len(found) > max_flats:
                raise LatticeTooLarge(
                    f"Lattice has more than {max_flats} flats; raise HMCLASS_MAX_FLATS"
                )
            queue.append((new_basis, new_rank, new_indices))

    ordered = sorted(found.items(), key=lambda item: _flat_sort_key(*item[1]))

    mobius: Dict[FrozenSet[int], int] = {}
    for _, (rank, indices) in ordered:
        if rank == 0:
            mobius[indices] = 1
            continue
        mobius[indices] = -sum(mu for other, mu in mobius.items() if other < indices)

    counters: Dict[str, int] = {}
    flats = []
    charpoly = [0] * (arr.n + 2)
    for basis, (rank, indices) in ordered:
        flat = Flat(
            id=_flat_id(arr.n, rank, indices, counters),
            dim=arr.n - rank,
            rank=rank,
            span_basis=basis,
            hyperplanes=indices,
            mobius=mobius[indices],
        )
        charpoly[flat.affine_dim] += flat.mobius
        flats.append(flat)

    lattice = Lattice(arr, tuple(flats), tuple(charpoly))
    LOGGER.info(
        "Lattice has %d flats, essential=%s, mu(1)=%d",
        len(flats),
        lattice.essential,
        lattice.mu_one,
    )
    return lattice


# --------------------------------------------------------------------------
# Strata
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StrataTables:
    """Singular strata of an arrangement in P^2 or P^3 and their incidences."""

    n: int
    m: int
    edges: Tuple[Flat, ...]
    points: Tuple[Flat, ...]
    incidence: Dict[str, Tuple[str, ...]]

    def edges_through(self, point: Flat) -> Tuple[Flat, ...]:
        ids = self.incidence.get(point.id, ())
        return tuple(e for e in self.edges if e.id in ids)

    def points_on(self, edge: Flat) -> Tuple[Flat, ...]:
        return tuple(p for p in self.points if edge.id in self.incidence.get(p.id, ()))

    @staticmethod
    def relative_multiplicity(point: Flat, edge: Flat) -> int:
        """``m_P - m_S``."""
        return point.multiplicity - edge.multiplicity

    def infinity_multiplicity(self, edge: Flat) -> int:
        """``-(m - m_S)``."""
        return -(self.m - edge.multiplicity)


def strata_tables(lat: Lattice, n: Optional[int] = None) -> StrataTables:
    """
    Collect the edges (dim-1 flats of rank >= 2) and points (dim-0 flats of rank >= 2).

    For n = 2 the edge list is empty. ``incidence`` maps each point id to the ids of the
    edges containing it.
    """
    if n is not None and n != lat.n:
        raise DimensionError(f"Lattice lives in P^{lat.n}, not P^{n}")
    edges = tuple(f for f in lat.flats if f.dim == 1 and f.rank >= 2)
    points = tuple(f for f in lat.flats if f.dim == 0 and f.rank >= 2)
    incidence = {p.id: tuple(e.id for e in edges if e.contains(p)) for p in points}
    return StrataTables(lat.n, lat.m, edges, points, incidence)


def local_arrangement(arr: Arrangement, flat: Flat) -> Arrangement:
    """The sub-arrangement of hyperplanes containing ``flat``."""
    return Arrangement(arr.n, tuple(arr.forms[i] for i in sorted(flat.hyperplanes)))
