"""Report models, class rendering and the cross-check between the two engines."""

import json
import logging
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel
from sympy import Poly

from .algebra import ascending_coeffs, format_poly, poly_y, rational_pair
from .ktheory import GradedProjClass, hm_p3_closed, hm_pushforward
from .lattice import Lattice, strata_tables
from .spectrum import SigmaClass, hm_sigma, stratum_specs

LOGGER = logging.getLogger(__name__)

ALGORITHMS = ("ktheory", "spectrum", "both")

ClassJson = Dict[str, List[List[int]]]


class FlatRow(BaseModel):
    """One row of the flat table."""

    id: str
    dim: int
    rank: int
    multiplicity: int
    hyperplanes: List[str]
    mobius: int


class InputSummary(BaseModel):
    """What was read and how big its lattice is."""

    path: Optional[str] = None
    n: int
    m: int
    flats: int
    edges: int
    points: int
    essential: bool


class LatticeReport(BaseModel):
    """Flat table and characteristic polynomial of the cone."""

    charpoly: List[int]
    charpoly_text: str
    mu_one: int
    flats: List[FlatRow]


class KTheoryReport(BaseModel):
    pushforward: ClassJson
    text: str
    closed_form: Optional[ClassJson] = None
    closed_form_matches: Optional[bool] = None


class StratumRow(BaseModel):
    flat_id: str
    kind: str
    local_multiplicity: int
    spectrum: List[List]


class SpectrumReport(BaseModel):
    sigma: ClassJson
    text: str
    pushforward: ClassJson
    pushforward_text: str
    strata: List[StratumRow]


class CrosscheckReport(BaseModel):
    status: Literal["match", "mismatch", "skipped"]
    diff: Optional[ClassJson] = None
    diff_text: Optional[str] = None


class Report(BaseModel):
    """Everything ``hmclass compute`` and ``hmclass check`` print."""

    input: InputSummary
    lattice: LatticeReport
    ktheory: Optional[KTheoryReport] = None
    spectrum: Optional[SpectrumReport] = None
    crosscheck: CrosscheckReport


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def _basis_label(d: int) -> str:
    return "pt" if d == 0 else f"P^{d}"


def poly_json(p: Poly) -> List[List[int]]:
    """Ascending coefficients of ``p`` as ``[num, den]`` pairs."""
    return [rational_pair(c) for c in ascending_coeffs(p)]


def _term(coeff: Poly, basis: str) -> str:
    if coeff == poly_y(1):
        return f"[{basis}]"
    text = format_poly(coeff)
    if sum(1 for c in ascending_coeffs(coeff) if c != 0) > 1:
        text = f"({text})"
    return f"{text}[{basis}]"


def _join(terms: List[str]) -> str:
    return " + ".join(terms) if terms else "0"


def graded_json(cls: GradedProjClass) -> ClassJson:
    return {_basis_label(d): poly_json(c) for d, c in cls.components()}


def format_graded(cls: GradedProjClass) -> str:
    """Render e.g. ``(6y-1)[P^1] + (-2y^2-21y+1)[pt]``; the zero class is ``0``."""
    return _join([_term(c, _basis_label(d)) for d, c in cls.components()])


def sigma_json(s: SigmaClass) -> ClassJson:
    values = {flat_id: poly_json(c) for flat_id, c in s.top if not c.is_zero}
    values.update({_basis_label(d): poly_json(c) for d, c in s.lower if not c.is_zero})
    return values


def format_sigma(s: SigmaClass) -> str:
    """Render e.g. ``y[S1] + (3y-1)[S4] + (-2y^2-21y+1)[pt]``."""
    terms = [_term(c, flat_id) for flat_id, c in s.top if not c.is_zero]
    terms.extend(
        _term(c, _basis_label(d)) for d, c in sorted(s.lower, reverse=True) if not c.is_zero
    )
    return _join(terms)


def pushforward_sigma(s: SigmaClass, n: Optional[int] = None) -> GradedProjClass:
    """
    Push a class on the singular locus forward to P^n.

    Every top stratum is a linear subspace of dimension ``n - 2``, so its generator maps
    to ``[P^{n-2}]``; the lower generators map to ``[P^d]``.
    """
    n = s.n if n is None else n
    top = sum((c for _, c in s.top), poly_y(0))
    result = GradedProjClass.from_mapping(n, {n - 2: top})
    return result + GradedProjClass.from_mapping(n, dict(s.lower))


def report_json(model: BaseModel) -> str:
    """Canonical JSON: sorted keys, two-space indent."""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2)


# --------------------------------------------------------------------------
# Building reports
# --------------------------------------------------------------------------


def lattice_report(lat: Lattice) -> LatticeReport:
    rows = [
        FlatRow(
            id=f.id,
            dim=f.dim,
            rank=f.rank,
            multiplicity=f.multiplicity,
            hyperplanes=[f"H{i + 1}" for i in sorted(f.hyperplanes)],
            mobius=f.mobius,
        )
        for f in lat.flats
    ]
    return LatticeReport(
        charpoly=list(lat.charpoly),
        charpoly_text=format_poly(lat.charpoly_poly(), var="x"),
        mu_one=lat.mu_one,
        flats=rows,
    )


def input_summary(lat: Lattice, path: Optional[str] = None) -> InputSummary:
    tables = strata_tables(lat)
    return InputSummary(
        path=path,
        n=lat.n,
        m=lat.m,
        flats=len(lat.flats),
        edges=len(tables.edges),
        points=len(tables.points),
        essential=lat.essential,
    )


def crosscheck(ktheory: GradedProjClass, spectrum: GradedProjClass) -> CrosscheckReport:
    """Compare the two pushforwards; a mismatch carries ``spectrum - ktheory``."""
    diff = spectrum - ktheory
    if diff.is_zero:
        return CrosscheckReport(status="match")
    LOGGER.warning("Engines disagree: spectrum - ktheory = %s", format_graded(diff))
    return CrosscheckReport(
        status="mismatch", diff=graded_json(diff), diff_text=format_graded(diff)
    )


def build_report(lat: Lattice, algorithm: str = "both", path: Optional[str] = None) -> Report:
    """
    Run the requested engines on a lattice.

    Args:
        lat: Lattice of an arrangement in P^2 or P^3
        algorithm: ``ktheory``, ``spectrum`` or ``both``
        path: Source file, recorded in the report

    Returns:
        Report: The crosscheck is ``skipped`` unless both engines ran

    Raises:
        ValueError: On an unknown algorithm
        DimensionError: If the arrangement is not in P^2 or P^3
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"Unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")

    ktheory_cls = None
    ktheory_report = None
    if algorithm in ("ktheory", "both"):
        ktheory_cls = hm_pushforward(lat)
        closed = hm_p3_closed(lat) if lat.n == 3 else None
        ktheory_report = KTheoryReport(
            pushforward=graded_json(ktheory_cls),
            text=format_graded(ktheory_cls),
            closed_form=None if closed is None else graded_json(closed),
            closed_form_matches=None if closed is None else (closed - ktheory_cls).is_zero,
        )

    spectrum_cls = None
    spectrum_report = None
    if algorithm in ("spectrum", "both"):
        sigma = hm_sigma(lat)
        spectrum_cls = pushforward_sigma(sigma)
        spectrum_report = SpectrumReport(
            sigma=sigma_json(sigma),
            text=format_sigma(sigma),
            pushforward=graded_json(spectrum_cls),
            pushforward_text=format_graded(spectrum_cls),
            strata=[
                StratumRow(
                    flat_id=spec.flat_id,
                    kind=spec.kind,
                    local_multiplicity=spec.local_multiplicity,
                    spectrum=spec.spectrum.to_pairs(),
                )
                for spec in stratum_specs(lat)
            ],
        )

    if ktheory_cls is not None and spectrum_cls is not None:
        check = crosscheck(ktheory_cls, spectrum_cls)
    else:
        check = CrosscheckReport(status="skipped")

    return Report(
        input=input_summary(lat, path),
        lattice=lattice_report(lat),
        ktheory=ktheory_report,
        spectrum=spectrum_report,
        crosscheck=check,
    )


def render_lattice_text(lat: Lattice) -> str:
    """Flat table followed by the characteristic polynomial, mu(1) and essentiality."""
    table = lattice_report(lat)
    header = f"{'id':<4} {'dim':>3} {'mult':>4} {'mobius':>6}  hyperplanes"
    lines = [header]
    for row in table.flats:
        lines.append(
            f"{row.id:<4} {row.dim:>3} {row.multiplicity:>4} {row.mobius:>6}  "
            + ",".join(row.hyperplanes)
        )
    lines.append(f"chi(x) = {table.charpoly_text}")
    lines.append(f"mu(1) = {table.mu_one}")
    lines.append(f"essential = {str(lat.essential).lower()}")
    return "\n".join(lines)


def render_text(report: Report) -> str:
    """Human-readable summary of a report."""
    summary = report.input
    lines = []
    if summary.path:
        lines.append(f"file: {summary.path}")
    lines.append(
        f"P^{summary.n}, m={summary.m}, flats={summary.flats}, edges={summary.edges}, "
        f"points={summary.points}, essential={str(summary.essential).lower()}"
    )
    lines.append(f"chi(x) = {report.lattice.charpoly_text}")
    if report.ktheory is not None:
        lines.append(f"ktheory: {report.ktheory.text}")
        if report.ktheory.closed_form_matches is not None:
            status = "match" if report.ktheory.closed_form_matches else "mismatch"
            lines.append(f"ktheory closed form: {status}")
    if report.spectrum is not None:
        lines.append(f"spectrum: {report.spectrum.text}")
        lines.append(f"spectrum pushforward: {report.spectrum.pushforward_text}")
    lines.append(f"crosscheck: {report.crosscheck.status}")
    if report.crosscheck.diff_text:
        lines.append(f"difference (spectrum - ktheory): {report.crosscheck.diff_text}")
    return "\n".join(lines)
