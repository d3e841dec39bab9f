"""Hirzebruch-Milnor classes stratum by stratum from Hodge spectra.

Each singular stratum of a line or plane arrangement carries the spectrum of a
representative local equation; spectra of products come from Thom-Sebastiani and
the point spectra of plane arrangements from their edge multiplicities.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import sympy
from sympy import Poly, Rational

from .algebra import (
    RationalLike,
    Spectrum,
    Y,
    evaluate,
    format_rational,
    ordinary_power_spectrum,
    poly_y,
    spectrum_mul,
)
from .errors import DimensionError, EngineMismatch, ExponentOutOfRange
from .lattice import Flat, Lattice, StrataTables, strata_tables

LOGGER = logging.getLogger(__name__)

EDGE = "edge"
EDGE_AT_INFINITY = "edge-at-infinity"
POINT = "point"


@dataclass(frozen=True)
class SigmaClass:
    """
    A class in the homology of the singular locus.

    ``top`` holds one coefficient per top-dimensional stratum (points for n = 2, edges
    for n = 3) keyed by flat id; ``lower`` holds one coefficient per lower dimension.
    """

    n: int
    top: Tuple[Tuple[str, Poly], ...]
    lower: Tuple[Tuple[int, Poly], ...] = ()

    def top_coefficient(self, flat_id: str) -> Poly:
        return dict(self.top).get(flat_id, poly_y(0))

    def lower_coefficient(self, d: int) -> Poly:
        return dict(self.lower).get(d, poly_y(0))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for _, c in self.top) and all(c.is_zero for _, c in self.lower)

    def specialize(self, value: RationalLike) -> Dict[str, Rational]:
        """Evaluate at ``y = value``; lower generators are keyed ``[P^d]``/``[pt]``."""
        values = {flat_id: evaluate(c, value) for flat_id, c in self.top}
        for d, c in self.lower:
            values["pt" if d == 0 else f"P^{d}"] = evaluate(c, value)
        return values


@dataclass(frozen=True)
class StratumSpec:
    """Spectrum attached to one singular stratum."""

    flat_id: str
    kind: str
    spectrum: Spectrum
    local_multiplicity: int
    m: int


def _choose2(x: int) -> int:
    """``x(x-1)/2``, valid for negative ``x`` too."""
    return x * (x - 1) // 2


def _ceil(value: Rational) -> int:
    return int(sympy.ceiling(value))


# --------------------------------------------------------------------------
# Spectra
# --------------------------------------------------------------------------


def p2_point_multiplicities(m_p: int) -> Spectrum:
    """
    Spectrum of ``x**m_P + y**m_P``.

    The closed multiplicities ``n_{k/m_P} = k-1`` and ``n_{1+k/m_P} = m_P-k-1+delta_{k,m_P}``
    are checked against the Thom-Sebastiani square.

    Raises:
        ValueError: If ``m_P < 2``
        EngineMismatch: If the two routes disagree
    """
    if m_p < 2:
        raise ValueError(f"A singular point needs multiplicity >= 2, got {m_p}")
    closed: Dict[Rational, int] = {}
    for k in range(1, m_p + 1):
        closed[Rational(k, m_p)] = k - 1
        closed[1 + Rational(k, m_p)] = m_p - k - 1 + (1 if k == m_p else 0)
    spectrum = Spectrum.from_mapping(closed)
    line = ordinary_power_spectrum(m_p)
    if spectrum != spectrum_mul(line, line):
        raise EngineMismatch(f"Point spectrum routes disagree for m_P={m_p}")
    return spectrum


def p3_edge_spectrum(m_s: int) -> Spectrum:
    """Transversal spectrum of an edge, ``-t (Sp(x**m_S))**2``."""
    if m_s < 2:
        raise ValueError(f"An edge needs multiplicity >= 2, got {m_s}")
    line = ordinary_power_spectrum(m_s)
    return Spectrum.monomial(1, -1) * line * line


def p3_edge_infinity_spectrum(m_s: int, m: int) -> Spectrum:
    """Spectrum at the generic point at infinity of an edge: ``Sp(x**m_S)**2 Sp(z**m)``."""
    if m_s < 2 or m < m_s:
        raise ValueError(f"Need 2 <= m_S <= m, got m_S={m_s}, m={m}")
    line = ordinary_power_spectrum(m_s)
    return line * line * ordinary_power_spectrum(m)


def p3_point_multiplicities(m_p: int, edge_mults: Iterable[int]) -> Spectrum:
    """
    Spectrum of a point of a plane arrangement from its multiplicity and the
    multiplicities of every edge through it.

    Binomials are polynomial in their upper argument, so ``C(-1, 2) = 1``.
    """
    edges = list(edge_mults)
    if m_p < 3:
        raise ValueError(f"A point of a plane arrangement needs m_P >= 3, got {m_p}")
    if any(not 2 <= m_s <= m_p for m_s in edges):
        raise ValueError(f"Edge multiplicities {edges} must lie in [2, {m_p}]")
    terms: Dict[Rational, int] = {}
    for k in range(1, m_p + 1):
        c = [_ceil(Rational(k * m_s, m_p)) for m_s in edges]
        alpha = Rational(k, m_p)
        terms[alpha] = _choose2(k - 1) - sum(_choose2(ci - 1) for ci in c)
        terms[1 + alpha] = (k - 1) * (m_p - k - 1) - sum(
            (ci - 1) * (m_s - ci) for ci, m_s in zip(c, edges)
        )
        terms[2 + alpha] = (
            _choose2(m_p - k - 1)
            - sum(_choose2(m_s - ci) for ci, m_s in zip(c, edges))
            - (1 if k == m_p else 0)
        )
    return Spectrum.from_mapping(terms)


# --------------------------------------------------------------------------
# Contributions
# --------------------------------------------------------------------------


def point_contribution(spec: Spectrum, n: int) -> Poly:
    """
    ``(-1)**(n-1) sum_alpha n_alpha (-y)**floor(n - alpha)``.

    Raises:
        ExponentOutOfRange: If an exponent lies outside ``(0, n]``
    """
    total = poly_y(0)
    for alpha, mult in spec:
        if not 0 < alpha <= n:
            raise ExponentOutOfRange(
                f"Spectral exponent {format_rational(alpha)} outside (0, {n}]"
            )
        total += poly_y(mult * (-Y) ** int(sympy.floor(n - alpha)))
    return total * poly_y((-1) ** (n - 1))


def p3_point_contribution(spec: Spectrum, n: int = 3) -> Poly:
    """Point and infinity terms of a plane arrangement, ``sum n_alpha (-y)**floor(3 - alpha)``."""
    if n != 3:
        raise DimensionError(f"p3_point_contribution needs n=3, got {n}")
    return point_contribution(spec, 3)


def l_coeff(edge: Flat, k: int, tables: StrataTables) -> int:
    """
    Degree shift of the log bundle for the eigenvalue ``e(-k/m_S)``:
    ``sum_{P on S} ceil(-k(m_P/m_S - 1)) + ceil(-k(1 - m/m_S))``.

    The ceiling arguments sum to zero.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    m_s = edge.multiplicity
    total = sum(
        _ceil(-k * (Rational(p.multiplicity, m_s) - 1)) for p in tables.points_on(edge)
    )
    return total + _ceil(-k * (1 - Rational(tables.m, m_s)))


def p3_edge_contribution(edge: Flat, tables: StrataTables) -> Tuple[Poly, Poly]:
    """
    Edge coefficient and ``[pt]`` part of one edge.

    Returns:
        Tuple[Poly, Poly]: ``(edge_poly, pt_poly)`` with
        ``edge_poly = sum n_alpha (-y)**floor(3-alpha)`` and
        ``pt_poly = sum n_alpha (-y)**floor(3-alpha) (l_{S,k}(y+1) - (y + #points on S))``
        where ``k = alpha m_S``
    """
    m_s = edge.multiplicity
    on_edge = len(tables.points_on(edge))
    edge_poly = poly_y(0)
    pt_poly = poly_y(0)
    for alpha, mult in p3_edge_spectrum(m_s):
        weight = poly_y(mult * (-Y) ** int(sympy.floor(3 - alpha)))
        k = int(alpha * m_s)
        edge_poly += weight
        pt_poly += weight * poly_y(l_coeff(edge, k, tables) * (Y + 1) - (Y + on_edge))
    return edge_poly, pt_poly


# --------------------------------------------------------------------------
# Assembly
# --------------------------------------------------------------------------


def hm_p2(lat: Lattice) -> SigmaClass:
    """
    Hirzebruch-Milnor class of a line arrangement, one coefficient per singular point.

    Raises:
        DimensionError: If the arrangement is not in P^2
    """
    if lat.n != 2:
        raise DimensionError(f"hm_p2 needs a line arrangement in P^2, got P^{lat.n}")
    LOGGER.info("Spectrum engine: %d lines in P^2", lat.m)
    top = []
    for point in strata_tables(lat).points:
        coeff = point_contribution(p2_point_multiplicities(point.multiplicity), 2)
        LOGGER.debug("Point %s (m_P=%d): %s", point.id, point.multiplicity, coeff.as_expr())
        top.append((point.id, coeff))
    return SigmaClass(2, tuple(top))


def hm_p3(lat: Lattice) -> SigmaClass:
    """
    Hirzebruch-Milnor class of a plane arrangement: one coefficient per edge plus a
    single ``[pt]`` coefficient collecting points, edge ends at infinity and the
    log-bundle corrections along each edge.

    Raises:
        DimensionError: If the arrangement is not in P^3
    """
    if lat.n != 3:
        raise DimensionError(f"hm_p3 needs a plane arrangement in P^3, got P^{lat.n}")
    LOGGER.info("Spectrum engine: %d planes in P^3", lat.m)
    tables = strata_tables(lat)
    top = []
    pt = poly_y(0)
    for edge in tables.edges:
        edge_poly, pt_poly = p3_edge_contribution(edge, tables)
        infinity = p3_point_contribution(
            p3_edge_infinity_spectrum(edge.multiplicity, tables.m)
        )
        LOGGER.debug(
            "Edge %s (m_S=%d): edge %s, pt %s, infinity %s",
            edge.id,
            edge.multiplicity,
            edge_poly.as_expr(),
            pt_poly.as_expr(),
            infinity.as_expr(),
        )
        top.append((edge.id, edge_poly))
        pt += pt_poly + infinity
    for point in tables.points:
        mults = [e.multiplicity for e in tables.edges_through(point)]
        contribution = p3_point_contribution(p3_point_multiplicities(point.multiplicity, mults))
        LOGGER.debug("Point %s (m_P=%d): %s", point.id, point.multiplicity, contribution.as_expr())
        pt += contribution
    lower = ((0, pt),) if tables.edges or tables.points else ()
    return SigmaClass(3, tuple(top), lower)


def hm_sigma(lat: Lattice) -> SigmaClass:
    """Dispatch to :func:`hm_p2` or :func:`hm_p3`."""
    if lat.n == 2:
        return hm_p2(lat)
    if lat.n == 3:
        return hm_p3(lat)
    raise DimensionError(f"The spectrum engine supports P^2 and P^3, got P^{lat.n}")


def stratum_specs(lat: Lattice, tables: Optional[StrataTables] = None) -> List[StratumSpec]:
    """The spectra the spectrum engine attaches to every singular stratum."""
    if lat.n not in (2, 3):
        raise DimensionError(f"The spectrum engine supports P^2 and P^3, got P^{lat.n}")
    tables = tables or strata_tables(lat)
    specs = []
    for edge in tables.edges:
        m_s = edge.multiplicity
        specs.append(StratumSpec(edge.id, EDGE, p3_edge_spectrum(m_s), m_s, lat.m))
        specs.append(
            StratumSpec(
                edge.id, EDGE_AT_INFINITY, p3_edge_infinity_spectrum(m_s, lat.m), m_s, lat.m
            )
        )
    for point in tables.points:
        if lat.n == 2:
            spectrum = p2_point_multiplicities(point.multiplicity)
        else:
            mults = [e.multiplicity for e in tables.edges_through(point)]
            spectrum = p3_point_multiplicities(point.multiplicity, mults)
        specs.append(StratumSpec(point.id, POINT, spectrum, point.multiplicity, lat.m))
    return specs
