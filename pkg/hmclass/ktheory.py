"""K-theoretic computation of pushed-forward Hirzebruch-Milnor classes.

Everything here is derived from the characteristic polynomial of the cone and the
number of hyperplanes: the virtual Hirzebruch class of the hypersurface minus the
Hirzebruch class of the arrangement, both pushed forward to the homology of P^n.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly, Rational

from .algebra import (
    ONE_PLUS_Y,
    RatY,
    RationalLike,
    TruncSeries,
    Y,
    evaluate,
    exp_series,
    log1p_series,
    poly_y,
    series_inverse,
    series_pow,
    to_rational,
)
from .errors import (
    DimensionError,
    EngineMismatch,
    NotMonic,
    SupportViolation,
    UnsupportedDimension,
)
from .lattice import Lattice, build_lattice, local_arrangement, require_dimension, strata_tables

LOGGER = logging.getLogger(__name__)

T = sympy.Symbol("t")


@dataclass(frozen=True)
class GradedProjClass:
    """A class ``sum_d coeffs[d] [P^d]`` in the homology of P^n with coefficients in QQ[y]."""

    n: int
    coeffs: Tuple[Poly, ...]

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, Union[Poly, RationalLike]]) -> "GradedProjClass":
        """
        Build a class from ``{d: coefficient}``; absent dimensions are zero.

        Raises:
            DimensionError: If some ``d`` lies outside ``0..n``
        """
        coeffs = [poly_y(0)] * (n + 1)
        for d, value in mapping.items():
            if not 0 <= d <= n:
                raise DimensionError(f"[P^{d}] does not exist in P^{n}")
            coeffs[d] = coeffs[d] + poly_y(value)
        return cls(n, tuple(coeffs))

    @classmethod
    def zero(cls, n: int) -> "GradedProjClass":
        return cls.from_mapping(n, {})

    def coefficient(self, d: int) -> Poly:
        if 0 <= d <= self.n:
            return self.coeffs[d]
        return poly_y(0)

    def components(self) -> Iterator[Tuple[int, Poly]]:
        """Nonzero ``(d, coefficient)`` pairs, highest dimension first."""
        for d in range(self.n, -1, -1):
            if not self.coeffs[d].is_zero:
                yield d, self.coeffs[d]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def _check(self, other: "GradedProjClass") -> None:
        if self.n != other.n:
            raise DimensionError(f"Cannot combine classes in P^{self.n} and P^{other.n}")

    def __add__(self, other: "GradedProjClass") -> "GradedProjClass":
        self._check(other)
        return GradedProjClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GradedProjClass":
        return GradedProjClass(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "GradedProjClass") -> "GradedProjClass":
        return self + (-other)

    def scale(self, factor: Union[Poly, RationalLike]) -> "GradedProjClass":
        f = poly_y(factor)
        return GradedProjClass(self.n, tuple(c * f for c in self.coeffs))

    def embed(self, n: int) -> "GradedProjClass":
        """Push forward along a linear embedding into P^n."""
        if n < self.n:
            raise DimensionError(f"Cannot embed P^{self.n} into P^{n}")
        return GradedProjClass.from_mapping(n, dict(enumerate(self.coeffs)))

    def specialize(self, value: RationalLike) -> Dict[int, Rational]:
        """Evaluate every coefficient at ``y = value``."""
        return {d: evaluate(c, value) for d, c in enumerate(self.coeffs)}


def chi_y_genus(cls: GradedProjClass) -> Poly:
    """Degree of a class, i.e. its ``[pt]`` coefficient."""
    return cls.coefficient(0)


# --------------------------------------------------------------------------
# Residues a_{m,i,j} and Hirzebruch classes of projective spaces
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def a_coeff(m: int, i: int, j: int) -> Rational:
    """
    Constant term of ``(ln(1+x))**j (1+1/x)**(m-i)``.

    Computed as the coefficient of ``x**(m-i)`` in ``(1+x)**(m-i) (ln(1+x))**j``.
    """
    if min(m, i, j) < 0:
        raise ValueError(f"a_coeff needs nonnegative arguments, got ({m}, {i}, {j})")
    if i > m:
        return Rational(0)
    order = m - i
    one_plus_x = TruncSeries.from_coeffs([1, 1], order)
    expansion = series_pow(one_plus_x, order) * series_pow(log1p_series(order), j)
    return expansion.coefficient(order)


def _compositions(k: int, parts: int) -> Iterator[Tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, k), parts - 1):
        bounds = (0,) + cuts + (k,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def a_coeff_nested(m: int, i: int, j: int) -> Rational:
    """
    ``a_coeff`` through the nested sum over compositions ``k = i_1 + ... + i_j``.

    Term-by-term expansion of ``(ln(1+x))**j`` gives the sign ``(-1)**(k+j)``.
    """
    if min(m, i, j) < 0:
        raise ValueError(f"a_coeff_nested needs nonnegative arguments, got ({m}, {i}, {j})")
    if i > m:
        return Rational(0)
    if j == 0:
        return Rational(1)
    order = m - i
    total = Rational(0)
    for k in range(j, order + 1):
        inner = sum(
            (Rational(1, sympy.prod(parts)) for parts in _compositions(k, j)),
            Rational(0),
        )
        total += sympy.binomial(order, k) * (-1) ** (k + j) * inner
    return total


@lru_cache(maxsize=None)
def hirzebruch_pn(m: int) -> GradedProjClass:
    """
    Normalized Hirzebruch class of P^m.

    Examples:
        >>> hirzebruch_pn(1)  # [P^1] + (1-y)[pt]
    """
    if m < 0:
        raise ValueError(f"Dimension must be nonnegative, got {m}")
    coeffs: Dict[int, Poly] = {}
    for j in range(m + 1):
        total = poly_y(0)
        for i in range(m - j + 1):
            a = a_coeff(m, i, j)
            if a == 0:
                continue
            term = poly_y(-Y) ** i * ONE_PLUS_Y ** (m - i - j)
            total += term * poly_y(a * sympy.binomial(m + 1, i))
        coeffs[j] = total
    return GradedProjClass.from_mapping(m, coeffs)


# --------------------------------------------------------------------------
# K-theory classes and the Todd transformation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KClassRat:
    """``sum_k coeffs[k] t**k`` in ``QQ(y)[t]/((1-t)**(n+1))`` with ``t = [O(-1)]``."""

    n: int
    coeffs: Tuple[RatY, ...]

    @classmethod
    def from_expr(cls, n: int, numerator: sympy.Expr, unit_pow: int = 0) -> "KClassRat":
        """
        Reduce ``numerator(t, y) / (1+y)**unit_pow`` modulo the Koszul relation.
        """
        koszul = Poly((1 - T) ** (n + 1), T, Y, domain=QQ)
        reduced = Poly(numerator, T, Y, domain=QQ).rem(koszul)
        by_power: Dict[int, sympy.Expr] = {}
        for (k, e), c in reduced.as_dict().items():
            by_power[k] = by_power.get(k, sympy.Integer(0)) + c * Y**e
        coeffs = tuple(
            RatY.canonical(by_power.get(k, 0), unit_pow) for k in range(n + 1)
        )
        return cls(n, coeffs)

    def __add__(self, other: "KClassRat") -> "KClassRat":
        if self.n != other.n:
            raise DimensionError(f"Cannot combine K-classes on P^{self.n} and P^{other.n}")
        return KClassRat(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "KClassRat":
        return KClassRat(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "KClassRat") -> "KClassRat":
        return self + (-other)


@lru_cache(maxsize=None)
def _todd_series(n: int) -> TruncSeries:
    """``(h / (1 - e^{-h}))**(n+1)`` up to ``h**n``."""
    e = exp_series(TruncSeries.variable(n + 1).scale(-1))
    quotient = (TruncSeries.constant(1, n + 1) - e).divide_by_x()
    return series_pow(series_inverse(quotient), n + 1)


@lru_cache(maxsize=None)
def _chern_character(k: int, n: int) -> TruncSeries:
    """``ch(t**k) = e^{-kh}`` up to ``h**n``."""
    return exp_series(TruncSeries.variable(n).scale(-k))


def todd_pushforward(k: KClassRat) -> GradedProjClass:
    """
    Todd transformation followed by normalization.

    ``t**p`` goes to ``sum_j [h**j](e^{-ph} td(P^n)) [P^{n-j}]`` and the ``[P^d]`` coefficient
    is then divided by ``(1+y)**d``.

    Raises:
        NotDivisible: If a normalized coefficient is not a polynomial
    """
    n = k.n
    todd = _todd_series(n)
    acc = [RatY.zero() for _ in range(n + 1)]
    for power, c in enumerate(k.coeffs):
        if c.is_zero:
            continue
        product = _chern_character(power, n) * todd
        for j in range(n + 1):
            coeff = product.coefficient(j)
            if coeff != 0:
                acc[n - j] = acc[n - j] + c * coeff
    return GradedProjClass(
        n, tuple(acc[d].divide_unit_power(d).to_poly() for d in range(n + 1))
    )


def hirzebruch_pn_series(m: int) -> GradedProjClass:
    """Hirzebruch class of P^m from ``(1+ty)**(m+1) / (1+y)``."""
    return todd_pushforward(KClassRat.from_expr(m, (1 + T * Y) ** (m + 1), 1))


# --------------------------------------------------------------------------
# Arrangement and virtual classes
# --------------------------------------------------------------------------


def _charpoly_coeffs(charpoly: Union[Sequence[int], Poly]) -> Tuple[Rational, ...]:
    if isinstance(charpoly, Poly):
        return tuple(reversed([to_rational(c) for c in charpoly.all_coeffs()]))
    return tuple(to_rational(c) for c in charpoly)


def _check_monic(coeffs: Tuple[Rational, ...], n: int) -> None:
    top = len(coeffs) - 1
    while top > 0 and coeffs[top] == 0:
        top -= 1
    if top != n + 1 or coeffs[top] != 1:
        raise NotMonic(
            f"Characteristic polynomial must be monic of degree {n + 1}, "
            f"got degree {top} with leading coefficient {coeffs[top]}"
        )


def arr_hirzebruch_pushforward(charpoly: Union[Sequence[int], Poly], n: int) -> GradedProjClass:
    """
    Pushforward of the Hirzebruch class of the arrangement to P^n.

    With ``chi(x) = sum_i (-1)**i c_i x**(n+1-i)`` this is
    ``sum_{i=1..n} (-1)**(i+1) c_i T_y(P^{n-i})``.

    Args:
        charpoly: Ascending coefficients of the characteristic polynomial of the cone
        n: Ambient dimension

    Raises:
        NotMonic: If ``charpoly`` is not monic of degree ``n + 1``
    """
    coeffs = _charpoly_coeffs(charpoly)
    _check_monic(coeffs, n)
    result = GradedProjClass.zero(n)
    for i in range(1, n + 1):
        c_i = (-1) ** i * coeffs[n + 1 - i]
        if c_i == 0:
            continue
        result += hirzebruch_pn(n - i).embed(n).scale((-1) ** (i + 1) * c_i)
    return result


def arr_hirzebruch_pushforward_series(
    charpoly: Union[Sequence[int], Poly], n: int
) -> GradedProjClass:
    """Same class from ``mC_y = [(1+ty)**(n+1) - (1-t)**(n+1) chi(w)] / (1+y)``, ``w = (1+ty)/(1-t)``."""
    coeffs = _charpoly_coeffs(charpoly)
    _check_monic(coeffs, n)
    numerator = (1 + T * Y) ** (n + 1) - sum(
        c * (1 + T * Y) ** k * (1 - T) ** (n + 1 - k) for k, c in enumerate(coeffs)
    )
    return todd_pushforward(KClassRat.from_expr(n, numerator, 1))


@lru_cache(maxsize=None)
def virtual_pushforward_series(n: int, m: int) -> GradedProjClass:
    """
    Normalized virtual Hirzebruch class of a degree-``m`` hypersurface in P^n.

    ``(1+ty)**(n+1) (1-t**m) / ((1+y)(1+t**m y))`` is expanded through the nilpotent
    ``u = 1 - t**m`` as ``sum_{k<=n} (1+ty)**(n+1) u**(k+1) y**k (1+y)**(n-k) / (1+y)**(n+2)``.
    """
    if n < 1 or m < 1:
        raise ValueError(f"virtual_pushforward_series needs n >= 1 and m >= 1, got ({n}, {m})")
    u = 1 - T**m
    numerator = sum(
        (1 + T * Y) ** (n + 1) * u ** (k + 1) * Y**k * (1 + Y) ** (n - k)
        for k in range(n + 1)
    )
    return todd_pushforward(KClassRat.from_expr(n, numerator, n + 2))


def virtual_pushforward_closed(n: int, m: int) -> GradedProjClass:
    """
    Closed forms of the virtual class for lines (n = 2) and planes (n = 3).

    Raises:
        UnsupportedDimension: For any other ``n``
    """
    if m < 1:
        raise ValueError(f"Degree must be positive, got {m}")
    if n == 2:
        return GradedProjClass.from_mapping(
            2, {1: m, 0: Rational(m * (m - 3), 2) * (Y - 1)}
        )
    if n == 3:
        b = sympy.binomial(m - 1, 3)
        return GradedProjClass.from_mapping(
            3,
            {
                2: m,
                1: (Y - 1) * Rational(m * (m - 4), 2),
                0: (1 + b) * (1 + Y) ** 2 - (m**3 - 4 * m**2 + 6 * m) * Y,
            },
        )
    raise UnsupportedDimension(f"No closed virtual class for n={n}; use the series route")


def _check_support(cls: GradedProjClass) -> None:
    for d in range(cls.n - 1, cls.n + 1):
        if not cls.coefficient(d).is_zero:
            raise SupportViolation(
                f"Hirzebruch-Milnor class has a nonzero [P^{d}] coefficient in P^{cls.n}"
            )


def hm_pushforward(
    lat: Lattice, n: Optional[int] = None, crosscheck: bool = True
) -> GradedProjClass:
    """
    Pushforward of the Hirzebruch-Milnor class to the homology of P^n.

    The closed virtual class minus the arrangement's Hirzebruch class. With ``crosscheck``
    the same difference is recomputed through the series route.

    Raises:
        DimensionError: Unless n is 2 or 3
        SupportViolation: If the class is not supported in dimension <= n - 2
        EngineMismatch: If the closed-form and series routes disagree
    """
    n = lat.n if n is None else n
    if n != lat.n:
        raise DimensionError(f"Lattice lives in P^{lat.n}, not P^{n}")
    require_dimension(n, "hm_pushforward")
    LOGGER.info("K-theory engine: m=%d hyperplanes in P^%d", lat.m, n)
    result = virtual_pushforward_closed(n, lat.m) - arr_hirzebruch_pushforward(lat.charpoly, n)
    _check_support(result)
    if crosscheck:
        series = virtual_pushforward_series(n, lat.m) - arr_hirzebruch_pushforward_series(
            lat.charpoly, n
        )
        if not (series - result).is_zero:
            raise EngineMismatch(
                f"Closed-form and series K-theory routes disagree for m={lat.m} in P^{n}"
            )
        LOGGER.debug("Series route agrees with the closed form")
    return result


def hm_p3_closed(lat: Lattice) -> GradedProjClass:
    """
    Closed formula for plane arrangements in terms of ``m``, the edge multiplicities
    ``m_S`` and ``mu(1)``.
    """
    if lat.n != 3:
        raise DimensionError(f"hm_p3_closed needs an arrangement in P^3, got P^{lat.n}")
    m = lat.m
    edges = strata_tables(lat).edges
    b = sympy.binomial(m - 1, 3)
    edge_part = sum(
        (
            sympy.binomial(e.multiplicity, 2) * Y - sympy.binomial(e.multiplicity - 1, 2)
            for e in edges
        ),
        sympy.Integer(0),
    )
    excess = sum(e.multiplicity - 1 for e in edges)
    point_part = (
        (b - m + 1) * Y**2
        - (4 * sympy.binomial(m, 3) + excess) * Y
        + (b - lat.mu_one)
    )
    return GradedProjClass.from_mapping(3, {1: edge_part, 0: point_part})


def p2_local_decomposition(lat: Lattice) -> GradedProjClass:
    """
    Sum over the singular points of the pushforwards of their local pencils.

    A line arrangement's Hirzebruch-Milnor class is the sum of its local pieces, so
    this must equal ``hm_pushforward(lat, 2)``.
    """
    require_dimension(lat.n, "p2_local_decomposition", allowed=(2,))
    total = GradedProjClass.zero(2)
    for point in strata_tables(lat).points:
        local = build_lattice(local_arrangement(lat.arrangement, point))
        total += hm_pushforward(local, 2, crosscheck=False)
    return total
