"""Exact algebra used by both engines.

Coefficients are exact rationals throughout:

* ``PolyY``      -- ``sympy.Poly`` in the Hirzebruch parameter ``y`` over ``QQ``
* ``RatY``       -- ``num / (1+y)**unit_pow``, the only denominators that ever occur
* ``TruncSeries`` -- power series in one formal variable, truncated at a fixed order
* ``Spectrum``   -- fractional Laurent polynomial ``sum n_alpha t**alpha``
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly, Rational
from sympy.polys.ring_series import (
    rs_exp,
    rs_log,
    rs_mul,
    rs_pow,
    rs_series_inversion,
)
from sympy.polys.rings import ring

from .errors import NotDivisible, OrderMismatch

Y = sympy.Symbol("y")

PolyY = Poly
RationalLike = Union[int, Rational, str]

_SERIES_RING, _X = ring("x", QQ)


def to_rational(value: RationalLike) -> Rational:
    """Coerce an int, a sympy number or a ``p/q`` string to ``sympy.Rational``."""
    result = sympy.Rational(value)
    if not isinstance(result, Rational):
        raise ValueError(f"Not a rational number: {value!r}")
    return result


def format_rational(value: RationalLike) -> str:
    """Render a rational canonically as ``p`` or ``p/q``."""
    r = to_rational(value)
    if r.q == 1:
        return str(r.p)
    return f"{r.p}/{r.q}"


def rational_pair(value: RationalLike) -> List[int]:
    """Render a rational as ``[numerator, denominator]``."""
    r = to_rational(value)
    return [int(r.p), int(r.q)]


# --------------------------------------------------------------------------
# Polynomials in y
# --------------------------------------------------------------------------


def poly_y(value: Union[Poly, sympy.Expr, RationalLike, Sequence[RationalLike]] = 0) -> Poly:
    """
    Build a PolyY.

    Args:
        value: A ``Poly``, a sympy expression in ``y``, a rational, or a list of
            coefficients in ascending powers of ``y``

    Returns:
        Poly: The polynomial over ``QQ`` in the single generator ``y``
    """
    if isinstance(value, Poly):
        return Poly(value.as_expr(), Y, domain=QQ)
    if isinstance(value, (list, tuple)):
        coeffs = [to_rational(c) for c in value]
        if not coeffs:
            return Poly(0, Y, domain=QQ)
        return Poly.from_list(list(reversed(coeffs)), Y, domain=QQ)
    if isinstance(value, str):
        value = to_rational(value)
    return Poly(value, Y, domain=QQ)


ONE_PLUS_Y = poly_y(1 + Y)


def ascending_coeffs(p: Poly) -> Tuple[Rational, ...]:
    """Coefficients of ``p`` in ascending powers of y; the zero polynomial is ``()``."""
    if p.is_zero:
        return ()
    return tuple(reversed(p.all_coeffs()))


def evaluate(p: Poly, value: RationalLike) -> Rational:
    """Evaluate ``p`` at ``y = value`` exactly."""
    return to_rational(p.eval(to_rational(value)))


def format_poly(p: Poly, var: str = "y") -> str:
    """Render ``p`` with descending powers, e.g. ``-2y^2-21y+1``."""
    pieces = []
    coeffs = ascending_coeffs(p)
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        magnitude = abs(c)
        if power == 0:
            body = format_rational(magnitude)
        else:
            prefix = "" if magnitude == 1 else format_rational(magnitude)
            body = prefix + (var if power == 1 else f"{var}^{power}")
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("-" if c < 0 else "+") + body)
    return "".join(pieces) if pieces else "0"


def poly_div_unit_power(p: Poly, k: int) -> Poly:
    """
    Divide exactly by ``(1+y)**k``.

    Args:
        p: Dividend
        k: Power of ``(1+y)`` to remove

    Returns:
        Poly: ``q`` with ``q * (1+y)**k == p``

    Raises:
        ValueError: If ``k`` is negative
        NotDivisible: If some division step leaves a nonzero remainder
    """
    if k < 0:
        raise ValueError(f"Power of (1+y) must be nonnegative, got {k}")
    quotient = poly_y(p)
    for step in range(k):
        quotient, remainder = quotient.div(ONE_PLUS_Y)
        if not remainder.is_zero:
            raise NotDivisible(
                f"{format_poly(poly_y(p))} is not divisible by (1+y)^{k} "
                f"(remainder {format_poly(remainder)} at step {step + 1})"
            )
    return quotient


@dataclass(frozen=True)
class RatY:
    """A rational function ``num / (1+y)**unit_pow``."""

    num: Poly
    unit_pow: int = 0

    @classmethod
    def canonical(cls, num: Union[Poly, RationalLike], unit_pow: int = 0) -> "RatY":
        """Cancel common factors of ``(1+y)`` so that ``num`` keeps none unless ``unit_pow == 0``."""
        if unit_pow < 0:
            raise ValueError(f"unit_pow must be nonnegative, got {unit_pow}")
        num = poly_y(num)
        if num.is_zero:
            return cls(num, 0)
        while unit_pow > 0 and num.eval(-1) == 0:
            num = poly_div_unit_power(num, 1)
            unit_pow -= 1
        return cls(num, unit_pow)

    @classmethod
    def zero(cls) -> "RatY":
        return cls(poly_y(0), 0)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _lift(self, unit_pow: int) -> Poly:
        return self.num * ONE_PLUS_Y ** (unit_pow - self.unit_pow)

    def __add__(self, other: "RatY") -> "RatY":
        e = max(self.unit_pow, other.unit_pow)
        return RatY.canonical(self._lift(e) + other._lift(e), e)

    def __neg__(self) -> "RatY":
        return RatY(-self.num, self.unit_pow)

    def __sub__(self, other: "RatY") -> "RatY":
        return self + (-other)

    def __mul__(self, other: Union["RatY", Poly, RationalLike]) -> "RatY":
        if isinstance(other, RatY):
            return RatY.canonical(self.num * other.num, self.unit_pow + other.unit_pow)
        return RatY.canonical(self.num * poly_y(other), self.unit_pow)

    __rmul__ = __mul__

    def divide_unit_power(self, k: int) -> "RatY":
        """Divide by a further ``(1+y)**k``."""
        return RatY.canonical(self.num, self.unit_pow + k)

    def to_poly(self) -> Poly:
        """
        Return the polynomial this rational function equals.

        Raises:
            NotDivisible: If a ``(1+y)`` denominator survives
        """
        return poly_div_unit_power(self.num, self.unit_pow)


# --------------------------------------------------------------------------
# Truncated power series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Power series ``sum c_p x**p`` known exactly for ``p = 0..order``."""

    order: int
    coeffs: Tuple[Rational, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"Truncation order must be nonnegative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"Expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], order: int) -> "TruncSeries":
        """Build a series from leading coefficients, padding with zeros and dropping excess terms."""
        values = [to_rational(c) for c in coeffs][: order + 1]
        values.extend([Rational(0)] * (order + 1 - len(values)))
        return cls(order, tuple(values))

    @classmethod
    def constant(cls, value: RationalLike, order: int) -> "TruncSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order: int) -> "TruncSeries":
        """The series ``x`` itself."""
        return cls.from_coeffs([0, 1], order)

    @classmethod
    def _from_ring(cls, element, order: int) -> "TruncSeries":
        return cls(
            order,
            tuple(QQ.to_sympy(element.get((p,), QQ.zero)) for p in range(order + 1)),
        )

    def _to_ring(self):
        return _SERIES_RING.from_dict(
            {(p,): QQ.from_sympy(c) for p, c in enumerate(self.coeffs) if c != 0}
        )

    def coefficient(self, power: int) -> Rational:
        """Coefficient of ``x**power`` (zero beyond the truncation order)."""
        if power < 0 or power > self.order:
            return Rational(0)
        return self.coeffs[power]

    def _check_order(self, other: "TruncSeries") -> None:
        if self.order != other.order:
            raise OrderMismatch(
                f"Cannot combine series of orders {self.order} and {other.order}"
            )

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def scale(self, factor: RationalLike) -> "TruncSeries":
        c = to_rational(factor)
        return TruncSeries(self.order, tuple(c * a for a in self.coeffs))

    def divide_by_x(self) -> "TruncSeries":
        """
        Exact division by ``x``; the result is known one order less.

        Raises:
            ValueError: If the constant term is nonzero or the order is zero
        """
        if self.order == 0:
            raise ValueError("Cannot divide an order-0 series by x")
        if self.coeffs[0] != 0:
            raise ValueError("Series has a nonzero constant term; not divisible by x")
        return TruncSeries(self.order - 1, self.coeffs[1:])

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """
    Exact product truncated at the common order.

    Raises:
        OrderMismatch: If the truncation orders differ
    """
    a._check_order(b)
    product = rs_mul(a._to_ring(), b._to_ring(), _X, a.order + 1)
    return TruncSeries._from_ring(product, a.order)


def series_pow(s: TruncSeries, k: int) -> TruncSeries:
    """``s**k`` for ``k >= 0``."""
    if k < 0:
        raise ValueError(f"Exponent must be nonnegative, got {k}")
    if k == 0:
        return TruncSeries.constant(1, s.order)
    if s.is_zero:
        return s
    return TruncSeries._from_ring(rs_pow(s._to_ring(), k, _X, s.order + 1), s.order)


def series_inverse(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    if s.coeffs[0] == 0:
        raise ValueError("Series with zero constant term is not invertible")
    inverse = rs_series_inversion(s._to_ring(), _X, s.order + 1)
    return TruncSeries._from_ring(inverse, s.order)


def exp_series(s: TruncSeries) -> TruncSeries:
    """``exp(s)`` for a series without constant term."""
    if s.coeffs[0] != 0:
        raise ValueError("exp_series needs a series with zero constant term")
    if s.is_zero:
        return TruncSeries.constant(1, s.order)
    return TruncSeries._from_ring(rs_exp(s._to_ring(), _X, s.order + 1), s.order)


def log1p_series(order: int) -> TruncSeries:
    """``ln(1+x) = sum_{p=1..order} (-1)**(p+1) x**p / p``."""
    if order < 0:
        raise ValueError(f"Truncation order must be nonnegative, got {order}")
    if order == 0:
        return TruncSeries.constant(0, 0)
    return TruncSeries._from_ring(rs_log(1 + _X, _X, order + 1), order)


# --------------------------------------------------------------------------
# Spectra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Finite sum ``sum n_alpha t**alpha`` with rational exponents and integer multiplicities."""

    terms: Tuple[Tuple[Rational, int], ...] = ()

    @classmethod
    def from_mapping(
        cls, mapping: Union[Mapping[RationalLike, int], Iterable[Tuple[RationalLike, int]]]
    ) -> "Spectrum":
        """Build a spectrum, merging repeated exponents and dropping zero multiplicities."""
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc: Dict[Rational, int] = {}
        for alpha, n in items:
            key = to_rational(alpha)
            acc[key] = acc.get(key, 0) + int(n)
        return cls(tuple(sorted((a, n) for a, n in acc.items() if n != 0)))

    @classmethod
    def monomial(cls, alpha: RationalLike, multiplicity: int = 1) -> "Spectrum":
        return cls.from_mapping({alpha: multiplicity})

    def __iter__(self) -> Iterator[Tuple[Rational, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __mul__(self, other: "Spectrum") -> "Spectrum":
        return spectrum_mul(self, other)

    def __add__(self, other: "Spectrum") -> "Spectrum":
        return Spectrum.from_mapping(list(self.terms) + list(other.terms))

    def multiplicity(self, alpha: RationalLike) -> int:
        """Multiplicity of the spectral number ``alpha`` (zero if absent)."""
        key = to_rational(alpha)
        return dict(self.terms).get(key, 0)

    def total_multiplicity(self) -> int:
        return sum(n for _, n in self.terms)

    @property
    def exponents(self) -> Tuple[Rational, ...]:
        return tuple(a for a, _ in self.terms)

    def to_pairs(self) -> List[List]:
        """``[["p/q", n], ...]`` in ascending exponent order."""
        return [[format_rational(a), n] for a, n in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for alpha, n in self.terms:
            body = f"t^{format_rational(alpha)}"
            magnitude = abs(n)
            text = body if magnitude == 1 else f"{magnitude}{body}"
            if not pieces:
                pieces.append(("-" if n < 0 else "") + text)
            else:
                pieces.append((" - " if n < 0 else " + ") + text)
        return "".join(pieces)


def spectrum_mul(a: Spectrum, b: Spectrum) -> Spectrum:
    """Thom-Sebastiani product: exponents add, multiplicities multiply."""
    acc: Dict[Rational, int] = {}
    for alpha, n in a.terms:
        for beta, k in b.terms:
            acc[alpha + beta] = acc.get(alpha + beta, 0) + n * k
    return Spectrum.from_mapping(acc)


def ordinary_power_spectrum(m: int) -> Spectrum:
    """
    Spectrum of ``x**m`` at the origin, ``sum_{k=1}^{m-1} t**(k/m)``.

    Raises:
        ValueError: If ``m < 1``
    """
    if m < 1:
        raise ValueError(f"Exponent must be positive, got {m}")
    return Spectrum.from_mapping({Rational(k, m): 1 for k in range(1, m)})
