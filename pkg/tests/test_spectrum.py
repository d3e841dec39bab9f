"""
Tests for the spectrum engine.
"""

import pytest
import sympy
from sympy import Rational

from hmclass.algebra import Spectrum, Y, evaluate, poly_y
from hmclass.corpus import (
    boolean_arrangement,
    generic_arrangement,
    near_pencil_arrangement,
    pencil_arrangement,
    pencil_with_coordinate_planes,
)
from hmclass.errors import DimensionError, ExponentOutOfRange
from hmclass.lattice import build_lattice, strata_tables
from hmclass.spectrum import (
    EDGE,
    EDGE_AT_INFINITY,
    POINT,
    SigmaClass,
    hm_p2,
    hm_p3,
    hm_sigma,
    l_coeff,
    p2_point_multiplicities,
    p3_edge_contribution,
    p3_edge_infinity_spectrum,
    p3_edge_spectrum,
    p3_point_contribution,
    p3_point_multiplicities,
    point_contribution,
    stratum_specs,
)


def expected_edge_poly(m_s):
    return poly_y(sympy.binomial(m_s, 2) * Y - sympy.binomial(m_s - 1, 2))


def triple_edge(lat):
    tables = strata_tables(lat)
    (edge,) = [e for e in tables.edges if e.multiplicity == 3]
    return edge, tables


class TestP2PointMultiplicities:
    """Tests for spectra of ordinary multiple points of line arrangements."""

    def test_double_point(self):
        assert p2_point_multiplicities(2) == Spectrum.from_mapping({1: 1})

    def test_triple_point(self):
        assert p2_point_multiplicities(3) == Spectrum.from_mapping({"2/3": 1, 1: 2, "4/3": 1})

    @pytest.mark.parametrize("m_p", range(2, 10))
    def test_totals(self, m_p):
        spectrum = p2_point_multiplicities(m_p)
        assert spectrum.total_multiplicity() == (m_p - 1) ** 2
        low = sum(n for alpha, n in spectrum if alpha <= 1)
        high = sum(n for alpha, n in spectrum if 1 < alpha <= 2)
        assert low == sympy.binomial(m_p, 2)
        assert high == sympy.binomial(m_p - 1, 2)

    def test_smooth_point(self):
        with pytest.raises(ValueError, match=">= 2"):
            p2_point_multiplicities(1)


class TestHmP2:
    """Tests for the class of a line arrangement."""

    def test_triangle(self, triangle_lattice):
        sigma = hm_p2(triangle_lattice)
        assert sigma.n == 2
        assert [flat_id for flat_id, _ in sigma.top] == ["P1", "P2", "P3"]
        assert all(c == poly_y(Y) for _, c in sigma.top)
        assert sigma.lower == ()

    def test_near_pencil(self):
        lat = build_lattice(near_pencil_arrangement(5))
        sigma = hm_p2(lat)
        by_mult = {lat.flat(flat_id).multiplicity: c for flat_id, c in sigma.top}
        assert by_mult[4] == poly_y(6 * Y - 3)
        assert by_mult[2] == poly_y(Y)

    def test_triple_point(self):
        sigma = hm_p2(build_lattice(pencil_arrangement(3)))
        assert [c for _, c in sigma.top] == [poly_y(3 * Y - 1)]

    def test_single_line(self):
        assert hm_p2(build_lattice(boolean_arrangement(2, 1))).is_zero

    @pytest.mark.parametrize("m", range(2, 9))
    def test_milnor_specialization(self, m):
        lat = build_lattice(near_pencil_arrangement(m) if m >= 3 else pencil_arrangement(m))
        for flat_id, value in hm_p2(lat).specialize(-1).items():
            assert value == -((lat.flat(flat_id).multiplicity - 1) ** 2)

    def test_needs_p2(self, xyz_xy_lattice):
        with pytest.raises(DimensionError, match="P\\^3"):
            hm_p2(xyz_xy_lattice)


class TestP3Spectra:
    """Tests for spectra of edges and points of plane arrangements."""

    def test_double_edge(self):
        assert p3_edge_spectrum(2) == Spectrum.from_mapping({2: -1})

    def test_triple_edge(self):
        assert p3_edge_spectrum(3) == Spectrum.from_mapping({"5/3": -1, 2: -2, "7/3": -1})

    @pytest.mark.parametrize("m_s", range(2, 9))
    def test_edge_total(self, m_s):
        assert p3_edge_spectrum(m_s).total_multiplicity() == -((m_s - 1) ** 2)

    def test_edge_at_infinity_double(self):
        expected = Spectrum.from_mapping({"5/4": 1, "3/2": 1, "7/4": 1})
        assert p3_edge_infinity_spectrum(2, 4) == expected

    def test_edge_at_infinity_triple(self):
        spectrum = p3_edge_infinity_spectrum(3, 4)
        assert len(spectrum) == 9
        assert spectrum.exponents[0] == Rational(11, 12)
        assert spectrum.exponents[-1] == Rational(25, 12)
        assert spectrum.total_multiplicity() == 12

    def test_edge_at_infinity_bounds(self):
        with pytest.raises(ValueError, match="m_S=3, m=2"):
            p3_edge_infinity_spectrum(3, 2)

    def test_point_of_xyz_xy(self):
        assert p3_point_multiplicities(4, [2, 2, 2, 3]) == Spectrum.from_mapping({1: 2, 2: -3})

    def test_generic_triple_point(self):
        assert p3_point_multiplicities(3, [2, 2, 2]) == Spectrum.from_mapping({1: 1, 2: -2})

    def test_point_bounds(self):
        with pytest.raises(ValueError, match="m_P >= 3"):
            p3_point_multiplicities(2, [2])
        with pytest.raises(ValueError, match="must lie in"):
            p3_point_multiplicities(3, [4])


class TestContributions:
    """Tests for the polynomial contributions of strata."""

    def test_point_of_xyz_xy(self):
        spectrum = Spectrum.from_mapping({1: 2, 2: -3})
        assert p3_point_contribution(spectrum) == poly_y(2 * Y**2 + 3 * Y)

    def test_infinity_double_edge(self):
        assert p3_point_contribution(p3_edge_infinity_spectrum(2, 4)) == poly_y(-3 * Y)

    def test_infinity_triple_edge(self):
        result = p3_point_contribution(p3_edge_infinity_spectrum(3, 4))
        assert result == poly_y(Y**2 - 10 * Y + 1)

    def test_p2_sign(self):
        # (-1)**(n-1) = -1 for curves
        assert point_contribution(Spectrum.monomial(1), 2) == poly_y(Y)

    @pytest.mark.parametrize("alpha", [0, Rational(-1, 2), 4])
    def test_exponent_out_of_range(self, alpha):
        with pytest.raises(ExponentOutOfRange, match="outside \\(0, 3\\]"):
            p3_point_contribution(Spectrum.monomial(alpha))

    def test_p3_only(self):
        with pytest.raises(DimensionError):
            p3_point_contribution(Spectrum(), n=2)

    def test_l_coeff_double_edges(self, xyz_xy_lattice):
        tables = strata_tables(xyz_xy_lattice)
        for edge_id in ("S1", "S2", "S3"):
            edge = xyz_xy_lattice.flat(edge_id)
            assert [l_coeff(edge, k, tables) for k in range(1, 7)] == [0] * 6

    def test_l_coeff_triple_edge(self, xyz_xy_lattice):
        tables = strata_tables(xyz_xy_lattice)
        edge = xyz_xy_lattice.flat("S4")
        values = [l_coeff(edge, k, tables) for k in range(1, 10)]
        assert values == [0 if k % 3 == 0 else 1 for k in range(1, 10)]

    def test_l_coeff_triple_edge_with_two_points(self):
        """Test the ceilings are taken at -k when an edge carries two points."""
        edge, tables = triple_edge(build_lattice(pencil_with_coordinate_planes(3)))
        assert [p.multiplicity for p in tables.points_on(edge)] == [4, 4]
        assert [l_coeff(edge, k, tables) for k in (5, 6, 7)] == [2, 0, 1]

    def test_edge_contribution_with_two_points(self):
        edge, tables = triple_edge(build_lattice(pencil_with_coordinate_planes(3)))
        assert p3_edge_contribution(edge, tables) == (
            poly_y(3 * Y - 1),
            poly_y(-(Y**2) - 4 * Y + 1),
        )

    def test_l_coeff_edge_without_points(self):
        lat = build_lattice(pencil_arrangement(3, n=3))
        tables = strata_tables(lat)
        (edge,) = tables.edges
        assert tables.points_on(edge) == ()
        assert [l_coeff(edge, k, tables) for k in (1, 2, 3)] == [0, 0, 0]

    def test_l_coeff_needs_positive_k(self, xyz_xy_lattice):
        tables = strata_tables(xyz_xy_lattice)
        with pytest.raises(ValueError):
            l_coeff(xyz_xy_lattice.flat("S1"), 0, tables)

    def test_edge_contributions_of_xyz_xy(self, xyz_xy_lattice):
        tables = strata_tables(xyz_xy_lattice)
        double = p3_edge_contribution(xyz_xy_lattice.flat("S1"), tables)
        triple = p3_edge_contribution(xyz_xy_lattice.flat("S4"), tables)
        assert double == (poly_y(Y), poly_y(-(Y**2) - Y))
        assert triple == (poly_y(3 * Y - 1), poly_y(-2 * Y**2 - 2 * Y))

    @pytest.mark.parametrize("m_s", range(2, 13))
    def test_edge_poly_closed_form(self, m_s):
        lat = build_lattice(pencil_arrangement(m_s, n=3))
        tables = strata_tables(lat)
        (edge,) = tables.edges
        edge_poly, _ = p3_edge_contribution(edge, tables)
        assert edge_poly == expected_edge_poly(m_s)
        assert evaluate(edge_poly, -1) == -((m_s - 1) ** 2)


class TestHmP3:
    """Tests for the class of a plane arrangement."""

    def test_xyz_xy(self, xyz_xy_lattice):
        sigma = hm_p3(xyz_xy_lattice)
        assert sigma.top == (
            ("S1", poly_y(Y)),
            ("S2", poly_y(Y)),
            ("S3", poly_y(Y)),
            ("S4", poly_y(3 * Y - 1)),
        )
        assert sigma.lower_coefficient(0) == poly_y(-2 * Y**2 - 21 * Y + 1)

    def test_two_planes(self):
        sigma = hm_p3(build_lattice(boolean_arrangement(3, 2)))
        assert sigma.top == (("S1", poly_y(Y)),)
        assert sigma.lower == ((0, poly_y(-(Y**2) - Y)),)

    def test_triple_edge_with_two_points(self):
        lat = build_lattice(pencil_with_coordinate_planes(3))
        sigma = hm_p3(lat)
        edge, _ = triple_edge(lat)
        assert sigma.top_coefficient(edge.id) == poly_y(3 * Y - 1)
        assert sigma.lower_coefficient(0) == poly_y(-49 * Y + 2)

    def test_single_plane(self):
        sigma = hm_p3(build_lattice(boolean_arrangement(3, 1)))
        assert sigma.is_zero
        assert sigma.lower == ()

    def test_milnor_specialization(self, xyz_xy_lattice):
        values = hm_p3(xyz_xy_lattice).specialize(-1)
        assert values == {"S1": -1, "S2": -1, "S3": -1, "S4": -4, "pt": 20}

    def test_needs_p3(self, triangle_lattice):
        with pytest.raises(DimensionError):
            hm_p3(triangle_lattice)


class TestSigmaClass:
    """Tests for classes on the singular locus."""

    def test_missing_coefficients_are_zero(self):
        sigma = SigmaClass(3, (("S1", poly_y(Y)),))
        assert sigma.top_coefficient("S9").is_zero
        assert sigma.lower_coefficient(0).is_zero
        assert not sigma.is_zero

    def test_dispatch(self, triangle_lattice, xyz_xy_lattice):
        assert hm_sigma(triangle_lattice) == hm_p2(triangle_lattice)
        assert hm_sigma(xyz_xy_lattice) == hm_p3(xyz_xy_lattice)
        with pytest.raises(DimensionError):
            hm_sigma(build_lattice(boolean_arrangement(4)))


class TestStratumSpecs:
    """Tests for the spectra attached to strata."""

    def test_xyz_xy(self, xyz_xy_lattice):
        specs = stratum_specs(xyz_xy_lattice)
        kinds = [spec.kind for spec in specs]
        assert kinds.count(EDGE) == 4
        assert kinds.count(EDGE_AT_INFINITY) == 4
        assert kinds.count(POINT) == 1
        (point,) = [spec for spec in specs if spec.kind == POINT]
        assert point.flat_id == "P1"
        assert point.spectrum == Spectrum.from_mapping({1: 2, 2: -3})

    def test_exponents_in_range(self):
        for arr in (generic_arrangement(3, 5), near_pencil_arrangement(6)):
            lat = build_lattice(arr)
            for spec in stratum_specs(lat):
                assert all(0 < alpha <= lat.n for alpha in spec.spectrum.exponents)
