import pytest

from PairOps.algebra.exactlin import FieldSpec
from PairOps.algebra.polynomial import format_monomial, monomial_key, parse_poly
from PairOps.exceptions import PolyParseError

GF2 = FieldSpec(2)
GF3 = FieldSpec(3)
XY = ("x", "y")


class TestParse:
    def test_monomials_and_powers(self):
        f = parse_poly("x^2*y + 3*x + y", XY, GF3)
        assert str(f) == "x^2y + y"
        assert f.degree == 3

    def test_coefficients_reduce_in_the_field(self):
        assert parse_poly("2*x + x", XY, GF3).is_zero()
        assert str(parse_poly("x + x + y", XY, GF2)) == "y"

    def test_constant_term(self):
        assert str(parse_poly("1", XY, GF2)) == "1"
        assert str(parse_poly("x*y + 1", XY, GF2)) == "xy + 1"

    def test_whitespace_is_ignored(self):
        assert parse_poly(" x ^ 2 *  y ", XY, GF2) == parse_poly("x^2*y", XY, GF2)

    def test_repeated_variable_multiplies(self):
        assert parse_poly("x*x", XY, GF2) == parse_poly("x^2", XY, GF2)

    @pytest.mark.parametrize("text, position", [
        ("x +", 3),
        ("x + z", 4),
        ("x ^ y", 4),
        ("x $ y", 2),
        ("", 0),
        ("x y", 2),
    ])
    def test_errors_carry_position(self, text, position):
        with pytest.raises(PolyParseError) as err:
            parse_poly(text, XY, GF2)
        assert err.value.position == position
        assert err.value.to_dict()["code"] == "E-POLY"


class TestMonomialOrder:
    def test_degree_first_then_earlier_variable(self):
        monos = [(1, 1), (0, 0), (0, 1), (1, 0)]
        assert sorted(monos, key=monomial_key) == [(0, 0), (1, 0), (0, 1), (1, 1)]

    def test_format(self):
        assert format_monomial(XY, (0, 0)) == "1"
        assert format_monomial(XY, (2, 1)) == "x^2y"
