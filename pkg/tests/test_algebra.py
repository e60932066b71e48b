import pytest

from PairOps.algebra.exactlin import FieldSpec
from PairOps.algebra.local_algebra import build_local_algebra, maximal_ideal, multiply, validate
from PairOps.exceptions import NilBoundError, PolyParseError, RingMismatch, ZeroRingError
from tests.conftest import GF2


class TestConstruction:
    def test_bases(self, R1, R2, R3, R4):
        assert R1.labels == ("1", "x")
        assert R2.labels == ("1", "x", "y")
        assert R3.labels == ("1", "x", "y", "xy")
        assert R4.labels == ("1", "x", "x^2")
        assert str(R4.field) == "GF(3)"

    def test_maximal_ideal_has_codimension_one(self, rings):
        for R in rings.values():
            assert R.dim - R.maximal_ideal.dim == 1

    def test_tables_validate(self, R1, R2, R3, R4):
        for R in (R1, R2, R3, R4):
            report = validate(R)
            assert report.ok, report.first_failure().describe()
            assert report["associativity"].passed

    def test_rational_algebra(self):
        R = build_local_algebra(FieldSpec(0), ["t"], ["t^3"], 3, name="Q3")
        assert R.labels == ("1", "t", "t^2")
        assert str(R.parse("t") ** 2) == "t^2"

    def test_unit_ideal_is_rejected(self):
        with pytest.raises(ZeroRingError):
            build_local_algebra(GF2, ["x"], ["1"], 2)

    def test_short_nil_bound_is_rejected(self):
        with pytest.raises(NilBoundError):
            build_local_algebra(GF2, ["x"], ["x^3"], 2)
        with pytest.raises(NilBoundError):
            build_local_algebra(GF2, ["x"], ["x^2"], 0)

    def test_bad_relation_text(self):
        with pytest.raises(PolyParseError):
            build_local_algebra(GF2, ["x"], ["x^"], 2)


class TestArithmetic:
    def test_products_in_r3(self, R3):
        x, y = R3.variable("x"), R3.variable("y")
        assert str(x * y) == "xy"
        assert (x * x).is_zero()
        assert x * y == y * x

    def test_powers_in_r4(self, R4):
        x = R4.parse("x")
        assert str(x ** 2) == "x^2"
        assert (x ** 3).is_zero()
        assert str(R4.parse("2*x") + R4.parse("2*x")) == "x"

    def test_parse_reduces_modulo_the_relations(self, R3):
        assert R3.parse("x^2 + x*y").coords == (0, 0, 0, 1)
        assert R3.parse("1 + x") - R3.one() == R3.variable("x")

    def test_elements_of_different_rings_do_not_mix(self, R1, R3):
        with pytest.raises(RingMismatch):
            R1.variable("x") * R3.variable("x")

    def test_module_level_helpers(self, R3):
        x, y = R3.variable("x"), R3.variable("y")
        assert multiply(x, y) == x * y
        assert multiply(R3.one(), x) == x
        m = maximal_ideal(R3)
        assert m.dim == 3
        assert m.contains((x * y).coords)
        assert not m.contains(R3.one().coords)
