import pytest

from PairOps.algebra.duality import smile_dual
from PairOps.operations.base import SELECTORS, identity_operation
from PairOps.operations.builders import make_be, make_bf, make_custom_table
from PairOps.operations.combinators import join
from PairOps.operations.properties import (
    CLOSURE,
    DERIVED,
    EXTENSIVE,
    FAIL,
    IDEMPOTENT,
    INTENSIVE,
    INTERIOR,
    NAKAYAMA_CLOSURE,
    ORDER_SUBMODULES,
    PASS,
    PROPERTIES,
    RESIDUAL,
    check_properties,
    check_selector_properties,
    compare_dual_reports,
)
from PairOps.algebra.flmod import ideal, unit_ideal


class TestPairProperties:
    def test_identity_has_every_property(self, R1, bounds):
        report = check_properties(identity_operation(), R1, bounds)
        assert list(report.verdicts) == list(PROPERTIES + DERIVED)
        failing = {name: v.to_dict() for name, v in report.verdicts.items() if v.status != PASS}
        assert not failing

    def test_bf_is_a_closure_but_not_residual(self, R3, bounds):
        report = check_properties(make_bf("m"), R3, bounds, properties=[EXTENSIVE, IDEMPOTENT, RESIDUAL])
        assert report.status(EXTENSIVE) == PASS
        assert report.status(IDEMPOTENT) == PASS
        residual = report.verdicts[RESIDUAL]
        assert residual.status == FAIL
        assert residual.witness["pair"] == ["0", "R3/(xy)"]

    def test_be_is_intensive_and_not_extensive(self, R3, bounds):
        report = check_properties(make_be("m"), R3, bounds, properties=[INTENSIVE, EXTENSIVE])
        assert report.passed(INTENSIVE)
        witness = report.verdicts[EXTENSIVE].witness
        assert report.status(EXTENSIVE) == FAIL
        assert witness == {"module": "R3", "L": "(x, xy)", "p(L,M)": "(xy)"}

    def test_join_of_closures_fails_idempotence_at_zero(self, R2, bounds):
        cl_x = make_custom_table(R2, [(ideal(R2, ["x"]), ideal(R2, ["x"]))], unit_ideal(R2), name="cl_x")
        cl_y = make_custom_table(R2, [(ideal(R2, ["y"]), ideal(R2, ["y"]))], unit_ideal(R2), name="cl_y")
        report = check_properties(join([cl_x, cl_y]), R2, bounds, properties=[IDEMPOTENT])
        assert report.status(IDEMPOTENT) == FAIL
        assert report.verdicts[IDEMPOTENT].witness["L"] == "0"

    def test_derived_closure_and_gating(self, R2, bounds):
        report = check_properties(make_be("m"), R2, bounds, properties=[NAKAYAMA_CLOSURE])
        assert report.status(CLOSURE) == FAIL
        assert report.status(NAKAYAMA_CLOSURE) == FAIL
        assert "not a closure operation" == report.verdicts[NAKAYAMA_CLOSURE].witness["reason"]

    def test_scope_names_the_catalogue(self, R1, bounds):
        report = check_properties(identity_operation(), R1, bounds, properties=[EXTENSIVE]).to_dict()
        assert report["scope"]["modules"] == ["R1", "R1/(x)"]
        assert report["scope"]["max_maps"] == bounds.max_maps


class TestDualReports:
    @pytest.mark.parametrize("name", ["R2", "R3"])
    def test_bf_and_its_dual_correspond(self, rings, bounds, name):
        R = rings[name]
        bf = make_bf("m")
        wanted = [EXTENSIVE, INTENSIVE, ORDER_SUBMODULES, IDEMPOTENT]
        report = check_properties(bf, R, bounds, properties=wanted)
        dual = check_properties(smile_dual(bf), R, bounds, properties=wanted)
        comparison = compare_dual_reports(report, dual)
        assert comparison.ok, comparison.asymmetries
        assert dual.status(INTENSIVE) == PASS
        assert dual.status(INTERIOR) == PASS


class TestSelectorProperties:
    def test_socle(self, R3, bounds):
        report = check_selector_properties(SELECTORS["socle"], R3, bounds)
        assert report.status("order-preserving") == PASS
        assert report.status("functorial") == PASS
        assert report.status(IDEMPOTENT) == PASS
        assert report.status("co-idempotent") == FAIL

    def test_radical(self, R3, bounds):
        report = check_selector_properties(SELECTORS["radical"], R3, bounds)
        assert report.status(IDEMPOTENT) == FAIL
        assert report.status("co-idempotent") == PASS
