import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

from PairOps.algebra.flmod import (
    enumerate_submodules,
    ideal,
    maximal_ideal_submodule,
    quotient_module,
    regular_module,
    socle,
    unit_ideal,
)
from PairOps.config import Algebra, Bounds
from PairOps.exceptions import EmptyOperationList, ModuleMismatch, OutOfDomain
from PairOps.operations.base import SELECTORS, BoundedMemo, identity_operation, selector_from
from PairOps.operations.builders import (
    gamma,
    make_be,
    make_bf,
    make_custom_table,
    make_frobenius_closure,
    make_module_closure,
    make_trace,
    rho,
)
from PairOps.operations.catalogue import duality_catalogue, module_catalogue
from PairOps.operations.combinators import (
    cohereditary_version,
    finitistic,
    finitistic_intermediate,
    finitistic_union,
    hereditary_version,
    join,
    meet,
)


X = [[0, 1, 0, 0]]


def ideals(R, *gens):
    return ideal(R, list(gens))


class TestBuiltins:
    def test_basically_full_and_empty(self, R3, reg3):
        assert make_bf("m")(ideals(R3, "x"), reg3) == maximal_ideal_submodule(R3)
        assert make_be("m")(ideals(R3, "x"), reg3) == ideals(R3, "x*y")
        assert make_bf("m").name == "bf_m"

    def test_module_closures(self, R3, reg3):
        assert make_module_closure(None, "k")(ideals(R3, "x*y"), reg3) == maximal_ideal_submodule(R3)
        assert make_module_closure(X, "R")(ideals(R3, "x*y"), reg3) == maximal_ideal_submodule(R3)
        for N in enumerate_submodules(reg3):
            assert make_module_closure(None, "R")(N, reg3) == N

    def test_traces(self, R3, reg3):
        whole = reg3.whole()
        assert make_trace(None, "k")(whole, reg3) == ideals(R3, "x*y")
        assert make_trace(X, "R")(whole, reg3) == ideals(R3, "x")
        for N in enumerate_submodules(reg3):
            assert make_trace(None, "R")(N, reg3) == N

    def test_socle_selector(self, R3, reg3):
        assert gamma(SELECTORS["socle"])(reg3.whole(), reg3) == ideals(R3, "x*y")
        assert rho(SELECTORS["zero"])(ideals(R3, "x"), reg3) == ideals(R3, "x")
        assert rho(SELECTORS["full"])(ideals(R3, "x"), reg3) == reg3.whole()

    def test_selector_from_operation(self, R3, reg3):
        alpha = selector_from(make_bf("m"))
        assert alpha(reg3) == socle(reg3)

    def test_frobenius_closure(self, R4):
        reg = regular_module(R4)
        assert make_frobenius_closure()(ideals(R4, "x^2"), reg) == ideals(R4, "x")
        assert make_frobenius_closure()(reg.zero_submodule(), reg) == ideals(R4, "x")

    def test_frobenius_is_limited_to_ideals(self, R3, E3):
        F = make_frobenius_closure()
        assert not F.accepts(E3.zero_submodule(), E3)
        with pytest.raises(OutOfDomain):
            F(E3.zero_submodule(), E3)

    def test_pairs_must_match(self, R3, reg3, E3):
        with pytest.raises(ModuleMismatch):
            identity_operation()(reg3.whole(), E3)

    def test_custom_table(self, R2):
        reg = regular_module(R2)
        cl_x = make_custom_table(R2, [(ideals(R2, "x"), ideals(R2, "x"))], unit_ideal(R2), name="cl_x")
        assert cl_x(reg.zero_submodule(), reg) == ideals(R2, "x")
        assert cl_x(maximal_ideal_submodule(R2), reg) == reg.whole()


class TestCombinators:
    def test_meet_and_join(self, R3, reg3):
        both = meet([make_bf("m"), make_module_closure(None, "k")])
        assert both(ideals(R3, "x"), reg3) == maximal_ideal_submodule(R3)
        either = join([make_be("m"), identity_operation()])
        assert either(ideals(R3, "x"), reg3) == ideals(R3, "x")
        with pytest.raises(EmptyOperationList):
            meet([])

    def test_join_of_closures_is_not_idempotent(self, R2):
        reg = regular_module(R2)
        cl_x = make_custom_table(R2, [(ideals(R2, "x"), ideals(R2, "x"))], unit_ideal(R2), name="cl_x")
        cl_y = make_custom_table(R2, [(ideals(R2, "y"), ideals(R2, "y"))], unit_ideal(R2), name="cl_y")
        both = join([cl_x, cl_y])
        once = both(reg.zero_submodule(), reg)
        assert once == maximal_ideal_submodule(R2)
        assert both(once, reg) == reg.whole()

    def test_cohereditary_version_is_strictly_smaller_for_bf(self, R3, reg3):
        Q, _ = quotient_module(reg3, ideals(R3, "x*y"))
        bf = make_bf("m")
        assert bf(Q.zero_submodule(), Q).dim == 2
        assert cohereditary_version(bf)(Q.zero_submodule(), Q).dim == 0

    def test_cohereditary_version_fixes_residual_operations(self, R2):
        for alpha in SELECTORS.values():
            p = rho(alpha)
            ch = cohereditary_version(p)
            for entry in module_catalogue(R2):
                for L in enumerate_submodules(entry.module):
                    assert ch(L, entry.module) == p(L, entry.module)

    def test_versions_of_identity(self, R3):
        ident = identity_operation()
        for entry in duality_catalogue(R3, 4):
            for L in enumerate_submodules(entry.module):
                assert cohereditary_version(ident)(L, entry.module) == L
                assert hereditary_version(ident)(L, entry.module) == L

    def test_hereditary_version_on_e(self, R3, E3):
        bf = make_bf("m")
        for L in enumerate_submodules(E3):
            assert hereditary_version(bf)(L, E3) == bf(L, E3)

    def test_finitistic_identity(self, R3, reg3):
        fin = finitistic(identity_operation())
        for L in enumerate_submodules(reg3):
            assert fin(L, reg3) == L
        union = finitistic_union(identity_operation(), ideals(R3, "x"), reg3)
        assert union.is_submodule
        assert union.span == ideals(R3, "x")

    def test_finitistic_stays_below_bf(self, R3, reg3):
        bf = make_bf("m")
        fin = finitistic(bf)
        for L in enumerate_submodules(reg3):
            assert L <= fin(L, reg3) <= bf(L, reg3)

    def test_finitistic_intermediate(self, R3, reg3):
        bf = make_bf("m")
        fin_int = finitistic_intermediate(bf)
        ident = finitistic_intermediate(identity_operation())
        for L in enumerate_submodules(reg3):
            assert ident(L, reg3) == L
            assert bf(L, reg3) <= fin_int(L, reg3)
        assert fin_int.name == "fin_int(bf_m)"


class TestCatalogue:
    def test_r1_collapses_to_two_classes(self, R1):
        assert [e.label for e in module_catalogue(R1)] == ["R1", "R1/(x)"]

    def test_duality_catalogue_of_r3(self, R3):
        labels = [e.label for e in duality_catalogue(R3, 4)]
        assert labels == ["R3", "E", "R3/(xy)", "R3/(x)", "R3/(x + y)", "R3/(y)"]

    def test_catalogue_starts_with_r(self, R2):
        assert module_catalogue(R2)[0].module is regular_module(R2)

    def test_default_dimension_follows_current_bounds(self, R2, monkeypatch):
        full = module_catalogue(R2)
        monkeypatch.setattr(Bounds, "MAX_DIM", 1)
        assert all(e.module.dim <= 1 for e in module_catalogue(R2))
        monkeypatch.undo()
        assert module_catalogue(R2) == full


class TestMemo:
    def test_memo_is_bounded(self, reg3, monkeypatch):
        monkeypatch.setattr(Algebra, "MEMO_SIZE", 2)
        bf = make_bf("m")
        subs = enumerate_submodules(reg3)
        first = [bf(L, reg3) for L in subs]
        assert len(bf._memo) == 2
        assert [bf(L, reg3) for L in subs] == first

    def test_zero_size_keeps_nothing(self, reg3):
        memo = BoundedMemo(0)
        assert memo.put("key", reg3.whole()) == reg3.whole()
        assert len(memo) == 0 and memo.get("key") is None

    def test_concurrent_callers_share_one_result(self, R3, reg3):
        be = make_be("m")
        L = ideal(R3, ["x"])
        barrier = threading.Barrier(8)

        def evaluate(_):
            barrier.wait()
            return be(L, reg3)

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(evaluate, range(8)))
        assert all(r is results[0] for r in results)
        assert len(be._memo) == 1

    def test_selector_memo_is_shared(self, reg3):
        socle_of = SELECTORS["socle"]
        assert socle_of(reg3) is socle_of(reg3)
