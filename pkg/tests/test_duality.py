import pytest

from PairOps.algebra import duality
from PairOps.algebra.duality import (
    KERNEL_VIEW,
    DualizedPair,
    dual_of_quotient,
    dual_sub_quot,
    eta,
    matlis_context,
    matlis_dual,
    smile_dual,
)
from PairOps.algebra.flmod import (
    dual_module,
    enumerate_submodules,
    ideal,
    maximal_ideal_submodule,
    quotient_module,
    regular_module,
)
from PairOps.exceptions import KernelViewMismatch
from PairOps.operations.base import identity_operation
from PairOps.operations.builders import make_be, make_bf, make_module_closure, make_trace
from PairOps.operations.catalogue import duality_catalogue


def pairs(R):
    for entry in duality_catalogue(R, 4):
        for L in enumerate_submodules(entry.module):
            yield entry.module, L


class TestSubQuot:
    def test_dimensions_are_complementary(self, R3, E3):
        for L in enumerate_submodules(E3):
            D = dual_sub_quot(L)
            assert D.parent is dual_module(E3)
            assert D.dim == E3.dim - L.dim
            assert DualizedPair.of(L).codim == D.dim

    def test_order_reversing(self, R3):
        reg = regular_module(R3)
        subs = enumerate_submodules(reg)
        for A in subs:
            for B in subs:
                assert (A <= B) == (dual_sub_quot(B) <= dual_sub_quot(A))

    def test_eta_is_an_isomorphism(self, R3):
        Q, _ = quotient_module(regular_module(R3), ideal(R3, ["x"]))
        assert eta(Q).is_isomorphism()
        assert eta(Q).target is dual_module(dual_module(Q))

    def test_annihilators_in_e(self, R3):
        ctx = matlis_context(R3)
        m = maximal_ideal_submodule(R3)
        assert str(ctx.ann_E(m)) == "(1*)"
        assert ctx.ann_R(ctx.ann_E(m)) == m
        assert ctx.pairing(R3.one().coords, (1, 0, 0, 0)) == 1


class TestSmileDual:
    def test_identity_is_self_dual(self, R3):
        dual = smile_dual(identity_operation())
        for M, L in pairs(R3):
            assert dual(L, M) == L

    @pytest.mark.parametrize("name", ["R1", "R2", "R3"])
    @pytest.mark.parametrize("make", [lambda: make_bf("m"), lambda: make_be("m"),
                                      lambda: make_module_closure(None, "k"), lambda: make_trace(None, "k")])
    def test_double_dual(self, rings, name, make):
        p = make()
        double = smile_dual(smile_dual(p))
        for M, L in pairs(rings[name]):
            assert double(L, M) == p(L, M)

    @pytest.mark.parametrize("name", ["R1", "R2", "R3"])
    def test_bf_and_be_are_dual(self, rings, name):
        dual, be = smile_dual(make_bf("m")), make_be("m")
        for M, L in pairs(rings[name]):
            assert dual(L, M) == be(L, M)

    @pytest.mark.parametrize("name", ["R1", "R2", "R3"])
    @pytest.mark.parametrize("L", ["R", "k", "m"])
    def test_trace_and_module_closure_are_dual(self, rings, name, L):
        for S in (None, [[1]]) if L == "k" else (None,):
            dual, cl = smile_dual(make_trace(S, L)), make_module_closure(S, L)
            for M, N in pairs(rings[name]):
                assert dual(N, M) == cl(N, M)

    def test_kernel_view_is_recorded(self, R3):
        before = KERNEL_VIEW.snapshot()
        dual = smile_dual(make_bf("m"))
        reg = regular_module(R3)
        dual(ideal(R3, ["x"]), reg)
        after = KERNEL_VIEW.snapshot()
        assert after["evaluations"] > before["evaluations"]
        assert after["evaluations"] - before["evaluations"] == after["agreements"] - before["agreements"]

    def test_quotient_dual_matches_vanishing_functionals(self, R3, E3):
        for M in (E3, regular_module(R3)):
            for L in enumerate_submodules(M):
                assert dual_of_quotient(L) == dual_sub_quot(L)

    def test_disagreeing_kernel_view_raises(self, R3, monkeypatch):
        monkeypatch.setattr(duality, "kernel_view", lambda P, B: B.whole())
        before = KERNEL_VIEW.snapshot()
        dual = smile_dual(identity_operation())
        reg = regular_module(R3)
        with pytest.raises(KernelViewMismatch):
            dual(reg.zero_submodule(), reg)
        after = KERNEL_VIEW.snapshot()
        assert after["evaluations"] - before["evaluations"] == 1
        assert after["agreements"] == before["agreements"]


class TestPairing:
    @pytest.mark.parametrize("name", ["R1", "R2", "R3"])
    def test_actions_are_adjoint(self, rings, name):
        M = regular_module(rings[name])
        Md, pairing = matlis_dual(M)
        assert Md is dual_module(M)
        for A, B in zip(M.actions, Md.actions):
            for i in range(M.dim):
                for j in range(M.dim):
                    u, f = M.unit(i), Md.unit(j)
                    assert pairing(A.apply(u), f) == pairing(u, B.apply(f))

    def test_pairing_is_perfect(self, R3):
        ctx = matlis_context(R3)
        reg = regular_module(R3)
        assert ctx.pairing(reg.unit(0), ctx.E.unit(0)) == 1
        assert ctx.pairing(reg.unit(1), ctx.E.unit(0)) == 0
