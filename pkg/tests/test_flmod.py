import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

from PairOps.algebra.exactlin import span
from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    annihilator,
    colon,
    dual_module,
    enumerate_submodules,
    free_cover,
    free_module,
    hom_R,
    ideal,
    ideal_colon,
    ideal_power,
    injective_embed,
    injective_module,
    is_isomorphic,
    map_image_preimage,
    maximal_ideal_submodule,
    quotient_module,
    regular_module,
    residue_field,
    scale,
    socle,
    span_submodule,
    submodule_as_module,
    tensor_R,
)
from PairOps.algebra.local_algebra import build_local_algebra
from PairOps.exceptions import EnumerationLimitExceeded, ModuleMismatch, ModuleStructureError, NotASubmodule
from tests import oracle
from tests.conftest import GF2


class TestSubmodules:
    def test_printing(self, R3):
        m = maximal_ideal_submodule(R3)
        assert str(m) == "(x, y, xy)"
        assert str(ideal(R3, ["x"])) == "(x, xy)"
        assert str(regular_module(R3).zero_submodule()) == "0"

    def test_span_closes_under_the_action(self, R3):
        assert ideal(R3, ["x", "y"]) == maximal_ideal_submodule(R3)
        assert ideal(R3, ["x*y"]).dim == 1

    def test_non_invariant_subspace_is_rejected(self, R3):
        reg = regular_module(R3)
        with pytest.raises(NotASubmodule):
            Submodule(reg, span(R3.field, 4, [(0, 1, 0, 0)]))

    def test_ideal_counts(self, R1, R2, R3, R4):
        counts = [len(enumerate_submodules(regular_module(R))) for R in (R1, R2, R3, R4)]
        assert counts == [3, 6, 7, 4]

    @pytest.mark.parametrize("name", ["R1", "R2", "R3"])
    def test_enumeration_matches_brute_force(self, rings, name):
        reg = regular_module(rings[name])
        found = {oracle.element_set(S) for S in enumerate_submodules(reg)}
        assert found == oracle.brute_submodules(reg)

    def test_enumeration_of_e_matches_brute_force(self, E3):
        found = {oracle.element_set(S) for S in enumerate_submodules(E3)}
        assert found == oracle.brute_submodules(E3)

    def test_enumeration_is_ordered(self, R3):
        subs = enumerate_submodules(regular_module(R3))
        assert [S.dim for S in subs] == sorted(S.dim for S in subs)
        assert str(subs[0]) == "0" and str(subs[1]) == "(xy)" and str(subs[2]) == "(x, xy)"

    def test_enumeration_limit(self, R2):
        with pytest.raises(EnumerationLimitExceeded) as err:
            enumerate_submodules(free_module(R2, 2), limit=5)
        assert err.value.limit == 5

    def test_zero_limit_is_not_the_default(self, R1):
        with pytest.raises(EnumerationLimitExceeded) as err:
            enumerate_submodules(regular_module(R1), limit=0)
        assert err.value.limit == 0


class TestColonsAndProducts:
    def test_socle_of_r3(self, R3):
        assert str(socle(regular_module(R3))) == "(xy)"

    def test_colon_against_brute_force(self, R3):
        reg = regular_module(R3)
        m = maximal_ideal_submodule(R3)
        for L in enumerate_submodules(reg):
            assert oracle.element_set(colon(L, reg, m)) == oracle.brute_colon(L, reg, m)

    def test_scale_against_brute_force(self, R3, E3):
        m = maximal_ideal_submodule(R3)
        for M in (regular_module(R3), E3):
            for L in enumerate_submodules(M):
                assert oracle.element_set(scale(m, L, M)) == oracle.brute_scale(m, L, M)

    def test_annihilator_against_brute_force(self, R3, E3):
        for L in enumerate_submodules(E3):
            assert oracle.element_set(annihilator(L)) == oracle.brute_annihilator(L)

    def test_ideal_colon_and_powers(self, R3):
        m = maximal_ideal_submodule(R3)
        assert ideal_power(m, 2) == ideal(R3, ["x*y"])
        assert ideal_power(m, 3).dim == 0
        assert ideal_power(m, 0).dim == 4
        assert ideal_colon(ideal(R3, ["x*y"]), m) == m


class TestConstructions:
    def test_injective_is_the_dual_of_r(self, R3, E3):
        assert E3.labels == ("1*", "x*", "y*", "xy*")
        assert is_isomorphic(dual_module(regular_module(R3)), E3)
        assert str(socle(E3)) == "(1*)"

    def test_concurrent_construction_shares_one_module(self):
        R = build_local_algebra(GF2, ["x", "y"], ["x^2", "y^3"], 5, name="R5")
        barrier = threading.Barrier(8)

        def build(_):
            barrier.wait()
            return dual_module(regular_module(R)), injective_module(R, 2)

        with ThreadPoolExecutor(max_workers=8) as pool:
            built = list(pool.map(build, range(8)))
        assert all(d is built[0][0] and E is built[0][1] for d, E in built)

    def test_r3_is_gorenstein_and_r2_is_not(self, R2, R3):
        assert is_isomorphic(regular_module(R3), injective_module(R3, 1))
        assert not is_isomorphic(regular_module(R2), injective_module(R2, 1))

    def test_quotient_and_projection(self, R3):
        reg = regular_module(R3)
        Q, pi = quotient_module(reg, ideal(R3, ["x*y"]))
        assert Q.name == "R3/(xy)"
        assert Q.dim == 3
        assert pi.kernel() == ideal(R3, ["x*y"])
        assert pi.image(ideal(R3, ["x"])).dim == 1
        assert socle(Q).dim == 2

    def test_map_image_and_preimage(self, R3):
        reg = regular_module(R3)
        Q, pi = quotient_module(reg, ideal(R3, ["x*y"]))
        x = ideal(R3, ["x"])
        image = map_image_preimage(pi, x, "forward")
        assert image == pi.image(x)
        assert map_image_preimage(pi, image, "backward") == x
        assert map_image_preimage(pi, Q.zero_submodule(), "backward") == ideal(R3, ["x*y"])
        with pytest.raises(ModuleMismatch):
            map_image_preimage(pi, image, "forward")
        with pytest.raises(ValueError):
            map_image_preimage(pi, x, "sideways")

    def test_residue_field(self, R3):
        k = residue_field(R3)
        assert k.dim == 1
        assert all(A.is_zero() for A in k.actions)

    def test_submodule_as_module(self, R3):
        m = maximal_ideal_submodule(R3)
        M, inclusion = submodule_as_module(m)
        assert M.dim == 3
        assert inclusion.is_injective()
        assert inclusion.image(M.whole()) == m

    def test_hom_dimensions(self, R3):
        reg = regular_module(R3)
        k = residue_field(R3)
        assert len(hom_R(reg, reg)) == 4
        assert len(hom_R(k, reg)) == 1
        assert len(hom_R(reg, k)) == 1

    def test_tensor_with_the_residue_field(self, R3):
        k = residue_field(R3)
        reg = regular_module(R3)
        assert tensor_R(k, reg).module.dim == 1
        assert tensor_R(reg, reg).module.dim == 4

    def test_free_cover_and_injective_envelope(self, R3):
        Q, _ = quotient_module(regular_module(R3), ideal(R3, ["x*y"]))
        F, pi = free_cover(Q)
        assert F.dim == 4
        assert pi.image(F.whole()) == Q.whole()
        En, iota = injective_embed(Q)
        assert En.dim == 8
        assert iota.is_injective()

    def test_module_check(self, R3):
        reg = regular_module(R3)
        assert reg.check() is reg
        trivial_y = FLModule(R3, 4, (reg.actions[0], reg.actions[0].scaled(0)), None, "trivial y")
        assert trivial_y.check() is trivial_y
        swapped = FLModule(R3, 4, (reg.actions[0], regular_module(R3).actions[0].transpose()), None, "odd")
        with pytest.raises(ModuleStructureError):
            swapped.check()

    def test_span_submodule_by_coordinates(self, E3):
        assert span_submodule(E3, [(0, 0, 0, 1)]).dim == 4
        assert span_submodule(E3, [(1, 0, 0, 0)]).dim == 1
