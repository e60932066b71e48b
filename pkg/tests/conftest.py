import pytest

from PairOps.algebra.exactlin import FieldSpec
from PairOps.algebra.flmod import injective_module, regular_module
from PairOps.algebra.local_algebra import build_local_algebra
from PairOps.config import BoundsSpec

GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


@pytest.fixture(scope="session")
def R1():
    return build_local_algebra(GF2, ["x"], ["x^2"], 2, name="R1")


@pytest.fixture(scope="session")
def R2():
    return build_local_algebra(GF2, ["x", "y"], ["x^2", "x*y", "y^2"], 2, name="R2")


@pytest.fixture(scope="session")
def R3():
    return build_local_algebra(GF2, ["x", "y"], ["x^2", "y^2"], 4, name="R3")


@pytest.fixture(scope="session")
def R4():
    return build_local_algebra(GF3, ["x"], ["x^3"], 3, name="R4")


@pytest.fixture(scope="session")
def rings(R1, R2, R3):
    return {"R1": R1, "R2": R2, "R3": R3}


@pytest.fixture
def reg3(R3):
    return regular_module(R3)


@pytest.fixture
def E3(R3):
    return injective_module(R3, 1)


@pytest.fixture(scope="session")
def bounds():
    return BoundsSpec.resolve({"max_dim": 8, "max_submodules": 20000, "max_maps": 64, "iso_trials": 1})
