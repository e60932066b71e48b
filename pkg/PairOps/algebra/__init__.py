from .exactlin import FieldSpec, Matrix, Subspace, kernel, rank, span
from .polynomial import PolyExpr, parse_poly
from .local_algebra import LocalAlgebra, RingElement, build_local_algebra, validate
from .flmod import (
    FLModule,
    ModuleMap,
    Submodule,
    dual_module,
    enumerate_submodules,
    ideal,
    injective_module,
    quotient_module,
    regular_module,
    residue_field,
    socle,
    submodule_as_module,
)
