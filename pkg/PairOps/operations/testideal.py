"""
Test ideals of a closure: the big form ann_R cl(0, E), the finitistic form,
and the brute-force intersection of (L :_R cl(L, M)) over the catalogue.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from PairOps.algebra.duality import matlis_context, smile_dual
from PairOps.algebra.flmod import (
    Submodule,
    annihilator,
    enumerate_submodules,
    ideal_colon,
    regular_module,
    unit_ideal,
)
from PairOps.algebra.local_algebra import LocalAlgebra
from PairOps.config import BoundsSpec
from PairOps.operations.base import PairOperation
from PairOps.operations.builders import make_module_closure, make_trace
from PairOps.operations.catalogue import module_catalogue
from PairOps.operations.combinators import finitistic

logger = logging.getLogger(__name__)

BIG, FINITISTIC, ENUMERATED = "big", "finitistic", "enumerated"
MODES = (BIG, FINITISTIC, ENUMERATED)


@dataclass
class TestIdealReport:
    __test__ = False

    operation: str
    ring: str
    values: dict[str, Submodule] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return len({v.space for v in self.values.values()}) <= 1

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "ring": self.ring,
            "values": {mode: str(v) for mode, v in self.values.items()},
            "consistent": self.consistent,
        }


def big_test_ideal(cl: PairOperation, R: LocalAlgebra) -> Submodule:
    E = matlis_context(R).E
    return annihilator(cl(E.zero_submodule(), E))


def finitistic_test_ideal(cl: PairOperation, R: LocalAlgebra, bounds: BoundsSpec | None = None) -> Submodule:
    bounds = bounds or BoundsSpec.resolve()
    E = matlis_context(R).E
    return annihilator(finitistic(cl, bounds.max_submodules)(E.zero_submodule(), E))


def enumerated_test_ideal(cl: PairOperation, R: LocalAlgebra, bounds: BoundsSpec | None = None) -> Submodule:
    bounds = bounds or BoundsSpec.resolve()
    tau = unit_ideal(R)
    for entry in module_catalogue(R, bounds.max_dim):
        M = entry.module
        for L in enumerate_submodules(M, bounds.max_submodules):
            if cl.accepts(L, M):
                tau = tau & ideal_colon(L, cl(L, M))
    return tau


_MODES = {BIG: big_test_ideal, FINITISTIC: finitistic_test_ideal, ENUMERATED: enumerated_test_ideal}


def compute_test_ideal(cl: PairOperation, R: LocalAlgebra, mode: str = BIG,
                       bounds: BoundsSpec | None = None) -> TestIdealReport:
    """
    The test ideal of `cl` in the requested mode. The report carries the value
    of every mode up to the requested one so they can be compared.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {', '.join(MODES)}, not {mode!r}")
    report = TestIdealReport(cl.name, R.name)
    report.values[BIG] = big_test_ideal(cl, R)
    if mode != BIG:
        report.values[FINITISTIC] = finitistic_test_ideal(cl, R, bounds)
    if mode == ENUMERATED:
        report.values[ENUMERATED] = enumerated_test_ideal(cl, R, bounds)
    logger.info("test ideal of %s over %s: %s", cl.name, R.name, report.values[mode])
    return report


# ---------------------[ CHAIN ]---------------------#

@dataclass
class ChainRow:
    ideal: Submodule
    dual_value: Submodule
    through_E: Submodule
    finitistic_value: Submodule
    colon_value: Submodule

    @property
    def ok(self) -> bool:
        return self.dual_value == self.through_E and self.finitistic_value == self.colon_value

    def to_dict(self) -> dict:
        return {
            "ideal": str(self.ideal),
            "smile(cl)(I,R)": str(self.dual_value),
            "ann_R cl(ann_E I, E)": str(self.through_E),
            "ann_R fin(cl)(ann_E I, E)": str(self.finitistic_value),
            "(0 : (0 : I)^cl)": str(self.colon_value),
            "ok": self.ok,
        }


def check_test_ideal_chain(cl: PairOperation, R: LocalAlgebra, bounds: BoundsSpec | None = None) -> list[ChainRow]:
    """For every ideal I: smile(cl)(I, R) = ann_R cl(0 :_E I, E), and ann_R fin(cl)(0 :_E I, E) = (0 : (0 : I)^cl)."""
    bounds = bounds or BoundsSpec.resolve()
    ctx = matlis_context(R)
    reg = regular_module(R)
    dual = smile_dual(cl)
    fin = finitistic(cl, bounds.max_submodules)
    rows = []
    for I in enumerate_submodules(reg, bounds.max_submodules):
        socle_part = ctx.ann_E(I)
        rows.append(ChainRow(
            ideal=I,
            dual_value=dual(I, reg),
            through_E=annihilator(cl(socle_part, ctx.E)),
            finitistic_value=annihilator(fin(socle_part, ctx.E)),
            colon_value=annihilator(cl(annihilator(I), reg)),
        ))
    failed = sum(not row.ok for row in rows)
    if failed:
        logger.warning("test ideal chain of %s over %s fails at %d ideals", cl.name, R.name, failed)
    return rows


def trace_ideal_check(S, L, R: LocalAlgebra) -> tuple[Submodule, Submodule]:
    """tr_{S,L}(R) and ann_R cl_{S,L}(0, E); they agree."""
    reg = regular_module(R)
    E = matlis_context(R).E
    trace = make_trace(S, L)(reg.whole(), reg)
    closure = make_module_closure(S, L)(E.zero_submodule(), E)
    return trace, annihilator(closure)


