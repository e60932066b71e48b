"""
Reductions and cores of a closure, expansions and hulls of an interior, and
the checks tying them together through Matlis duality.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from itertools import product

from PairOps.algebra.duality import dual_sub_quot, matlis_context, smile_dual
from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    dual_module,
    enumerate_submodules,
    ideal_colon,
    ideal_power,
    quotient_module,
    regular_module,
    scale,
    submodule_as_module,
)
from PairOps.operations.base import PairOperation

logger = logging.getLogger(__name__)

PASSED = "pass"
FAILED = "fail"
HYPOTHESES_UNMET = "hypotheses unmet"
PREMISE_FALSE = "premise false, theorem vacuous"


def _ordered(subs) -> tuple[Submodule, ...]:
    return tuple(sorted(subs, key=lambda S: S.space.sort_key()))


# ---------------------[ CORE ]---------------------#

@dataclass(frozen=True)
class ReductionSet:
    closure: str
    N: Submodule
    M: FLModule
    reductions: tuple[Submodule, ...]

    @property
    def core(self) -> Submodule:
        return reduce(lambda a, b: a & b, self.reductions, self.N)

    def to_dict(self) -> dict:
        return {
            "closure": self.closure,
            "N": str(self.N),
            "M": self.M.name,
            "reductions": [str(L) for L in self.reductions],
            "core": str(self.core),
        }


def reductions(cl: PairOperation, N: Submodule, M: FLModule, limit: int | None = None) -> ReductionSet:
    """All L <= N with N <= cl(L, M)."""
    Nmod, inclusion = submodule_as_module(N)
    found = []
    for K in enumerate_submodules(Nmod, limit):
        L = inclusion.image(K)
        if cl.accepts(L, M) and N <= cl(L, M):
            found.append(L)
    logger.debug("%s-reductions of %s in %s: %d", cl.name, N, M.name, len(found))
    return ReductionSet(cl.name, N, M, _ordered(found))


def cl_core(cl: PairOperation, N: Submodule, M: FLModule, limit: int | None = None) -> Submodule:
    return reductions(cl, N, M, limit).core


# ---------------------[ HULL ]---------------------#

@dataclass(frozen=True)
class ExpansionSet:
    interior: str
    A: Submodule
    B: FLModule
    expansions: tuple[Submodule, ...]
    candidates: tuple[Submodule, ...]

    @property
    def agree(self) -> bool:
        return set(self.expansions) == set(self.candidates)

    def to_dict(self) -> dict:
        return {
            "interior": self.interior,
            "A": str(self.A),
            "B": self.B.name,
            "expansions": [str(C) for C in self.expansions],
            "candidates": [str(C) for C in self.candidates],
            "agree": self.agree,
        }


def _intermediates(A: Submodule, B: FLModule, limit: int | None) -> list[Submodule]:
    Q, pi = quotient_module(B, A)
    return [pi.preimage(S) for S in enumerate_submodules(Q, limit)]


def expansions(interior: PairOperation, A: Submodule, B: FLModule, limit: int | None = None) -> ExpansionSet:
    """
    Expansions C (A <= C, int(C) = int(A)) together with the candidates of the
    hull sum (A <= C, int(C) <= A).
    """
    base = interior(A, B)
    found, candidates = [], []
    for C in _intermediates(A, B, limit):
        if not interior.accepts(C, B):
            continue
        value = interior(C, B)
        if value == base:
            found.append(C)
        if value <= A:
            candidates.append(C)
    result = ExpansionSet(interior.name, A, B, _ordered(found), _ordered(candidates))
    if not result.agree:
        logger.info("%s: expansions and hull candidates differ at (%s, %s)", interior.name, A, B.name)
    return result


@dataclass(frozen=True)
class HullResult:
    hull: Submodule
    expansion_sum: Submodule
    expansions: ExpansionSet

    @property
    def diverges(self) -> bool:
        return self.hull != self.expansion_sum

    def to_dict(self) -> dict:
        return {
            "hull": str(self.hull),
            "expansion_sum": str(self.expansion_sum),
            "diverges": self.diverges,
            **self.expansions.to_dict(),
        }


def int_hull(interior: PairOperation, A: Submodule, B: FLModule, limit: int | None = None) -> HullResult:
    """Sum of all C with int(C) <= A <= C <= B, and the sum of the expansions for comparison."""
    found = expansions(interior, A, B, limit)
    total = reduce(lambda a, b: a + b, found.candidates, A)
    by_expansion = reduce(lambda a, b: a + b, found.expansions, A)
    return HullResult(total, by_expansion, found)


# ---------------------[ DUALITY ]---------------------#

@dataclass
class CoreHullReport:
    status: str
    A: Submodule
    B: FLModule
    hull: Submodule | None = None
    core: Submodule | None = None
    identified: bool = False
    bijective: bool = False
    order_reversing: bool = False
    witnesses: list[dict] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASSED

    def to_dict(self) -> dict:
        data = {"status": self.status, "A": str(self.A), "B": self.B.name}
        if self.hull is not None:
            data.update({
                "hull": str(self.hull),
                "core_of_dual": str(self.core),
                "identified": self.identified,
                "bijective": self.bijective,
                "order_reversing": self.order_reversing,
            })
        if self.witnesses:
            data["witnesses"] = self.witnesses
        if self.note:
            data["note"] = self.note
        return data


def verify_core_hull_duality(cl: PairOperation, A: Submodule, B: FLModule, nakayama: bool,
                             limit: int | None = None) -> CoreHullReport:
    """
    The hull of A in B for the dual interior against the core of (B/A)^v in
    B^v, and C -> (B/C)^v from expansions onto reductions. `nakayama` states
    whether cl was certified a Nakayama closure; nothing is asserted otherwise.
    """
    if not nakayama:
        return CoreHullReport(HYPOTHESES_UNMET, A, B, note=f"{cl.name} is not certified a Nakayama closure")
    interior = smile_dual(cl)
    hull = int_hull(interior, A, B, limit)
    Bd = dual_module(B)
    red = reductions(cl, dual_sub_quot(A), Bd, limit)
    report = CoreHullReport(FAILED, A, B, hull.hull, red.core)
    report.identified = dual_sub_quot(hull.hull) == red.core
    if not report.identified:
        report.witnesses.append({"dual_of_hull": str(dual_sub_quot(hull.hull)), "core": str(red.core)})

    exps = hull.expansions.expansions
    images = [dual_sub_quot(C) for C in exps]
    report.bijective = len(set(images)) == len(exps) and set(images) == set(red.reductions)
    if not report.bijective:
        missing = [str(L) for L in red.reductions if L not in set(images)]
        stray = [str(C) for C, D in zip(exps, images) if D not in set(red.reductions)]
        report.witnesses.append({"unmatched_reductions": missing, "stray_expansions": stray})
    report.order_reversing = True
    for (C1, D1), (C2, D2) in product(zip(exps, images), repeat=2):
        if (C1 <= C2) != (D2 <= D1):
            report.order_reversing = False
            report.witnesses.append({"C1": str(C1), "C2": str(C2)})
            break
    if report.identified and report.bijective and report.order_reversing:
        report.status = PASSED
    logger.info("core-hull duality of %s at (%s, %s): %s", cl.name, A, B.name, report.status)
    return report


@dataclass
class HullFormulaReport:
    status: str
    is_reduction: bool
    premise: bool
    core: Submodule
    colon_ideal: Submodule
    hull: Submodule
    formula: Submodule

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "J_is_reduction": self.is_reduction,
            "premise": self.premise,
            "core(I)": str(self.core),
            "(J^(n+1) : I^n)": str(self.colon_ideal),
            "hull(0 :_E I)": str(self.hull),
            "I^n (0 :_E J^(n+1))": str(self.formula),
        }


def hull_formula_check(I: Submodule, J: Submodule, n: int, cl: PairOperation,
                       limit: int | None = None) -> HullFormulaReport:
    """
    When core(I) = (J^(n+1) : I^n), hull^E(0 :_E I) = I^n (0 :_E J^(n+1)).
    Both sides are always recorded; equality is asserted only under the premise.
    """
    R = I.parent.ring
    reg = regular_module(R)
    ctx = matlis_context(R)
    is_reduction = J <= I and I <= cl(J, reg)
    core = cl_core(cl, I, reg, limit)
    colon_ideal = ideal_colon(ideal_power(J, n + 1), ideal_power(I, n))
    premise = core == colon_ideal
    hull = int_hull(smile_dual(cl), ctx.ann_E(I), ctx.E, limit).hull
    formula = scale(ideal_power(I, n), ctx.ann_E(ideal_power(J, n + 1)), ctx.E)
    if not is_reduction:
        status = HYPOTHESES_UNMET
    elif not premise:
        status = PREMISE_FALSE
    else:
        status = PASSED if hull == formula else FAILED
    return HullFormulaReport(status, is_reduction, premise, core, colon_ideal, hull, formula)
