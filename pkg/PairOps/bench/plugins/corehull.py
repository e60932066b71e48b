import logging

from PairOps.algebra.duality import smile_dual
from PairOps.algebra.flmod import enumerate_submodules
from PairOps.bench import Bench, TaskContext, verdict
from PairOps.bench import params as P
from PairOps.operations.corehull import (
    FAILED,
    PASSED,
    hull_formula_check,
    int_hull,
    reductions,
    verify_core_hull_duality,
)
from PairOps.operations.properties import NAKAYAMA_CLOSURE, check_properties
from PairOps.utils.formatting import submodule_summary

logger = logging.getLogger(__name__)


@Bench.on_task("core")
def core(ctx: TaskContext, params: dict) -> dict:
    cl = P.operation(ctx, params)
    M = P.module(ctx, params)
    found = reductions(cl, P.submodule(ctx, M, params, "N"), M, ctx.bounds.max_submodules)
    out = {**found.to_dict(), "result": submodule_summary(found.core)}
    out.update(P.expected(ctx, found.core, params, lambda e: ctx.resolver.submodule(M, e, f"{ctx.pointer}/expect")))
    return out


@Bench.on_task("hull")
def hull(ctx: TaskContext, params: dict) -> dict:
    interior = P.operation(ctx, params)
    B = P.module(ctx, params)
    found = int_hull(interior, P.submodule(ctx, B, params, "A"), B, ctx.bounds.max_submodules)
    out = {**found.to_dict(), "result": submodule_summary(found.hull)}
    out.update(P.expected(ctx, found.hull, params, lambda e: ctx.resolver.submodule(B, e, f"{ctx.pointer}/expect")))
    return out


@Bench.on_task("core_hull")
def core_hull(ctx: TaskContext, params: dict) -> dict:
    """Core-hull duality for one A, or for every submodule A of B; gated on a Nakayama certificate."""
    cl = P.operation(ctx, params)
    R = P.ring(ctx, params)
    B = P.module(ctx, params)
    certificate = check_properties(cl, R, ctx.bounds, properties=[NAKAYAMA_CLOSURE])
    nakayama = certificate.passed(NAKAYAMA_CLOSURE)
    if "A" in params:
        targets = [P.submodule(ctx, B, params, "A")]
    else:
        targets = enumerate_submodules(B, ctx.bounds.max_submodules)
    reports = [verify_core_hull_duality(cl, A, B, nakayama, ctx.bounds.max_submodules) for A in targets]
    out = {
        "op": cl.name,
        "interior": smile_dual(cl).name,
        "nakayama": certificate.verdicts[NAKAYAMA_CLOSURE].to_dict(),
        "pairs": [r.to_dict() for r in reports],
    }
    if not nakayama:
        out["status"] = "done"
    else:
        out["status"] = verdict(all(r.passed for r in reports))
    return out


@Bench.on_task("hull_formula")
def hull_formula(ctx: TaskContext, params: dict) -> dict:
    cl = P.operation(ctx, params)
    R = P.ring(ctx, params)
    report = hull_formula_check(P.ideal(ctx, R, params, "I"), P.ideal(ctx, R, params, "J"),
                                int(params.get("n", 0)), cl, ctx.bounds.max_submodules)
    status = {PASSED: "pass", FAILED: "fail"}.get(report.status, "done")
    return {"op": cl.name, **report.to_dict(), "status": status, "outcome": report.status}
