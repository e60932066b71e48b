import logging

from PairOps.algebra.flmod import enumerate_submodules, maximal_ideal_submodule, regular_module, socle
from PairOps.algebra.local_algebra import validate
from PairOps.bench import Bench, TaskContext, verdict
from PairOps.bench import params as P
from PairOps.exceptions import SchemaError
from PairOps.operations.testideal import MODES, check_test_ideal_chain, compute_test_ideal, trace_ideal_check
from PairOps.utils.formatting import submodule_summary

logger = logging.getLogger(__name__)


@Bench.on_task("test_ideal")
def ideal_test(ctx: TaskContext, params: dict) -> dict:
    cl = P.operation(ctx, params)
    R = P.ring(ctx, params)
    mode = params.get("mode", "big")
    if mode not in MODES:
        raise SchemaError(f"mode must be one of {', '.join(MODES)}", f"{ctx.pointer}/mode")
    report = compute_test_ideal(cl, R, mode, ctx.bounds)
    value = report.values[mode]
    out = {
        "op": cl.name,
        "ring": R.name,
        "mode": mode,
        "result": submodule_summary(value),
        "values": {k: str(v) for k, v in report.values.items()},
        "consistent": report.consistent,
    }
    out.update(P.expected(ctx, value, params, lambda e: ctx.resolver.ideal(e, R, f"{ctx.pointer}/expect")))
    return out


@Bench.on_task("test_ideal_chain")
def ideal_test_chain(ctx: TaskContext, params: dict) -> dict:
    rows = check_test_ideal_chain(P.operation(ctx, params), P.ring(ctx, params), ctx.bounds)
    return {"status": verdict(all(r.ok for r in rows)), "rows": [r.to_dict() for r in rows]}


@Bench.on_task("trace_ideal")
def trace_ideal(ctx: TaskContext, params: dict) -> dict:
    """tr_{S,L}(R) against ann_R cl_{S,L}(0, E)."""
    R = P.ring(ctx, params)
    L = params.get("L", "R")
    if L not in ("R", "k", "m"):
        L = ctx.resolver.module(L)
    trace, annihilated = trace_ideal_check(params.get("S"), L, R)
    return {
        "status": verdict(trace == annihilated),
        "trace": submodule_summary(trace),
        "ann_closure_of_zero": submodule_summary(annihilated),
    }


@Bench.on_task("fixtures")
def fixtures(ctx: TaskContext, params: dict) -> dict:
    """Basis, maximal ideal, socle and ideal count of each ring."""
    names = params.get("rings") or [r.name for r in ctx.resolver.workspace.rings]
    rings = {}
    for name in names:
        R = ctx.resolver.ring(name)
        reg = regular_module(R)
        rings[name] = {
            "field": str(R.field),
            "dim": R.dim,
            "basis": list(R.labels),
            "maximal_ideal": str(maximal_ideal_submodule(R)),
            "socle": str(socle(reg)),
            "ideals": len(enumerate_submodules(reg, ctx.bounds.max_submodules)),
            "valid": validate(R).ok,
        }
    out = {"rings": rings}
    want = params.get("expect")
    if want is None:
        out["status"] = "done"
        return out
    mismatched = sorted(
        f"{name}.{key}" for name, fields in want.items() for key, value in fields.items()
        if name not in rings or rings[name].get(key) != value
    )
    out["status"] = verdict(not mismatched)
    if mismatched:
        out["mismatched"] = mismatched
    return out
