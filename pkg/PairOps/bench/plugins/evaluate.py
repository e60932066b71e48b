import logging

from PairOps.algebra.flmod import enumerate_submodules
from PairOps.bench import Bench, TaskContext, verdict
from PairOps.bench import params as P
from PairOps.exceptions import SchemaError
from PairOps.operations.catalogue import duality_catalogue, module_catalogue
from PairOps.utils.formatting import submodule_summary

logger = logging.getLogger(__name__)


@Bench.on_task("eval")
def evaluate(ctx: TaskContext, params: dict) -> dict:
    op = P.operation(ctx, params)
    M = P.module(ctx, params)
    L = P.submodule(ctx, M, params, "L")
    result = op(L, M)
    out = {"op": op.name, "L": submodule_summary(L), "result": submodule_summary(result)}
    out.update(P.expected(ctx, result, params, lambda e: ctx.resolver.submodule(M, e, f"{ctx.pointer}/expect")))
    return out


@Bench.on_task("compare")
def compare(ctx: TaskContext, params: dict) -> dict:
    """Pointwise equality or inclusion of two operations over a ring's catalogue."""
    left = P.operation(ctx, params, "left")
    right = P.operation(ctx, params, "right")
    R = P.ring(ctx, params)
    relation = params.get("relation", "equal")
    if relation not in ("equal", "subset"):
        raise SchemaError("relation must be equal or subset", f"{ctx.pointer}/relation")
    if params.get("modules", "catalogue") == "duality":
        catalogue = duality_catalogue(R, ctx.bounds.duality_dim)
    else:
        catalogue = module_catalogue(R, ctx.bounds.max_dim)
    checked = 0
    for entry in catalogue:
        M = entry.module
        for L in enumerate_submodules(M, ctx.bounds.max_submodules):
            if not (left.accepts(L, M) and right.accepts(L, M)):
                continue
            checked += 1
            a, b = left(L, M), right(L, M)
            if (a == b) if relation == "equal" else (a <= b):
                continue
            return {
                "status": "fail", "left": left.name, "right": right.name, "relation": relation, "checked": checked,
                "witness": {"module": entry.label, "L": str(L), "left": str(a), "right": str(b)},
            }
    return {"status": verdict(True), "left": left.name, "right": right.name, "relation": relation,
            "checked": checked, "modules": [e.label for e in catalogue]}
