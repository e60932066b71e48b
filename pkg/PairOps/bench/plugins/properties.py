import itertools
import logging

from PairOps.algebra.duality import smile_dual
from PairOps.algebra.flmod import enumerate_submodules
from PairOps.bench import Bench, TaskContext, verdict
from PairOps.bench import params as P
from PairOps.exceptions import SchemaError
from PairOps.operations.catalogue import duality_catalogue, module_catalogue
from PairOps.operations.combinators import join, meet
from PairOps.operations.properties import (
    DERIVED,
    DERIVED_FROM,
    PROPERTIES,
    check_properties,
    check_selector_properties,
    compare_dual_reports,
)

logger = logging.getLogger(__name__)


def _matches(verdict_dict: dict, want) -> bool:
    if isinstance(want, str):
        return verdict_dict["status"] == want
    if verdict_dict["status"] != want.get("status", verdict_dict["status"]):
        return False
    witness = verdict_dict.get("witness", {})
    return all(str(witness.get(k)) == str(v) for k, v in want.get("witness", {}).items())


def _with_expectations(ctx: TaskContext, out: dict, params: dict) -> dict:
    if "expect" not in params:
        out["status"] = "done"
        return out
    want = params["expect"]
    if not isinstance(want, dict):
        raise SchemaError("expect must map property names to statuses", f"{ctx.pointer}/expect")
    mismatched = sorted(name for name, w in want.items()
                        if name not in out["verdicts"] or not _matches(out["verdicts"][name], w))
    out["status"] = verdict(not mismatched)
    if mismatched:
        out["mismatched"] = mismatched
    return out


@Bench.on_task("props")
def props(ctx: TaskContext, params: dict) -> dict:
    op = P.operation(ctx, params)
    R = P.ring(ctx, params)
    wanted = params.get("properties")
    if wanted is not None:
        unknown = [n for n in wanted if n not in PROPERTIES + DERIVED]
        if unknown:
            raise SchemaError(f"unknown properties: {', '.join(unknown)}", f"{ctx.pointer}/properties")
        wanted = [part for n in wanted for part in DERIVED_FROM.get(n, (n,))]
    report = check_properties(op, R, ctx.bounds, properties=wanted)
    return _with_expectations(ctx, report.to_dict(), params)


@Bench.on_task("selector_props")
def selector_props(ctx: TaskContext, params: dict) -> dict:
    alpha = ctx.resolver.selector(params, ctx.pointer)
    report = check_selector_properties(alpha, P.ring(ctx, params), ctx.bounds)
    return _with_expectations(ctx, report.to_dict(), params)


@Bench.on_task("dual_check")
def dual_check(ctx: TaskContext, params: dict) -> dict:
    """smile(smile(p)) = p, and smile(p) = q when 'against' names q, on R, E and the cyclic quotients."""
    op = P.operation(ctx, params)
    R = P.ring(ctx, params)
    against = ctx.resolver.operation(params["against"]) if "against" in params else None
    dual = smile_dual(op)
    double = smile_dual(dual)
    checked, witness = 0, None
    catalogue = duality_catalogue(R, ctx.bounds.duality_dim)
    for entry in catalogue:
        M = entry.module
        for L in enumerate_submodules(M, ctx.bounds.max_submodules):
            if not op.accepts(L, M) or not double.accepts(L, M):
                continue
            checked += 1
            if double(L, M) != op(L, M):
                witness = {"module": entry.label, "L": str(L), "double_dual": str(double(L, M)), "p": str(op(L, M))}
                break
            if against is not None and dual.accepts(L, M) and against.accepts(L, M) and dual(L, M) != against(L, M):
                witness = {"module": entry.label, "L": str(L), "dual": str(dual(L, M)), "against": str(against(L, M))}
                break
        if witness:
            break
    out = {"status": verdict(witness is None), "op": op.name, "checked": checked,
           "modules": [e.label for e in catalogue]}
    if against is not None:
        out["against"] = against.name
    if witness:
        out["witness"] = witness
    return out


@Bench.on_task("duality_table")
def duality_table(ctx: TaskContext, params: dict) -> dict:
    """Property reports of each operation and of its smile dual, compared through the correspondence table."""
    rings = params.get("rings") or [P.require(ctx, params, "ring")]
    names = P.require(ctx, params, "ops")
    rows, asymmetric = [], 0
    for ring_name in rings:
        R = ctx.resolver.ring(ring_name)
        for name in names:
            op = ctx.resolver.operation(name)
            report = check_properties(op, R, ctx.bounds)
            dual = check_properties(smile_dual(op), R, ctx.bounds)
            comparison = compare_dual_reports(report, dual)
            asymmetric += len(comparison.asymmetries)
            rows.append({
                "ring": R.name,
                "operation": op.name,
                "verdicts": report.to_dict()["verdicts"],
                "dual_verdicts": dual.to_dict()["verdicts"],
                "asymmetries": comparison.asymmetries,
                "unchecked": comparison.unchecked,
            })
    return {"status": verdict(not asymmetric), "operations": rows}


@Bench.on_task("lattice_duality")
def lattice_duality(ctx: TaskContext, params: dict) -> dict:
    """smile(join S) = meet(smile S) and smile(meet S) = join(smile S) for the subsets S of the given sizes."""
    R = P.ring(ctx, params)
    ops = [ctx.resolver.operation(n) for n in P.require(ctx, params, "ops")]
    duals = {id(op): smile_dual(op) for op in ops}
    catalogue = module_catalogue(R, ctx.bounds.max_dim)
    checked, failures = 0, []
    for size in params.get("sizes", [2, 3]):
        for subset in itertools.combinations(ops, size):
            pairs = (
                (smile_dual(join(subset)), meet([duals[id(p)] for p in subset]), "join"),
                (smile_dual(meet(subset)), join([duals[id(p)] for p in subset]), "meet"),
            )
            for left, right, which in pairs:
                for entry in catalogue:
                    M = entry.module
                    for L in enumerate_submodules(M, ctx.bounds.max_submodules):
                        if not (left.accepts(L, M) and right.accepts(L, M)):
                            continue
                        checked += 1
                        if left(L, M) != right(L, M):
                            failures.append({"of": [p.name for p in subset], "lattice": which,
                                             "module": entry.label, "L": str(L)})
                            break
                    else:
                        continue
                    break
    out = {"status": verdict(not failures), "ops": [p.name for p in ops], "checked": checked}
    if failures:
        out["failures"] = failures
    return out
