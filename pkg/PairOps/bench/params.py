"""Task parameter access shared by the plugins."""
from __future__ import annotations

from PairOps.algebra.flmod import FLModule, Submodule
from PairOps.algebra.local_algebra import LocalAlgebra
from PairOps.bench import TaskContext
from PairOps.exceptions import SchemaError
from PairOps.operations.base import PairOperation
from PairOps.utils.formatting import submodule_summary


def require(ctx: TaskContext, params: dict, key: str):
    if key not in params:
        raise SchemaError(f"missing required key '{key}'", ctx.pointer)
    return params[key]


def ring(ctx: TaskContext, params: dict, key: str = "ring") -> LocalAlgebra:
    return ctx.resolver.ring(require(ctx, params, key))


def module(ctx: TaskContext, params: dict, key: str = "module") -> FLModule:
    return ctx.resolver.module(require(ctx, params, key))


def operation(ctx: TaskContext, params: dict, key: str = "op") -> PairOperation:
    return ctx.resolver.operation(require(ctx, params, key))


def submodule(ctx: TaskContext, M: FLModule, params: dict, key: str) -> Submodule:
    return ctx.resolver.submodule(M, require(ctx, params, key), f"{ctx.pointer}/{key}")


def ideal(ctx: TaskContext, R: LocalAlgebra, params: dict, key: str) -> Submodule:
    return ctx.resolver.ideal(require(ctx, params, key), R, f"{ctx.pointer}/{key}")


def expected(ctx: TaskContext, value: Submodule, params: dict, parse) -> dict:
    """Adds the expected value and a pass/fail status when the task carries 'expect'."""
    if "expect" not in params:
        return {"status": "done"}
    target = parse(params["expect"])
    return {"status": "pass" if target == value else "fail", "expected": submodule_summary(target)}
