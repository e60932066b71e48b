"""
Built-in pair operations: basically full closures and basically empty
interiors, module closures and traces, Frobenius closure, table-driven ideal
operations and the rho/gamma constructions from submodule selectors.
"""
from __future__ import annotations

import logging
from typing import Callable, Sequence, Union

from PairOps.algebra.exactlin import Matrix, Subspace, preimage, span, subspace_intersect, subspace_sum
from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    colon,
    hom_R,
    maximal_ideal_submodule,
    quotient_module,
    regular_module,
    residue_field,
    scale,
    span_submodule,
    submodule_as_module,
    tensor_R,
    unit_ideal,
    zero_ideal,
)
from PairOps.algebra.local_algebra import LocalAlgebra
from PairOps.exceptions import FieldError, RingMismatch
from PairOps.operations.base import PairOperation, SubmoduleSelector, is_ideal_pair

logger = logging.getLogger(__name__)

IdealArg = Union[str, Submodule, Callable[[LocalAlgebra], Submodule]]
ModuleArg = Union[str, FLModule, Callable[[LocalAlgebra], FLModule]]

_NAMED_IDEALS = {"m": maximal_ideal_submodule, "0": zero_ideal, "R": unit_ideal}


def resolve_ideal(J: IdealArg, R: LocalAlgebra) -> Submodule:
    if isinstance(J, str):
        return _NAMED_IDEALS[J](R)
    if isinstance(J, Submodule):
        if J.parent.ring is not R:
            raise RingMismatch(f"ideal over {J.parent.ring.name} used over {R.name}")
        return J
    return J(R)


def ideal_name(J: IdealArg) -> str:
    if isinstance(J, str):
        return J
    if isinstance(J, Submodule):
        return str(J)
    return getattr(J, "__name__", "J")


def _maximal_ideal_module(R: LocalAlgebra) -> FLModule:
    return submodule_as_module(maximal_ideal_submodule(R))[0]


_NAMED_MODULES = {"R": regular_module, "k": residue_field, "m": _maximal_ideal_module}


def resolve_module(L: ModuleArg, R: LocalAlgebra) -> FLModule:
    if isinstance(L, str):
        return _NAMED_MODULES[L](R)
    if isinstance(L, FLModule):
        if L.ring is not R:
            raise RingMismatch(f"{L.name} is over {L.ring.name}, not {R.name}")
        return L
    return L(R)


# ---------------------[ BASICALLY FULL / EMPTY ]---------------------#

def make_bf(J: IdealArg = "m", name: str | None = None) -> PairOperation:
    """J-basically full closure (JL :_M J)."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        I = resolve_ideal(J, M.ring)
        return colon(scale(I, L, M), M, I)

    return PairOperation(name or f"bf_{ideal_name(J)}", evaluator, kind="bf", params={"J": ideal_name(J)})


def make_be(J: IdealArg = "m", name: str | None = None) -> PairOperation:
    """J-basically empty interior J (L :_M J)."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        I = resolve_ideal(J, M.ring)
        return scale(I, colon(L, M, I), M)

    return PairOperation(name or f"be_{ideal_name(J)}", evaluator, kind="be", params={"J": ideal_name(J)})


# ---------------------[ MODULE CLOSURES AND TRACES ]---------------------#

def _elements(Lmod: FLModule, S: Sequence[Sequence] | None) -> list[tuple]:
    if S is None:
        return [Lmod.unit(i) for i in range(Lmod.dim)]
    return [tuple(Lmod.field.element(c) for c in s) for s in S]


def make_module_closure(S: Sequence[Sequence] | None = None, L: ModuleArg = "R",
                        name: str | None = None) -> PairOperation:
    """
    cl_{S,L}: u lies in the closure of N in M iff s (x) u is in the image of
    L (x) N -> L (x) M for every s in S. S = None takes a basis of L.
    """

    def evaluator(N: Submodule, M: FLModule) -> Submodule:
        Lmod = resolve_module(L, M.ring)
        T = tensor_R(Lmod, M)
        dim = T.module.dim
        hit = span(M.field, dim, [T.simple(Lmod.unit(i), n) for i in range(Lmod.dim) for n in N.rows])
        space = Subspace.full(M.field, M.dim)
        for s in _elements(Lmod, S):
            phi = Matrix.from_columns(M.field, [T.simple(s, M.unit(j)) for j in range(M.dim)], dim)
            space = subspace_intersect(space, preimage(phi, hit))
        return Submodule(M, space)

    label = name or f"cl_{_closure_label(S, L)}"
    return PairOperation(label, evaluator, kind="module_closure", params={"L": _module_name(L), "S": _subset_name(S)})


def make_trace(S: Sequence[Sequence] | None = None, L: ModuleArg = "R", name: str | None = None) -> PairOperation:
    """tr_{S,L}(N): the submodule of N generated by f(s), f in Hom(L, N), s in S. Ignores the ambient module."""

    def evaluator(N: Submodule, M: FLModule) -> Submodule:
        Lmod = resolve_module(L, M.ring)
        Nmod, inclusion = submodule_as_module(N)
        gens = _elements(Lmod, S)
        return span_submodule(M, [inclusion(f(s)) for f in hom_R(Lmod, Nmod) for s in gens])

    label = name or f"tr_{_closure_label(S, L)}"
    return PairOperation(label, evaluator, kind="trace", params={"L": _module_name(L), "S": _subset_name(S)})


def _module_name(L: ModuleArg) -> str:
    if isinstance(L, str):
        return L
    if isinstance(L, FLModule):
        return L.name
    return getattr(L, "__name__", "L")


def _subset_name(S) -> str:
    return "basis" if S is None else "; ".join("[" + ",".join(str(c) for c in s) + "]" for s in S)


def _closure_label(S, L: ModuleArg) -> str:
    base = _module_name(L)
    return base if S is None else f"{{{_subset_name(S)}}},{base}"


# ---------------------[ FROBENIUS ]---------------------#

def make_frobenius_closure(name: str = "frobenius") -> PairOperation:
    """I^F = {r : r^q in I^[q] for some q = p^e}, e up to the first p^e >= nil_bound."""

    def evaluator(I: Submodule, M: FLModule) -> Submodule:
        R = M.ring
        p = R.field.char
        if not p:
            raise FieldError("Frobenius closure needs positive characteristic")
        reg = regular_module(R)
        gens = [R.element(g) for g in I.rows]
        total = Subspace.zero(R.field, R.dim)
        q = 1
        while True:
            frobenius = Matrix.from_columns(R.field, [(R.basis_element(i) ** q).coords for i in range(R.dim)], R.dim)
            bracket = span_submodule(reg, [(g ** q).coords for g in gens])
            total = subspace_sum(total, preimage(frobenius, bracket.space))
            if q >= R.nil_bound:
                break
            q *= p
        return Submodule(M, total)

    return PairOperation(name, evaluator, kind="frobenius", domain=is_ideal_pair)


# ---------------------[ TABLES ]---------------------#

def make_custom_table(R: LocalAlgebra, rules: Sequence[tuple[Submodule, Submodule]], otherwise: Submodule,
                      name: str = "custom") -> PairOperation:
    """
    Operation on the ideals of R: the value of the first rule whose bound
    contains I, else `otherwise`.
    """
    reg = regular_module(R)
    for bound, value in list(rules) + [(otherwise, otherwise)]:
        if bound.parent is not reg or value.parent is not reg:
            raise RingMismatch(f"table {name} mixes ideals of another ring")

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        I = Submodule(reg, L.space)
        value = next((v for bound, v in rules if I <= bound), otherwise)
        return Submodule(M, value.space)

    def domain(L: Submodule, M: FLModule) -> bool:
        return M.ring is R and is_ideal_pair(L, M)

    params = {"rules": "; ".join(f"{b} -> {v}" for b, v in rules), "otherwise": str(otherwise)}
    return PairOperation(name, evaluator, kind="custom_table", params=params, domain=domain)


# ---------------------[ SELECTOR BRIDGES ]---------------------#

def rho(alpha: SubmoduleSelector, name: str | None = None) -> PairOperation:
    """Residual operation pi^-1(alpha(M/L))."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        Q, pi = quotient_module(M, L)
        return pi.preimage(alpha(Q))

    return PairOperation(name or f"rho({alpha.name})", evaluator, kind="rho", params={"selector": alpha.name})


def gamma(alpha: SubmoduleSelector, name: str | None = None) -> PairOperation:
    """Absolute operation alpha(L)."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        Lmod, inclusion = submodule_as_module(L)
        return inclusion.image(alpha(Lmod))

    return PairOperation(name or f"gamma({alpha.name})", evaluator, kind="gamma", params={"selector": alpha.name})
