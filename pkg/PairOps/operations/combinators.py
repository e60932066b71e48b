from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    enumerate_submodules,
    free_cover,
    injective_embed,
    submodule_as_module,
)
from PairOps.exceptions import EmptyOperationList
from PairOps.operations.base import PairOperation

logger = logging.getLogger(__name__)


def _common_domain(ops: Sequence[PairOperation]):
    if all(p.domain is None for p in ops):
        return None
    return lambda L, M: all(p.accepts(L, M) for p in ops)


def meet(ops: Sequence[PairOperation], name: str | None = None) -> PairOperation:
    """Pointwise intersection."""
    ops = list(ops)
    if not ops:
        raise EmptyOperationList("meet")
    label = name or "meet(" + ", ".join(p.name for p in ops) + ")"
    return PairOperation(label, lambda L, M: reduce(lambda a, b: a & b, (p(L, M) for p in ops)),
                         kind="meet", params={"of": ", ".join(p.name for p in ops)}, domain=_common_domain(ops))


def join(ops: Sequence[PairOperation], name: str | None = None) -> PairOperation:
    """Pointwise sum."""
    ops = list(ops)
    if not ops:
        raise EmptyOperationList("join")
    label = name or "join(" + ", ".join(p.name for p in ops) + ")"
    return PairOperation(label, lambda L, M: reduce(lambda a, b: a + b, (p(L, M) for p in ops)),
                         kind="join", params={"of": ", ".join(p.name for p in ops)}, domain=_common_domain(ops))


# ---------------------[ FINITISTIC ]---------------------#

@dataclass(frozen=True)
class FinitisticUnion:
    span: Submodule
    pieces: tuple[Submodule, ...]
    is_submodule: bool


def _pieces(p: PairOperation, L: Submodule, M: FLModule, limit: int | None) -> list[Submodule]:
    pieces = []
    for U in enumerate_submodules(M, limit):
        if U.dim == M.dim:
            pieces.append(p(L, M))
            continue
        Umod, inclusion = submodule_as_module(U)
        LU = inclusion.preimage(L)
        if p.accepts(LU, Umod):
            pieces.append(inclusion.image(p(LU, Umod)))
    return pieces


def finitistic_union(p: PairOperation, L: Submodule, M: FLModule, limit: int | None = None) -> FinitisticUnion:
    """The pieces p(L n U, U) pushed into M, their span, and whether the raw union was already closed."""
    pieces = _pieces(p, L, M, limit)
    total = reduce(lambda a, b: a + b, pieces, M.zero_submodule())
    closed = all(any(piece.contains(v) for piece in pieces) for v in total.space.elements())
    if not closed:
        logger.info("finitistic union of %s at (%s, %s) is not a submodule", p.name, L, M.name)
    return FinitisticUnion(total, tuple(pieces), closed)


def finitistic(p: PairOperation, limit: int | None = None, name: str | None = None) -> PairOperation:
    """p_f(L, M): span of p(L n U, U) over all submodules U of M."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        return reduce(lambda a, b: a + b, _pieces(p, L, M, limit), M.zero_submodule())

    return PairOperation(name or f"fin({p.name})", evaluator, kind="finitistic", params={"of": p.name})


def finitistic_intermediate(p: PairOperation, limit: int | None = None, name: str | None = None) -> PairOperation:
    """Span of p(L, N) over the intermediate modules L <= N <= M."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        total = M.zero_submodule()
        for N in enumerate_submodules(M, limit):
            if not L <= N:
                continue
            if N.dim == M.dim:
                total = total + p(L, M)
                continue
            Nmod, inclusion = submodule_as_module(N)
            LN = inclusion.preimage(L)
            if p.accepts(LN, Nmod):
                total = total + inclusion.image(p(LN, Nmod))
        return total

    return PairOperation(name or f"fin_int({p.name})", evaluator, kind="finitistic_intermediate",
                         params={"of": p.name})


# ---------------------[ VERSIONS ]---------------------#

def cohereditary_version(p: PairOperation, name: str | None = None) -> PairOperation:
    """pi(p(pi^-1(L), F)) along the minimal free cover pi: F -> M."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        F, pi = free_cover(M)
        return pi.image(p(pi.preimage(L), F))

    return PairOperation(name or f"ch({p.name})", evaluator, kind="cohereditary_version", params={"of": p.name})


def hereditary_version(p: PairOperation, name: str | None = None) -> PairOperation:
    """iota^-1(p(iota(L), E^n)) along the injective envelope iota: M -> E^n."""

    def evaluator(L: Submodule, M: FLModule) -> Submodule:
        En, iota = injective_embed(M)
        return iota.preimage(p(iota.image(L), En))

    return PairOperation(name or f"h({p.name})", evaluator, kind="hereditary_version", params={"of": p.name})
