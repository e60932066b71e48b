"""
Matlis duality over an Artinian local algebra.

E is the k-dual of R with transposed regular actions, so the dual of a module
is its vector-space dual with transposed actions and the pairing is the dot
product of coordinates. The quotient (M/N)^v is the subspace of M^v killing N.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Sequence

from PairOps.algebra.exactlin import Matrix, kernel
from PairOps.algebra.flmod import (
    FLModule,
    ModuleMap,
    Submodule,
    annihilator,
    cached_construction,
    colon,
    dual_module,
    injective_module,
    quotient_module,
)
from PairOps.algebra.local_algebra import LocalAlgebra
from PairOps.exceptions import KernelViewMismatch
from PairOps.operations.base import PairOperation

logger = logging.getLogger(__name__)


def evaluate(u: Sequence, f: Sequence):
    """f(u) for u in M and f in M^v."""
    return sum(a * b for a, b in zip(u, f))


@dataclass(frozen=True, eq=False)
class MatlisContext:
    ring: LocalAlgebra
    E: FLModule

    def pairing(self, r: Sequence, f: Sequence):
        return self.E.field.element(evaluate(r, f))

    def ann_E(self, I: Submodule) -> Submodule:
        """(0 :_E I)."""
        return colon(self.E.zero_submodule(), self.E, I)

    def ann_R(self, N: Submodule) -> Submodule:
        return annihilator(N)


@cached_construction
def matlis_context(R: LocalAlgebra) -> MatlisContext:
    return MatlisContext(R, injective_module(R, 1))


def matlis_dual(M: FLModule) -> tuple[FLModule, callable]:
    Md = dual_module(M)
    return Md, lambda u, f: M.field.element(evaluate(u, f))


def dual_sub_quot(N: Submodule) -> Submodule:
    """(M/N)^v as the functionals of M^v vanishing on N."""
    return Submodule(dual_module(N.parent), kernel(N.space.basis))


@cached_construction
def eta(M: FLModule) -> ModuleMap:
    """M -> M^vv, x -> (g -> g(x)); the identity matrix in dual-basis coordinates."""
    return ModuleMap(M, dual_module(dual_module(M)), Matrix.identity(M.field, M.dim))


@dataclass(frozen=True)
class DualizedPair:
    original: Submodule
    dual: Submodule

    @classmethod
    def of(cls, A: Submodule) -> "DualizedPair":
        return cls(A, dual_sub_quot(A))

    @property
    def codim(self) -> int:
        return self.original.parent.dim - self.original.dim


class KernelViewLedger:
    """Counts smile-dual evaluations and agreements between the two evaluators."""

    def __init__(self):
        self._lock = threading.Lock()
        self.evaluations = 0
        self.agreements = 0

    def record(self, agreed: bool):
        with self._lock:
            self.evaluations += 1
            self.agreements += agreed

    def snapshot(self) -> dict:
        with self._lock:
            return {"evaluations": self.evaluations, "agreements": self.agreements}

    def reset(self):
        with self._lock:
            self.evaluations = self.agreements = 0


KERNEL_VIEW = KernelViewLedger()


def dual_of_quotient(P: Submodule) -> Submodule:
    """(D/P)^v inside D^v, as the image of the transposed projection D -> D/P."""
    Q, pi = quotient_module(P.parent, P)
    inclusion = ModuleMap(dual_module(Q), dual_module(P.parent), pi.matrix.transpose())
    return inclusion.image(dual_module(Q).whole())


def formula_view(P: Submodule, B: FLModule) -> Submodule:
    """eta_B^-1((B^v / P)^v)."""
    return eta(B).preimage(dual_of_quotient(P))


def kernel_view(P: Submodule, B: FLModule) -> Submodule:
    """{x in B : g(x) = 0 for every g in P}."""
    return Submodule(B, kernel(P.space.basis))


def smile_dual(p: PairOperation, name: str | None = None) -> PairOperation:
    """
    p^v(A, B) = eta_B^-1((B^v / p((B/A)^v, B^v))^v).

    Every evaluation is cross-checked against the kernel description
    {x in B : g(x) = 0 for every g in p((B/A)^v, B^v)}.
    """

    def evaluator(A: Submodule, B: FLModule) -> Submodule:
        P = p(dual_sub_quot(A), dual_module(B))
        formula = formula_view(P, B)
        check = kernel_view(P, B)
        agreed = formula == check
        KERNEL_VIEW.record(agreed)
        if not agreed:
            raise KernelViewMismatch(f"{p.name} at ({A}, {B.name}): {formula} vs {check}")
        return formula

    domain = None
    if p.domain is not None:
        def domain(A: Submodule, B: FLModule) -> bool:
            return p.accepts(dual_sub_quot(A), dual_module(B))

    return PairOperation(name or f"smile({p.name})", evaluator, kind="smile_dual", params={"of": p.name}, domain=domain)
