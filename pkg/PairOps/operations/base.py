from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import Callable

from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    maximal_ideal_submodule,
    scale,
    socle,
)
from PairOps.config import Algebra
from PairOps.exceptions import ModuleMismatch, OutOfDomain

logger = logging.getLogger(__name__)

Evaluator = Callable[[Submodule, FLModule], Submodule]
Domain = Callable[[Submodule, FLModule], bool]


class BoundedMemo:
    """Insertion-ordered results shared by worker threads; the oldest entry is dropped past `size`."""

    def __init__(self, size: int | None = None):
        self.size = size
        self._lock = threading.Lock()
        self._entries: dict = {}

    def get(self, key):
        with self._lock:
            return self._entries.get(key)

    def put(self, key, value):
        """Store value unless another thread got there first; returns the stored result."""
        limit = Algebra.MEMO_SIZE if self.size is None else self.size
        with self._lock:
            existing = self._entries.get(key)
            if existing is not None:
                return existing
            if limit <= 0:
                return value
            while len(self._entries) >= limit:
                del self._entries[next(iter(self._entries))]
            self._entries[key] = value
            return value

    def clear(self):
        with self._lock:
            self._entries.clear()

    def __len__(self):
        with self._lock:
            return len(self._entries)


@dataclass(eq=False)
class PairOperation:
    """
    A rule (L, M) -> p(L, M) on submodule pairs.

    Results are memoised per (M, L); the evaluator must be deterministic.
    `domain`, when set, names the pairs the rule is defined on.
    """
    name: str
    evaluator: Evaluator
    kind: str = "custom"
    params: dict = field(default_factory=dict)
    domain: Domain | None = None
    _memo: BoundedMemo = field(default_factory=BoundedMemo, init=False, repr=False)

    def accepts(self, L: Submodule, M: FLModule | None = None) -> bool:
        M = L.parent if M is None else M
        return L.parent is M and (self.domain is None or self.domain(L, M))

    def __call__(self, L: Submodule, M: FLModule | None = None) -> Submodule:
        M = L.parent if M is None else M
        if L.parent is not M:
            raise ModuleMismatch(f"{L!r} is not a submodule of {M.name}")
        key = (M, L.space)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if self.domain is not None and not self.domain(L, M):
            raise OutOfDomain(f"{self.name} at ({L}, {M.name})")
        result = self.evaluator(L, M)
        if result.parent is not M:
            raise ModuleMismatch(f"{self.name} returned a submodule of {result.parent.name}, expected {M.name}")
        result = self._memo.put(key, result)
        logger.debug("%s(%s, %s) = %s", self.name, L, M.name, result)
        return result

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, **{k: str(v) for k, v in self.params.items()}}

    def __repr__(self):
        return f"PairOperation({self.name})"


@dataclass(eq=False)
class SubmoduleSelector:
    name: str
    evaluator: Callable[[FLModule], Submodule]
    _memo: BoundedMemo = field(default_factory=BoundedMemo, init=False, repr=False)

    def __call__(self, M: FLModule) -> Submodule:
        hit = self._memo.get(M)
        if hit is None:
            hit = self.evaluator(M)
            if hit.parent is not M:
                raise ModuleMismatch(f"selector {self.name} left {M.name}")
            hit = self._memo.put(M, hit)
        return hit

    def __repr__(self):
        return f"SubmoduleSelector({self.name})"


def is_ideal_pair(L: Submodule, M: FLModule) -> bool:
    """M carries the regular action of its ring, so L is an ideal."""
    return M.dim == M.ring.dim and M.actions == M.ring.regular_actions


# ---------------------[ SELECTORS ]---------------------#

socle_selector = SubmoduleSelector("socle", socle)
radical_selector = SubmoduleSelector("radical", lambda M: scale(maximal_ideal_submodule(M.ring), M.whole(), M))
zero_selector = SubmoduleSelector("zero", lambda M: M.zero_submodule())
full_selector = SubmoduleSelector("full", lambda M: M.whole())

SELECTORS = {s.name: s for s in (socle_selector, radical_selector, zero_selector, full_selector)}


def selector_from(p: PairOperation) -> SubmoduleSelector:
    """alpha(M) = p(0, M)."""
    return SubmoduleSelector(f"sel({p.name})", lambda M: p(M.zero_submodule(), M))


# ---------------------[ TRIVIAL OPERATIONS ]---------------------#

def identity_operation() -> PairOperation:
    return PairOperation("identity", lambda L, M: L, kind="identity")


def zero_interior() -> PairOperation:
    return PairOperation("zero_interior", lambda L, M: M.zero_submodule(), kind="zero_interior")


def full_closure() -> PairOperation:
    return PairOperation("full_closure", lambda L, M: M.whole(), kind="full_closure")
