"""
Finite module catalogues that property checks quantify over.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from PairOps.algebra.exactlin import span, subspace_sum
from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    cached_construction,
    dual_module,
    enumerate_submodules,
    injective_module,
    is_isomorphic,
    maximal_ideal_submodule,
    quotient_module,
    regular_module,
    scale,
    submodule_as_module,
)
from PairOps.algebra.local_algebra import LocalAlgebra
from PairOps.config import Bounds

logger = logging.getLogger(__name__)

ISO_SEARCH = 4096


@dataclass(frozen=True, eq=False)
class CatalogueEntry:
    label: str
    module: FLModule


def minimal_generators(N: Submodule) -> list[tuple]:
    """Canonical basis rows of N that stay independent modulo mN."""
    M = N.parent
    current = scale(maximal_ideal_submodule(M.ring), N, M).space
    chosen = []
    for row in N.rows:
        if not current.contains(row):
            chosen.append(row)
            current = subspace_sum(current, span(M.field, M.dim, [row]))
    return chosen


def ideal_label(I: Submodule) -> str:
    if not I.dim:
        return "0"
    if I.dim == I.parent.dim:
        return I.parent.name
    return "(" + ", ".join(I.parent.format(g) for g in minimal_generators(I)) + ")"


def _dedupe(entries: list[CatalogueEntry]) -> list[CatalogueEntry]:
    kept: list[CatalogueEntry] = []
    for entry in entries:
        duplicate = any(
            k.module.dim == entry.module.dim and is_isomorphic(k.module, entry.module, ISO_SEARCH)
            for k in kept
        )
        if not duplicate:
            kept.append(entry)
    return kept


def module_catalogue(R: LocalAlgebra, max_dim: int | None = None) -> tuple[CatalogueEntry, ...]:
    """
    R/I for proper ideals I, the nonzero proper ideals, and the duals of all
    of these, one entry per isomorphism class, R first.
    """
    return _module_catalogue(R, Bounds.MAX_DIM if max_dim is None else max_dim)


@cached_construction
def _module_catalogue(R: LocalAlgebra, max_dim: int) -> tuple[CatalogueEntry, ...]:
    reg = regular_module(R)
    ideals = enumerate_submodules(reg)
    base = []
    for I in ideals:
        if I.dim == R.dim:
            continue
        if not I.dim:
            base.append(CatalogueEntry(R.name, reg))
        else:
            base.append(CatalogueEntry(f"{R.name}/{ideal_label(I)}", quotient_module(reg, I)[0]))
    for I in ideals:
        if 0 < I.dim < R.dim:
            base.append(CatalogueEntry(ideal_label(I), submodule_as_module(I)[0]))
    duals = [
        CatalogueEntry("E", injective_module(R, 1)) if e.module is reg
        else CatalogueEntry(f"({e.label})^v", dual_module(e.module))
        for e in base
    ]
    entries = _dedupe([e for e in base + duals if e.module.dim <= max_dim])
    logger.debug("catalogue of %s: %s", R.name, ", ".join(e.label for e in entries))
    return tuple(entries)


def duality_catalogue(R: LocalAlgebra, max_dim: int | None = None) -> tuple[CatalogueEntry, ...]:
    """R, E and the cyclic quotients R/(f), f a principal ideal, of dimension at most max_dim."""
    return _duality_catalogue(R, Bounds.DUALITY_DIM if max_dim is None else max_dim)


@cached_construction
def _duality_catalogue(R: LocalAlgebra, max_dim: int) -> tuple[CatalogueEntry, ...]:
    reg = regular_module(R)
    entries = [CatalogueEntry(R.name, reg), CatalogueEntry("E", injective_module(R, 1))]
    for I in enumerate_submodules(reg):
        if 0 < I.dim < R.dim and len(minimal_generators(I)) == 1:
            entries.append(CatalogueEntry(f"{R.name}/{ideal_label(I)}", quotient_module(reg, I)[0]))
    return tuple(e for e in entries if e.module.dim <= max_dim)
