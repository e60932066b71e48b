"""
Exhaustive property checks for pair operations and submodule selectors.

Every property is decided over the module catalogue of one ring: all pairs,
triples, quotients and (when Hom is small enough) all maps between catalogue
modules. The first counterexample in enumeration order is kept as the witness.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from PairOps.algebra.exactlin import Matrix, is_invertible
from PairOps.algebra.flmod import (
    FLModule,
    ModuleMap,
    Submodule,
    colon,
    conjugate_module,
    enumerate_submodules,
    hom_R,
    iter_maps,
    maximal_ideal_submodule,
    quotient_module,
    scale,
    submodule_as_module,
)
from PairOps.algebra.local_algebra import LocalAlgebra
from PairOps.config import BoundsSpec
from PairOps.exceptions import EnumerationLimitExceeded, OutOfDomain
from PairOps.operations.base import PairOperation, SubmoduleSelector
from PairOps.operations.catalogue import CatalogueEntry, module_catalogue

logger = logging.getLogger(__name__)

EXTENSIVE = "extensive"
INTENSIVE = "intensive"
IDEMPOTENT = "idempotent"
ORDER_SUBMODULES = "order-preserving on submodules"
ORDER_AMBIENT = "order-preserving on ambient modules"
SURJECTION_FUNCTORIAL = "surjection-functorial"
FUNCTORIAL = "functorial"
RESTRICTABLE = "restrictable"
SURJECTION_COFUNCTORIAL = "surjection-cofunctorial"
COFUNCTORIAL = "cofunctorial"
HEREDITARY = "hereditary"
ABSOLUTE = "absolute"
COHEREDITARY = "cohereditary"
RESIDUAL = "residual"
NAKAYAMA_CLOSURE = "Nakayama closure"
NAKAYAMA_INTERIOR = "Nakayama interior"
ISOMORPHISM_INVARIANT = "isomorphism-invariant"
CLOSURE = "closure operation"
INTERIOR = "interior operation"

PROPERTIES = (
    EXTENSIVE, INTENSIVE, IDEMPOTENT, ORDER_SUBMODULES, ORDER_AMBIENT,
    SURJECTION_FUNCTORIAL, FUNCTORIAL, RESTRICTABLE, SURJECTION_COFUNCTORIAL, COFUNCTORIAL,
    HEREDITARY, ABSOLUTE, COHEREDITARY, RESIDUAL,
    NAKAYAMA_CLOSURE, NAKAYAMA_INTERIOR, ISOMORPHISM_INVARIANT,
)
DERIVED = (CLOSURE, INTERIOR)

_PAIRS = (
    (EXTENSIVE, INTENSIVE),
    (IDEMPOTENT, IDEMPOTENT),
    (ORDER_SUBMODULES, ORDER_SUBMODULES),
    (SURJECTION_FUNCTORIAL, RESTRICTABLE),
    (FUNCTORIAL, COFUNCTORIAL),
    (SURJECTION_COFUNCTORIAL, ORDER_AMBIENT),
    (HEREDITARY, COHEREDITARY),
    (RESIDUAL, ABSOLUTE),
    (CLOSURE, INTERIOR),
    (NAKAYAMA_CLOSURE, NAKAYAMA_INTERIOR),
    (ISOMORPHISM_INVARIANT, ISOMORPHISM_INVARIANT),
)
DUAL_CORRESPONDENCES = {**{a: b for a, b in _PAIRS}, **{b: a for a, b in _PAIRS}}

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Verdict:
    status: str = PASS
    witness: dict | None = None
    checked: int = 0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        data = {"status": self.status, "checked": self.checked}
        if self.witness:
            data["witness"] = self.witness
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class PropertyReport:
    operation: str
    ring: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    scope: dict = field(default_factory=dict)

    def status(self, name: str) -> str:
        return self.verdicts[name].status

    def passed(self, name: str) -> bool:
        return self.verdicts[name].passed

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "ring": self.ring,
            "scope": self.scope,
            "verdicts": {name: v.to_dict() for name, v in self.verdicts.items()},
        }


Case = tuple[bool, Callable[[], dict]]


def _scan(cases: Iterable[Case]) -> Verdict:
    checked = 0
    for holds, witness in cases:
        checked += 1
        if not holds:
            return Verdict(FAIL, witness(), checked)
    if not checked:
        return Verdict(SKIPPED, note="no instances in the operation's domain")
    return Verdict(PASS, checked=checked)


def random_invertible(field, n: int, rng: random.Random) -> Matrix:
    while True:
        if field.is_finite:
            rows = [[rng.randrange(field.char) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        candidate = Matrix.from_rows(field, rows, n)
        if is_invertible(candidate):
            return candidate


class PropertyChecker:
    def __init__(self, p: PairOperation, R: LocalAlgebra, bounds: BoundsSpec,
                 catalogue: Sequence[CatalogueEntry]):
        self.p = p
        self.R = R
        self.bounds = bounds
        self.catalogue = list(catalogue)
        self.m = maximal_ideal_submodule(R)
        self.skipped_maps: list[str] = []
        self._maps: dict = {}

    # ---------------------[ ENUMERATION ]---------------------#

    def subs(self, M: FLModule) -> list[Submodule]:
        return enumerate_submodules(M, self.bounds.max_submodules)

    def ok(self, L: Submodule, M: FLModule) -> bool:
        return self.p.accepts(L, M)

    def pairs(self) -> Iterator[tuple[CatalogueEntry, Submodule]]:
        for e in self.catalogue:
            for L in self.subs(e.module):
                if self.ok(L, e.module):
                    yield e, L

    def triples(self) -> Iterator[tuple[CatalogueEntry, Submodule, Submodule]]:
        for e in self.catalogue:
            subs = self.subs(e.module)
            for L in subs:
                for N in subs:
                    if L <= N:
                        yield e, L, N

    def maps(self) -> Iterator[tuple[CatalogueEntry, CatalogueEntry, ModuleMap]]:
        for e in self.catalogue:
            for f in self.catalogue:
                key = (e.module, f.module)
                if key not in self._maps:
                    basis = hom_R(e.module, f.module)
                    if self.R.field.is_finite and self.R.field.char ** len(basis) <= self.bounds.max_maps:
                        self._maps[key] = list(iter_maps(e.module, f.module, basis))
                    else:
                        self._maps[key] = None
                        self.skipped_maps.append(f"{e.label} -> {f.label}")
                for g in self._maps[key] or ():
                    yield e, f, g

    @staticmethod
    def _matrix(g: ModuleMap) -> list:
        return [[str(c) for c in row] for row in g.matrix.entries]

    # ---------------------[ PAIR PROPERTIES ]---------------------#

    def extensive(self) -> Iterator[Case]:
        for e, L in self.pairs():
            P = self.p(L, e.module)
            yield L <= P, lambda e=e, L=L, P=P: {"module": e.label, "L": str(L), "p(L,M)": str(P)}

    def intensive(self) -> Iterator[Case]:
        for e, L in self.pairs():
            P = self.p(L, e.module)
            yield P <= L, lambda e=e, L=L, P=P: {"module": e.label, "L": str(L), "p(L,M)": str(P)}

    def idempotent(self) -> Iterator[Case]:
        for e, L in self.pairs():
            M = e.module
            P = self.p(L, M)
            if not self.ok(P, M):
                continue
            PP = self.p(P, M)
            yield PP == P, lambda e=e, L=L, P=P, PP=PP: {
                "module": e.label, "L": str(L), "p(L,M)": str(P), "p(p(L,M),M)": str(PP)}

    def order_submodules(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            M = e.module
            if self.ok(L, M) and self.ok(N, M):
                yield self.p(L, M) <= self.p(N, M), lambda e=e, L=L, N=N: {
                    "module": e.label, "L": str(L), "N": str(N)}

    def order_ambient(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            M = e.module
            Nmod, inc = submodule_as_module(N)
            LN = inc.preimage(L)
            if self.ok(L, M) and self.ok(LN, Nmod):
                yield inc.image(self.p(LN, Nmod)) <= self.p(L, M), lambda e=e, L=L, N=N: {
                    "module": e.label, "L": str(L), "N": str(N)}

    def surjection_functorial(self) -> Iterator[Case]:
        for e, L in self.pairs():
            M = e.module
            for U in self.subs(M):
                Q, pi = quotient_module(M, U)
                piL = pi.image(L)
                if self.ok(piL, Q):
                    yield pi.image(self.p(L, M)) <= self.p(piL, Q), lambda e=e, L=L, U=U: {
                        "module": e.label, "L": str(L), "kernel": str(U)}

    def functorial(self) -> Iterator[Case]:
        for e, f, g in self.maps():
            for L in self.subs(e.module):
                gL = g.image(L)
                if self.ok(L, e.module) and self.ok(gL, f.module):
                    yield g.image(self.p(L, e.module)) <= self.p(gL, f.module), lambda e=e, f=f, g=g, L=L: {
                        "source": e.label, "target": f.label, "map": self._matrix(g), "L": str(L)}

    def restrictable(self) -> Iterator[Case]:
        for e, L in self.pairs():
            M = e.module
            for K in self.subs(M):
                Kmod, inc = submodule_as_module(K)
                LK = inc.preimage(L)
                if self.ok(LK, Kmod):
                    yield inc.image(self.p(LK, Kmod)) <= self.p(L, M), lambda e=e, L=L, K=K: {
                        "module": e.label, "L": str(L), "K": str(K)}

    def surjection_cofunctorial(self) -> Iterator[Case]:
        for e in self.catalogue:
            M = e.module
            for U in self.subs(M):
                Q, pi = quotient_module(M, U)
                for L in self.subs(Q):
                    back = pi.preimage(L)
                    if self.ok(back, M) and self.ok(L, Q):
                        yield self.p(back, M) <= pi.preimage(self.p(L, Q)), lambda e=e, U=U, L=L, Q=Q: {
                            "module": e.label, "kernel": str(U), "L": str(L), "quotient": Q.name}

    def cofunctorial(self) -> Iterator[Case]:
        for e, f, g in self.maps():
            for L in self.subs(f.module):
                back = g.preimage(L)
                if self.ok(back, e.module) and self.ok(L, f.module):
                    yield self.p(back, e.module) <= g.preimage(self.p(L, f.module)), lambda e=e, f=f, g=g, L=L: {
                        "source": e.label, "target": f.label, "map": self._matrix(g), "L": str(L)}

    # ---------------------[ TRIPLE PROPERTIES ]---------------------#

    def _restricted(self, e, L, N):
        M = e.module
        Nmod, inc = submodule_as_module(N)
        LN = inc.preimage(L)
        if not (self.ok(L, M) and self.ok(LN, Nmod)):
            return None
        return inc.image(self.p(LN, Nmod))

    def hereditary(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            inner = self._restricted(e, L, N)
            if inner is not None:
                yield inner == self.p(L, e.module) & N, lambda e=e, L=L, N=N: {
                    "module": e.label, "L": str(L), "N": str(N)}

    def absolute(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            inner = self._restricted(e, L, N)
            if inner is not None:
                yield inner == self.p(L, e.module), lambda e=e, L=L, N=N: {
                    "module": e.label, "L": str(L), "N": str(N)}

    def _quotiented(self, e, L, N):
        M = e.module
        Q, pi = quotient_module(M, L)
        piN = pi.image(N)
        if not (self.ok(N, M) and self.ok(piN, Q)):
            return None
        return Q, pi, piN

    def cohereditary(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            parts = self._quotiented(e, L, N)
            if parts is not None:
                Q, pi, piN = parts
                yield self.p(piN, Q) == pi.image(self.p(N, e.module)), lambda e=e, L=L, N=N: {
                    "module": e.label, "L": str(L), "N": str(N)}

    def residual(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            parts = self._quotiented(e, L, N)
            if parts is not None:
                Q, pi, piN = parts
                yield self.p(N, e.module) == pi.preimage(self.p(piN, Q)), lambda e=e, L=L, N=N, Q=Q, piN=piN: {
                    "module": e.label, "L": str(L), "N": str(N), "pair": [str(piN), Q.name]}

    def nakayama_closure(self) -> Iterator[Case]:
        for e, L, N in self.triples():
            M = e.module
            X = L + scale(self.m, N, M)
            if not (self.ok(L, M) and self.ok(N, M) and self.ok(X, M)):
                continue
            if N <= self.p(X, M):
                yield self.p(L, M) == self.p(N, M), lambda e=e, L=L, N=N: {
                    "module": e.label, "L": str(L), "N": str(N)}

    def nakayama_interior(self) -> Iterator[Case]:
        for e, A, C in self.triples():
            B = e.module
            socle_part = colon(A, B, self.m) & C
            if not (self.ok(A, B) and self.ok(C, B) and self.ok(socle_part, B)):
                continue
            if self.p(socle_part, B) <= A:
                yield self.p(A, B) == self.p(C, B), lambda e=e, A=A, C=C: {
                    "module": e.label, "A": str(A), "C": str(C)}

    def isomorphism_invariant(self) -> Iterator[Case]:
        rng = random.Random(self.bounds.seed)
        for e in self.catalogue:
            M = e.module
            if not M.dim:
                continue
            for trial in range(self.bounds.iso_trials):
                twisted, phi = conjugate_module(M, random_invertible(M.field, M.dim, rng))
                for L in self.subs(M):
                    phiL = phi.image(L)
                    if self.ok(L, M) and self.ok(phiL, twisted):
                        yield phi.image(self.p(L, M)) == self.p(phiL, twisted), lambda e=e, L=L, phi=phi, t=trial: {
                            "module": e.label, "L": str(L), "trial": t, "base_change": self._matrix(phi)}


_CHECKS = {
    EXTENSIVE: PropertyChecker.extensive,
    INTENSIVE: PropertyChecker.intensive,
    IDEMPOTENT: PropertyChecker.idempotent,
    ORDER_SUBMODULES: PropertyChecker.order_submodules,
    ORDER_AMBIENT: PropertyChecker.order_ambient,
    SURJECTION_FUNCTORIAL: PropertyChecker.surjection_functorial,
    FUNCTORIAL: PropertyChecker.functorial,
    RESTRICTABLE: PropertyChecker.restrictable,
    SURJECTION_COFUNCTORIAL: PropertyChecker.surjection_cofunctorial,
    COFUNCTORIAL: PropertyChecker.cofunctorial,
    HEREDITARY: PropertyChecker.hereditary,
    ABSOLUTE: PropertyChecker.absolute,
    COHEREDITARY: PropertyChecker.cohereditary,
    RESIDUAL: PropertyChecker.residual,
    NAKAYAMA_CLOSURE: PropertyChecker.nakayama_closure,
    NAKAYAMA_INTERIOR: PropertyChecker.nakayama_interior,
    ISOMORPHISM_INVARIANT: PropertyChecker.isomorphism_invariant,
}

_GATES = {NAKAYAMA_CLOSURE: CLOSURE, NAKAYAMA_INTERIOR: INTERIOR}
DERIVED_FROM = {
    CLOSURE: (EXTENSIVE, ORDER_SUBMODULES, IDEMPOTENT),
    INTERIOR: (INTENSIVE, ORDER_SUBMODULES, IDEMPOTENT),
}


def _run(checker: PropertyChecker, name: str) -> Verdict:
    try:
        return _scan(_CHECKS[name](checker))
    except EnumerationLimitExceeded as e:
        logger.warning("%s: %s skipped, %s", checker.p.name, name, e.describe())
        return Verdict(SKIPPED, note=e.describe())
    except OutOfDomain as e:
        return Verdict(SKIPPED, note=e.describe())


def _derived(verdicts: dict[str, Verdict], name: str) -> Verdict:
    parts = [(part, verdicts[part]) for part in DERIVED_FROM[name]]
    failed = next(((part, v) for part, v in parts if v.status == FAIL), None)
    if failed:
        return Verdict(FAIL, {"property": failed[0], **(failed[1].witness or {})}, sum(v.checked for _, v in parts))
    if any(v.status == SKIPPED for _, v in parts):
        return Verdict(SKIPPED, note="a defining property was skipped")
    return Verdict(PASS, checked=sum(v.checked for _, v in parts))


def check_properties(p: PairOperation, R: LocalAlgebra, bounds: BoundsSpec | None = None, *,
                     properties: Sequence[str] | None = None,
                     catalogue: Sequence[CatalogueEntry] | None = None) -> PropertyReport:
    bounds = bounds or BoundsSpec.resolve()
    catalogue = module_catalogue(R, bounds.max_dim) if catalogue is None else catalogue
    wanted = list(PROPERTIES if properties is None else properties)
    for gated, gate in _GATES.items():
        if gated in wanted:
            for part in DERIVED_FROM[gate]:
                if part not in wanted:
                    wanted.insert(0, part)
    checker = PropertyChecker(p, R, bounds, catalogue)
    verdicts: dict[str, Verdict] = {}
    for name in PROPERTIES:
        if name in wanted and name not in _GATES:
            verdicts[name] = _run(checker, name)
    for name in DERIVED:
        if all(part in verdicts for part in DERIVED_FROM[name]):
            verdicts[name] = _derived(verdicts, name)
    for gated, gate in _GATES.items():
        if gated not in wanted:
            continue
        if verdicts[gate].status == PASS:
            verdicts[gated] = _run(checker, gated)
        elif verdicts[gate].status == FAIL:
            verdicts[gated] = Verdict(FAIL, {"reason": f"not a {gate}", **(verdicts[gate].witness or {})})
        else:
            verdicts[gated] = Verdict(SKIPPED, note=f"{gate} undecided")
    ordered = {name: verdicts[name] for name in PROPERTIES + DERIVED if name in verdicts}
    scope = {
        "modules": [e.label for e in catalogue],
        **bounds.to_dict(),
    }
    if checker.skipped_maps:
        scope["maps_not_enumerated"] = sorted(set(checker.skipped_maps))
    logger.info("checked %d properties of %s over %s", len(ordered), p.name, R.name)
    return PropertyReport(p.name, R.name, ordered, scope)


@dataclass
class DualComparison:
    asymmetries: list[dict]
    unchecked: list[dict]

    @property
    def ok(self) -> bool:
        return not self.asymmetries


def compare_dual_reports(report: PropertyReport, dual: PropertyReport) -> DualComparison:
    """Every property of `report` against its counterpart in `dual`."""
    asymmetries, unchecked = [], []
    for name, verdict in report.verdicts.items():
        counterpart = DUAL_CORRESPONDENCES[name]
        if counterpart not in dual.verdicts:
            continue
        other = dual.verdicts[counterpart]
        row = {"property": name, "status": verdict.status, "dual_property": counterpart, "dual_status": other.status}
        if SKIPPED in (verdict.status, other.status):
            unchecked.append(row)
        elif verdict.status != other.status:
            asymmetries.append(row)
    return DualComparison(asymmetries, unchecked)


# ---------------------[ SELECTORS ]---------------------#

SELECTOR_PROPERTIES = ("order-preserving", SURJECTION_FUNCTORIAL, FUNCTORIAL, IDEMPOTENT, "co-idempotent")


def check_selector_properties(alpha: SubmoduleSelector, R: LocalAlgebra, bounds: BoundsSpec | None = None,
                              catalogue: Sequence[CatalogueEntry] | None = None) -> PropertyReport:
    bounds = bounds or BoundsSpec.resolve()
    catalogue = module_catalogue(R, bounds.max_dim) if catalogue is None else catalogue
    checker = PropertyChecker(PairOperation(alpha.name, lambda L, M: alpha(M)), R, bounds, catalogue)

    def order_preserving():
        for e in checker.catalogue:
            M = e.module
            for L in checker.subs(M):
                Lmod, inc = submodule_as_module(L)
                yield inc.image(alpha(Lmod)) <= alpha(M), lambda e=e, L=L: {"module": e.label, "L": str(L)}

    def surjection_functorial():
        for e in checker.catalogue:
            M = e.module
            for U in checker.subs(M):
                Q, pi = quotient_module(M, U)
                yield pi.image(alpha(M)) <= alpha(Q), lambda e=e, U=U: {"module": e.label, "kernel": str(U)}

    def functorial():
        for e, f, g in checker.maps():
            yield g.image(alpha(e.module)) <= alpha(f.module), lambda e=e, f=f, g=g: {
                "source": e.label, "target": f.label, "map": checker._matrix(g)}

    def idempotent():
        for e in checker.catalogue:
            M = e.module
            A = alpha(M)
            Amod, inc = submodule_as_module(A)
            yield inc.image(alpha(Amod)) == A, lambda e=e: {"module": e.label}

    def co_idempotent():
        for e in checker.catalogue:
            M = e.module
            Q, _ = quotient_module(M, alpha(M))
            yield not alpha(Q).dim, lambda e=e: {"module": e.label}

    checks = dict(zip(SELECTOR_PROPERTIES,
                      (order_preserving, surjection_functorial, functorial, idempotent, co_idempotent)))
    verdicts = {}
    for name, run in checks.items():
        try:
            verdicts[name] = _scan(run())
        except EnumerationLimitExceeded as e:
            verdicts[name] = Verdict(SKIPPED, note=e.describe())
    return PropertyReport(alpha.name, R.name, verdicts, {"modules": [e.label for e in catalogue], **bounds.to_dict()})
