"""
Turns workspace declarations into rings, ideals, modules and operations.
Everything is built on first use and cached for the rest of the run.
"""
from __future__ import annotations

import logging
import threading
from typing import Callable

from PairOps.algebra.exactlin import FieldSpec
from PairOps.algebra.flmod import (
    FLModule,
    Submodule,
    dual_module,
    free_module,
    ideal,
    injective_module,
    maximal_ideal_submodule,
    quotient_module,
    regular_module,
    span_submodule,
    submodule_as_module,
)
from PairOps.algebra.local_algebra import LocalAlgebra, build_local_algebra
from PairOps.algebra.duality import smile_dual
from PairOps.bench.workspace import NAMED_IDEALS, NAMED_MODULES, Workspace
from PairOps.config import BoundsSpec
from PairOps.exceptions import NotASubmodule, RingMismatch, SchemaError, UnresolvedReference
from PairOps.operations import base, builders, combinators
from PairOps.operations.base import PairOperation, SubmoduleSelector

logger = logging.getLogger(__name__)

Embed = Callable[[tuple], tuple]


class Resolver:
    def __init__(self, workspace: Workspace, bounds: BoundsSpec | None = None):
        self.workspace = workspace
        self.bounds = bounds or BoundsSpec.resolve(workspace.bounds)
        self._lock = threading.RLock()
        self._rings: dict[str, LocalAlgebra] = {}
        self._modules: dict[str, FLModule] = {}
        self._operations: dict[str, PairOperation] = {}
        self._embeds: dict[FLModule, Embed] = {}

    # ---------------------[ RINGS AND IDEALS ]---------------------#

    def ring(self, name: str) -> LocalAlgebra:
        with self._lock:
            if name not in self._rings:
                decl = next((r for r in self.workspace.rings if r.name == name), None)
                if decl is None:
                    raise UnresolvedReference(name)
                field = FieldSpec(self.workspace.char if decl.char is None else decl.char)
                self._rings[name] = build_local_algebra(field, decl.vars, decl.relations, decl.nil_bound, name=name)
                logger.info("built ring %s of dimension %d", name, self._rings[name].dim)
            return self._rings[name]

    def ideal(self, ref, R: LocalAlgebra, pointer: str = "") -> Submodule:
        """A named ideal (m, 0, R), a declared ideal, or a list of generators."""
        if isinstance(ref, list):
            return ideal(R, ref)
        if not isinstance(ref, str):
            raise SchemaError("ideal must be a name or a list of generators", pointer)
        if ref in NAMED_IDEALS:
            return builders.resolve_ideal(ref, R)
        decl = next((d for d in self.workspace.ideals if d.name == ref), None)
        if decl is None:
            raise UnresolvedReference(ref, pointer)
        owner = self.ring(decl.ring)
        if owner is not R:
            raise RingMismatch(f"ideal {ref} lives over {owner.name}, not {R.name}")
        return ideal(owner, decl.generators)

    def _ideal_arg(self, ref, pointer: str):
        """Ideal parameter of bf/be: a named ideal stays a name and resolves per ring."""
        if isinstance(ref, str) and ref in NAMED_IDEALS:
            return ref
        if isinstance(ref, str):
            decl = next((d for d in self.workspace.ideals if d.name == ref), None)
            if decl is None:
                raise UnresolvedReference(ref, pointer)
            return self.ideal(ref, self.ring(decl.ring), pointer)
        raise SchemaError("J must name an ideal", pointer)

    # ---------------------[ MODULES ]---------------------#

    def module(self, name: str) -> FLModule:
        with self._lock:
            if name not in self._modules:
                self._modules[name] = self._build_module(name)
            return self._modules[name]

    def _build_module(self, name: str) -> FLModule:
        if any(r.name == name for r in self.workspace.rings):
            M = regular_module(self.ring(name))
            self._embeds[M] = lambda v: v
            return M
        decl = next((d for d in self.workspace.modules if d.name == name), None)
        if decl is None:
            raise UnresolvedReference(name)
        R = self.ring(decl.ring)
        if decl.kind == "regular":
            M = regular_module(R)
            self._embeds[M] = lambda v: v
        elif decl.kind == "injective":
            M = injective_module(R, decl.rank)
        elif decl.kind == "residue":
            M, pi = quotient_module(regular_module(R), maximal_ideal_submodule(R))
            self._embeds[M] = pi
        elif decl.kind == "free":
            M = free_module(R, decl.rank)
        elif decl.kind == "quotient":
            I = self._declared_or_generated(decl, R)
            M, pi = quotient_module(regular_module(R), I)
            self._embeds[M] = pi
        elif decl.kind == "ideal":
            I = self._declared_or_generated(decl, R)
            M, _ = submodule_as_module(I)
            self._embeds[M] = lambda v, I=I: self._inside(I, v)
        else:
            M = dual_module(self.module(decl.of))
            if M.ring is not R:
                raise RingMismatch(f"{decl.of} is not a module over {R.name}")
        return M

    def _declared_or_generated(self, decl, R: LocalAlgebra) -> Submodule:
        if decl.ideal is not None:
            return self.ideal(decl.ideal, R)
        return ideal(R, decl.generators)

    @staticmethod
    def _inside(I: Submodule, v: tuple) -> tuple:
        if not I.contains(v):
            raise NotASubmodule(f"{I.parent.format(v)} is not in {I}")
        return I.space.coordinates(v)

    def submodule(self, M: FLModule, arg, pointer: str = "") -> Submodule:
        """Generators given as ring-element strings or as {"coords": [[...], ...]}."""
        if isinstance(arg, dict) and set(arg) == {"coords"} and isinstance(arg["coords"], list):
            return span_submodule(M, arg["coords"])
        if isinstance(arg, str):
            arg = [arg]
        if not isinstance(arg, list):
            raise SchemaError("submodule must be a list of elements or {\"coords\": [...]}", pointer)
        embed = self._embeds.get(M)
        if embed is None:
            raise SchemaError(f"{M.name} takes submodules as coordinates only", pointer)
        R = M.ring
        return span_submodule(M, [embed(R.parse(text).coords) for text in arg])

    # ---------------------[ OPERATIONS ]---------------------#

    def operation(self, name: str) -> PairOperation:
        with self._lock:
            if name not in self._operations:
                decl = next((d for d in self.workspace.operations if d.name == name), None)
                if decl is None:
                    raise UnresolvedReference(name)
                op = self._build_operation(decl)
                op.name = decl.name
                self._operations[name] = op
            return self._operations[name]

    def selector(self, params: dict, pointer: str) -> SubmoduleSelector:
        if "from" in params:
            return base.selector_from(self.operation(params["from"]))
        try:
            return base.SELECTORS[params.get("selector")]
        except KeyError:
            raise SchemaError("unknown selector", f"{pointer}/selector") from None

    def _module_arg(self, L):
        if L in NAMED_MODULES:
            return L
        return self.module(L)

    def _build_operation(self, decl) -> PairOperation:
        p = decl.params
        ptr = next(f"/operations/{i}" for i, d in enumerate(self.workspace.operations) if d is decl)
        limit = self.bounds.max_submodules
        kind = decl.kind
        if kind == "bf":
            return builders.make_bf(self._ideal_arg(p.get("J", "m"), f"{ptr}/J"))
        if kind == "be":
            return builders.make_be(self._ideal_arg(p.get("J", "m"), f"{ptr}/J"))
        if kind == "module_closure":
            return builders.make_module_closure(p.get("S"), self._module_arg(p.get("L", "R")))
        if kind == "trace":
            return builders.make_trace(p.get("S"), self._module_arg(p.get("L", "R")))
        if kind == "frobenius":
            return builders.make_frobenius_closure()
        if kind == "rho":
            return builders.rho(self.selector(p, ptr))
        if kind == "gamma":
            return builders.gamma(self.selector(p, ptr))
        if kind == "meet":
            return combinators.meet([self.operation(n) for n in p["of"]])
        if kind == "join":
            return combinators.join([self.operation(n) for n in p["of"]])
        if kind == "finitistic":
            return combinators.finitistic(self.operation(p["of"]), limit)
        if kind == "finitistic_intermediate":
            return combinators.finitistic_intermediate(self.operation(p["of"]), limit)
        if kind == "cohereditary_version":
            return combinators.cohereditary_version(self.operation(p["of"]))
        if kind == "hereditary_version":
            return combinators.hereditary_version(self.operation(p["of"]))
        if kind == "smile_dual":
            return smile_dual(self.operation(p["of"]))
        if kind == "identity":
            return base.identity_operation()
        if kind == "zero_interior":
            return base.zero_interior()
        if kind == "full_closure":
            return base.full_closure()
        R = self.ring(p["ring"])
        rules = [
            (self.ideal(rule["bound"], R, f"{ptr}/rules/{i}/bound"), self.ideal(rule["value"], R, f"{ptr}/rules/{i}/value"))
            for i, rule in enumerate(p.get("rules", []))
        ]
        return builders.make_custom_table(R, rules, self.ideal(p.get("otherwise", "R"), R, f"{ptr}/otherwise"))
