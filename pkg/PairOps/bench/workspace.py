"""
Workspace files: JSON documents declaring a field, rings, ideals, modules,
operations and tasks. Parsing is total; every problem is reported as a
PairOpsError carrying a JSON pointer, a line/column or a character offset.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from PairOps.algebra.exactlin import FieldSpec
from PairOps.algebra.polynomial import parse_poly
from PairOps.exceptions import (
    DuplicateName,
    FieldError,
    PolyParseError,
    SchemaError,
    UnresolvedReference,
    WorkspaceSyntaxError,
)

TOP_LEVEL = ("field", "bounds", "rings", "ideals", "modules", "operations", "tasks")
BOUND_KEYS = ("max_dim", "max_submodules", "max_maps", "iso_trials", "duality_dim", "seed")
NAMED_IDEALS = ("m", "0", "R")
NAMED_MODULES = ("R", "k", "m")

MODULE_KINDS = ("regular", "injective", "residue", "free", "quotient", "ideal", "dual")
OPERATION_KINDS = (
    "bf", "be", "module_closure", "trace", "frobenius", "rho", "gamma", "meet", "join",
    "finitistic", "finitistic_intermediate", "cohereditary_version", "hereditary_version",
    "smile_dual", "identity", "zero_interior", "full_closure", "custom_table",
)
SELECTOR_NAMES = ("socle", "radical", "zero", "full")
TASK_KINDS = (
    "eval", "compare", "props", "selector_props", "dual_check", "duality_table", "lattice_duality",
    "core", "hull", "core_hull", "hull_formula", "test_ideal", "test_ideal_chain", "trace_ideal", "fixtures",
)

# task parameter -> namespace it refers to
TASK_REFERENCES = {
    "op": "operations", "left": "operations", "right": "operations", "against": "operations",
    "ring": "rings", "module": "modules",
}
TASK_LIST_REFERENCES = {"ops": "operations", "rings": "rings"}


@dataclass(frozen=True)
class RingDecl:
    name: str
    vars: tuple[str, ...]
    relations: tuple[str, ...]
    nil_bound: int
    char: int | None = None


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    generators: tuple[str, ...]


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    ring: str
    kind: str
    rank: int | None = None
    ideal: Any = None
    generators: tuple | None = None
    of: str | None = None


@dataclass(frozen=True)
class OperationDecl:
    name: str
    kind: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TaskDecl:
    kind: str
    params: dict = field(default_factory=dict)
    pointer: str = ""


@dataclass(frozen=True)
class Workspace:
    char: int
    bounds: dict = field(default_factory=dict)
    rings: tuple[RingDecl, ...] = ()
    ideals: tuple[IdealDecl, ...] = ()
    modules: tuple[ModuleDecl, ...] = ()
    operations: tuple[OperationDecl, ...] = ()
    tasks: tuple[TaskDecl, ...] = ()

    def ring(self, name: str) -> RingDecl:
        return next(r for r in self.rings if r.name == name)

    def field_of(self, ring: str) -> FieldSpec:
        decl = self.ring(ring)
        return FieldSpec(self.char if decl.char is None else decl.char)


# ---------------------[ SCHEMA HELPERS ]---------------------#

def _expect(value, kind, pointer: str, what: str):
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"{what} must be an integer", pointer)
    if not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else " or ".join(k.__name__ for k in kind)
        raise SchemaError(f"{what} must be {names}, got {type(value).__name__}", pointer)
    return value


def _key(obj: dict, key: str, kind, pointer: str, default=...):
    if key not in obj:
        if default is ...:
            raise SchemaError(f"missing required key '{key}'", pointer)
        return default
    return _expect(obj[key], kind, f"{pointer}/{key}", key)


def _strings(obj: dict, key: str, pointer: str, default=...) -> tuple[str, ...] | None:
    values = _key(obj, key, list, pointer, default)
    if values is None or values is default:
        return values
    for i, v in enumerate(values):
        _expect(v, str, f"{pointer}/{key}/{i}", f"{key} entry")
    return tuple(values)


def _only(obj: dict, allowed: tuple[str, ...], pointer: str):
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"unknown key '{key}'", f"{pointer}/{key}")


def _polys(texts, variables, field: FieldSpec, pointer: str):
    for i, text in enumerate(texts):
        try:
            parse_poly(text, variables, field)
        except PolyParseError as e:
            raise PolyParseError(f"{e.detail} at {pointer}/{i}", e.position, text) from e


# ---------------------[ SECTIONS ]---------------------#

def _parse_rings(doc: dict, char: int) -> tuple[RingDecl, ...]:
    rings = []
    for i, raw in enumerate(_key(doc, "rings", list, "", [])):
        ptr = f"/rings/{i}"
        _expect(raw, dict, ptr, "ring")
        _only(raw, ("name", "vars", "relations", "nil_bound", "char"), ptr)
        decl = RingDecl(
            name=_key(raw, "name", str, ptr),
            vars=_strings(raw, "vars", ptr),
            relations=_strings(raw, "relations", ptr, ()),
            nil_bound=_key(raw, "nil_bound", int, ptr),
            char=_key(raw, "char", int, ptr, None),
        )
        try:
            field_spec = FieldSpec(char if decl.char is None else decl.char)
        except FieldError as e:
            raise SchemaError(e.describe(), f"{ptr}/char") from e
        _polys(decl.relations, decl.vars, field_spec, f"{ptr}/relations")
        rings.append(decl)
    return tuple(rings)


def _parse_ideals(doc: dict) -> tuple[IdealDecl, ...]:
    ideals = []
    for i, raw in enumerate(_key(doc, "ideals", list, "", [])):
        ptr = f"/ideals/{i}"
        _expect(raw, dict, ptr, "ideal")
        _only(raw, ("name", "ring", "generators"), ptr)
        ideals.append(IdealDecl(_key(raw, "name", str, ptr), _key(raw, "ring", str, ptr), _strings(raw, "generators", ptr)))
    return tuple(ideals)


def _parse_modules(doc: dict) -> tuple[ModuleDecl, ...]:
    modules = []
    for i, raw in enumerate(_key(doc, "modules", list, "", [])):
        ptr = f"/modules/{i}"
        _expect(raw, dict, ptr, "module")
        _only(raw, ("name", "ring", "kind", "rank", "ideal", "generators", "of"), ptr)
        kind = _key(raw, "kind", str, ptr)
        if kind not in MODULE_KINDS:
            raise SchemaError(f"module kind must be one of {', '.join(MODULE_KINDS)}", f"{ptr}/kind")
        generators = _strings(raw, "generators", ptr, None)
        decl = ModuleDecl(
            name=_key(raw, "name", str, ptr),
            ring=_key(raw, "ring", str, ptr),
            kind=kind,
            rank=_key(raw, "rank", int, ptr, None),
            ideal=_key(raw, "ideal", str, ptr, None),
            generators=generators,
            of=_key(raw, "of", str, ptr, None),
        )
        if kind in ("free", "injective") and decl.rank is None:
            raise SchemaError(f"{kind} module needs 'rank'", ptr)
        if kind in ("quotient", "ideal") and (decl.ideal is None) == (decl.generators is None):
            raise SchemaError(f"{kind} module needs exactly one of 'ideal' or 'generators'", ptr)
        if kind == "dual" and decl.of is None:
            raise SchemaError("dual module needs 'of'", ptr)
        modules.append(decl)
    return tuple(modules)


def _parse_operations(doc: dict) -> tuple[OperationDecl, ...]:
    operations = []
    for i, raw in enumerate(_key(doc, "operations", list, "", [])):
        ptr = f"/operations/{i}"
        _expect(raw, dict, ptr, "operation")
        kind = _key(raw, "kind", str, ptr)
        if kind not in OPERATION_KINDS:
            raise SchemaError(f"operation kind must be one of {', '.join(OPERATION_KINDS)}", f"{ptr}/kind")
        params = {k: v for k, v in raw.items() if k not in ("name", "kind")}
        operations.append(OperationDecl(_key(raw, "name", str, ptr), kind, params))
    return tuple(operations)


def _parse_tasks(doc: dict) -> tuple[TaskDecl, ...]:
    tasks = []
    for i, raw in enumerate(_key(doc, "tasks", list, "", [])):
        ptr = f"/tasks/{i}"
        _expect(raw, dict, ptr, "task")
        kind = _key(raw, "kind", str, ptr)
        if kind not in TASK_KINDS:
            raise SchemaError(f"task kind must be one of {', '.join(TASK_KINDS)}", f"{ptr}/kind")
        tasks.append(TaskDecl(kind, {k: v for k, v in raw.items() if k != "kind"}, ptr))
    return tuple(tasks)


# ---------------------[ REFERENCES ]---------------------#

def _check_names(w: Workspace):
    seen = {}
    for section in ("rings", "ideals", "modules", "operations"):
        for i, decl in enumerate(getattr(w, section)):
            if decl.name in seen:
                raise DuplicateName(decl.name, f"/{section}/{i}/name")
            seen[decl.name] = section


def _check_references(w: Workspace):
    rings = {r.name for r in w.rings}
    ideals = {d.name for d in w.ideals}
    modules = {d.name for d in w.modules} | rings
    operations = {d.name for d in w.operations}
    spaces = {"rings": rings, "ideals": ideals | set(NAMED_IDEALS), "modules": modules, "operations": operations}

    def need(name, space, pointer):
        if not isinstance(name, str):
            raise SchemaError(f"reference must be a name, got {type(name).__name__}", pointer)
        if name not in spaces[space]:
            raise UnresolvedReference(name, pointer)

    for i, d in enumerate(w.ideals):
        need(d.ring, "rings", f"/ideals/{i}/ring")
        _polys(d.generators, w.ring(d.ring).vars, w.field_of(d.ring), f"/ideals/{i}/generators")
    for i, d in enumerate(w.modules):
        ptr = f"/modules/{i}"
        need(d.ring, "rings", f"{ptr}/ring")
        if d.ideal is not None:
            need(d.ideal, "ideals", f"{ptr}/ideal")
        if d.generators is not None:
            _polys(d.generators, w.ring(d.ring).vars, w.field_of(d.ring), f"{ptr}/generators")
        if d.of is not None:
            need(d.of, "modules", f"{ptr}/of")
    for i, d in enumerate(w.operations):
        ptr = f"/operations/{i}"
        p = d.params
        if d.kind in ("bf", "be") and "J" in p and isinstance(p["J"], str):
            need(p["J"], "ideals", f"{ptr}/J")
        if d.kind in ("module_closure", "trace") and "L" in p and p["L"] not in NAMED_MODULES:
            need(p["L"], "modules", f"{ptr}/L")
        if d.kind in ("rho", "gamma"):
            if "from" in p:
                need(p["from"], "operations", f"{ptr}/from")
            elif p.get("selector") not in SELECTOR_NAMES:
                raise SchemaError(f"selector must be one of {', '.join(SELECTOR_NAMES)} or use 'from'", f"{ptr}/selector")
        if d.kind in ("meet", "join"):
            of = _expect(p.get("of"), list, f"{ptr}/of", "of")
            for j, name in enumerate(of):
                need(name, "operations", f"{ptr}/of/{j}")
        if d.kind in ("finitistic", "finitistic_intermediate", "cohereditary_version", "hereditary_version", "smile_dual"):
            need(p.get("of"), "operations", f"{ptr}/of")
        if d.kind == "custom_table":
            need(p.get("ring"), "rings", f"{ptr}/ring")
            _expect(p.get("rules", []), list, f"{ptr}/rules", "rules")
    for d in w.tasks:
        for key, space in TASK_REFERENCES.items():
            if key in d.params:
                need(d.params[key], space, f"{d.pointer}/{key}")
        for key, space in TASK_LIST_REFERENCES.items():
            if key in d.params:
                for j, name in enumerate(_expect(d.params[key], list, f"{d.pointer}/{key}", key)):
                    need(name, space, f"{d.pointer}/{key}/{j}")


# ---------------------[ ENTRY POINTS ]---------------------#

def parse_workspace(text: str) -> Workspace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceSyntaxError(e.msg, e.lineno, e.colno) from e
    except RecursionError as e:
        raise WorkspaceSyntaxError("nesting too deep") from e
    _expect(doc, dict, "", "workspace")
    _only(doc, TOP_LEVEL, "")
    fld = _key(doc, "field", dict, "")
    _only(fld, ("char",), "/field")
    char = _key(fld, "char", int, "/field")
    try:
        FieldSpec(char)
    except FieldError as e:
        raise SchemaError(e.describe(), "/field/char") from e
    bounds = _key(doc, "bounds", dict, "", {})
    _only(bounds, BOUND_KEYS, "/bounds")
    for key, value in bounds.items():
        _expect(value, int, f"/bounds/{key}", key)
    w = Workspace(
        char=char,
        bounds=dict(bounds),
        rings=_parse_rings(doc, char),
        ideals=_parse_ideals(doc),
        modules=_parse_modules(doc),
        operations=_parse_operations(doc),
        tasks=_parse_tasks(doc),
    )
    _check_names(w)
    _check_references(w)
    return w


def workspace_to_dict(w: Workspace) -> dict:
    def prune(d: dict) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items() if v is not None}

    doc = {"field": {"char": w.char}}
    if w.bounds:
        doc["bounds"] = dict(w.bounds)
    doc["rings"] = [prune({"name": r.name, "vars": r.vars, "relations": r.relations,
                           "nil_bound": r.nil_bound, "char": r.char}) for r in w.rings]
    doc["ideals"] = [prune({"name": d.name, "ring": d.ring, "generators": d.generators}) for d in w.ideals]
    doc["modules"] = [prune({"name": d.name, "ring": d.ring, "kind": d.kind, "rank": d.rank, "ideal": d.ideal,
                             "generators": d.generators, "of": d.of}) for d in w.modules]
    doc["operations"] = [{"name": d.name, "kind": d.kind, **d.params} for d in w.operations]
    doc["tasks"] = [{"kind": d.kind, **d.params} for d in w.tasks]
    return doc


def dump_workspace(w: Workspace) -> str:
    """Canonical JSON; parse_workspace(dump_workspace(w)) == w."""
    return json.dumps(workspace_to_dict(w), sort_keys=True, indent=2) + "\n"
