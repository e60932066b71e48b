import json
from fractions import Fraction

from PairOps.algebra.flmod import Submodule


def scalar(c):
    return str(c) if isinstance(c, Fraction) and c.denominator != 1 else int(c)


def submodule_summary(N: Submodule) -> dict:
    """Generators in the module's labels plus the canonical coordinate rows."""
    M = N.parent
    return {
        "module": M.name,
        "generators": str(N),
        "dim": N.dim,
        "coords": [[scalar(c) for c in row] for row in N.rows],
    }


def flatten(data, prefix: str = "") -> list[tuple[str, str]]:
    """Leaves of a nested result as (dotted key, text) rows."""
    if isinstance(data, dict):
        rows = []
        for key in sorted(data):
            rows.extend(flatten(data[key], f"{prefix}.{key}" if prefix else str(key)))
        return rows
    if isinstance(data, list) and any(isinstance(v, dict) for v in data):
        rows = []
        for i, v in enumerate(data):
            rows.extend(flatten(v, f"{prefix}[{i}]"))
        return rows
    if isinstance(data, str):
        return [(prefix, data)]
    return [(prefix, json.dumps(data, sort_keys=True))]


def property_table(verdicts: dict) -> list[tuple[str, str, str]]:
    return [(name, v["status"], str(v.get("checked", ""))) for name, v in verdicts.items()]
