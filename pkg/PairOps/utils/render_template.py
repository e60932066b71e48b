import os

import jinja2

from PairOps.utils.formatting import flatten, property_table

TEMPLATE_FILE = os.path.join(os.path.dirname(os.path.dirname(__file__)), "template", "report.txt")


def _tables(task: dict) -> list[dict]:
    tables = []
    for key in ("verdicts", "dual_verdicts"):
        if isinstance(task.get(key), dict):
            tables.append({"title": key, "rows": property_table(task[key])})
    for i, entry in enumerate(task.get("operations", []) if isinstance(task.get("operations"), list) else []):
        if isinstance(entry, dict) and isinstance(entry.get("verdicts"), dict):
            tables.append({"title": entry.get("operation", f"operation {i}"), "rows": property_table(entry["verdicts"])})
    return tables


def render_report(report: dict) -> str:
    with open(TEMPLATE_FILE) as f:
        template = jinja2.Template(f.read(), trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
    tasks = []
    for task in report["tasks"]:
        rows = flatten(task)
        width = max((len(key) for key, _ in rows), default=0)
        tasks.append({
            "index": task["index"],
            "kind": task["kind"],
            "status": task["status"],
            "rows": [(key.ljust(width), value) for key, value in rows],
            "tables": _tables(task),
        })
    return template.render(tasks=tasks)
