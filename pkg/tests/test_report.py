import asyncio
import json

from PairOps.bench.report import emit_report, write_report
from PairOps.bench.runner import Report, execute_tasks
from PairOps.bench.workspace import parse_workspace
from PairOps.config import Bounds, BoundsSpec

WORKSPACE = json.dumps({
    "field": {"char": 2},
    "rings": [{"name": "R1", "vars": ["x"], "relations": ["x^2"], "nil_bound": 2}],
    "operations": [{"name": "bf_m", "kind": "bf"}, {"name": "be_m", "kind": "be"}],
    "tasks": [
        {"kind": "eval", "op": "bf_m", "module": "R1", "L": [], "expect": ["x"]},
        {"kind": "eval", "op": "be_m", "module": "R1", "L": ["1"], "expect": ["1"]},
        {"kind": "eval", "op": "bf_m", "module": "R1", "L": ["x"]},
    ],
})


def run(text: str, **kwargs) -> Report:
    return asyncio.run(execute_tasks(parse_workspace(text), **kwargs))


def test_empty_report():
    assert emit_report(Report()) == b'{"tasks":[]}'
    assert "no tasks" in emit_report(Report(), "text").decode()


def test_report_statuses():
    report = run(WORKSPACE, timing=False)
    statuses = [t["status"] for t in report.tasks]
    assert statuses == ["pass", "fail", "done"]
    assert [t["index"] for t in report.tasks] == [0, 1, 2]
    assert report.exit_status == 1
    assert report.tasks[1]["result"]["generators"] == "(x)"
    assert all("seconds" not in t for t in report.tasks)


def test_json_is_deterministic():
    first = emit_report(run(WORKSPACE, workers=1, timing=False))
    second = emit_report(run(WORKSPACE, workers=3, timing=False))
    assert first == second


def test_timing_is_opt_in():
    report = run(WORKSPACE, timing=True)
    assert all(t["seconds"] >= 0 for t in report.tasks)


def test_task_errors_are_reported():
    text = json.dumps({
        "field": {"char": 2},
        "rings": [{"name": "R1", "vars": ["x"], "relations": ["x^2"], "nil_bound": 2}],
        "modules": [{"name": "E1", "ring": "R1", "kind": "injective", "rank": 1}],
        "operations": [{"name": "bf_m", "kind": "bf"}],
        "tasks": [{"kind": "eval", "op": "bf_m", "module": "E1", "L": ["x"]}],
    })
    report = run(text, timing=False)
    assert report.tasks[0]["status"] == "error"
    assert report.tasks[0]["error"]["code"] == "E-SCHEMA"


def test_text_format():
    text = emit_report(run(WORKSPACE, timing=False), "text").decode()
    assert "---- Task 0: eval [pass] ----" in text
    assert "result.generators" in text


def test_write_report(tmp_path):
    out = tmp_path / "report.json"
    asyncio.run(write_report(str(out), b'{"tasks":[]}'))
    assert out.read_bytes() == b'{"tasks":[]}'


def test_workspace_bounds_do_not_outlive_the_run():
    before = BoundsSpec.resolve()
    doc = json.loads(WORKSPACE)
    doc["bounds"] = {"max_dim": 3, "max_submodules": 50}
    run(json.dumps(doc), timing=False)
    assert BoundsSpec.resolve() == before
    assert (Bounds.MAX_DIM, Bounds.MAX_SUBMODULES) == (before.max_dim, before.max_submodules)
