"""
Runs the tasks of a workspace concurrently on worker threads and collects the
results in declaration order.
"""
from __future__ import annotations

import asyncio
import logging
import time
import traceback
from dataclasses import dataclass, field

from PairOps.algebra.duality import KERNEL_VIEW
from PairOps.bench import DONE, ERROR, PASSED, Bench, TaskContext
from PairOps.bench.resolver import Resolver
from PairOps.bench.workspace import TaskDecl, Workspace
from PairOps.config import BoundsSpec, Workbench
from PairOps.exceptions import PairOpsError

logger = logging.getLogger(__name__)


@dataclass
class Report:
    tasks: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        return [t for t in self.tasks if t["status"] not in (DONE, PASSED)]

    @property
    def exit_status(self) -> int:
        return 1 if self.failures else 0

    def to_dict(self) -> dict:
        return {"tasks": self.tasks}


async def run_task(resolver: Resolver, task: TaskDecl, index: int, gate: asyncio.Semaphore, timing: bool) -> dict:
    async with gate:
        logger.info("task %d: %s", index, task.kind)
        start = time.perf_counter()
        try:
            handler = Bench.handler(task.kind)
            body = await asyncio.to_thread(handler, TaskContext(resolver, task.pointer), task.params)
        except PairOpsError as e:
            logger.error("task %d (%s) failed: %s", index, task.kind, e.describe())
            body = {"status": ERROR, "error": e.to_dict()}
        except Exception as e:
            logging.error(traceback.format_exc())
            body = {"status": ERROR, "error": {"code": "E-INTERNAL", "message": f"{type(e).__name__}: {e}"}}
        result = {"index": index, "kind": task.kind, **body}
        if timing:
            result["seconds"] = round(time.perf_counter() - start, 3)
        return result


async def execute_tasks(workspace: Workspace, bounds: BoundsSpec | None = None, *,
                        workers: int | None = None, timing: bool | None = None) -> Report:
    bounds = bounds or BoundsSpec.resolve(workspace.bounds)
    resolver = Resolver(workspace, bounds)
    Bench.load_plugins()
    gate = asyncio.Semaphore(workers or Workbench.WORKERS)
    timing = Workbench.TIMING if timing is None else timing
    with bounds.applied():
        results = await asyncio.gather(*[
            run_task(resolver, task, i, gate, timing) for i, task in enumerate(workspace.tasks)
        ])
    report = Report(list(results))
    view = KERNEL_VIEW.snapshot()
    logger.info("%d tasks, %d not passed; kernel view agreed on %d of %d dual evaluations",
                len(report.tasks), len(report.failures), view["agreements"], view["evaluations"])
    return report
