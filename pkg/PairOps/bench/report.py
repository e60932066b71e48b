"""
Report emission. JSON is canonical (sorted keys, compact separators) so the
same report always serialises to the same bytes; text is rendered from the
same dictionary with a jinja2 template.
"""
from __future__ import annotations

import json
import logging

import aiofiles

from PairOps.bench.runner import Report
from PairOps.utils.render_template import render_report

logger = logging.getLogger(__name__)

FORMATS = ("json", "text")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    data = report.to_dict()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
    if fmt == "text":
        return render_report(data).encode("utf-8")
    raise ValueError(f"format must be one of {', '.join(FORMATS)}, not {fmt!r}")


async def write_report(path: str, payload: bytes):
    async with aiofiles.open(path, mode="wb") as f:
        await f.write(payload)
    logger.info("report written to %s (%d bytes)", path, len(payload))
