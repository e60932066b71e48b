import os
import sys
import json
import time
import asyncio
import logging
import argparse
import traceback
import logging.handlers as handlers

from PairOps import StartTime, __version__
from PairOps.config import BoundsSpec, Workbench
from PairOps.exceptions import PairOpsError, WorkspaceSyntaxError
from PairOps.bench.report import FORMATS, emit_report, write_report
from PairOps.bench.runner import execute_tasks
from PairOps.bench.workspace import dump_workspace, parse_workspace
from PairOps.utils import get_readable_time

WORKSPACES = os.path.join(os.path.dirname(__file__), "workspaces")
FIXTURES_FILE = os.path.join(WORKSPACES, "fixtures.json")
ACCEPTANCE_FILE = os.path.join(WORKSPACES, "acceptance.json")


def setup_logging():
    log_handlers = [logging.StreamHandler(stream=sys.stderr)]
    if Workbench.LOG_FILE:
        log_handlers.append(handlers.RotatingFileHandler(Workbench.LOG_FILE, mode="a", maxBytes=104857600,
                                                         backupCount=2, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, Workbench.LOG_LEVEL, logging.INFO),
        datefmt="%d/%m/%Y %H:%M:%S",
        format='[%(asctime)s] {%(pathname)s:%(lineno)d} %(levelname)s - %(message)s',
        handlers=log_handlers,
    )
    logging.getLogger("asyncio").setLevel(logging.ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pairops", description="Pair operations over Artinian local algebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run the tasks of a workspace file")
    run.add_argument("workspace")
    commands.add_parser("fixtures", help="print the built-in R1-R4 workspace")
    verify = commands.add_parser("verify", help="run the acceptance workspace")

    for sub in (run, verify):
        sub.add_argument("--out", help="write the report to this file instead of stdout")
        sub.add_argument("--format", choices=FORMATS, default=Workbench.FORMAT)
        sub.add_argument("--max-dim", type=int, dest="max_dim")
        sub.add_argument("--max-submodules", type=int, dest="max_submodules")
        sub.add_argument("--workers", type=int)
        sub.add_argument("--timing", action="store_true", default=None)
    return parser


def _fail(err: PairOpsError) -> int:
    print(json.dumps({"error": err.to_dict()}, sort_keys=True), file=sys.stderr)
    return err.exit_status


async def run_workspace(text: str, args) -> int:
    print("---- Running Workspace ----", file=sys.stderr)
    workspace = parse_workspace(text)
    bounds = BoundsSpec.resolve(workspace.bounds, {"max_dim": args.max_dim, "max_submodules": args.max_submodules})
    report = await execute_tasks(workspace, bounds, workers=args.workers, timing=args.timing)
    payload = emit_report(report, args.format)
    if args.out:
        await write_report(args.out, payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
        if args.format == "json":
            sys.stdout.write("\n")
        sys.stdout.flush()
    print(f"---- DONE ({len(report.tasks)} tasks, {len(report.failures)} not passed) ----", file=sys.stderr)
    return report.exit_status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging()
    try:
        if args.command == "fixtures":
            with open(FIXTURES_FILE) as f:
                sys.stdout.write(dump_workspace(parse_workspace(f.read())))
            return 0
        path = ACCEPTANCE_FILE if args.command == "verify" else args.workspace
        try:
            with open(path, encoding="utf-8") as f:
                text = f.read()
        except UnicodeDecodeError as e:
            raise WorkspaceSyntaxError(f"not UTF-8: {e.reason} at byte {e.start}") from e
        except OSError as e:
            print(json.dumps({"error": {"code": "E-IO", "message": str(e)}}), file=sys.stderr)
            return 2
        return asyncio.run(run_workspace(text, args))
    except PairOpsError as err:
        return _fail(err)
    except KeyboardInterrupt:
        return 130
    except Exception:
        logging.error(traceback.format_exc())
        return 1
    finally:
        logging.getLogger(__name__).info("finished in %s", get_readable_time(time.time() - StartTime))


if __name__ == "__main__":
    sys.exit(main())
