import importlib
import logging
import pkgutil
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

if TYPE_CHECKING:
    from PairOps.bench.resolver import Resolver

logger = logging.getLogger(__name__)

DONE = "done"
PASSED = "pass"
FAILED = "fail"
ERROR = "error"


@dataclass
class TaskContext:
    resolver: "Resolver"
    pointer: str

    @property
    def bounds(self):
        return self.resolver.bounds


Handler = Callable[[TaskContext, dict], dict]


class Workbench:
    """Registry of task handlers; plugin modules register with @Bench.on_task(kind)."""

    def __init__(self, name: str, plugins: dict | None = None):
        self.name = name
        self.plugins = plugins
        self.handlers: dict[str, Handler] = {}
        self._loaded = False

    def on_task(self, *kinds: str):
        def decorator(func: Handler) -> Handler:
            for kind in kinds:
                self.handlers[kind] = func
            return func
        return decorator

    def load_plugins(self):
        if self._loaded or not self.plugins:
            return self
        root = importlib.import_module(self.plugins["root"])
        for info in pkgutil.iter_modules(root.__path__):
            importlib.import_module(f"{root.__name__}.{info.name}")
        self._loaded = True
        logger.debug("%s handles %s", self.name, ", ".join(sorted(self.handlers)))
        return self

    def handler(self, kind: str) -> Handler:
        return self.load_plugins().handlers[kind]


Bench = Workbench("PairOps", plugins={"root": "PairOps.bench.plugins"})


def verdict(ok: bool) -> str:
    return PASSED if ok else FAILED
