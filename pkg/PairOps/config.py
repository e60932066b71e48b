from contextlib import contextmanager
from dataclasses import asdict, dataclass
from os import environ as env
from dotenv import load_dotenv

load_dotenv()


def _flag(name, default):
    return str(env.get(name, default).lower()) in ("1", "true", "t", "yes", "y")


class Bounds:
    MAX_DIM = int(env.get("PAIROPS_MAX_DIM", "8"))
    MAX_SUBMODULES = int(env.get("PAIROPS_MAX_SUBMODULES", "20000"))
    MAX_MAPS = int(env.get("PAIROPS_MAX_MAPS", "64"))  # largest Hom set walked exhaustively
    ISO_TRIALS = int(env.get("PAIROPS_ISO_TRIALS", "2"))
    DUALITY_DIM = int(env.get("PAIROPS_DUALITY_DIM", "4"))
    SEED = int(env.get("PAIROPS_SEED", "0"))


class Algebra:
    ITERATION_BUDGET = int(env.get("PAIROPS_ITERATION_BUDGET", "0"))  # 0 = monomial count + 1
    MEMO_SIZE = int(env.get("PAIROPS_MEMO_SIZE", "100000"))  # entries kept per operation


class Workbench:
    WORKERS = int(env.get("PAIROPS_WORKERS", "4"))
    FORMAT = str(env.get("PAIROPS_FORMAT", "json"))
    TIMING = _flag("PAIROPS_TIMING", "0")
    LOG_FILE = str(env.get("PAIROPS_LOG_FILE", "pairops.log"))
    LOG_LEVEL = str(env.get("PAIROPS_LOG_LEVEL", "INFO")).upper()


@dataclass(frozen=True)
class BoundsSpec:
    """Resolved enumeration bounds for one run."""
    max_dim: int
    max_submodules: int
    max_maps: int
    iso_trials: int
    duality_dim: int
    seed: int

    @classmethod
    def resolve(cls, *layers: dict) -> "BoundsSpec":
        values = {
            "max_dim": Bounds.MAX_DIM,
            "max_submodules": Bounds.MAX_SUBMODULES,
            "max_maps": Bounds.MAX_MAPS,
            "iso_trials": Bounds.ISO_TRIALS,
            "duality_dim": Bounds.DUALITY_DIM,
            "seed": Bounds.SEED,
        }
        for layer in layers:
            values.update({k: int(v) for k, v in (layer or {}).items() if v is not None and k in values})
        return cls(**values)

    def apply(self):
        Bounds.MAX_DIM = self.max_dim
        Bounds.MAX_SUBMODULES = self.max_submodules
        Bounds.MAX_MAPS = self.max_maps
        Bounds.ISO_TRIALS = self.iso_trials
        Bounds.DUALITY_DIM = self.duality_dim
        Bounds.SEED = self.seed
        return self

    @contextmanager
    def applied(self):
        """Install these bounds for the body of a with block, then put the previous ones back."""
        previous = BoundsSpec.resolve()
        self.apply()
        try:
            yield self
        finally:
            previous.apply()

    def to_dict(self) -> dict:
        return asdict(self)
