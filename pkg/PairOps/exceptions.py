class PairOpsError(Exception):
    code = "E-PAIROPS"
    message = "PairOps error"
    exit_status = 1

    def __init__(self, detail=None, **context):
        self.detail = detail
        self.context = context
        super().__init__(self.describe())

    def describe(self) -> str:
        text = f"{self.code}: {self.message}"
        if self.detail:
            text += f" ({self.detail})"
        return text

    def to_dict(self) -> dict:
        data = {"code": self.code, "message": self.message}
        if self.detail:
            data["detail"] = str(self.detail)
        for key, value in self.context.items():
            data[key] = value if isinstance(value, (int, str)) else str(value)
        return data


# ---------------------[ WORKSPACE ]---------------------#

class WorkspaceError(PairOpsError):
    code = "E-WORKSPACE"
    message = "Invalid workspace"
    exit_status = 2


class WorkspaceSyntaxError(WorkspaceError):
    code = "E-SYNTAX"
    message = "Workspace is not valid JSON"

    def __init__(self, detail=None, line=0, column=0):
        super().__init__(detail, line=line, column=column)


class SchemaError(WorkspaceError):
    code = "E-SCHEMA"
    message = "Schema violation"

    def __init__(self, detail=None, pointer=""):
        super().__init__(detail, pointer=pointer)


class UnresolvedReference(WorkspaceError):
    code = "E-UNRESOLVED"
    message = "Unknown reference"

    def __init__(self, name, pointer=""):
        self.name = name
        super().__init__(f"'{name}' is not declared", name=name, pointer=pointer)


class DuplicateName(WorkspaceError):
    code = "E-DUPLICATE"
    message = "Name declared twice"

    def __init__(self, name, pointer=""):
        self.name = name
        super().__init__(f"'{name}'", name=name, pointer=pointer)


class PolyParseError(WorkspaceError):
    code = "E-POLY"
    message = "Malformed polynomial"

    def __init__(self, detail=None, position=0, text=""):
        self.position = position
        super().__init__(detail, position=position, text=text)


# ---------------------[ ALGEBRA ]---------------------#

class FieldError(PairOpsError):
    code = "E-FIELD"
    message = "Unsupported field or field mismatch"


class DimensionMismatch(PairOpsError):
    code = "E-DIM"
    message = "Dimension mismatch"


class ZeroRingError(PairOpsError):
    code = "E-ZERO-RING"
    message = "Relations generate the unit ideal"


class NonLocalError(PairOpsError):
    code = "E-NONLOCAL"
    message = "Algebra is not local"


class NilBoundError(PairOpsError):
    code = "E-NILBOUND"
    message = "nil_bound too small, raise N until every monomial of degree N lies in the ideal"


class FixedPointError(PairOpsError):
    code = "E-FIXPOINT"
    message = "Ideal closure did not stabilise within the iteration budget"


class AlgebraValidationError(PairOpsError):
    code = "E-VALIDATION"
    message = "Multiplication table fails validation"

    def __init__(self, report):
        self.report = report
        failed = report.first_failure()
        super().__init__(failed.describe() if failed else None)


class ModuleStructureError(PairOpsError):
    code = "E-MODULE"
    message = "Action matrices do not define a module"


class NotASubmodule(PairOpsError):
    code = "E-SUBMODULE"
    message = "Subspace is not invariant under the ring action"


class RingMismatch(PairOpsError):
    code = "E-RING"
    message = "Objects live over different rings"


class ModuleMismatch(PairOpsError):
    code = "E-MODULE-MISMATCH"
    message = "Submodule does not belong to the expected module"


class EnumerationLimitExceeded(PairOpsError):
    code = "E-LIMIT"
    message = "Submodule enumeration limit exceeded"

    def __init__(self, limit, count):
        self.limit = limit
        self.count = count
        super().__init__(f"found more than {limit} submodules", limit=limit, count=count)


class InfiniteFieldError(PairOpsError):
    code = "E-INFINITE"
    message = "Enumeration requires a finite field"


# ---------------------[ OPERATIONS ]---------------------#

class OutOfDomain(PairOpsError):
    code = "E-DOMAIN"
    message = "Pair is outside the operation's domain"


class KernelViewMismatch(PairOpsError):
    code = "E-KERNEL-VIEW"
    message = "Formula and kernel evaluators of the dual disagree"


class EmptyOperationList(PairOpsError):
    code = "E-EMPTY"
    message = "Meet and join need at least one operation"
