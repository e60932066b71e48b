"""
Finite-length modules over a LocalAlgebra, stored as one action matrix per ring
variable acting on column vectors.
"""
from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache, wraps
from typing import Iterable, Iterator, Sequence

from PairOps.algebra.exactlin import (
    Matrix,
    Subspace,
    Vector,
    image_of,
    inverse,
    is_invertible,
    kernel,
    preimage,
    rank,
    span,
    subspace_intersect,
    subspace_sum,
)
from PairOps.algebra.local_algebra import LocalAlgebra, format_vector
from PairOps.config import Bounds
from PairOps.exceptions import (
    DimensionMismatch,
    EnumerationLimitExceeded,
    InfiniteFieldError,
    ModuleMismatch,
    ModuleStructureError,
    NotASubmodule,
    RingMismatch,
)

logger = logging.getLogger(__name__)

_CONSTRUCTION_LOCK = threading.RLock()


def cached_construction(func):
    """lru_cache behind one process-wide reentrant lock; concurrent callers get the same object."""
    cached = lru_cache(maxsize=None)(func)

    @wraps(func)
    def build(*args, **kwargs):
        with _CONSTRUCTION_LOCK:
            return cached(*args, **kwargs)

    build.cache_info = cached.cache_info
    build.cache_clear = cached.cache_clear
    return build


@dataclass(frozen=True, eq=False)
class FLModule:
    ring: LocalAlgebra
    dim: int
    actions: tuple[Matrix, ...]
    labels: tuple[str, ...] | None = None
    name: str = "M"

    def __post_init__(self):
        if len(self.actions) != len(self.ring.variables):
            raise ModuleStructureError(f"{len(self.actions)} actions for {len(self.ring.variables)} variables")
        for A in self.actions:
            if (A.rows, A.cols) != (self.dim, self.dim) or A.field != self.ring.field:
                raise DimensionMismatch(f"action of shape {A.rows}x{A.cols} on a module of dimension {self.dim}")

    @property
    def field(self):
        return self.ring.field

    @cached_property
    def basis_actions(self) -> tuple[Matrix, ...]:
        """Action of each ring basis monomial."""
        return tuple(self._monomial_action(exps) for exps in self.ring.basis)

    def _monomial_action(self, exps: Sequence[int]) -> Matrix:
        A = Matrix.identity(self.field, self.dim)
        for act, e in zip(self.actions, exps):
            for _ in range(e):
                A = A @ act
        return A

    def act(self, coords: Sequence) -> Matrix:
        """Action matrix of the ring element with the given coordinates."""
        total = Matrix.zeros(self.field, self.dim, self.dim)
        for c, B in zip(coords, self.basis_actions):
            if c:
                total = total + B.scaled(c)
        return total

    def check(self):
        """Raise unless the actions commute and satisfy every ring relation."""
        for i, A in enumerate(self.actions):
            for B in self.actions[i + 1:]:
                if A @ B != B @ A:
                    raise ModuleStructureError(f"{self.name}: actions do not commute")
        for f in self.ring.relations:
            total = Matrix.zeros(self.field, self.dim, self.dim)
            for coeff, exps in f.terms:
                total = total + self._monomial_action(exps).scaled(coeff)
            if not total.is_zero():
                raise ModuleStructureError(f"{self.name}: relation {f} does not act as zero")
        n = len(self.actions)
        for exps in itertools.product(range(self.ring.nil_bound + 1), repeat=n):
            if sum(exps) == self.ring.nil_bound and not self._monomial_action(exps).is_zero():
                raise ModuleStructureError(f"{self.name}: degree {self.ring.nil_bound} monomial acts nonzero")
        return self

    def whole(self) -> "Submodule":
        return Submodule(self, Subspace.full(self.field, self.dim))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, Subspace.zero(self.field, self.dim))

    def unit(self, i: int) -> Vector:
        z, o = self.field.zero, self.field.one
        return tuple(o if j == i else z for j in range(self.dim))

    def format(self, vec: Sequence) -> str:
        return format_vector(vec, self.labels)

    def __repr__(self):
        return f"FLModule({self.name}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Submodule:
    parent: FLModule
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.parent.dim or self.space.field != self.parent.field:
            raise DimensionMismatch(f"subspace of dimension {self.space.ambient_dim} in {self.parent!r}")
        for A in self.parent.actions:
            for row in self.space.rows:
                if not self.space.contains(A.apply(row)):
                    raise NotASubmodule(f"in {self.parent.name}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def rows(self) -> tuple:
        return self.space.rows

    def contains(self, vec: Sequence) -> bool:
        return self.space.contains(vec)

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.parent is self.parent and other.space == self.space

    def __hash__(self):
        return hash((id(self.parent), self.space))

    def __le__(self, other: "Submodule") -> bool:
        _own(self.parent, other)
        return self.space <= other.space

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.dim < other.dim

    def __and__(self, other: "Submodule") -> "Submodule":
        _own(self.parent, other)
        return Submodule(self.parent, subspace_intersect(self.space, other.space))

    def __add__(self, other: "Submodule") -> "Submodule":
        _own(self.parent, other)
        return Submodule(self.parent, subspace_sum(self.space, other.space))

    def generators(self) -> list[str]:
        return [self.parent.format(row) for row in self.rows]

    def __str__(self):
        if not self.dim:
            return "0"
        return "(" + ", ".join(self.generators()) + ")"

    def __repr__(self):
        return f"Submodule({self} in {self.parent.name})"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FLModule
    target: FLModule
    matrix: Matrix
    section: Matrix | None = None

    def __post_init__(self):
        if self.source.ring is not self.target.ring:
            raise RingMismatch(f"{self.source.name} and {self.target.name}")
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise DimensionMismatch(f"map matrix {self.matrix.rows}x{self.matrix.cols} "
                                    f"for {self.source.name} -> {self.target.name}")
        for A, B in zip(self.source.actions, self.target.actions):
            if B @ self.matrix != self.matrix @ A:
                raise ModuleStructureError(f"map {self.source.name} -> {self.target.name} is not R-linear")

    def __call__(self, vec: Sequence) -> Vector:
        return self.matrix.apply(vec)

    def image(self, S: Submodule) -> Submodule:
        return map_image_preimage(self, S, "forward")

    def preimage(self, S: Submodule) -> Submodule:
        return map_image_preimage(self, S, "backward")

    def kernel(self) -> Submodule:
        return Submodule(self.source, kernel(self.matrix))

    def is_injective(self) -> bool:
        return not self.kernel().dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and is_invertible(self.matrix)


def _own(M: FLModule, S: Submodule):
    if S.parent is not M:
        raise ModuleMismatch(f"{S!r} is not a submodule of {M.name}")


def _same_ring(M: FLModule, N: FLModule):
    if M.ring is not N.ring:
        raise RingMismatch(f"{M.name} over {M.ring.name}, {N.name} over {N.ring.name}")


def _coerce(M: FLModule, vectors: Iterable[Sequence]) -> list[Vector]:
    out = []
    for v in vectors:
        if len(v) != M.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in {M.name} of dimension {M.dim}")
        out.append(tuple(M.field.element(c) for c in v))
    return out


# ---------------------[ CONSTRUCTIONS ]---------------------#

@cached_construction
def free_module(R: LocalAlgebra, n: int) -> FLModule:
    actions = tuple(Matrix.block_diagonal(R.field, [A] * n) for A in R.regular_actions)
    if n == 1:
        return FLModule(R, R.dim, actions, R.labels, R.name)
    labels = tuple(f"e{k + 1}" if label == "1" else f"{label}e{k + 1}" for k in range(n) for label in R.labels)
    return FLModule(R, n * R.dim, actions, labels, f"{R.name}^{n}" if n else "0")


def regular_module(R: LocalAlgebra) -> FLModule:
    return free_module(R, 1)


@cached_construction
def injective_module(R: LocalAlgebra, n: int) -> FLModule:
    """E^n, the k-dual of the free module of rank n."""
    F = free_module(R, n)
    labels = tuple(_starred(label) for label in F.labels)
    return FLModule(R, F.dim, tuple(A.transpose() for A in F.actions), labels, "E" if n == 1 else f"E^{n}")


@cached_construction
def dual_module(M: FLModule) -> FLModule:
    labels = tuple(_starred(label) for label in M.labels) if M.labels else None
    return FLModule(M.ring, M.dim, tuple(A.transpose() for A in M.actions), labels, f"{M.name}^v")


def _starred(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def ideal(R: LocalAlgebra, elements: Iterable) -> Submodule:
    """Ideal generated by ring elements, polynomial strings or coordinate vectors."""
    coords = []
    for e in elements:
        if isinstance(e, str):
            e = R.parse(e)
        coords.append(e.coords if hasattr(e, "coords") else tuple(e))
    return span_submodule(regular_module(R), coords)


def maximal_ideal_submodule(R: LocalAlgebra) -> Submodule:
    return Submodule(regular_module(R), R.maximal_ideal)


def unit_ideal(R: LocalAlgebra) -> Submodule:
    return regular_module(R).whole()


def zero_ideal(R: LocalAlgebra) -> Submodule:
    return regular_module(R).zero_submodule()


@cached_construction
def residue_field(R: LocalAlgebra) -> FLModule:
    k, _ = quotient_module(regular_module(R), maximal_ideal_submodule(R))
    return k


def _close(M: FLModule, space: Subspace, frontier: Sequence[Vector] | None = None) -> Subspace:
    frontier = list(space.rows if frontier is None else frontier)
    while frontier:
        images = [A.apply(v) for A in M.actions for v in frontier]
        frontier = [w for w in images if not space.contains(w)]
        if frontier:
            space = subspace_sum(space, span(M.field, M.dim, frontier))
    return space


def span_submodule(M: FLModule, gens: Iterable[Sequence]) -> Submodule:
    gens = _coerce(M, gens)
    return Submodule(M, _close(M, span(M.field, M.dim, gens)))


@cached_construction
def quotient_module(M: FLModule, N: Submodule) -> tuple[FLModule, ModuleMap]:
    """M/N on the complement coordinates of N, with the projection and a fixed section."""
    _own(M, N)
    field = M.field
    comp = N.space.complement_columns
    q = len(comp)
    columns = []
    for j in range(M.dim):
        reduced = N.space.reduce(M.unit(j))
        columns.append(tuple(reduced[c] for c in comp))
    P = Matrix.from_columns(field, columns, q)
    S = Matrix.from_columns(field, [M.unit(c) for c in comp], M.dim)
    actions = tuple(P @ A @ S for A in M.actions)
    labels = tuple(M.labels[c] for c in comp) if M.labels else None
    Q = FLModule(M.ring, q, actions, labels, f"{M.name}/{N}")
    return Q, ModuleMap(M, Q, P, section=S)


@cached_construction
def submodule_as_module(N: Submodule) -> tuple[FLModule, ModuleMap]:
    """N as a module in its own right, on the coordinates of its canonical basis, with the inclusion."""
    M = N.parent
    field = M.field
    rows = N.space.rows
    actions = tuple(
        Matrix.from_columns(field, [N.space.coordinates(A.apply(r)) for r in rows], len(rows))
        for A in M.actions
    )
    labels = tuple(M.format(r) for r in rows) if M.labels else None
    sub = FLModule(M.ring, len(rows), actions, labels, str(N))
    return sub, ModuleMap(sub, M, Matrix.from_columns(field, rows, M.dim))


def map_image_preimage(g: ModuleMap, S: Submodule, direction: str = "forward") -> Submodule:
    if direction == "forward":
        _own(g.source, S)
        return Submodule(g.target, image_of(g.matrix, S.space))
    if direction == "backward":
        _own(g.target, S)
        return Submodule(g.source, preimage(g.matrix, S.space))
    raise ValueError(f"direction must be forward or backward, not {direction!r}")


# ---------------------[ COLONS AND PRODUCTS ]---------------------#

def _ring_ideal(M: FLModule, J: Submodule):
    if J.parent.ring is not M.ring or J.parent.dim != M.ring.dim:
        raise RingMismatch(f"ideal over {J.parent.ring.name} used on {M.name} over {M.ring.name}")


def colon(L: Submodule, M: FLModule, J: Submodule) -> Submodule:
    """(L :_M J) = {u in M : j u in L for all j in J}."""
    _own(M, L)
    _ring_ideal(M, J)
    space = Subspace.full(M.field, M.dim)
    for j in J.rows:
        space = subspace_intersect(space, preimage(M.act(j), L.space))
    return Submodule(M, space)


def scale(J: Submodule, L: Submodule, M: FLModule) -> Submodule:
    """J L."""
    _own(M, L)
    _ring_ideal(M, J)
    return span_submodule(M, [M.act(j).apply(u) for j in J.rows for u in L.rows])


def annihilator(N: Submodule | FLModule) -> Submodule:
    """ann_R(N), returned as an ideal of R."""
    if isinstance(N, FLModule):
        N = N.whole()
    M = N.parent
    R = M.ring
    rows = []
    for u in N.rows:
        images = [B.apply(u) for B in M.basis_actions]
        rows.extend(tuple(img[a] for img in images) for a in range(M.dim))
    return Submodule(regular_module(R), kernel(Matrix(R.field, len(rows), R.dim, tuple(rows))))


def ideal_colon(L: Submodule, X: Submodule) -> Submodule:
    """(L :_R X) = {r in R : r X in L}."""
    _own(L.parent, X)
    _, pi = quotient_module(L.parent, L)
    return annihilator(pi.image(X))


def ideal_power(I: Submodule, n: int) -> Submodule:
    R = I.parent.ring
    power = unit_ideal(R)
    for _ in range(n):
        power = scale(I, power, regular_module(R))
    return power


def socle(M: FLModule) -> Submodule:
    return colon(M.zero_submodule(), M, maximal_ideal_submodule(M.ring))


# ---------------------[ HOM AND TENSOR ]---------------------#

def hom_R(M: FLModule, N: FLModule) -> list[ModuleMap]:
    """A basis of Hom_R(M, N), solving B X = X A for every variable."""
    _same_ring(M, N)
    m, n = M.dim, N.dim
    if not m or not n:
        return []
    rows = []
    for A, B in zip(M.actions, N.actions):
        for a in range(n):
            for b in range(m):
                row = [0] * (n * m)
                for c in range(n):
                    row[c * m + b] += B.entries[a][c]
                for c in range(m):
                    row[a * m + c] -= A.entries[c][b]
                rows.append(row)
    solutions = kernel(Matrix.from_rows(M.field, rows, n * m))
    return [
        ModuleMap(M, N, Matrix(M.field, n, m, tuple(tuple(v[a * m:(a + 1) * m]) for a in range(n))))
        for v in solutions.rows
    ]


def iter_maps(M: FLModule, N: FLModule, basis: Sequence[ModuleMap] | None = None) -> Iterator[ModuleMap]:
    """Every element of Hom_R(M, N) over a finite field."""
    basis = hom_R(M, N) if basis is None else basis
    field = M.field
    for coeffs in itertools.product(field.elements(), repeat=len(basis)):
        total = Matrix.zeros(field, N.dim, M.dim)
        for c, g in zip(coeffs, basis):
            if c:
                total = total + g.matrix.scaled(c)
        yield ModuleMap(M, N, total)


def is_isomorphic(M: FLModule, N: FLModule, max_maps: int | None = None) -> bool | None:
    """True or False when decided, None when Hom is too large to search."""
    if M.ring is not N.ring or M.dim != N.dim:
        return False
    if M.actions == N.actions:
        return True
    if [rank(B) for B in M.basis_actions] != [rank(B) for B in N.basis_actions]:
        return False
    basis = hom_R(M, N)
    if not M.field.is_finite or M.field.char ** len(basis) > (max_maps or Bounds.MAX_MAPS):
        return None
    return any(g.is_isomorphism() for g in iter_maps(M, N, basis))


def conjugate_module(M: FLModule, P: Matrix) -> tuple[FLModule, ModuleMap]:
    """The module with actions P A P^-1 and the isomorphism P onto it."""
    Pinv = inverse(P)
    twisted = FLModule(M.ring, M.dim, tuple(P @ A @ Pinv for A in M.actions), None, f"{M.name}'")
    return twisted, ModuleMap(M, twisted, P)


def _kron_identity(A: Matrix, n: int) -> Matrix:
    z = A.field.zero
    size = A.rows * n
    entries = tuple(
        tuple(A.entries[a][i] if j == jj else z for i in range(A.cols) for jj in range(n))
        for a in range(A.rows) for j in range(n)
    )
    return Matrix(A.field, size, A.cols * n, entries)


@dataclass(frozen=True, eq=False)
class TensorProduct:
    left: FLModule
    right: FLModule
    module: FLModule
    projection: ModuleMap

    def simple(self, u: Sequence, w: Sequence) -> Vector:
        """Class of u (x) w."""
        n = self.right.dim
        vec = [0] * (self.left.dim * n)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(w):
                    if b:
                        vec[i * n + j] += a * b
        return self.projection(vec)


@cached_construction
def tensor_R(M: FLModule, N: FLModule) -> TensorProduct:
    _same_ring(M, N)
    m, n = M.dim, N.dim
    raw = FLModule(M.ring, m * n, tuple(_kron_identity(A, n) for A in M.actions), None, f"{M.name}(x){N.name}")
    relations = []
    for A, B in zip(M.actions, N.actions):
        for i in range(m):
            for j in range(n):
                v = [0] * (m * n)
                for a in range(m):
                    v[a * n + j] += A.entries[a][i]
                for b in range(n):
                    v[i * n + b] -= B.entries[b][j]
                relations.append(v)
    module, projection = quotient_module(raw, span_submodule(raw, relations))
    return TensorProduct(M, N, module, projection)


# ---------------------[ ENUMERATION ]---------------------#

def _representatives(S: Subspace) -> Iterator[Vector]:
    """One vector per line of the complement coordinates of S."""
    p = S.field.char
    comp = S.complement_columns
    n = S.ambient_dim
    for coeffs in itertools.product(range(p), repeat=len(comp)):
        lead = next((c for c in coeffs if c), 0)
        if lead != 1:
            continue
        v = [0] * n
        for c, col in zip(coeffs, comp):
            v[col] = c
        yield tuple(v)


@cached_construction
def _enumerate(M: FLModule, limit: int) -> tuple[Submodule, ...]:
    field = M.field
    if not field.is_finite:
        raise InfiniteFieldError(f"{M.name} is over {field}")
    zero = Subspace.zero(field, M.dim)
    seen = {zero}
    frontier = [zero]
    while frontier:
        grown = []
        for S in frontier:
            for v in _representatives(S):
                T = _close(M, subspace_sum(S, span(field, M.dim, [v])), [v])
                if T not in seen:
                    seen.add(T)
                    grown.append(T)
                    if len(seen) > limit:
                        logger.warning("enumeration of %s stopped at %d submodules", M.name, len(seen))
                        raise EnumerationLimitExceeded(limit, len(seen))
        frontier = grown
    logger.debug("%s has %d submodules", M.name, len(seen))
    return tuple(Submodule(M, s) for s in sorted(seen, key=Subspace.sort_key))


def enumerate_submodules(M: FLModule, limit: int | None = None) -> list[Submodule]:
    """All submodules ordered by dimension, then by canonical basis."""
    return list(_enumerate(M, Bounds.MAX_SUBMODULES if limit is None else limit))


# ---------------------[ COVERS AND ENVELOPES ]---------------------#

@cached_construction
def free_cover(M: FLModule) -> tuple[FLModule, ModuleMap]:
    """Minimal free cover; generators are the first coordinate vectors independent modulo mM."""
    R = M.ring
    field = M.field
    current = scale(maximal_ideal_submodule(R), M.whole(), M).space
    chosen = []
    for i in range(M.dim):
        e = M.unit(i)
        if not current.contains(e):
            chosen.append(e)
            current = subspace_sum(current, span(field, M.dim, [e]))
    F = free_module(R, len(chosen))
    columns = [B.apply(g) for g in chosen for B in M.basis_actions]
    return F, ModuleMap(F, M, Matrix.from_columns(field, columns, M.dim))


@cached_construction
def injective_embed(M: FLModule) -> tuple[FLModule, ModuleMap]:
    """M into E^n, n = dim socle M, as the dual of a free cover of the dual of M."""
    F, pi = free_cover(dual_module(M))
    En = injective_module(M.ring, F.dim // M.ring.dim if M.ring.dim else 0)
    return En, ModuleMap(M, En, pi.matrix.transpose())
