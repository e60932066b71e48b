"""
Artinian local algebras R = k[x1..xn]/I presented by relations and a nil bound.

The ideal is computed in the space of polynomials of degree < N as the smallest
subspace containing the truncated relations and stable under multiplication by
the variables. Columns are ordered from the largest monomial down, so row
reduction leaves leading monomials as pivots and the standard monomials as the
complement.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from PairOps.algebra.exactlin import FieldSpec, Matrix, Subspace, Vector, span, subspace_sum
from PairOps.algebra.polynomial import PolyExpr, format_monomial, monomial_key, parse_poly
from PairOps.config import Algebra
from PairOps.exceptions import (
    AlgebraValidationError,
    FixedPointError,
    NilBoundError,
    NonLocalError,
    RingMismatch,
    ZeroRingError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LocalAlgebra:
    field: FieldSpec
    variables: tuple[str, ...]
    nil_bound: int
    basis: tuple[tuple[int, ...], ...]
    unit_index: int
    products: tuple  # products[i][j] = coordinates of basis[i] * basis[j]
    variable_coords: tuple  # coordinates of each variable
    relations: tuple[PolyExpr, ...] = ()
    name: str = "R"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(format_monomial(self.variables, e) for e in self.basis)

    @cached_property
    def mult_table(self) -> tuple:
        """mult_table[v][j] = coordinates of variable v times basis[j]."""
        return tuple(
            tuple(self._multiply(coords, self._unit(j)) for j in range(self.dim))
            for coords in self.variable_coords
        )

    @cached_property
    def regular_actions(self) -> tuple[Matrix, ...]:
        return tuple(
            Matrix.from_columns(self.field, columns, self.dim) for columns in self.mult_table
        )

    @cached_property
    def maximal_ideal(self) -> Subspace:
        n = self.dim
        return span(self.field, n, [self._unit(j) for j in range(n) if j != self.unit_index])

    # ---------------------[ ELEMENTS ]---------------------#

    def _unit(self, j: int) -> Vector:
        z, o = self.field.zero, self.field.one
        return tuple(o if i == j else z for i in range(self.dim))

    def _multiply(self, a: Sequence, b: Sequence) -> Vector:
        p = self.field.char
        out = [0] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.products[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] += c * v
        return tuple(self.field.element(v % p) if p else self.field.element(v) for v in out)

    def element(self, coords: Sequence) -> "RingElement":
        return RingElement(self, tuple(self.field.element(c) for c in coords))

    def one(self) -> "RingElement":
        return RingElement(self, self._unit(self.unit_index))

    def zero(self) -> "RingElement":
        return RingElement(self, (self.field.zero,) * self.dim)

    def basis_element(self, j: int) -> "RingElement":
        return RingElement(self, self._unit(j))

    def variable(self, name: str) -> "RingElement":
        return RingElement(self, tuple(self.variable_coords[self.variables.index(name)]))

    def monomial(self, exps: Sequence[int]) -> "RingElement":
        result = self.one()
        for var, e in zip(self.variables, exps):
            if e:
                result = result * self.variable(var) ** e
        return result

    def from_poly(self, poly: PolyExpr) -> "RingElement":
        if tuple(poly.variables) != self.variables:
            raise RingMismatch(f"polynomial in {poly.variables} for ring in {self.variables}")
        total = self.zero()
        for coeff, exps in poly.terms:
            total = total + self.monomial(exps).scaled(coeff)
        return total

    def parse(self, text: str) -> "RingElement":
        return self.from_poly(parse_poly(text, self.variables, self.field))

    def format(self, coords: Sequence) -> str:
        return format_vector(coords, self.labels)

    def __repr__(self):
        return f"LocalAlgebra({self.name}, {self.field}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class RingElement:
    parent: LocalAlgebra
    coords: Vector

    def _check(self, other: "RingElement"):
        if other.parent is not self.parent:
            raise RingMismatch(f"{self.parent.name} vs {other.parent.name}")

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.parent, self.parent._multiply(self.coords, other.coords))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        f = self.parent.field
        return RingElement(self.parent, tuple(f.element(a + b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + other.scaled(-1)

    def scaled(self, c) -> "RingElement":
        f = self.parent.field
        c = f.element(c)
        return RingElement(self.parent, tuple(f.element(c * a) for a in self.coords))

    def __pow__(self, k: int) -> "RingElement":
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, RingElement) and other.parent is self.parent and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.parent), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return self.parent.format(self.coords)


def multiply(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def maximal_ideal(R: LocalAlgebra) -> Subspace:
    return R.maximal_ideal


def format_vector(coords: Sequence, labels: Sequence[str] | None) -> str:
    if labels is None:
        return "[" + ", ".join(str(c) for c in coords) + "]"
    parts = []
    for c, label in zip(coords, labels):
        if not c:
            continue
        if label == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(label)
        else:
            parts.append(f"{c}*{label}")
    return " + ".join(parts) or "0"


# ---------------------[ VALIDATION ]---------------------#

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple = ()

    def describe(self) -> str:
        if self.passed:
            return f"{self.name}: ok"
        return f"{self.name} violated at ({', '.join(self.witness)})"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...] = dc_field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def __getitem__(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def validate(R: LocalAlgebra) -> ValidationReport:
    n = R.dim
    labels = R.labels
    units = [R.basis_element(j) for j in range(n)]
    checks = []

    unit = R.one()
    bad = next((j for j in range(n) if unit * units[j] != units[j] or units[j] * unit != units[j]), None)
    checks.append(Check("unit", bad is None, () if bad is None else (labels[bad],)))

    bad = next(((i, j) for i in range(n) for j in range(i + 1, n)
                if units[i] * units[j] != units[j] * units[i]), None)
    checks.append(Check("commutativity", bad is None, () if bad is None else tuple(labels[k] for k in bad)))

    bad = next(((i, j, k) for i in range(n) for j in range(n) for k in range(n)
                if units[i] * (units[j] * units[k]) != (units[i] * units[j]) * units[k]), None)
    checks.append(Check("associativity", bad is None, () if bad is None else tuple(labels[t] for t in bad)))

    bad = next((v for v, A in zip(R.variables, R.regular_actions) if not A.power(n).is_zero()), None)
    checks.append(Check("nilpotence", bad is None, () if bad is None else (bad,)))

    checks.append(_locality(R))
    return ValidationReport(tuple(checks))


def _locality(R: LocalAlgebra) -> Check:
    """The non-unit directions must form a nilpotent ideal of codimension one."""
    n = R.dim
    m = R.maximal_ideal
    if n - m.dim != 1:
        return Check("locality", False, (f"dim R/m = {n - m.dim}",))
    power = m
    for _ in range(n):
        products = [R._multiply(a, b) for a in power.rows for b in m.rows]
        power = span(R.field, n, products) if products else Subspace.zero(R.field, n)
        if not power.dim:
            return Check("locality", True)
    witness = next((R.labels[j] for j in range(n) if j != R.unit_index
                    and not (R.basis_element(j) ** n).is_zero()), "m")
    return Check("locality", False, (witness,))


# ---------------------[ CONSTRUCTION ]---------------------#

def _truncated_monomials(nvars: int, bound: int) -> list[tuple[int, ...]]:
    monos = [e for e in itertools.product(range(bound), repeat=nvars) if sum(e) < bound]
    monos.sort(key=monomial_key, reverse=True)
    return monos


def _ideal_space(field: FieldSpec, variables, relations, bound: int, budget: int | None = None):
    monos = _truncated_monomials(len(variables), bound)
    index = {e: i for i, e in enumerate(monos)}
    n = len(monos)

    def vector(terms):
        v = [0] * n
        for coeff, exps in terms:
            if sum(exps) < bound:
                v[index[tuple(exps)]] += coeff
        return v

    def shifted(row, var):
        terms = []
        for i, c in enumerate(row):
            if c:
                e = list(monos[i])
                e[var] += 1
                terms.append((c, e))
        return vector(terms)

    space = span(field, n, [vector(f.terms) for f in relations])
    budget = budget or Algebra.ITERATION_BUDGET or n + 1
    for step in range(budget):
        shifts = [shifted(row, v) for row in space.rows for v in range(len(variables))]
        grown = subspace_sum(space, span(field, n, shifts))
        if grown == space:
            logger.debug("ideal closure stable after %d steps (dim %d of %d)", step, space.dim, n)
            return monos, index, space
        space = grown
    raise FixedPointError(f"no fixed point after {budget} steps")


def build_local_algebra(field: FieldSpec, variables: Sequence[str], relations: Sequence[PolyExpr | str],
                        nil_bound: int, *, name: str = "R", iteration_budget: int | None = None) -> LocalAlgebra:
    variables = tuple(variables)
    if nil_bound < 1:
        raise NilBoundError(f"nil_bound must be positive, got {nil_bound}")
    relations = tuple(parse_poly(r, variables, field) if isinstance(r, str) else r for r in relations)
    monos, index, ideal = _ideal_space(field, variables, relations, nil_bound, iteration_budget)

    unit = (0,) * len(variables)
    if ideal.dim == len(monos) or index[unit] in ideal.pivots:
        raise ZeroRingError(f"1 lies in the ideal of {name}")

    # mN must already lie in the ideal: one more degree must not change the quotient
    _, _, wider = _ideal_space(field, variables, relations, nil_bound + 1, iteration_budget)
    if len(monos) - ideal.dim != len(_truncated_monomials(len(variables), nil_bound + 1)) - wider.dim:
        raise NilBoundError(f"{name}: some monomial of degree {nil_bound} survives modulo the relations")

    standard = sorted((monos[c] for c in ideal.complement_columns), key=monomial_key)
    position = {e: i for i, e in enumerate(standard)}

    def normal_form(exps) -> Vector:
        if sum(exps) >= nil_bound:
            return (field.zero,) * len(standard)
        v = [field.zero] * len(monos)
        v[index[tuple(exps)]] = field.one
        reduced = ideal.reduce(v)
        out = [field.zero] * len(standard)
        for e, i in position.items():
            out[i] = reduced[index[e]]
        return tuple(out)

    products = tuple(
        tuple(normal_form(tuple(a + b for a, b in zip(u, w))) for w in standard) for u in standard
    )
    variable_coords = tuple(
        normal_form(tuple(1 if k == v else 0 for k in range(len(variables)))) for v in range(len(variables))
    )
    R = LocalAlgebra(field, variables, nil_bound, tuple(standard), position[unit], products,
                     variable_coords, relations, name)
    report = validate(R)
    if not report.ok:
        if report["locality"].passed is False:
            raise NonLocalError(report["locality"].describe())
        raise AlgebraValidationError(report)
    logger.debug("built %s with basis %s", name, ", ".join(R.labels))
    return R
