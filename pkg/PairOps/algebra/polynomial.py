"""
Polynomial strings for ring presentations and generators.

Grammar (whitespace ignored):

    poly   = term ("+" term)*
    term   = [coeff "*"] factor ("*" factor)*  |  coeff
    factor = var ["^" exponent]

Coefficients are decimal integers read in the field. A bare coefficient is a
constant term, so the unit element can be written as "1".
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from PairOps.algebra.exactlin import FieldSpec, Scalar
from PairOps.exceptions import PolyParseError

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[*^+]))")


def monomial_key(exps: Sequence[int]) -> tuple:
    """Degree first, then lexicographic with earlier variables heavier (x > y)."""
    return (sum(exps), tuple(-e for e in exps))


def format_monomial(variables: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for var, e in zip(variables, exps):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts) or "1"


@dataclass(frozen=True)
class PolyExpr:
    variables: tuple[str, ...]
    terms: tuple[tuple[Scalar, tuple[int, ...]], ...]

    @classmethod
    def build(cls, field: FieldSpec, variables: Sequence[str], terms) -> "PolyExpr":
        merged: dict[tuple[int, ...], Scalar] = {}
        for coeff, exps in terms:
            exps = tuple(exps)
            merged[exps] = field.element(merged.get(exps, 0) + coeff)
        kept = [(c, e) for e, c in merged.items() if c]
        kept.sort(key=lambda t: monomial_key(t[1]), reverse=True)
        return cls(tuple(variables), tuple(kept))

    @property
    def degree(self) -> int:
        return max((sum(e) for _, e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for coeff, exps in self.terms:
            mono = format_monomial(self.variables, exps)
            if mono == "1":
                out.append(str(coeff))
            elif coeff == 1:
                out.append(mono)
            else:
                out.append(f"{coeff}*{mono}")
        return " + ".join(out)


def parse_poly(text: str, variables: Sequence[str], field: FieldSpec) -> PolyExpr:
    tokens = _tokenize(text)
    index = {v: i for i, v in enumerate(variables)}
    pos = 0
    terms = []

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect_number(what):
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != "num":
            where = tok[2] if tok else len(text)
            raise PolyParseError(f"expected {what}", position=where, text=text)
        pos += 1
        return int(tok[1])

    def factor(exps):
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != "name":
            where = tok[2] if tok else len(text)
            raise PolyParseError("expected a variable", position=where, text=text)
        if tok[1] not in index:
            raise PolyParseError(f"unknown variable '{tok[1]}'", position=tok[2], text=text)
        pos += 1
        power = 1
        nxt = peek()
        if nxt is not None and nxt[1] == "^":
            pos += 1
            power = expect_number("an exponent")
        exps[index[tok[1]]] += power

    while True:
        tok = peek()
        if tok is None:
            raise PolyParseError("expected a term", position=len(text), text=text)
        coeff = 1
        exps = [0] * len(variables)
        if tok[0] == "num":
            coeff = int(tok[1])
            pos += 1
            nxt = peek()
            if nxt is not None and nxt[1] == "*":
                pos += 1
                factor(exps)
        else:
            factor(exps)
        while peek() is not None and peek()[1] == "*":
            pos += 1
            factor(exps)
        terms.append((coeff, tuple(exps)))
        tok = peek()
        if tok is None:
            break
        if tok[1] != "+":
            raise PolyParseError(f"unexpected '{tok[1]}'", position=tok[2], text=text)
        pos += 1
    return PolyExpr.build(field, variables, terms)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None:
            bad = len(stripped[pos:]) - len(stripped[pos:].lstrip()) + pos
            raise PolyParseError(f"unexpected character '{stripped[bad]}'", position=bad, text=text)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens
