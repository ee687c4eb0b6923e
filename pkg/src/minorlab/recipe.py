"""A tiny language for half-grid constructions.

    recipe  := stmt (";" stmt)* ";"?
    stmt    := "base" "halfgrid" | "attach" pattern "where" "col" cmp "0"
    pattern := "K5" | "K33"
    cmp     := "<" | "<=" | ">" | ">=" | "=="

Example: ``base halfgrid; attach K5 where col < 0; attach K33 where col >= 0;``
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Union

from .constructions import TruncationParams, attach_pattern, half_grid
from .graph import Graph

PATTERNS = ("K5", "K33")
COMPARATORS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
}

CANONICAL_G = "base halfgrid; attach K5 where col < 0; attach K33 where col >= 0;"


class RecipeError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class Base:
    def __str__(self) -> str:
        return "base halfgrid"


@dataclass(frozen=True)
class Attach:
    pattern: str
    cmp: str

    def matches(self, col: int) -> bool:
        return COMPARATORS[self.cmp](col, 0)

    def __str__(self) -> str:
        return f"attach {self.pattern} where col {self.cmp} 0"


Statement = Union[Base, Attach]


@dataclass(frozen=True)
class Recipe:
    statements: tuple[Statement, ...]

    def __str__(self) -> str:
        return " ".join(f"{s};" for s in self.statements)


_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op><=|>=|==|<|>)|(?P<semi>;))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            return tokens
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise RecipeError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        tokens.append((m.group(m.lastgroup), start))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("<end>", len(self.text))

    def take(self) -> tuple[str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, word: str) -> None:
        tok, pos = self.take()
        if tok != word:
            raise RecipeError(f"expected {word!r}, found {tok!r}", pos)

    def statement(self) -> Statement:
        tok, pos = self.take()
        if tok == "base":
            self.expect("halfgrid")
            return Base()
        if tok == "attach":
            pattern, ppos = self.take()
            if pattern not in PATTERNS:
                raise RecipeError(f"unknown pattern {pattern!r}; expected K5 or K33", ppos)
            self.expect("where")
            self.expect("col")
            cmp, cpos = self.take()
            if cmp not in COMPARATORS:
                raise RecipeError(f"expected a comparison, found {cmp!r}", cpos)
            self.expect("0")
            return Attach(pattern, cmp)
        raise RecipeError(f"expected 'base' or 'attach', found {tok!r}", pos)

    def recipe(self) -> Recipe:
        stmts = [self.statement()]
        while self.peek()[0] == ";":
            self.take()
            if self.peek()[0] == "<end>":
                break
            stmts.append(self.statement())
        tok, pos = self.peek()
        if tok != "<end>":
            raise RecipeError(f"expected ';' or end of input, found {tok!r}", pos)
        return Recipe(tuple(stmts))


def parse_recipe(text: str) -> Recipe:
    r = _Parser(text).recipe()
    bases = [i for i, s in enumerate(r.statements) if isinstance(s, Base)]
    if not bases:
        raise RecipeError("missing 'base halfgrid' statement", 0)
    if len(bases) > 1:
        raise RecipeError("duplicate 'base' statement", 0)
    if bases[0] != 0:
        raise RecipeError("'base' must be the first statement", 0)
    return r


def eval_recipe(r: Recipe, p: TruncationParams) -> Graph:
    """Each attach statement visits row-0 columns left to right."""
    g = half_grid(p)
    for stmt in r.statements[1:]:
        assert isinstance(stmt, Attach)
        for col in range(-p.m, p.m + 1):
            if stmt.matches(col):
                g = attach_pattern(g, p.grid_id(col, 0), stmt.pattern)
    return g
