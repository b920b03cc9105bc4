"""Minimal s-expression reader with source positions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple, Union

from .errors import ParseError


@dataclass(frozen=True)
class Sym:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class SList:
    items: Tuple["SExpr", ...]
    line: int
    col: int


SExpr = Union[Sym, SList]

_DELIMS = set("();")


def read_all(text: str) -> List[SExpr]:
    """All top-level expressions; ``;`` starts a comment running to end of line."""
    pos, line, col = 0, 1, 1
    n = len(text)
    stack: List[Tuple[int, int, list]] = []
    top: List[SExpr] = []

    while pos < n:
        ch = text[pos]
        if ch == "\n":
            pos, line, col = pos + 1, line + 1, 1
            continue
        if ch.isspace():
            pos, col = pos + 1, col + 1
            continue
        if ch == ";":
            while pos < n and text[pos] != "\n":
                pos += 1
            continue
        if ch == "(":
            stack.append((line, col, []))
            pos, col = pos + 1, col + 1
            continue
        if ch == ")":
            if not stack:
                raise ParseError(line, col, "an expression, not ')'")
            l0, c0, items = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][2] if stack else top).append(node)
            pos, col = pos + 1, col + 1
            continue
        start, c0 = pos, col
        while pos < n and not text[pos].isspace() and text[pos] not in _DELIMS:
            pos += 1
        col += pos - start
        sym = Sym(text[start:pos], line, c0)
        (stack[-1][2] if stack else top).append(sym)

    if stack:
        raise ParseError(line, col, f"')' to close the list opened at {stack[-1][0]}:{stack[-1][1]}")
    return top
