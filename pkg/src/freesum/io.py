"""Text formats: point matrices, triangulation index sets and web JSON.

Point files hold a bracketed matrix such as ``[[1,0],[0,1],[0,0]]`` with
integer, fraction (``a/b``) or decimal entries.  Triangulation files hold
one or more ``{{0,1,4},{1,2,4}}`` blocks; anything around the blocks (for
instance labels written by external enumeration tools) is ignored.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable

from .complex import Triangulation, cell_key
from .configuration import PointConfiguration
from .webs import WebOfStars


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, at: int | None = None) -> ParseError:
        return ParseError(message, *_position(self.text, self.pos if at is None else at))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def number(self) -> Fraction:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise self.error("expected a number")
        start = self.pos
        self.pos = m.end()
        try:
            value = Fraction(m.group(0))
        except ZeroDivisionError:
            raise self.error("zero denominator", start) from None
        return value

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected a point index")
        self.pos = m.end()
        return int(m.group(0))


def parse_points(text: str, name: str | None = None) -> PointConfiguration:
    """Parse ``[[x, y, ...], ...]`` into a configuration."""
    s = _Scanner(text)
    s.expect("[")
    rows: list[list[Fraction]] = []
    starts: list[int] = []
    while True:
        if s.peek() == "]" and not rows:
            break
        s.skip()
        starts.append(s.pos)
        s.expect("[")
        row = [s.number()]
        while s.peek() == ",":
            s.pos += 1
            row.append(s.number())
        s.expect("]")
        if rows and len(row) != len(rows[0]):
            raise s.error(f"row has {len(row)} coordinates, expected {len(rows[0])}", starts[-1])
        rows.append(row)
        if s.peek() == ",":
            s.pos += 1
            continue
        break
    s.expect("]")
    if s.peek():
        raise s.error("unexpected text after the point matrix")
    if not rows:
        raise s.error("no points given")
    return PointConfiguration(rows, name=name)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_points(config: PointConfiguration) -> str:
    rows = ",\n".join("[" + ",".join(_fmt(x) for x in p) + "]" for p in config.points)
    return "[\n" + rows + "\n]\n"


def _parse_cell_block(s: _Scanner) -> list[tuple[list[int], int]]:
    s.expect("{")
    cells = []
    while True:
        if s.peek() == "}" and not cells:
            break
        s.skip()
        start = s.pos
        s.expect("{")
        cell = [s.integer()]
        while s.peek() == ",":
            s.pos += 1
            cell.append(s.integer())
        s.expect("}")
        cells.append((cell, start))
        if s.peek() == ",":
            s.pos += 1
            continue
        break
    s.expect("}")
    return cells


def parse_triangulations(text: str, config: PointConfiguration, check: bool = True) -> list[Triangulation]:
    """Every ``{{...},...}`` block in ``text`` as a triangulation of ``config``."""
    s = _Scanner(text)
    out = []
    n = len(config)
    while True:
        nxt = text.find("{", s.pos)
        if nxt < 0:
            break
        s.pos = nxt
        blocks = _parse_cell_block(s)
        cells = []
        for cell, start in blocks:
            if len(cell) != config.dim + 1:
                raise s.error(f"cell has {len(cell)} indices, expected {config.dim + 1}", start)
            if max(cell) >= n:
                raise s.error(f"index {max(cell)} out of range for {n} points", start)
            if len(set(cell)) != len(cell):
                raise s.error("cell repeats an index", start)
            cells.append(cell)
        if not cells:
            raise s.error("empty triangulation")
        out.append(Triangulation(config, cells, check=check))
    if not out:
        raise ParseError("no triangulation found", *_position(text, len(text)))
    return out


def parse_triangulation(text: str, config: PointConfiguration, check: bool = True) -> Triangulation:
    ts = parse_triangulations(text, config, check)
    if len(ts) != 1:
        raise ParseError(f"expected one triangulation, found {len(ts)}", 1, 1)
    return ts[0]


def format_triangulation(t: Triangulation) -> str:
    return "{" + ",".join("{" + ",".join(map(str, cell_key(c))) + "}" for c in t.cells) + "}"


def format_triangulations(ts: Iterable[Triangulation]) -> str:
    return "".join(format_triangulation(t) + "\n" for t in ts)


def parse_web(text: str, source: Triangulation, target: Triangulation) -> WebOfStars:
    """Read a web from JSON.

    Accepted: ``{"images": [[target cell indices], ...]}`` with one entry
    per source cell, or a mapping from source cell vertex lists (as JSON
    strings like ``"[0, 1]"``) to lists of target cell vertex lists.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if isinstance(data, dict) and "images" in data:
        images = []
        for row in data["images"]:
            m = 0
            for j in row:
                if not 0 <= j < len(target.cells):
                    raise ParseError(f"target cell index {j} out of range", 1, 1)
                m |= 1 << j
            images.append(m)
        return WebOfStars(source, target, images)
    if isinstance(data, dict):
        mapping = {}
        for key, cells in data.items():
            s = frozenset(json.loads(key))
            if s not in source.index:
                raise ParseError(f"{key} is not a cell of the source triangulation", 1, 1)
            ts = [frozenset(c) for c in cells]
            for c in ts:
                if c not in target.index:
                    raise ParseError(f"{sorted(c)} is not a cell of the target triangulation", 1, 1)
            mapping[s] = ts
        return WebOfStars.from_cells(source, target, mapping)
    raise ParseError("a web must be a JSON object", 1, 1)


def format_web(web: WebOfStars) -> str:
    return json.dumps(web.to_json(), sort_keys=True)
