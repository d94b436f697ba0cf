"""Query and answer file formats."""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..errors import IoFailure, QuerySyntaxError, UnknownQueryType
from ..queries import Query1, Query2, Query3, Query4, QueryInstance

_CALL = re.compile(r"^\s*query(\d+)\s*\((.*)\)\s*$")
_ARITY = {1: 3, 2: 2, 3: 3, 4: 2}


@dataclass
class Workload:
    queries: list[QueryInstance] = field(default_factory=list)
    lines: list[int] = field(default_factory=list)  # 1-based source line of each query

    def __len__(self) -> int:
        return len(self.queries)

    def add(self, q: QueryInstance, line: int | None = None) -> None:
        self.queries.append(q)
        self.lines.append(line if line is not None else len(self.lines) + 1)


def _int(text: str, line: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise QuerySyntaxError(line, f"{what} is not an integer: {text!r}") from None


def parse_query_line(text: str, line: int = 1) -> QueryInstance:
    m = _CALL.match(text)
    if not m:
        raise QuerySyntaxError(line, f"expected queryN(...), got {text.strip()!r}")
    kind = int(m.group(1))
    if kind not in _ARITY:
        raise UnknownQueryType(line, f"unknown query type query{kind}")
    # the last argument is a free-form name that may itself contain commas
    args = [a.strip() for a in m.group(2).split(",", _ARITY[kind] - 1)]
    if len(args) != _ARITY[kind] or not all(args):
        raise QuerySyntaxError(line, f"query{kind} takes {_ARITY[kind]} arguments")
    try:
        if kind == 1:
            return Query1(_int(args[0], line, "p1"), _int(args[1], line, "p2"), _int(args[2], line, "x"))
        if kind == 2:
            try:
                d = dt.date.fromisoformat(args[1])
            except ValueError:
                raise QuerySyntaxError(line, f"bad date {args[1]!r}") from None
            return Query2(_int(args[0], line, "k"), d)
        if kind == 3:
            return Query3(_int(args[0], line, "k"), _int(args[1], line, "h"), args[2])
        return Query4(_int(args[0], line, "k"), args[1])
    except ValueError as exc:
        raise QuerySyntaxError(line, str(exc)) from None


def parse_queries(lines: Sequence[str]) -> Workload:
    work = Workload()
    for i, text in enumerate(lines, start=1):
        if text.strip():
            work.add(parse_query_line(text, i), i)
    return work


def parse_query_file(path: str | Path) -> Workload:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return parse_queries(text.splitlines())


def format_workload(queries: Sequence[QueryInstance]) -> str:
    return "".join(q.text() + "\n" for q in queries)


def strip_answer_comment(line: str) -> str:
    return line.split("%", 1)[0].rstrip()


@dataclass(frozen=True)
class LineCheck:
    line: int
    actual: str
    expected: str

    @property
    def ok(self) -> bool:
        return self.actual == self.expected


@dataclass
class VerificationReport:
    checks: list[LineCheck]
    actual_lines: int
    expected_lines: int

    @property
    def matches(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def mismatches(self) -> list[LineCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def line_count_mismatch(self) -> bool:
        return self.actual_lines != self.expected_lines

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.line_count_mismatch

    def summary(self) -> str:
        text = f"{self.matches}/{len(self.checks)} lines match"
        if self.line_count_mismatch:
            text += f"; line count mismatch: {self.actual_lines} produced, {self.expected_lines} expected"
        return text


def verify_answers(actual: Sequence[str], expected_file: str | Path) -> VerificationReport:
    """Compare output lines against an answers file whose lines may carry ``%`` comments."""
    try:
        raw = Path(expected_file).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoFailure(f"cannot read {expected_file}: {exc}") from exc
    expected = [strip_answer_comment(e) for e in raw]
    checks = [LineCheck(i + 1, a, e) for i, (a, e) in enumerate(zip(actual, expected))]
    return VerificationReport(checks, len(actual), len(expected))
