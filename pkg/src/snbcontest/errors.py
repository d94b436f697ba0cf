"""Exception types raised while loading data and answering queries."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""


class IoFailure(EngineError):
    pass


class MissingColumn(EngineError):
    def __init__(self, name: str, path: str | None = None) -> None:
        self.name = name
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"missing column {name!r}{where}")


class RaggedRow(EngineError):
    def __init__(self, line: int, path: str | None = None) -> None:
        self.line = line
        self.path = path
        where = f"{path}:" if path else "line "
        super().__init__(f"{where}{line}: field count does not match header")


class DuplicateColumn(EngineError):
    def __init__(self, name: str, path: str | None = None) -> None:
        self.name = name
        self.path = path
        super().__init__(f"duplicate header column {name!r} in {path}")


class DanglingReference(EngineError):
    def __init__(self, file: str, line: int, ref: object = None) -> None:
        self.file = file
        self.line = line
        self.ref = ref
        super().__init__(f"{file}:{line}: unknown id {ref}")


class DuplicateId(EngineError):
    def __init__(self, file: str, line: int, ref: object) -> None:
        self.file = file
        self.line = line
        self.ref = ref
        super().__init__(f"{file}:{line}: id {ref} already defined")


class EndpointOutOfRange(EngineError):
    def __init__(self, src: int, dst: int, n: int) -> None:
        super().__init__(f"edge ({src}, {dst}) has an endpoint outside [0, {n})")


class UnknownPerson(EngineError):
    def __init__(self, person_id: int) -> None:
        self.person_id = person_id
        super().__init__(f"unknown person id {person_id}")


class QuerySyntaxError(EngineError):
    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownQueryType(QuerySyntaxError):
    pass


class QueryFailed(EngineError):
    """A query raised while running inside a workload."""

    def __init__(self, line: int, cause: BaseException) -> None:
        self.line = line
        self.cause = cause
        super().__init__(f"query on line {line} failed: {cause}")


class CategoryUnsatisfiable(EngineError):
    def __init__(self, category: object) -> None:
        self.category = category
        super().__init__(f"data set cannot produce a member of category {category}")
