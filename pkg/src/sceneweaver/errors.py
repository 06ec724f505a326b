"""Exception taxonomy shared across the package."""

from __future__ import annotations


class SceneweaverError(Exception):
    """Base class for every error raised by this package."""


# --- scene loading / graph construction ---


class SchemaError(SceneweaverError):
    """Scene or test-case file does not conform to its schema."""


class DuplicateId(SchemaError):
    """Two objects in one scene share an id."""


class CyclicSupport(SceneweaverError):
    """Support edges would form a cycle; the input geometry is inconsistent."""


class UnknownObject(SceneweaverError):
    def __init__(self, object_id: str, message: str | None = None):
        super().__init__(message or f"unknown object: {object_id!r}")
        self.object_id = object_id


class NotSittable(SceneweaverError):
    def __init__(self, object_id: str):
        super().__init__(f"object {object_id!r} is not sittable")
        self.object_id = object_id


# --- areas / sampling ---


class NoFreeSpace(SceneweaverError):
    """No candidate cell inside the area is navigable and unoccupied."""


class DegenerateDirection(SceneweaverError):
    """Facing target coincides with the query point."""


# --- navigation grid ---


class EmptyFloor(SceneweaverError):
    """Floor polygon missing or degenerate; no grid can be built."""


class BlockedGoal(SceneweaverError):
    """Distance field requested for a blocked goal cell."""


# --- motion matching ---


class EmptyDatabase(SceneweaverError):
    """Motion database contains no frames."""


class EmptyQuery(SceneweaverError):
    """Every feature group of the query is masked out."""


# --- simulation engine ---


class CharacterBusy(SceneweaverError):
    def __init__(self, names: list[str]):
        super().__init__(f"characters already assigned to an ongoing event: {', '.join(names)}")
        self.names = list(names)


class UnknownAction(SceneweaverError):
    def __init__(self, action: str):
        super().__init__(f"action {action!r} is not in the scene's action set")
        self.action = action


class UnknownCharacter(SceneweaverError):
    def __init__(self, name: str):
        super().__init__(f"unknown character: {name!r}")
        self.name = name


# --- event scripts ---


class ScriptSyntaxError(SceneweaverError):
    """Script text does not conform to the restricted grammar."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.column = column


class ScriptRuntimeError(SceneweaverError):
    """Raised while executing a parsed script.

    ``kind`` is one of: UnknownObject, UnknownCharacter, UnknownName,
    TypeMismatch, BudgetExceeded.  Every instance carries the offending
    identifier (when there is one) and the source line.
    """

    def __init__(self, kind: str, message: str, line: int = 0, identifier: str | None = None):
        super().__init__(f"{kind} at line {line}: {message}")
        self.kind = kind
        self.line = line
        self.identifier = identifier


# --- LLM planning ---


class BackendError(SceneweaverError):
    """Chat backend failed (network, timeout, bad payload) after retries."""

    def __init__(self, message: str, attempts: int = 1):
        super().__init__(message)
        self.attempts = attempts


class PlanningError(SceneweaverError):
    """Narrator kept violating constraints until the retry budget ran out."""


class ExecutionError(SceneweaverError):
    """Event parsing failed on every attempt; counts against the execution rate.

    ``reason`` is one of: NoScript, SyntaxError, UnknownObject,
    UnknownCharacter, UnknownName, TypeMismatch, BudgetExceeded.
    """

    def __init__(self, reason: str, message: str = "", attempts: int = 1):
        super().__init__(f"{reason}: {message}" if message else reason)
        self.reason = reason
        self.attempts = attempts
