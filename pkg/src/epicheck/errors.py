"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from dataclasses import dataclass


class EpicheckError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class ConfigError(EpicheckError):
    """Invalid or incomplete run configuration (CLI maps these to exit code 2)."""


# ---------------------------------------------------------------- parsing


@dataclass(frozen=True)
class SourcePos:
    line: int
    column: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"source positions are 1-based, got {self.line}:{self.column}")

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(EpicheckError):
    def __init__(self, pos: SourcePos, expected: str, found: str):
        self.pos = pos
        self.expected = expected
        self.found = found
        super().__init__(self.render())

    def render(self) -> str:
        return f"{self.pos}: expected {self.expected}, found {self.found}"


class MissingSection(ParseError):
    def __init__(self, pos: SourcePos, section: str, found: str):
        self.section = section
        super().__init__(pos, f"section {section}", found)


class DuplicateProposition(ParseError):
    def __init__(self, pos: SourcePos, prop: int):
        self.prop = prop
        super().__init__(pos, "a proposition not already declared in VARS", str(prop))


class DuplicateAgent(ParseError):
    def __init__(self, pos: SourcePos, agent: str):
        self.agent = agent
        super().__init__(pos, "an agent not already declared in OBS", agent)


# ------------------------------------------------------------- validation


class ValidationError(EpicheckError):
    pass


class UndeclaredProposition(ValidationError):
    def __init__(self, prop: int):
        self.prop = prop
        super().__init__(f"proposition {prop} is not declared in VARS")


class UndeclaredAgent(ValidationError):
    def __init__(self, agent: str):
        self.agent = agent
        super().__init__(f"agent {agent} has no OBS declaration")


class EpistemicLaw(ValidationError):
    def __init__(self):
        super().__init__("LAW must be a Boolean formula (no knowledge or announcement operators)")


class VocabularyTooLarge(EpicheckError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"explicit enumeration refused: {size} propositions exceeds limit {limit}")


# -------------------------------------------------------------------- bdd


class UnknownVariable(EpicheckError):
    def __init__(self, prop):
        self.prop = prop
        super().__init__(f"variable {prop} is not in the manager's vocabulary")


class ManagerMismatch(EpicheckError):
    def __init__(self):
        super().__init__("operands belong to different BDD managers")


class PartialAssignment(EpicheckError):
    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__(f"assignment is missing variables {list(self.missing)}")


# --------------------------------------------------------------- pipeline


class MalformedRecord(EpicheckError):
    def __init__(self, line: int, detail: str = ""):
        self.line = line
        super().__init__(f"line {line}: malformed record" + (f" ({detail})" if detail else ""))


class MissingField(EpicheckError):
    def __init__(self, name: str, line: int | None = None):
        self.name = name
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}missing field {name!r}")


class UnparsableLabel(EpicheckError):
    def __init__(self, value, line: int | None = None):
        self.value = value
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}cannot interpret label {value!r}")


class InsufficientClass(EpicheckError):
    def __init__(self, label: bool, needed: int, available: int):
        self.label = label
        super().__init__(
            f"need {needed} records labelled {label}, only {available} available"
        )


class UnboundPlaceholder(EpicheckError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"placeholder {{{name}}} has no value in this setting")


class BackendUnavailable(EpicheckError):
    pass


class FixtureMiss(EpicheckError):
    def __init__(self, record_id: str):
        self.record_id = record_id
        super().__init__(f"replay fixture has no response for record {record_id!r}")


class MissingApiKey(ConfigError):
    def __init__(self, env_var: str):
        self.env_var = env_var
        super().__init__(f"environment variable {env_var} is not set")


class MissingGoldFormulation(EpicheckError):
    def __init__(self, record_id: str):
        self.record_id = record_id
        super().__init__(f"record {record_id!r} has no gold formulation")


# ---------------------------------------------------------------- metrics


class EmptyRun(EpicheckError):
    def __init__(self):
        super().__init__("no outcomes to aggregate")


class SingleClass(EpicheckError):
    def __init__(self):
        super().__init__("AUC needs both label classes")


class WriteFailure(EpicheckError):
    pass
