"""Exception hierarchy and validation reports shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None

    @property
    def positioned(self) -> bool:
        return self.line is not None and self.column is not None

    def __str__(self) -> str:
        if self.positioned:
            return f"{self.line}:{self.column}: {self.kind}: {self.message}"
        return f"{self.kind}: {self.message}"


@dataclass
class Report:
    """Outcome of a validation pass.

    Warnings never make a report invalid; only violations do.
    """

    violations: List[Violation] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str, pos=None) -> None:
        line, column = pos if pos else (None, None)
        self.violations.append(Violation(kind, message, line, column))

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]

    def __str__(self) -> str:
        lines = [str(v) for v in self.violations]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) if lines else "ok"


class LexChoiceError(Exception):
    """Base class. ``line``/``column`` are set when the error has a source position."""

    line: Optional[int] = None
    column: Optional[int] = None


class ParseError(LexChoiceError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ValidationError(LexChoiceError):
    """Raised by loaders when the parsed structure violates its invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        if first is not None:
            self.line, self.column = first.line, first.column
        super().__init__("\n".join(str(v) for v in self.violations) or "invalid")

    @property
    def positioned(self) -> bool:
        return all(v.positioned for v in self.violations)


class DanglingReferenceError(ValidationError):
    pass


class DuplicateIdError(ValidationError):
    pass


class UnknownConceptError(LexChoiceError, KeyError):
    def __str__(self) -> str:
        return f"undeclared concept {self.args[0]!r}"


class AnalysisError(LexChoiceError):
    """Analysis could not run. ``kind`` is one of unknown-lemma,
    ambiguous-lemma, incomplete-bindings, inapplicable."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class NoActivationError(LexChoiceError):
    pass
