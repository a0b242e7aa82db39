"""Exceptions surfaced by the command line with a machine-readable kind."""

from __future__ import annotations

from typing import Optional


class HodgelabError(Exception):
    kind = "error"
    exit_code = 1

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def to_json(self) -> dict:
        err = {"kind": self.kind, "message": self.message}
        if self.line is not None:
            err["position"] = {"line": self.line, "column": self.column}
        return {"error": err}

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.message} (line {self.line}, column {self.column})"


class ParseError(HodgelabError):
    kind = "parse"
    exit_code = 2


class InputError(HodgelabError):
    """Unreadable or malformed input files."""

    kind = "input"
    exit_code = 2


class UsageError(HodgelabError):
    kind = "usage"
    exit_code = 2


class FormTypeError(HodgelabError):
    """A well-formed expression that does not denote a single form."""

    kind = "type"
    exit_code = 1


class DomainError(HodgelabError):
    kind = "domain"
    exit_code = 1
