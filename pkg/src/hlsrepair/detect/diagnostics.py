"""Diagnostic records and the compile report."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..cfront.lexer import Span


class ErrorClass(str, Enum):
    T1_POINTER = "T1"
    T2_DYNAMIC_ARRAY = "T2"
    T3_RECURSION = "T3"
    T4_BIT_WIDTH = "T4"
    T5_BOOLEAN_OP = "T5"
    T6_INCOMPLETE_STATEMENT = "T6"
    T7_UNSUPPORTED_STRUCT = "T7"
    T8_EXCEPTION = "T8"
    SYNTAX = "SYNTAX"

    @property
    def keyword(self) -> str:
        return _KEYWORDS[self]

    @property
    def code(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "ErrorClass":
        """Accept ``T3``, ``T3_RECURSION``, or the log keyword ``RECURSION``."""
        t = text.strip().upper()
        for c in cls:
            if t in (c.value, c.name, c.keyword):
                return c
        raise ValueError(f"unknown error class {text!r}")


_KEYWORDS = {
    ErrorClass.T1_POINTER: "POINTER",
    ErrorClass.T2_DYNAMIC_ARRAY: "DYNAMIC_ARRAY",
    ErrorClass.T3_RECURSION: "RECURSION",
    ErrorClass.T4_BIT_WIDTH: "BIT_WIDTH",
    ErrorClass.T5_BOOLEAN_OP: "BOOLEAN_OP",
    ErrorClass.T6_INCOMPLETE_STATEMENT: "INCOMPLETE_STATEMENT",
    ErrorClass.T7_UNSUPPORTED_STRUCT: "UNSUPPORTED_STRUCT",
    ErrorClass.T8_EXCEPTION: "EXCEPTION",
    ErrorClass.SYNTAX: "SYNTAX",
}

TYPE_CLASSES = [c for c in ErrorClass if c is not ErrorClass.SYNTAX]


class Severity(str, Enum):
    ERROR = "ERROR"
    ADVISORY = "ADVISORY"


@dataclass(frozen=True)
class Diagnostic:
    error_class: ErrorClass
    span: Optional[Span]
    message: str
    severity: Severity = Severity.ERROR
    subject: str = ""
    dynamic: bool = False

    @property
    def line(self) -> int:
        return self.span.line if self.span else 0

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_json(self) -> dict:
        return {
            "class": self.error_class.value,
            "keyword": self.error_class.keyword,
            "severity": self.severity.value,
            "line": self.line,
            "start": self.span.start if self.span else None,
            "end": self.span.end if self.span else None,
            "subject": self.subject,
            "message": self.message,
        }


def make(cls: ErrorClass, span: Optional[Span], body: str, subject: str = "",
         severity: Severity = Severity.ERROR, dynamic: bool = False) -> Diagnostic:
    """Build a diagnostic whose message is ``SEVERITY [KEYWORD]: body``."""
    return Diagnostic(cls, span, f"{severity.value} [{cls.keyword}]: {body}", severity, subject,
                      dynamic)


@dataclass
class CompileReport:
    diagnostics: list[Diagnostic] = field(default_factory=list)
    parsed: bool = True
    external_log: Optional[str] = None

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def advisories(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def verdict(self) -> str:
        return "PASS" if self.parsed and not self.errors else "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def log(self) -> str:
        if self.external_log is not None:
            return self.external_log
        return "\n".join(d.message for d in self.diagnostics)

    def classes(self, errors_only: bool = True) -> set[ErrorClass]:
        ds = self.errors if errors_only else self.diagnostics
        return {d.error_class for d in ds}

    def of(self, cls: ErrorClass) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.error_class is cls]

    def to_json(self) -> dict:
        return {"diagnostics": [d.to_json() for d in self.diagnostics], "verdict": self.verdict,
                "log": self.log}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)
