"""Exception types raised by the knowledge model, hearer model and io layers."""

from typing import List, Optional

from pydantic import BaseModel


class Diagnostic(BaseModel):
    """A problem found in a scene, anchored to a 1-based line when known."""

    code: str
    subject: str = ""
    message: str = ""
    line: int = 0
    column: int = 0
    severity: str = "error"

    def __str__(self) -> str:
        location = f"{self.line}:{self.column}: " if self.line else ""
        label = f"{self.code}({self.subject})" if self.subject else self.code
        return f"{location}{label} {self.message}".rstrip()


class InvalidValueError(ValueError):
    pass


class InvalidReferenceError(ValueError):
    pass


class InvalidSpecializationError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class DomainError(ValueError):
    pass


class SceneParseError(ValueError):
    def __init__(self, diagnostics: List[Diagnostic], message: Optional[str] = None):
        self.diagnostics = diagnostics
        summary = message or "; ".join(str(d) for d in diagnostics[:3])
        super().__init__(summary)
