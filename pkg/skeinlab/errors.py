"""Exception hierarchy shared by every skeinlab module."""

from __future__ import annotations

from typing import Any


class SkeinlabError(ValueError):
    """Base class for domain failures (bad input, inadmissible data)."""


class PoleError(SkeinlabError):
    pass


class TruncationError(SkeinlabError):
    pass


class InadmissibleError(SkeinlabError):
    pass


class DimensionError(SkeinlabError):
    pass


class GraphError(SkeinlabError):
    pass


class DiagramError(SkeinlabError):
    pass


class CoproductError(SkeinlabError):
    pass


class SchemaError(SkeinlabError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class VerificationError(SkeinlabError):
    """A check that should hold did not; ``details`` names the offending case."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.details = details or {}
