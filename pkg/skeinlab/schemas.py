"""Pydantic models for the JSON inputs (graphs, colorings, link diagrams, API bodies).

Validation failures surface as :class:`SchemaError` whose path names the
offending field, e.g. ``spine.edges.1``.
"""

from __future__ import annotations

from typing import Any, Literal, TypeVar

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, TypeAdapter, ValidationError

from .errors import SchemaError

End = Literal["src", "tgt"]
Side = Literal["over", "under"]

ModelT = TypeVar("ModelT", bound=BaseModel)


class GraphModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: int = Field(..., ge=1)
    edges: list[tuple[NonNegativeInt, NonNegativeInt]]
    ciliation: dict[str, list[tuple[NonNegativeInt, End]]]


class LinkModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    spine: GraphModel
    passes: dict[str, NonNegativeInt] = Field(default_factory=dict)
    vertex_matchings: dict[str, list[tuple[int, int]]] = Field(default_factory=dict, alias="vertexMatchings")
    braids: dict[str, list[tuple[int, Side]]] = Field(default_factory=dict)
    vertex_crossings: dict[str, list[tuple[int, Side]]] = Field(default_factory=dict, alias="vertexCrossings")
    loops: NonNegativeInt = 0


class ColoringsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    spine: GraphModel
    max_color: NonNegativeInt = Field(..., alias="maxColor")


class VerifyRequest(ColoringsRequest):
    pass


_COLORING = TypeAdapter(list[NonNegativeInt])


def _path(root: str, loc: tuple[Any, ...]) -> str:
    parts = [root] if root else []
    parts.extend(str(p) for p in loc)
    return ".".join(parts)


def _raise(root: str, error: ValidationError) -> None:
    first = error.errors()[0]
    raise SchemaError(_path(root, tuple(first["loc"])), first["msg"]) from error


def validate(model: type[ModelT], payload: object, *, root: str = "") -> ModelT:
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        _raise(root, e)
        raise  # pragma: no cover


def parse_graph(payload: object, *, root: str = "spine") -> GraphModel:
    return validate(GraphModel, payload, root=root)


def parse_link(payload: object, *, root: str = "") -> LinkModel:
    return validate(LinkModel, payload, root=root)


def parse_coloring(payload: object, *, root: str = "coloring") -> list[int]:
    try:
        return _COLORING.validate_python(payload)
    except ValidationError as e:
        _raise(root, e)
        raise  # pragma: no cover


def int_key(key: str, *, path: str) -> int:
    """Mapping keys in the JSON formats are decimal indices."""
    try:
        return int(key)
    except ValueError as e:
        raise SchemaError(path, f"expected an integer key, got {key!r}") from e
