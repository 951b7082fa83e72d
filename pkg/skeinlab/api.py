"""HTTP surface over the same computations as the command line."""

from __future__ import annotations

import logging
from typing import Any

from fastapi import Body, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from . import schemas
from .config import ApiSettings
from .errors import SchemaError, SkeinlabError, VerificationError
from .lattice import CiliatedGraph, admissible_colorings
from .logs import configure_logging
from .skein import LinkDiagram, bracket_reduce
from .tl import jones_wenzl
from .wilson import verify_isomorphism

logger = logging.getLogger(__name__)


def _check_color(settings: ApiSettings, max_color: int) -> None:
    if max_color > settings.max_color:
        raise HTTPException(status_code=400, detail=f"maxColor {max_color} exceeds the limit {settings.max_color}")


def create_app(settings: ApiSettings | None = None) -> FastAPI:
    settings = settings or ApiSettings.from_env()
    configure_logging(settings.log_level)
    app = FastAPI(title="skeinlab", version="1.0.0")
    app.state.settings = settings

    @app.exception_handler(SkeinlabError)
    async def domain_error(_: Request, exc: SkeinlabError) -> JSONResponse:
        if isinstance(exc, SchemaError):
            status = 422
        elif isinstance(exc, VerificationError):
            status = 409
        else:
            status = 400
        logger.info("request rejected (%d): %s", status, exc)
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.get("/v1/health")
    def health() -> dict[str, Any]:
        return {"ok": True}

    @app.get("/v1/jw/{n}")
    def jw(n: int) -> dict[str, Any]:
        if n > settings.max_strands:
            raise HTTPException(status_code=400, detail=f"n = {n} exceeds the strand limit {settings.max_strands}")
        element = jones_wenzl(n)
        return {"n": n, "terms": len(element.terms), "element": element.to_json()}

    @app.post("/v1/colorings")
    def colorings(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        request = schemas.validate(schemas.ColoringsRequest, payload)
        _check_color(settings, request.max_color)
        found = admissible_colorings(CiliatedGraph.from_model(request.spine), request.max_color)
        return {"maxColor": request.max_color, "count": len(found), "colorings": [list(c) for c in found]}

    @app.post("/v1/bracket")
    def bracket(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        diagram = LinkDiagram.from_json(payload)
        widest = max(diagram.width(v) for v in range(diagram.spine.vertices))
        if widest > settings.max_strands:
            raise HTTPException(status_code=400, detail=f"{widest} strand ends at a vertex exceed {settings.max_strands}")
        return {"crossings": diagram.crossing_count(), "skein": bracket_reduce(diagram).to_json()}

    @app.post("/v1/verify-iso")
    def verify_iso(payload: dict[str, Any] = Body(...)) -> dict[str, Any]:
        request = schemas.validate(schemas.VerifyRequest, payload)
        _check_color(settings, request.max_color)
        return verify_isomorphism(CiliatedGraph.from_model(request.spine), request.max_color).to_dict()

    return app
