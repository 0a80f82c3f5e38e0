"""HTTP facade: sessions as resources, derived artifacts as sub-resources.

POST   /sessions                              multipart upload + parameters
GET    /sessions/{sid}                        session parameters
GET    /sessions/{sid}/tree                   pruned/expanded tree JSON
POST   /sessions/{sid}/tree/{node}/expand     reveal a node's children
GET    /sessions/{sid}/clusters/{node}        member samples, metadata, words
GET    /sessions/{sid}/clusters/{node}/heatmap
GET    /sessions/{sid}/clusters/{node}/band   letter-rank mean/deviation band
POST   /sessions/{sid}/compare                {"a", "b", "mode"}
POST   /sessions/{sid}/query                  {"type": "sketch"|"id", ...}
GET    /sessions/{sid}/series/{series_id}

Domain errors map onto status codes in one place: malformed uploads are
400, unknown resources 404, oversized uploads 413, and everything else a
request can get wrong (bad parameters, degenerate data, bad patterns) 422.
"""

from __future__ import annotations

import os

from fastapi import Body, FastAPI, File, Form, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .dataset import LONG_CSV, load_dataset
from .errors import (
    EmptyDatasetError,
    NotFoundError,
    OversizeError,
    ParseError,
    SaxploreError,
)
from .heatmap import MODE_PERCENT
from .session import DEFAULT_MAX_SERIES, DEFAULT_MIN_FRACTION, SessionStore

ENV_CACHE_DIR = "SAXPLORE_CACHE_DIR"
ENV_MAX_SERIES = "SAXPLORE_MAX_SERIES"


def store_from_env() -> SessionStore:
    """Build a store from SAXPLORE_CACHE_DIR / SAXPLORE_MAX_SERIES."""
    return SessionStore(
        max_series=int(os.environ.get(ENV_MAX_SERIES, DEFAULT_MAX_SERIES)),
        cache_dir=os.environ.get(ENV_CACHE_DIR) or None,
    )


def _status_for(exc: Exception) -> int:
    if isinstance(exc, (ParseError, EmptyDatasetError)):
        return 400
    if isinstance(exc, NotFoundError):
        return 404
    if isinstance(exc, OversizeError):
        return 413
    return 422


class CompareRequest(BaseModel):
    a: str
    b: str
    mode: str = MODE_PERCENT


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store if store is not None else store_from_env()
    app = FastAPI(title="saxplore")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(SaxploreError)
    async def domain_error(request: Request, exc: SaxploreError):
        return JSONResponse(status_code=_status_for(exc), content={"error": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(
        file: UploadFile = File(...),
        metadata: UploadFile | None = File(None),
        format: str = Form(LONG_CSV),
        alpha: int = Form(...),
        omega: int = Form(...),
        min_fraction: float = Form(DEFAULT_MIN_FRACTION),
    ):
        data = await file.read()
        meta = await metadata.read() if metadata is not None else None
        dataset = load_dataset(data, format, metadata_source=meta)
        session = store.create(dataset, alpha, omega, min_fraction)
        return session.info()

    @app.get("/sessions/{sid}")
    def session_info(sid: str):
        return store.get(sid).info()

    @app.get("/sessions/{sid}/tree")
    def get_tree(sid: str):
        return store.get(sid).tree_json()

    @app.post("/sessions/{sid}/tree/{node}/expand")
    def expand(sid: str, node: str):
        return store.expand(sid, node).tree_json()

    @app.get("/sessions/{sid}/clusters/{node}")
    def cluster_detail(sid: str, node: str):
        return store.get(sid).cluster_detail_json(node)

    @app.get("/sessions/{sid}/clusters/{node}/heatmap")
    def cluster_heatmap(sid: str, node: str):
        return store.get(sid).heatmap_json(node)

    @app.get("/sessions/{sid}/clusters/{node}/band")
    def cluster_band(sid: str, node: str):
        return store.get(sid).band_json(node)

    @app.post("/sessions/{sid}/compare")
    def compare(sid: str, req: CompareRequest):
        return store.get(sid).compare_json(req.a, req.b, req.mode)

    @app.post("/sessions/{sid}/query")
    def query(sid: str, payload: dict = Body(...)):
        return store.get(sid).run_query(payload).to_json()

    @app.get("/sessions/{sid}/series/{series_id}")
    def series_detail(sid: str, series_id: str):
        return store.get(sid).series_json(series_id)

    return app
