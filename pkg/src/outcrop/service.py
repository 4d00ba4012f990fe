"""HTTP session service: submit an image, get the verdict and the joint pair.

One explorer per session is the usage model, so ingest holds a per-session
lock; reads work on the immutable history. Verdict re-thresholding in the
report endpoint only re-reads stored scores, never recompresses.
"""

import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse

from . import imagecore
from .compressor import CompressionProfile
from .errors import CorruptStream, DegenerateImage, UnsupportedFormat
from .library import Session
from .similarity import NOVEL, SIMILAR, NoveltyThreshold

MAX_PAYLOAD = 16 * 1024 * 1024  # covers 1280x960 camera frames with headroom


class _SessionState:
    def __init__(self, session: Session):
        self.session = session
        self.lock = threading.Lock()
        self.pairs: dict[int, bytes] = {}  # image id -> joint PNG
        self.names: dict[int, str] = {}


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="outcrop session service")
    sessions: dict[str, _SessionState] = {}
    app.state.sessions = sessions

    def get_state(session_id: str) -> _SessionState:
        state = sessions.get(session_id)
        if state is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return state

    @app.post("/sessions", status_code=201)
    async def create_session_endpoint(request: Request):
        body = await request.body()
        params = {}
        if body:
            try:
                params = await request.json()
            except Exception:
                raise HTTPException(status_code=400, detail="body must be JSON")
        try:
            threshold = NoveltyThreshold(float(params.get("threshold", 40)))
            profile = CompressionProfile(level=int(params.get("level", 6)))
            resize = params.get("resize")
            dims = (int(resize[0]), int(resize[1])) if resize else None
        except (ValueError, TypeError, IndexError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = Session(profile=profile, threshold=threshold, canonical_dims=dims,
                          session_id=uuid.uuid4().hex)
        sessions[session.id] = _SessionState(session)
        return {"session_id": session.id}

    @app.post("/sessions/{session_id}/images")
    async def post_image(session_id: str, request: Request):
        state = get_state(session_id)
        payload = await request.body()
        if len(payload) > MAX_PAYLOAD:
            raise HTTPException(status_code=413, detail="payload exceeds 16 MiB")
        try:
            img = imagecore.decode(payload)
        except (UnsupportedFormat, CorruptStream) as exc:
            raise HTTPException(status_code=415, detail=str(exc))
        started = time.monotonic()
        name = request.headers.get("x-image-name", "")
        with state.lock:
            session = state.session
            if session.canonical_dims and img.dims != session.canonical_dims:
                img = imagecore.resize_nearest(img, *session.canonical_dims)
            try:
                result = session.ingest(img, name=name)
            except DegenerateImage as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            image_id = session.entries[-1].id
            state.names[image_id] = name
            if result.joint is not None:
                state.pairs[image_id] = imagecore.encode_png(result.joint)
        elapsed_ms = (time.monotonic() - started) * 1000.0
        pair_url = (
            f"/sessions/{session_id}/pairs/{image_id}" if result.joint is not None else None
        )
        return {
            "image_id": image_id,
            "verdict": result.verdict.kind,
            "score": round(result.verdict.score, 4),
            "best_match_id": result.verdict.best_match,
            "pair_url": pair_url,
            "elapsed_ms": round(elapsed_ms, 3),
        }

    @app.get("/sessions/{session_id}/report")
    async def report(session_id: str, threshold: float | None = None):
        state = get_state(session_id)
        session = state.session
        t = session.threshold.value if threshold is None else threshold
        entries = []
        novel = similar = 0
        for e in session.entries:
            if e.verdict.best_match is None:
                verdict = NOVEL  # seed image: nothing prior to be similar to
            else:
                verdict = SIMILAR if e.verdict.score >= t else NOVEL
            novel += verdict == NOVEL
            similar += verdict == SIMILAR
            entries.append(
                {
                    "image_id": e.id,
                    "name": e.source_name,
                    "score": round(e.verdict.score, 4),
                    "verdict": verdict,
                    "best_match_id": e.verdict.best_match,
                }
            )
        return {
            "session_id": session_id,
            "threshold": t,
            "entries": entries,
            "novel_count": novel,
            "similar_count": similar,
        }

    @app.get("/sessions/{session_id}/pairs/{image_id}")
    async def pair(session_id: str, image_id: int):
        state = get_state(session_id)
        png = state.pairs.get(image_id)
        if png is None:
            raise HTTPException(status_code=404, detail="no pair for this image")
        return Response(content=png, media_type="image/png")

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(HTTPException)
    async def http_exc(request, exc):
        return JSONResponse(status_code=exc.status_code, content={"detail": exc.detail})

    return app
