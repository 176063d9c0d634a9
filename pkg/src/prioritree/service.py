"""HTTP/JSON gateway exposing elicitation sessions to the browser UI.

Sessions live in memory, keyed by opaque ids; export/import of the document
format is the durability mechanism. Every response is an envelope carrying
the session revision, an operation payload, and a structured error list.
Mutations honor optimistic concurrency via the If-Match header on revision.
The gateway adds no computation of its own: every number it returns comes
from the session, engine, and synthesis modules.
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path
from typing import Any, Mapping

from starlette.applications import Starlette
from starlette.middleware import Middleware
from starlette.middleware.cors import CORSMiddleware
from starlette.requests import Request
from starlette.responses import JSONResponse, Response
from starlette.routing import Mount, Route
from starlette.staticfiles import StaticFiles

from .core import (
    BadIndexError,
    DecisionError,
    Element,
    Hierarchy,
    InvalidHierarchyError,
    MalformedJudgmentError,
    OutOfScaleError,
    judgment_from_token,
)
from .engine import ConsistencyReport, PriorityVector
from .model_io import (
    ParseError,
    SchemaError,
    parse_document,
    render_document,
    session_from_document,
    session_to_document,
)
from .session import (
    ElicitationSession,
    EvaluationSnapshot,
    TooSmallError,
    UnknownMatrixError,
    create_session,
    inconsistency_hotspots,
)
from .synthesis import SynthesisResult, UnknownCriterionError, reweighted, weight_sensitivity


class _Stored:
    def __init__(self, session: ElicitationSession):
        self.session = session
        self.lock = threading.Lock()


class SessionStore:
    """Thread-safe in-memory registry of sessions."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sessions: dict[str, _Stored] = {}

    def create(self, session: ElicitationSession) -> str:
        sid = uuid.uuid4().hex
        with self._lock:
            self._sessions[sid] = _Stored(session)
        return sid

    def get(self, sid: str) -> _Stored | None:
        with self._lock:
            return self._sessions.get(sid)


def _priority_payload(pv: PriorityVector | None) -> dict[str, Any] | None:
    if pv is None:
        return None
    return {"ids": list(pv.ids), "weights": list(pv.weights)}


def _consistency_payload(rep: ConsistencyReport) -> dict[str, Any]:
    return {
        "lambda_max": rep.lambda_max,
        "ci": rep.ci,
        "cr": rep.cr,
        "random_index": rep.random_index,
        "verdict": rep.verdict,
    }


def _synthesis_payload(syn: SynthesisResult | None) -> dict[str, Any] | None:
    if syn is None:
        return None
    return {
        "alternative_ids": list(syn.alternative_ids),
        "scores": list(syn.scores),
        "ranking": [
            {"id": r.id, "score": r.score, "position": r.position, "tied": r.tied}
            for r in syn.ranking
        ],
        "criteria_weights": _priority_payload(syn.criteria_weights),
        "per_criterion_scores": [list(row) for row in syn.per_criterion_scores],
    }


def snapshot_payload(snapshot: EvaluationSnapshot) -> dict[str, Any]:
    return {
        "revision": snapshot.revision,
        "complete": snapshot.complete,
        "statuses": {
            mid: {
                "size": st.size,
                "entered": st.entered,
                "required": st.required,
                "completeness": st.completeness,
                "complete": st.complete,
                "pending": [list(p) for p in st.pending],
            }
            for mid, st in snapshot.statuses.items()
        },
        "criteria_priorities": _priority_payload(snapshot.criteria_priorities),
        "alternative_priorities": {
            cid: _priority_payload(pv) for cid, pv in snapshot.alternative_priorities.items()
        },
        "consistency": {mid: _consistency_payload(rep) for mid, rep in snapshot.consistency.items()},
        "synthesis": _synthesis_payload(snapshot.synthesis),
    }


def session_payload(session: ElicitationSession) -> dict[str, Any]:
    """Full session state: hierarchy, entered judgments, and the snapshot."""
    return {
        "goal": session.hierarchy.goal,
        "criteria": [{"id": e.id, "label": e.label} for e in session.hierarchy.criteria],
        "alternatives": [{"id": e.id, "label": e.label} for e in session.hierarchy.alternatives],
        "judgments": {
            mid: [{"a": a, "b": b, "value": v.token} for a, b, v in session.entered_pairs(mid)]
            for mid in session.matrix_ids
        },
        "snapshot": snapshot_payload(session.evaluate()),
    }


def _ok(revision: int | None, payload: Any, status: int = 200) -> JSONResponse:
    return JSONResponse({"revision": revision, "payload": payload, "errors": []}, status_code=status)


def _fail(
    status: int, code: str, message: str, field: str | None = None, revision: int | None = None
) -> JSONResponse:
    err: dict[str, Any] = {"code": code, "message": message}
    if field is not None:
        err["field"] = field
    return JSONResponse(
        {"revision": revision, "payload": None, "errors": [err]}, status_code=status
    )


async def _read_json(request: Request) -> Any:
    try:
        return json.loads(await request.body())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc


def _parse_hierarchy(raw: Any) -> Hierarchy:
    if not isinstance(raw, dict):
        raise InvalidHierarchyError("request body must be an object")
    goal = raw.get("goal")
    if not isinstance(goal, str) or not goal:
        raise InvalidHierarchyError("field 'goal' must be a non-empty string")

    def elements(key: str) -> tuple[Element, ...]:
        items = raw.get(key)
        if not isinstance(items, list):
            raise InvalidHierarchyError(f"field {key!r} must be an array")
        out = []
        for item in items:
            if isinstance(item, str):
                out.append(Element(item))
            elif isinstance(item, dict) and isinstance(item.get("id"), str):
                out.append(Element(item["id"], item.get("label") or ""))
            else:
                raise InvalidHierarchyError(f"{key} entries must be id strings or {{id, label}}")
        return tuple(out)

    return Hierarchy(goal=goal, criteria=elements("criteria"), alternatives=elements("alternatives"))


def _check_if_match(request: Request, session: ElicitationSession) -> JSONResponse | None:
    header = request.headers.get("if-match")
    if header is None:
        return None
    try:
        expected = int(header.strip().strip('"'))
    except ValueError:
        return _fail(400, "bad_if_match", f"If-Match must be a revision number, got {header!r}")
    if expected != session.revision:
        return _fail(
            409,
            "revision_conflict",
            f"session is at revision {session.revision}, request expected {expected}",
            revision=session.revision,
        )
    return None


def create_app(static_dir: str | Path | None = None) -> Starlette:
    store = SessionStore()

    def _lookup(request: Request) -> _Stored | JSONResponse:
        sid = request.path_params["sid"]
        stored = store.get(sid)
        if stored is None:
            return _fail(404, "unknown_session", f"no session with id {sid!r}")
        return stored

    async def create_session_route(request: Request) -> JSONResponse:
        try:
            body = await _read_json(request)
        except ParseError as exc:
            return _fail(400, "malformed_json", str(exc))
        try:
            hier = _parse_hierarchy(body)
            session = create_session(hier)
        except InvalidHierarchyError as exc:
            return _fail(422, "invalid_hierarchy", str(exc))
        sid = store.create(session)
        payload = {"session_id": sid, **session_payload(session)}
        return _ok(session.revision, payload, status=201)

    async def get_session_route(request: Request) -> JSONResponse:
        stored = _lookup(request)
        if isinstance(stored, JSONResponse):
            return stored
        with stored.lock:
            return _ok(stored.session.revision, session_payload(stored.session))

    async def put_judgment_route(request: Request) -> JSONResponse:
        stored = _lookup(request)
        if isinstance(stored, JSONResponse):
            return stored
        try:
            body = await _read_json(request)
        except ParseError as exc:
            return _fail(400, "malformed_json", str(exc))
        if not isinstance(body, dict):
            return _fail(400, "malformed_json", "body must be an object")
        with stored.lock:
            session = stored.session
            conflict = _check_if_match(request, session)
            if conflict is not None:
                return conflict
            matrix = body.get("matrix")
            if not isinstance(matrix, str):
                return _fail(422, "bad_field", "field 'matrix' must be a matrix id", field="matrix")
            raw_value = body.get("value")
            if isinstance(raw_value, int) and not isinstance(raw_value, bool):
                raw_value = str(raw_value)
            if not isinstance(raw_value, str):
                return _fail(
                    422, "bad_field", "field 'value' must be an intensity token", field="value"
                )
            try:
                value = judgment_from_token(raw_value)
            except OutOfScaleError as exc:
                return _fail(422, "out_of_scale", str(exc), field="value", revision=session.revision)
            except MalformedJudgmentError as exc:
                return _fail(422, "malformed_value", str(exc), field="value", revision=session.revision)
            a, b = body.get("a"), body.get("b")
            try:
                session.set_judgment(matrix, a, b, value)
            except UnknownMatrixError as exc:
                return _fail(422, "unknown_matrix", str(exc), field="matrix", revision=session.revision)
            except BadIndexError as exc:
                return _fail(422, "bad_index", str(exc), field="a/b", revision=session.revision)
            return _ok(session.revision, session_payload(session))

    async def hotspots_route(request: Request) -> JSONResponse:
        stored = _lookup(request)
        if isinstance(stored, JSONResponse):
            return stored
        matrix_id = request.query_params.get("matrix")
        if not matrix_id:
            return _fail(422, "bad_field", "query parameter 'matrix' is required", field="matrix")
        try:
            k = int(request.query_params.get("k", "3"))
        except ValueError:
            return _fail(422, "bad_field", "query parameter 'k' must be an integer", field="k")
        with stored.lock:
            session = stored.session
            try:
                m = session.matrix(matrix_id)
                spots = inconsistency_hotspots(m, k)
            except (UnknownMatrixError, TooSmallError, DecisionError) as exc:
                return _fail(422, "hotspots_unavailable", str(exc), revision=session.revision)
            payload = {
                "matrix": matrix_id,
                "hotspots": [
                    {
                        "triad": list(h.triad),
                        "deviation": h.deviation,
                        "cell": list(h.cell),
                        "suggested": h.suggested.token,
                    }
                    for h in spots
                ],
            }
            return _ok(session.revision, payload)

    async def sensitivity_route(request: Request) -> JSONResponse:
        stored = _lookup(request)
        if isinstance(stored, JSONResponse):
            return stored
        criterion = request.query_params.get("criterion")
        if not criterion:
            return _fail(422, "bad_field", "query parameter 'criterion' is required", field="criterion")
        weight_param = request.query_params.get("weight")
        with stored.lock:
            session = stored.session
            snapshot = session.evaluate()
            if snapshot.synthesis is None:
                return _fail(
                    422,
                    "model_incomplete",
                    "sensitivity needs a complete model; some judgments are pending",
                    revision=session.revision,
                )
            try:
                report = weight_sensitivity(snapshot.synthesis, criterion)
            except UnknownCriterionError as exc:
                return _fail(422, "unknown_criterion", str(exc), field="criterion", revision=session.revision)
            payload: dict[str, Any] = {
                "criterion": report.criterion_id,
                "current_weight": report.current_weight,
                "winner": report.winner,
                "stable_low": report.stable_low,
                "stable_high": report.stable_high,
                "crossover_weight": report.crossover_weight,
                "challenger": report.challenger,
            }
            if weight_param is not None:
                try:
                    w = float(weight_param)
                    at = reweighted(snapshot.synthesis, criterion, w)
                except (ValueError, UnknownCriterionError) as exc:
                    return _fail(422, "bad_field", str(exc), field="weight", revision=session.revision)
                payload["scores_at"] = {
                    "weight": w,
                    "synthesis": _synthesis_payload(at),
                }
            return _ok(session.revision, payload)

    async def import_route(request: Request) -> JSONResponse:
        stored = _lookup(request)
        if isinstance(stored, JSONResponse):
            return stored
        body = await request.body()
        with stored.lock:
            session = stored.session
            conflict = _check_if_match(request, session)
            if conflict is not None:
                return conflict
            try:
                doc = parse_document(body)
                incoming = session_from_document(doc)
            except ParseError as exc:
                return _fail(400, "malformed_json", str(exc), revision=session.revision)
            except (SchemaError, OutOfScaleError, DecisionError) as exc:
                return _fail(422, "bad_document", str(exc), revision=session.revision)
            session.replace_state(incoming)
            return _ok(session.revision, session_payload(session))

    async def export_route(request: Request) -> Response:
        stored = _lookup(request)
        if isinstance(stored, JSONResponse):
            return stored
        with stored.lock:
            data = render_document(session_to_document(stored.session))
        return Response(content=data, media_type="application/json")

    async def index_route(request: Request) -> JSONResponse:
        return JSONResponse(
            {
                "service": "prioritree",
                "endpoints": [
                    "POST /sessions",
                    "GET /sessions/{id}",
                    "PUT /sessions/{id}/judgments",
                    "GET /sessions/{id}/hotspots?matrix=&k=",
                    "GET /sessions/{id}/sensitivity?criterion=&weight=",
                    "POST /sessions/{id}/import",
                    "GET /sessions/{id}/export",
                ],
            }
        )

    routes: list[Route | Mount] = [
        Route("/sessions", create_session_route, methods=["POST"]),
        Route("/sessions/{sid}", get_session_route, methods=["GET"]),
        Route("/sessions/{sid}/judgments", put_judgment_route, methods=["PUT"]),
        Route("/sessions/{sid}/hotspots", hotspots_route, methods=["GET"]),
        Route("/sessions/{sid}/sensitivity", sensitivity_route, methods=["GET"]),
        Route("/sessions/{sid}/import", import_route, methods=["POST"]),
        Route("/sessions/{sid}/export", export_route, methods=["GET"]),
    ]
    if static_dir is not None and Path(static_dir).is_dir():
        routes.append(Mount("/", StaticFiles(directory=str(static_dir), html=True)))
    else:
        routes.append(Route("/", index_route, methods=["GET"]))

    middleware = [
        Middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    ]
    return Starlette(routes=routes, middleware=middleware)
