"""HTTP facade over the datastore.

Handlers hold no business logic: each one delegates to a store method and
serializes the result, so every response is reproducible by a direct
module call on the same store.  Domain errors map to a fixed
(status, code) pair through one table.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import __version__
from .errors import (
    AppError,
    CorruptSnapshot,
    EmptyScores,
    FclError,
    InputOutOfRange,
    InvalidEnum,
    MalformedBlock,
    MalformedWav,
    MarkerPairingError,
    NoEvaluations,
    ScoreOutOfRange,
    StaleSuggestion,
    UnknownChild,
    UnknownExercise,
    UnknownSegment,
    UnknownSession,
    UnknownSuggestion,
    UnsupportedFormat,
    UnsupportedRate,
)
from .store import (
    ChildRecord,
    DataStore,
    Evaluation,
    ExerciseItem,
    ExerciseManifest,
    child_doc,
    cohort_cells_doc,
    cohort_csv,
    evaluation_doc,
    exercise_doc,
    segment_doc,
    session_doc,
    suggestion_doc,
)
from .therapy import Override

# one (status, code) pair per domain error; codes live on the classes
ERROR_STATUS: dict[type, int] = {
    UnknownChild: 404,
    UnknownSession: 404,
    UnknownSegment: 404,
    UnknownExercise: 404,
    UnknownSuggestion: 404,
    MalformedWav: 400,
    MalformedBlock: 400,
    UnsupportedFormat: 400,
    UnsupportedRate: 400,
    MarkerPairingError: 400,
    FclError: 400,
    InvalidEnum: 400,
    ScoreOutOfRange: 400,
    InputOutOfRange: 400,
    EmptyScores: 409,
    NoEvaluations: 409,
    StaleSuggestion: 409,
    CorruptSnapshot: 500,
    AppError: 500,
}


def status_for(exc: AppError) -> int:
    for cls in type(exc).__mro__:
        if cls in ERROR_STATUS:
            return ERROR_STATUS[cls]
    return 500


class ChildIn(BaseModel):
    name: str
    age_months: int
    disorder: str
    therapy_group: str
    id: Optional[str] = None


class EvaluationIn(BaseModel):
    expected_sound: str
    probe: str
    score: int


class OverrideIn(BaseModel):
    difficulty: Optional[float] = None
    dosage: Optional[float] = None


class ExerciseItemIn(BaseModel):
    kind: str
    asset_ref: str
    caption: str = ""


class ExerciseIn(BaseModel):
    target_sound: str
    items: list[ExerciseItemIn]
    difficulty: int
    id: Optional[str] = None


def create_app(store: DataStore) -> FastAPI:
    app = FastAPI(title="phonolab", version=__version__)

    # the browser front end is served from a separate static origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(AppError)
    async def _domain_error(_request: Request, exc: AppError):
        return JSONResponse(
            status_code=status_for(exc),
            content={"code": exc.code, "message": str(exc)},
        )

    # -- children ----------------------------------------------------

    @app.get("/children")
    def list_children():
        return [child_doc(c) for c in store.list_children()]

    @app.post("/children", status_code=201)
    def create_child(body: ChildIn):
        child_id = store.upsert_child(ChildRecord(
            id=body.id, name=body.name, age_months=body.age_months,
            disorder=body.disorder, therapy_group=body.therapy_group,
        ))
        store.save()
        return child_doc(store.get_child(child_id))

    @app.get("/children/{child_id}")
    def get_child(child_id: str):
        return child_doc(store.get_child(child_id))

    # -- sessions ----------------------------------------------------

    @app.post("/children/{child_id}/sessions", status_code=201)
    async def upload_session(child_id: str, request: Request,
                             phase: str = Query(...)):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                raise MalformedWav("multipart upload lacks a 'file' field")
            wav_bytes = await upload.read()
        else:
            wav_bytes = await request.body()
        session = store.ingest_session(child_id, wav_bytes, phase)
        store.save()
        return session_doc(session)

    @app.get("/children/{child_id}/sessions")
    def list_child_sessions(child_id: str):
        store.get_child(child_id)
        return [session_doc(s) for s in store.list_sessions(child_id)]

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_doc(store.get_session(session_id))

    @app.get("/sessions/{session_id}/segments")
    def get_session_segments(session_id: str):
        return [segment_doc(s) for s in store.get_session(session_id).segments]

    @app.get("/sessions/{session_id}/audio")
    def get_session_audio(session_id: str):
        return Response(store.session_audio(session_id), media_type="audio/wav")

    # -- segments & evaluations ----------------------------------------

    @app.get("/segments/{segment_id}/audio")
    def get_segment_audio(segment_id: str):
        return Response(store.segment_audio(segment_id), media_type="audio/wav")

    @app.put("/segments/{segment_id}/evaluation")
    def put_evaluation(segment_id: str, body: EvaluationIn):
        stored = store.record_evaluation(Evaluation(
            segment_id=segment_id,
            expected_sound=body.expected_sound,
            probe=body.probe,
            score=body.score,
        ))
        store.save()
        return evaluation_doc(stored)

    # -- suggestions ------------------------------------------------------

    @app.get("/children/{child_id}/suggestion")
    def get_suggestion(child_id: str,
                       severity: Optional[float] = Query(None),
                       progress: Optional[float] = Query(None)):
        record = store.suggestion_for_child(child_id, severity, progress)
        store.save()
        return suggestion_doc(record)

    @app.post("/suggestions/{suggestion_id}/override")
    def post_override(suggestion_id: str, body: OverrideIn):
        changes = store.apply_override(
            suggestion_id,
            Override(difficulty=body.difficulty, dosage=body.dosage),
        )
        store.save()
        return {"suggestion_id": suggestion_id, "changes": changes}

    # -- knowledge base -------------------------------------------------------

    @app.get("/kb")
    def get_kb():
        return PlainTextResponse(store.kb_text)

    @app.put("/kb")
    async def put_kb(request: Request):
        text = (await request.body()).decode("utf-8")
        system = store.set_kb_text(text)
        store.save()
        return {
            "name": system.name,
            "inputs": list(system.inputs),
            "outputs": list(system.outputs),
            "rules": system.rule_count(),
        }

    # -- report -----------------------------------------------------------------

    @app.get("/report/cohort")
    def get_cohort_report(request: Request):
        cells = store.cohort_report()
        if "text/csv" in request.headers.get("accept", ""):
            return Response(cohort_csv(cells), media_type="text/csv")
        return {"cells": cohort_cells_doc(cells)}

    # -- exercises ------------------------------------------------------------------

    @app.get("/exercises")
    def list_exercises():
        return [exercise_doc(e) for e in store.list_exercises()]

    @app.post("/exercises", status_code=201)
    def create_exercise(body: ExerciseIn):
        exercise_id = store.add_exercise(ExerciseManifest(
            id=body.id,
            target_sound=body.target_sound,
            items=[ExerciseItem(kind=i.kind, asset_ref=i.asset_ref,
                                caption=i.caption) for i in body.items],
            difficulty=body.difficulty,
        ))
        store.save()
        return exercise_doc(store.get_exercise(exercise_id))

    @app.get("/exercises/{exercise_id}/bundle")
    def get_exercise_bundle(exercise_id: str):
        return Response(store.exercise_bundle(exercise_id),
                        media_type="application/zip")

    return app
