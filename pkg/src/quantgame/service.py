"""JSON-over-HTTP gateway: log ingestion, reports, and the session API
consumed by the touchscreen UI. One deployable process serves both route
namespaces."""

from __future__ import annotations

import uuid
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Response
from pydantic import BaseModel, Field

from quantgame.engine import (
    ContinuePlaying,
    DisplayMode,
    ExitButton,
    GameConfig,
    LongPress,
    SelectMode,
    Session,
    TouchSlot,
)
from quantgame.errors import (
    IllegalTransition,
    InvalidConfig,
    NoData,
    QuantGameError,
    SlotOutOfRange,
    UnrecognizedHeader,
)
from quantgame.logfmt import format_log_csv, format_log_txt
from quantgame.repository import LogStore


class IngestBody(BaseModel):
    subject: str
    experimenter: str = ""
    device: str = ""
    format: str = Field(default="csv", pattern="^(csv|txt)$")
    content: str
    upload_token: Optional[str] = None  # reserved; unauthenticated in v1


class SessionConfigBody(BaseModel):
    mode: str = "dice"
    domain: list[int] = [1, 2, 3, 4, 5]
    set_size: int = 2
    trials_per_game: int = 20
    score_boundaries: tuple[float, float] = (0.5, 0.8)
    inter_trial_delay_ms: int = 0
    long_press_threshold_ms: int = 1000
    background: str = "black"
    foreground: str = "green"
    bg_opacity: str = ".2"
    learner: str = "Subject"
    trainer: str = "Experimenter"
    feedback_vocabulary: Optional[dict] = None
    seed: Optional[int] = None


class SessionInputBody(BaseModel):
    type: str  # select_mode | touch_slot | exit | long_press | continue
    mode: Optional[str] = None
    slot: Optional[int] = None
    duration_ms: Optional[int] = None


class _LiveSession:
    def __init__(self, session: Session):
        self.session = session
        self.records = []


def _game_config(body: SessionConfigBody) -> GameConfig:
    kwargs = dict(
        mode=DisplayMode(body.mode),
        domain=tuple(body.domain),
        set_size=body.set_size,
        trials_per_game=body.trials_per_game,
        score_boundaries=tuple(body.score_boundaries),
        inter_trial_delay_ms=body.inter_trial_delay_ms,
        long_press_threshold_ms=body.long_press_threshold_ms,
        background=body.background,
        foreground=body.foreground,
        bg_opacity=body.bg_opacity,
        learner=body.learner,
        trainer=body.trainer,
    )
    if body.feedback_vocabulary is not None:
        kwargs["feedback_vocabulary"] = body.feedback_vocabulary
    return GameConfig(**kwargs)


def _snapshot(live: _LiveSession) -> dict:
    state = live.session.state
    pending = None
    if state.pending is not None:
        pending = {
            "mode": state.pending.mode.value,
            "values": list(state.pending.values),
            "displayed_at": state.pending_display_time.isoformat(
                timespec="milliseconds"),
        }
    return {
        "phase": state.phase.value,
        "mode": state.mode.value if state.mode else None,
        "trial_in_game": state.trial_in_game,
        "correct_in_game": state.correct_in_game,
        "test_no": state.test_no,
        "trials_per_game": state.config.trials_per_game,
        "long_press_threshold_ms": state.config.long_press_threshold_ms,
        "domain": list(state.config.domain),
        "pending": pending,
        "seed": live.session.seed,
    }


def create_app(store_dir: str) -> FastAPI:
    app = FastAPI(title="quantgame log repository")
    store = LogStore(store_dir)
    sessions: dict[str, _LiveSession] = {}
    app.state.store = store
    app.state.sessions = sessions

    def _live(session_id: str) -> _LiveSession:
        try:
            return sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404,
                                detail=f"no session {session_id}") from None

    @app.post("/api/v1/logs")
    def ingest(body: IngestBody):
        try:
            summary = store.ingest(body.content.encode("utf-8"),
                                   subject=body.subject,
                                   experimenter=body.experimenter,
                                   device=body.device, fmt=body.format)
        except UnrecognizedHeader as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        except QuantGameError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return {"log_id": summary.log_id, "status": summary.status,
                "warnings": summary.warnings, "records": summary.records}

    @app.get("/api/v1/logs")
    def list_logs(subject: Optional[str] = None,
                  from_: Optional[str] = Query(None, alias="from"),
                  to: Optional[str] = None,
                  mode: Optional[str] = None):
        summaries = store.query_logs(subject=subject, date_from=from_,
                                     date_to=to, mode=mode)
        return [vars(s) for s in summaries]

    @app.get("/api/v1/reports/accuracy")
    def accuracy_report(subject: str, set_size: int = 2,
                        format: str = "markdown"):
        try:
            text = store.render_accuracy_report(subject, set_size, format)
        except NoData as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return Response(content=text, media_type="text/plain; charset=utf-8")

    @app.get("/api/v1/reports/correlation")
    def correlation(subject: str):
        try:
            text = store.render_correlation_report(subject)
        except NoData as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return Response(content=text, media_type="text/plain; charset=utf-8")

    # --- session routes for the UI ---

    @app.post("/api/v1/session")
    def create_session(body: SessionConfigBody):
        try:
            config = _game_config(body)
        except (InvalidConfig, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        session_id = uuid.uuid4().hex
        sessions[session_id] = _LiveSession(Session(config, seed=body.seed))
        return {"session_id": session_id,
                "snapshot": _snapshot(sessions[session_id])}

    @app.get("/api/v1/session/{session_id}")
    def session_snapshot(session_id: str):
        return _snapshot(_live(session_id))

    @app.post("/api/v1/session/{session_id}/input")
    def session_input(session_id: str, body: SessionInputBody):
        live = _live(session_id)
        try:
            if body.type == "select_mode":
                user_input = SelectMode(DisplayMode(body.mode))
            elif body.type == "touch_slot":
                user_input = TouchSlot(int(body.slot))
            elif body.type == "exit":
                user_input = ExitButton()
            elif body.type == "long_press":
                user_input = LongPress(int(body.duration_ms))
            elif body.type == "continue":
                user_input = ContinuePlaying()
            else:
                raise HTTPException(status_code=422,
                                    detail=f"unknown input type {body.type!r}")
            record = live.session.step(user_input)
        except IllegalTransition as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        except (SlotOutOfRange, InvalidConfig, ValueError, TypeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        if record is not None:
            live.records.append(record)
        return {"snapshot": _snapshot(live),
                "record_emitted": record is not None}

    @app.get("/api/v1/session/{session_id}/events")
    def session_events(session_id: str):
        live = _live(session_id)
        lines = [event.serialize() for event in live.session.drain_events()]
        return Response(content="".join(line + "\n" for line in lines),
                        media_type="text/plain; charset=utf-8")

    @app.get("/api/v1/session/{session_id}/log")
    def session_log(session_id: str,
                    format: str = Query("csv", pattern="^(csv|txt)$")):
        live = _live(session_id)
        render = format_log_txt if format == "txt" else format_log_csv
        return Response(content=render(live.records),
                        media_type="text/plain; charset=utf-8")

    return app
