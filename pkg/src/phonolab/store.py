"""Persistence and reporting for children, sessions, evaluations,
exercises, suggestions and the knowledge base.

Desk-scale data model: everything lives in memory behind a single writer
lock; ``snapshot()`` emits one JSON document with stable key order and a
trailing SHA-256 checksum line, and session audio sits next to it in a
content-addressed ``audio/`` directory (or an in-memory map for throwaway
stores).
"""

from __future__ import annotations

import enum
import hashlib
import io
import json
import threading
import time
import uuid
import zipfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .audio import read_wav, write_wav
from .errors import (
    CorruptSnapshot,
    InputOutOfRange,
    InvalidEnum,
    NoEvaluations,
    ScoreOutOfRange,
    UnknownChild,
    UnknownExercise,
    UnknownSegment,
    UnknownSession,
    UnknownSuggestion,
)
from .fcl import FuzzySystem, InferenceTrace, default_kb_text, parse_fcl, serialize_fcl
from .markers import detect_markers
from .segmenter import Segment, SegmenterConfig, segment_stream
from .therapy import (
    LearningConfig,
    Override,
    TherapySuggestion,
    apply_override,
    progress_between,
    severity_from_scores,
    suggest,
)


class Disorder(enum.Enum):
    SIGMATISM = "sigmatism"
    ROTACISM = "rotacism"
    POLYMORPH_DYSLALIA = "polymorph_dyslalia"


class TherapyGroup(enum.Enum):
    CLASSICAL = "classical"
    ASSISTED = "assisted"


class SessionPhase(enum.Enum):
    PRE_TEST = "pre_test"
    THERAPY = "therapy"
    POST_TEST = "post_test"


class ItemKind(enum.Enum):
    AUDIO = "audio"
    IMAGE = "image"


def coerce_enum(enum_cls, value):
    """Accept a member, its value or its name; anything else is rejected."""
    if isinstance(value, enum_cls):
        return value
    if isinstance(value, str):
        try:
            return enum_cls(value.lower())
        except ValueError:
            pass
        try:
            return enum_cls[value.upper()]
        except KeyError:
            pass
    raise InvalidEnum(f"{value!r} is not a valid {enum_cls.__name__}")


@dataclass
class ChildRecord:
    name: str
    age_months: int
    disorder: Disorder
    therapy_group: TherapyGroup
    id: Optional[str] = None


@dataclass
class SessionRecord:
    id: str
    child_id: str
    phase: SessionPhase
    audio_sha: str
    sample_rate: int
    sample_count: int
    marker_count: int
    segments: list[Segment]
    created_at: float


@dataclass
class Evaluation:
    """Association of a segment with the expected sound, the probe that
    prompted it, and a 0..3 score (3 = fully correct)."""

    segment_id: str
    expected_sound: str
    probe: str
    score: int


@dataclass
class ExerciseItem:
    kind: ItemKind
    asset_ref: str
    caption: str


@dataclass
class ExerciseManifest:
    target_sound: str
    items: list[ExerciseItem]
    difficulty: int
    id: Optional[str] = None


@dataclass
class SuggestionRecord:
    id: str
    child_id: str
    severity: float
    progress: float
    difficulty: float
    dosage: float
    trace: InferenceTrace
    created_at: float


@dataclass
class CohortCell:
    disorder: Disorder
    group: TherapyGroup
    n: int
    mean_pre: Optional[float]
    mean_post: Optional[float]
    delta: Optional[float]


class AudioVault:
    """Content-addressed WAV storage; falls back to memory without a root."""

    def __init__(self, root: Optional[Path]):
        self.root = Path(root) / "audio" if root is not None else None
        self._blobs: dict[str, bytes] = {}
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)

    def put(self, data: bytes) -> str:
        sha = hashlib.sha256(data).hexdigest()
        if self.root is not None:
            path = self.root / f"{sha}.wav"
            if not path.exists():
                path.write_bytes(data)
        else:
            self._blobs[sha] = data
        return sha

    def get(self, sha: str) -> bytes:
        if self.root is not None:
            path = self.root / f"{sha}.wav"
            if path.exists():
                return path.read_bytes()
        elif sha in self._blobs:
            return self._blobs[sha]
        raise UnknownSession(f"audio blob {sha} is missing from the vault")

    def has(self, sha: str) -> bool:
        if self.root is not None:
            return (self.root / f"{sha}.wav").exists()
        return sha in self._blobs


SNAPSHOT_NAME = "store.json"
_CHECKSUM_PREFIX = b"\nsha256:"


class DataStore:
    """Single-writer store; every mutation happens under one lock."""

    def __init__(
        self,
        root: Optional[Path | str] = None,
        segmenter: SegmenterConfig = SegmenterConfig(),
        learning: LearningConfig = LearningConfig(),
        kb_text: Optional[str] = None,
        clock=time.time,
    ):
        self.root = Path(root) if root is not None else None
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._clock = clock
        self.segmenter = segmenter
        self.learning = learning
        self._children: dict[str, ChildRecord] = {}
        self._sessions: dict[str, SessionRecord] = {}
        self._segment_session: dict[str, str] = {}
        self._evaluations: dict[str, Evaluation] = {}
        self._exercises: dict[str, ExerciseManifest] = {}
        self._suggestions: dict[str, SuggestionRecord] = {}
        self._kb_text = kb_text if kb_text is not None else default_kb_text()
        self._kb_system = parse_fcl(self._kb_text)
        self.vault = AudioVault(self.root)

    # -- children ---------------------------------------------------------

    def upsert_child(self, record: ChildRecord) -> str:
        with self._lock:
            disorder = coerce_enum(Disorder, record.disorder)
            group = coerce_enum(TherapyGroup, record.therapy_group)
            child_id = record.id or uuid.uuid4().hex
            self._children[child_id] = ChildRecord(
                id=child_id,
                name=record.name,
                age_months=int(record.age_months),
                disorder=disorder,
                therapy_group=group,
            )
            return child_id

    def get_child(self, child_id: str) -> ChildRecord:
        child = self._children.get(child_id)
        if child is None:
            raise UnknownChild(f"no child with id {child_id!r}")
        return child

    def list_children(self) -> list[ChildRecord]:
        return sorted(self._children.values(), key=lambda c: c.id)

    # -- sessions -----------------------------------------------------------

    def ingest_session(
        self,
        child_id: str,
        wav_bytes: bytes,
        phase,
        created_at: Optional[float] = None,
    ) -> SessionRecord:
        """Run the full pipeline on an uploaded recording and persist it."""
        with self._lock:
            self.get_child(child_id)
            phase = coerce_enum(SessionPhase, phase)
            pcm = read_wav(wav_bytes)
            markers = detect_markers(pcm)
            segments = segment_stream(pcm, markers, self.segmenter)
            session_id = uuid.uuid4().hex
            for index, segment in enumerate(segments):
                segment.id = f"{session_id}:{index:04d}"
                segment.session_id = session_id
            record = SessionRecord(
                id=session_id,
                child_id=child_id,
                phase=phase,
                audio_sha=self.vault.put(wav_bytes),
                sample_rate=pcm.sample_rate,
                sample_count=len(pcm),
                marker_count=len(markers),
                segments=segments,
                created_at=self._clock() if created_at is None else created_at,
            )
            self._sessions[session_id] = record
            for segment in segments:
                self._segment_session[segment.id] = session_id
            return record

    def get_session(self, session_id: str) -> SessionRecord:
        record = self._sessions.get(session_id)
        if record is None:
            raise UnknownSession(f"no session with id {session_id!r}")
        return record

    def list_sessions(self, child_id: Optional[str] = None) -> list[SessionRecord]:
        records = self._sessions.values()
        if child_id is not None:
            records = [r for r in records if r.child_id == child_id]
        return sorted(records, key=lambda r: (r.created_at, r.id))

    def session_audio(self, session_id: str) -> bytes:
        return self.vault.get(self.get_session(session_id).audio_sha)

    # -- segments & evaluations ---------------------------------------------

    def get_segment(self, segment_id: str) -> tuple[Segment, SessionRecord]:
        session_id = self._segment_session.get(segment_id)
        if session_id is None:
            raise UnknownSegment(f"no segment with id {segment_id!r}")
        session = self._sessions[session_id]
        for segment in session.segments:
            if segment.id == segment_id:
                return segment, session
        raise UnknownSegment(f"no segment with id {segment_id!r}")

    def segment_audio(self, segment_id: str) -> bytes:
        """The segment's samples re-packed as a PCM16 WAV."""
        segment, session = self.get_segment(segment_id)
        pcm = read_wav(self.vault.get(session.audio_sha))
        return write_wav(pcm.slice(segment.start, segment.end))

    def record_evaluation(self, evaluation: Evaluation) -> Evaluation:
        with self._lock:
            segment, _ = self.get_segment(evaluation.segment_id)
            score = evaluation.score
            if isinstance(score, bool) or not isinstance(score, int) \
                    or not 0 <= score <= 3:
                raise ScoreOutOfRange(f"score {score!r} outside 0..3")
            stored = Evaluation(
                segment_id=evaluation.segment_id,
                expected_sound=evaluation.expected_sound,
                probe=evaluation.probe,
                score=score,
            )
            self._evaluations[evaluation.segment_id] = stored
            segment.evaluation = stored
            return stored

    def get_evaluation(self, segment_id: str) -> Optional[Evaluation]:
        self.get_segment(segment_id)
        return self._evaluations.get(segment_id)

    def _session_scores(self, session: SessionRecord) -> list[int]:
        return [
            self._evaluations[segment.id].score
            for segment in session.segments
            if segment.id in self._evaluations
        ]

    # -- suggestions ----------------------------------------------------------

    def suggestion_for_child(
        self,
        child_id: str,
        severity: Optional[float] = None,
        progress: Optional[float] = None,
    ) -> SuggestionRecord:
        """Suggest from stored evaluations, or from explicit inputs when the
        caller (e.g. the validation panel) supplies them."""
        with self._lock:
            self.get_child(child_id)
            if severity is None or progress is None:
                evaluated = [
                    s for s in self.list_sessions(child_id)
                    if self._session_scores(s)
                ]
                if not evaluated:
                    raise NoEvaluations(
                        f"child {child_id!r} has no evaluated sessions")
                current = self._session_scores(evaluated[-1])
                previous = (
                    self._session_scores(evaluated[-2])
                    if len(evaluated) >= 2 else []
                )
                if severity is None:
                    severity = severity_from_scores(current)
                if progress is None:
                    progress = progress_between(previous, current)
            suggestion = suggest(
                self._kb_system, severity, progress,
                child_id=child_id, created_at=self._clock(),
            )
            record = SuggestionRecord(
                id=uuid.uuid4().hex,
                child_id=child_id,
                severity=suggestion.severity,
                progress=suggestion.progress,
                difficulty=suggestion.difficulty,
                dosage=suggestion.dosage,
                trace=suggestion.trace,
                created_at=suggestion.created_at,
            )
            self._suggestions[record.id] = record
            return record

    def get_suggestion(self, suggestion_id: str) -> SuggestionRecord:
        record = self._suggestions.get(suggestion_id)
        if record is None:
            raise UnknownSuggestion(f"no suggestion with id {suggestion_id!r}")
        return record

    def apply_override(self, suggestion_id: str, override: Override) -> list[dict]:
        """Adapt the knowledge base from a therapist correction; returns the
        per-rule weight changes."""
        with self._lock:
            record = self.get_suggestion(suggestion_id)
            suggestion = TherapySuggestion(
                difficulty=record.difficulty,
                dosage=record.dosage,
                trace=record.trace,
                severity=record.severity,
                progress=record.progress,
                child_id=record.child_id,
                created_at=record.created_at,
            )
            before = {
                (b.name, r.id): r.weight for b, r in self._kb_system.iter_rules()
            }
            updated = apply_override(
                self._kb_system, suggestion, override, self.learning)
            changes = []
            for block, rule in updated.iter_rules():
                old = before[(block.name, rule.id)]
                if old != rule.weight:
                    changes.append({
                        "block": block.name,
                        "rule_id": rule.id,
                        "old_weight": old,
                        "new_weight": rule.weight,
                    })
            self.set_kb_system(updated)
            return changes

    # -- knowledge base -------------------------------------------------------

    @property
    def kb_text(self) -> str:
        return self._kb_text

    def kb_system(self) -> FuzzySystem:
        return self._kb_system

    def set_kb_text(self, text: str) -> FuzzySystem:
        with self._lock:
            system = parse_fcl(text)   # validate before swapping
            self._kb_text = text
            self._kb_system = system
            return system

    def set_kb_system(self, system: FuzzySystem):
        with self._lock:
            self._kb_text = serialize_fcl(system)
            self._kb_system = system

    # -- exercises --------------------------------------------------------------

    def add_exercise(self, manifest: ExerciseManifest) -> str:
        with self._lock:
            if not manifest.items:
                raise InputOutOfRange("exercise needs at least one item")
            difficulty = int(manifest.difficulty)
            if not 1 <= difficulty <= 5:
                raise InputOutOfRange(f"difficulty {difficulty} outside 1..5")
            items = [
                ExerciseItem(coerce_enum(ItemKind, item.kind),
                             item.asset_ref, item.caption)
                for item in manifest.items
            ]
            exercise_id = manifest.id or uuid.uuid4().hex
            self._exercises[exercise_id] = ExerciseManifest(
                id=exercise_id,
                target_sound=manifest.target_sound,
                items=items,
                difficulty=difficulty,
            )
            return exercise_id

    def get_exercise(self, exercise_id: str) -> ExerciseManifest:
        manifest = self._exercises.get(exercise_id)
        if manifest is None:
            raise UnknownExercise(f"no exercise with id {exercise_id!r}")
        return manifest

    def list_exercises(self) -> list[ExerciseManifest]:
        return sorted(self._exercises.values(), key=lambda e: e.id)

    def exercise_bundle(self, exercise_id: str) -> bytes:
        """Zip archive: the manifest plus every vault-resolvable asset."""
        manifest = self.get_exercise(exercise_id)
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
            archive.writestr(
                "manifest.json",
                json.dumps(exercise_doc(manifest), sort_keys=True, indent=2),
            )
            for item in manifest.items:
                if self.vault.has(item.asset_ref):
                    archive.writestr(
                        f"assets/{item.asset_ref}.wav",
                        self.vault.get(item.asset_ref),
                    )
        return buffer.getvalue()

    # -- cohort report ------------------------------------------------------------

    def _child_phase_mean(self, child_id: str, phase: SessionPhase) -> Optional[float]:
        scores: list[int] = []
        for session in self.list_sessions(child_id):
            if session.phase is phase:
                scores.extend(self._session_scores(session))
        if not scores:
            return None
        return sum(scores) / len(scores)

    def cohort_report(self) -> list[CohortCell]:
        """Mean pre/post scores per (disorder, therapy group) cell.

        Children are the aggregation unit: each child contributes the mean
        of their own evaluations per phase, and the cell averages those
        per-child means.  Iteration order is fixed (enum order, child ids
        sorted), so the report is identical however data was inserted.
        """
        cells = []
        for disorder in Disorder:
            for group in TherapyGroup:
                members = sorted(
                    c.id for c in self._children.values()
                    if c.disorder is disorder and c.therapy_group is group
                )
                pre = [m for m in (
                    self._child_phase_mean(cid, SessionPhase.PRE_TEST)
                    for cid in members) if m is not None]
                post = [m for m in (
                    self._child_phase_mean(cid, SessionPhase.POST_TEST)
                    for cid in members) if m is not None]
                mean_pre = sum(pre) / len(pre) if pre else None
                mean_post = sum(post) / len(post) if post else None
                delta = (
                    mean_post - mean_pre
                    if mean_pre is not None and mean_post is not None else None
                )
                cells.append(CohortCell(
                    disorder=disorder, group=group, n=len(members),
                    mean_pre=mean_pre, mean_post=mean_post, delta=delta,
                ))
        return cells

    # -- integrity audit --------------------------------------------------------------

    def audit(self) -> list[str]:
        """Full-store referential and invariant check; empty list means clean."""
        problems = []
        for session in self._sessions.values():
            if session.child_id not in self._children:
                problems.append(
                    f"session {session.id} references missing child "
                    f"{session.child_id}")
            if not self.vault.has(session.audio_sha):
                problems.append(
                    f"session {session.id} audio {session.audio_sha} missing")
            previous_end = -1
            for segment in session.segments:
                if segment.session_id != session.id:
                    problems.append(f"segment {segment.id} has a foreign session id")
                if not 0 <= segment.start < segment.end <= session.sample_count:
                    problems.append(f"segment {segment.id} bounds are invalid")
                if segment.start < previous_end:
                    problems.append(f"segment {segment.id} overlaps its predecessor")
                previous_end = segment.end
        for segment_id, evaluation in self._evaluations.items():
            if segment_id not in self._segment_session:
                problems.append(
                    f"evaluation references missing segment {segment_id}")
            if not 0 <= evaluation.score <= 3:
                problems.append(f"evaluation on {segment_id} has score "
                                f"{evaluation.score}")
        for suggestion in self._suggestions.values():
            if suggestion.child_id not in self._children:
                problems.append(
                    f"suggestion {suggestion.id} references missing child "
                    f"{suggestion.child_id}")
        return problems

    # -- snapshot / load ------------------------------------------------------------------

    def snapshot(self) -> bytes:
        """One JSON document, stable key order, trailing checksum line."""
        with self._lock:
            doc = {
                "version": 1,
                "children": {
                    cid: child_doc(c) for cid, c in self._children.items()
                },
                "sessions": {
                    sid: session_doc(s) for sid, s in self._sessions.items()
                },
                "evaluations": {
                    seg: evaluation_doc(e)
                    for seg, e in self._evaluations.items()
                },
                "exercises": {
                    eid: exercise_doc(e) for eid, e in self._exercises.items()
                },
                "suggestions": {
                    sid: suggestion_doc(s)
                    for sid, s in self._suggestions.items()
                },
                "kb": self._kb_text,
            }
            body = json.dumps(doc, sort_keys=True, ensure_ascii=False).encode("utf-8")
            digest = hashlib.sha256(body).hexdigest().encode("ascii")
            return body + _CHECKSUM_PREFIX + digest + b"\n"

    @classmethod
    def load(
        cls,
        data: bytes,
        root: Optional[Path | str] = None,
        segmenter: SegmenterConfig = SegmenterConfig(),
        learning: LearningConfig = LearningConfig(),
        clock=time.time,
    ) -> "DataStore":
        cut = data.rfind(_CHECKSUM_PREFIX)
        if cut < 0:
            raise CorruptSnapshot("missing checksum line")
        body = data[:cut]
        expected = data[cut + len(_CHECKSUM_PREFIX):].strip().decode(
            "ascii", "replace")
        actual = hashlib.sha256(body).hexdigest()
        if actual != expected:
            raise CorruptSnapshot(
                f"checksum mismatch: stored {expected[:12]}.., "
                f"computed {actual[:12]}..")
        try:
            doc = json.loads(body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CorruptSnapshot(f"snapshot body is not valid JSON: {exc}") from exc

        store = cls(root=root, segmenter=segmenter, learning=learning,
                    kb_text=doc["kb"], clock=clock)
        for cid, payload in doc["children"].items():
            store._children[cid] = ChildRecord(
                id=cid,
                name=payload["name"],
                age_months=payload["age_months"],
                disorder=coerce_enum(Disorder, payload["disorder"]),
                therapy_group=coerce_enum(TherapyGroup, payload["therapy_group"]),
            )
        for sid, payload in doc["sessions"].items():
            segments = [
                Segment(
                    id=seg["id"], start=seg["start"], end=seg["end"],
                    session_id=sid,
                )
                for seg in payload["segments"]
            ]
            store._sessions[sid] = SessionRecord(
                id=sid,
                child_id=payload["child_id"],
                phase=coerce_enum(SessionPhase, payload["phase"]),
                audio_sha=payload["audio_sha"],
                sample_rate=payload["sample_rate"],
                sample_count=payload["sample_count"],
                marker_count=payload["marker_count"],
                segments=segments,
                created_at=payload["created_at"],
            )
            for segment in segments:
                store._segment_session[segment.id] = sid
        for seg_id, payload in doc["evaluations"].items():
            evaluation = Evaluation(
                segment_id=seg_id,
                expected_sound=payload["expected_sound"],
                probe=payload["probe"],
                score=payload["score"],
            )
            store._evaluations[seg_id] = evaluation
            if seg_id in store._segment_session:
                segment, _ = store.get_segment(seg_id)
                segment.evaluation = evaluation
        for eid, payload in doc["exercises"].items():
            store._exercises[eid] = ExerciseManifest(
                id=eid,
                target_sound=payload["target_sound"],
                items=[
                    ExerciseItem(coerce_enum(ItemKind, item["kind"]),
                                 item["asset_ref"], item["caption"])
                    for item in payload["items"]
                ],
                difficulty=payload["difficulty"],
            )
        for sid, payload in doc["suggestions"].items():
            store._suggestions[sid] = SuggestionRecord(
                id=sid,
                child_id=payload["child_id"],
                severity=payload["severity"],
                progress=payload["progress"],
                difficulty=payload["difficulty"],
                dosage=payload["dosage"],
                trace=InferenceTrace.from_dict(payload["trace"]),
                created_at=payload["created_at"],
            )
        return store

    def save(self) -> Optional[Path]:
        """Write the snapshot inside the store directory, atomically."""
        if self.root is None:
            return None
        with self._lock:
            path = self.root / SNAPSHOT_NAME
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(self.snapshot())
            tmp.replace(path)
            return path

    @classmethod
    def open(
        cls,
        root: Path | str,
        segmenter: SegmenterConfig = SegmenterConfig(),
        learning: LearningConfig = LearningConfig(),
        clock=time.time,
    ) -> "DataStore":
        """Open (or initialize) a store directory."""
        root = Path(root)
        snapshot_path = root / SNAPSHOT_NAME
        if snapshot_path.exists():
            return cls.load(snapshot_path.read_bytes(), root=root,
                            segmenter=segmenter, learning=learning, clock=clock)
        return cls(root=root, segmenter=segmenter, learning=learning, clock=clock)


# -- document builders (shared by snapshot and the HTTP layer) -----------------

def child_doc(child: ChildRecord) -> dict:
    return {
        "id": child.id,
        "name": child.name,
        "age_months": child.age_months,
        "disorder": child.disorder.value,
        "therapy_group": child.therapy_group.value,
    }


def segment_doc(segment: Segment, evaluation: Optional[Evaluation] = None) -> dict:
    doc = {
        "id": segment.id,
        "start": segment.start,
        "end": segment.end,
        "session_id": segment.session_id,
        "evaluation": None,
    }
    evaluation = evaluation or segment.evaluation
    if evaluation is not None:
        doc["evaluation"] = evaluation_doc(evaluation)
    return doc


def session_doc(session: SessionRecord) -> dict:
    doc = {
        "id": session.id,
        "child_id": session.child_id,
        "phase": session.phase.value,
        "audio_sha": session.audio_sha,
        "sample_rate": session.sample_rate,
        "sample_count": session.sample_count,
        "marker_count": session.marker_count,
        "segments": [segment_doc(s) for s in session.segments],
        "created_at": session.created_at,
    }
    if session.marker_count == 0:
        doc["warnings"] = ["no_marker_regions"]
    return doc


def evaluation_doc(evaluation: Evaluation) -> dict:
    return {
        "segment_id": evaluation.segment_id,
        "expected_sound": evaluation.expected_sound,
        "probe": evaluation.probe,
        "score": evaluation.score,
    }


def exercise_doc(manifest: ExerciseManifest) -> dict:
    return {
        "id": manifest.id,
        "target_sound": manifest.target_sound,
        "difficulty": manifest.difficulty,
        "items": [
            {"kind": item.kind.value, "asset_ref": item.asset_ref,
             "caption": item.caption}
            for item in manifest.items
        ],
    }


def suggestion_doc(record: SuggestionRecord) -> dict:
    return {
        "id": record.id,
        "child_id": record.child_id,
        "severity": record.severity,
        "progress": record.progress,
        "difficulty": record.difficulty,
        "dosage": record.dosage,
        "trace": record.trace.to_dict(),
        "created_at": record.created_at,
    }


def cohort_cells_doc(cells: list[CohortCell]) -> list[dict]:
    return [
        {
            "disorder": cell.disorder.value,
            "group": cell.group.value,
            "n": cell.n,
            "mean_pre": cell.mean_pre,
            "mean_post": cell.mean_post,
            "delta": cell.delta,
        }
        for cell in cells
    ]


def cohort_csv(cells: list[CohortCell]) -> bytes:
    lines = ["disorder,group,n,mean_pre,mean_post,delta"]
    for cell in cells:
        def fmt(value: Optional[float]) -> str:
            return "" if value is None else repr(value)
        lines.append(
            f"{cell.disorder.value},{cell.group.value},{cell.n},"
            f"{fmt(cell.mean_pre)},{fmt(cell.mean_post)},{fmt(cell.delta)}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
