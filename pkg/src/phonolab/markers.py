"""Tone markers delimiting child-speech regions in a session recording.

The recording operator injects short sine bursts: 1000 Hz opens a region,
1500 Hz closes it.  Detection runs a Goertzel filter per 10 ms frame and
declares a marker when the tone-bin power dominates the frame's broadband
energy for long enough.  The scheme is deterministic and survives an
ADPCM round trip, which is what matters for downstream gating.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .audio.pcm import PcmBuffer
from .errors import UnsupportedRate


class MarkerKind(enum.Enum):
    START = "start"
    END = "end"


TONE_HZ = {MarkerKind.START: 1000.0, MarkerKind.END: 1500.0}
TONE_MS = 100
GUARD_MS = 20
AMPLITUDE = 16384          # half full scale

FRAME_MS = 10              # detector analysis frame, non-overlapping
MIN_RUN_MS = 60            # tone must dominate at least this long
DOMINANCE = 10.0           # tone-bin power over broadband frame energy
MIN_MARKER_RATE = 8000


@dataclass(frozen=True)
class MarkerEvent:
    kind: MarkerKind
    position: int          # sample offset of the first dominated frame
    confidence: float      # in [0, 1]


def marker_span(sample_rate: int) -> int:
    """Samples from tone onset to the end of the trailing guard."""
    return round(sample_rate * (TONE_MS + GUARD_MS) / 1000.0)


def synthesize_marker(kind: MarkerKind, sample_rate: int = 16000) -> PcmBuffer:
    """100 ms phase-0 sine at half scale with 20 ms silence guards."""
    if sample_rate < MIN_MARKER_RATE:
        raise UnsupportedRate(
            f"marker tones need at least {MIN_MARKER_RATE} Hz, got {sample_rate}"
        )
    guard = np.zeros(round(sample_rate * GUARD_MS / 1000.0), dtype=np.int16)
    n = round(sample_rate * TONE_MS / 1000.0)
    phase = 2.0 * np.pi * TONE_HZ[kind] * np.arange(n) / sample_rate
    tone = np.rint(AMPLITUDE * np.sin(phase)).astype(np.int16)
    return PcmBuffer(np.concatenate([guard, tone, guard]), sample_rate)


def goertzel_power(frames: np.ndarray, freq: float, sample_rate: int) -> np.ndarray:
    """Squared DFT-bin magnitude at ``freq`` for each frame row.

    Plain Goertzel recurrence, vectorized across frames; the bin index is
    rounded to the nearest integer so 1000/1500 Hz land on exact bins at
    the usual rates.
    """
    n = frames.shape[1]
    k = round(freq * n / sample_rate)
    coeff = 2.0 * math.cos(2.0 * math.pi * k / n)
    s1 = np.zeros(frames.shape[0])
    s2 = np.zeros(frames.shape[0])
    for i in range(n):
        s0 = frames[:, i] + coeff * s1 - s2
        s2 = s1
        s1 = s0
    return s1 * s1 + s2 * s2 - coeff * s1 * s2


def detect_markers(pcm: PcmBuffer) -> list[MarkerEvent]:
    """Scan a recording for START/END tones.

    A frame counts toward a marker when its strongest tone bin carries more
    than ``DOMINANCE`` times the frame's total energy; a run of at least
    ``MIN_RUN_MS`` of the same tone becomes one event positioned at the
    run's first frame.
    """
    rate = pcm.sample_rate
    frame_n = round(rate * FRAME_MS / 1000.0)
    n_frames = len(pcm) // frame_n
    if n_frames == 0:
        return []
    frames = pcm.samples[:n_frames * frame_n].astype(np.float64)
    frames = frames.reshape(n_frames, frame_n)
    energy = np.maximum(np.sum(frames * frames, axis=1), 1e-12)
    ratios = {
        kind: goertzel_power(frames, TONE_HZ[kind], rate) / energy
        for kind in MarkerKind
    }

    labels: list[MarkerKind | None] = []
    for i in range(n_frames):
        best = max(MarkerKind, key=lambda kind: ratios[kind][i])
        labels.append(best if ratios[best][i] > DOMINANCE else None)

    min_run = math.ceil(MIN_RUN_MS / FRAME_MS)
    events = []
    i = 0
    while i < n_frames:
        kind = labels[i]
        j = i
        while j < n_frames and labels[j] is kind:
            j += 1
        if kind is not None and j - i >= min_run:
            run = ratios[kind][i:j]
            confidence = float(np.clip(1.0 - DOMINANCE / np.median(run), 0.0, 1.0))
            events.append(MarkerEvent(kind, i * frame_n, confidence))
        i = j
    return events
