"""Marker-gated energy segmentation.

Only audio inside START..END marker regions is examined; everything
outside (the therapist's prompts) is discarded.  Inside a region a
frame-energy detector with an EMA noise floor and onset/offset hysteresis
extracts the atomic child vocalizations.  The noise floor is re-seeded
from the first 200 ms of each region, so sessions recorded in different
rooms do not share a floor estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np

from .audio.pcm import PcmBuffer
from .errors import MarkerPairingError, UnpairedEndMarker
from .markers import MarkerEvent, MarkerKind, marker_span

if TYPE_CHECKING:  # pragma: no cover
    from .store import Evaluation

FLOOR_SEED_MS = 200
FLOOR_EPS = 1e-12


@dataclass(frozen=True)
class SegmenterConfig:
    frame_ms: int = 20
    hop_ms: int = 10
    noise_ema_alpha: float = 0.05
    onset_ratio: float = 4.0
    offset_ratio: float = 2.0
    onset_frames: int = 3
    hangover_frames: int = 20
    min_segment_ms: int = 100
    merge_gap_ms: int = 150

    def __post_init__(self):
        for name in (
            "frame_ms", "hop_ms", "noise_ema_alpha", "onset_ratio",
            "offset_ratio", "onset_frames", "hangover_frames",
            "min_segment_ms", "merge_gap_ms",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not self.onset_ratio > self.offset_ratio >= 1.0:
            raise ValueError("need onset_ratio > offset_ratio >= 1")


@dataclass
class Segment:
    """One contiguous child vocalization, in absolute sample offsets."""

    id: str
    start: int
    end: int
    session_id: Optional[str] = None
    evaluation: Optional["Evaluation"] = field(default=None, compare=False)

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError(f"segment [{self.start}, {self.end}) is empty")


def pair_marker_regions(
    markers: list[MarkerEvent], total_samples: int, sample_rate: int
) -> list[tuple[int, int]]:
    """Turn a marker sequence into half-open sample regions.

    A region opens after the START tone (plus guard) and closes at the END
    tone onset.  A trailing START closes at end-of-stream; an END with no
    open region is an error, as is a START stacked on an open one.
    """
    span = marker_span(sample_rate)
    regions = []
    open_start = None
    for event in sorted(markers, key=lambda e: e.position):
        if event.kind is MarkerKind.START:
            if open_start is not None:
                raise MarkerPairingError(
                    f"START at sample {event.position} follows an unclosed START"
                )
            open_start = event.position
        else:
            if open_start is None:
                raise UnpairedEndMarker(
                    f"END marker at sample {event.position} has no matching START"
                )
            regions.append((open_start + span, event.position))
            open_start = None
    if open_start is not None:
        regions.append((open_start + span, total_samples))
    return [(a, b) for a, b in regions if a < b]


def segment_stream(
    pcm: PcmBuffer,
    markers: list[MarkerEvent],
    cfg: SegmenterConfig = SegmenterConfig(),
) -> list[Segment]:
    """Extract child-speech segments from the marker-gated regions."""
    rate = pcm.sample_rate
    frame_n = max(1, round(rate * cfg.frame_ms / 1000.0))
    hop_n = max(1, round(rate * cfg.hop_ms / 1000.0))
    min_len = round(rate * cfg.min_segment_ms / 1000.0)
    merge_gap = round(rate * cfg.merge_gap_ms / 1000.0)

    x = pcm.samples.astype(np.float64)
    spans: list[tuple[int, int]] = []
    for region_start, region_end in pair_marker_regions(markers, len(pcm), rate):
        runs = _vad_region(x, region_start, region_end, frame_n, hop_n, cfg)
        merged: list[list[int]] = []
        for start, end in runs:
            if merged and start - merged[-1][1] < merge_gap:
                merged[-1][1] = end
            else:
                merged.append([start, end])
        spans.extend((s, e) for s, e in merged if e - s >= min_len)

    return [
        Segment(id=f"seg-{i:04d}", start=start, end=end)
        for i, (start, end) in enumerate(spans)
    ]


def _vad_region(
    x: np.ndarray,
    region_start: int,
    region_end: int,
    frame_n: int,
    hop_n: int,
    cfg: SegmenterConfig,
) -> list[tuple[int, int]]:
    """Hysteresis VAD over one region; returns absolute sample spans."""
    width = region_end - region_start
    n_frames = (width - frame_n) // hop_n + 1 if width >= frame_n else 0
    if n_frames <= 0:
        return []
    offsets = region_start + hop_n * np.arange(n_frames)
    idx = offsets[:, None] + np.arange(frame_n)[None, :]
    energies = np.mean(x[idx] ** 2, axis=1)

    seed_frames = max(1, min(n_frames, round(FLOOR_SEED_MS / cfg.hop_ms)))
    floor = max(float(np.median(energies[:seed_frames])), FLOOR_EPS)

    runs: list[tuple[int, int]] = []
    in_speech = False
    onset_run = 0
    quiet_run = 0
    start_frame = 0
    for i, energy in enumerate(energies):
        if not in_speech:
            if energy > cfg.onset_ratio * floor:
                onset_run += 1
                if onset_run >= cfg.onset_frames:
                    in_speech = True
                    start_frame = i - onset_run + 1
                    quiet_run = 0
            else:
                onset_run = 0
                floor = (1.0 - cfg.noise_ema_alpha) * floor \
                    + cfg.noise_ema_alpha * float(energy)
        else:
            if energy < cfg.offset_ratio * floor:
                quiet_run += 1
                if quiet_run >= cfg.hangover_frames:
                    runs.append((start_frame, i - quiet_run + 1))
                    in_speech = False
                    onset_run = 0
                    quiet_run = 0
            else:
                quiet_run = 0
    if in_speech:
        runs.append((start_frame, n_frames))

    spans = []
    for f0, f1 in runs:
        start = region_start + f0 * hop_n
        end = min(region_start + f1 * hop_n, region_end) if f1 < n_frames \
            else region_end
        if start < end:
            spans.append((start, end))
    return spans
