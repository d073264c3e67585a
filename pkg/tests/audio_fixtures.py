"""Synthetic session recordings with exact ground truth.

Sessions are assembled from a noise floor, START/END marker tones, child
"speech" bursts inside the marked regions, and loud distractor bursts
outside them (the therapist).  Every placement is recorded so tests can
assert detection accuracy against construction truth.
"""

from dataclasses import dataclass, field

import numpy as np

from phonolab import PcmBuffer, synthesize_marker, write_wav
from phonolab.markers import GUARD_MS, MarkerKind, marker_span

RATE = 16000


@dataclass
class SessionTruth:
    rate: int
    samples: np.ndarray
    marker_onsets: list[tuple[MarkerKind, int]] = field(default_factory=list)
    regions: list[tuple[int, int]] = field(default_factory=list)
    bursts: list[tuple[int, int]] = field(default_factory=list)
    distractors: list[tuple[int, int]] = field(default_factory=list)

    @property
    def pcm(self) -> PcmBuffer:
        return PcmBuffer(self.samples, self.rate)

    @property
    def wav(self) -> bytes:
        return write_wav(self.pcm)


def _noise(rng, n, rms):
    return rng.normal(0.0, rms, n)


def _place_marker(buf, pos, kind, rate):
    marker = synthesize_marker(kind, rate).samples.astype(np.float64)
    buf[pos:pos + marker.size] = marker
    return pos + round(rate * GUARD_MS / 1000.0)   # tone onset


def build_session(
    seed: int,
    rate: int = RATE,
    n_regions: int | None = None,
    snr_db_range: tuple[float, float] = (10.0, 24.0),
    burst_ms_range: tuple[int, int] = (150, 400),
) -> SessionTruth:
    """One synthetic session; all positions are construction truth."""
    rng = np.random.default_rng(seed)
    floor_rms = float(rng.uniform(150, 450))
    if n_regions is None:
        n_regions = int(rng.integers(1, 4))
    span = marker_span(rate)
    marker_len = synthesize_marker(MarkerKind.START, rate).samples.size

    total_ms = 1200          # lead-in with a distractor
    layout = []
    for _ in range(n_regions):
        body_ms = int(rng.integers(2000, 4001))
        layout.append(body_ms)
        # budget with the maximum possible inter-region gap
        total_ms += 2 * (marker_len * 1000 // rate + 1) + body_ms + 1500

    total = round(rate * (total_ms + 500) / 1000.0)
    buf = _noise(rng, total, floor_rms)
    truth = SessionTruth(rate=rate, samples=np.zeros(0, dtype=np.int16))

    def add_distractor(lo: int, hi: int):
        width = round(rate * float(rng.uniform(0.2, 0.5)))
        if hi - lo < width + 400:
            return
        start = int(rng.integers(lo + 200, hi - width - 200))
        rms = floor_rms * float(rng.uniform(8, 30))
        buf[start:start + width] += _noise(rng, width, rms)
        truth.distractors.append((start, start + width))

    cursor = round(rate * 1.2)
    add_distractor(0, cursor)

    for body_ms in layout:
        start_onset = _place_marker(buf, cursor, MarkerKind.START, rate)
        truth.marker_onsets.append((MarkerKind.START, start_onset))
        cursor += marker_len

        region_start = start_onset + span
        body = round(rate * body_ms / 1000.0)
        region_body_end = region_start + body

        # bursts: clear of the floor-seed window, well separated
        position = region_start + round(rate * 0.25)
        while True:
            burst_len = round(
                rate * int(rng.integers(*burst_ms_range)) / 1000.0)
            # leave more tail than the hangover needs to close the run
            if position + burst_len > region_body_end - round(rate * 0.4):
                break
            snr_db = float(rng.uniform(*snr_db_range))
            rms = floor_rms * 10.0 ** (snr_db / 20.0)
            buf[position:position + burst_len] += _noise(rng, burst_len, rms)
            truth.bursts.append((position, position + burst_len))
            position += burst_len + round(rate * float(rng.uniform(0.45, 0.9)))

        cursor = region_body_end
        end_onset = _place_marker(buf, cursor, MarkerKind.END, rate)
        truth.marker_onsets.append((MarkerKind.END, end_onset))
        truth.regions.append((region_start, end_onset))
        cursor += marker_len

        gap = round(rate * float(rng.integers(600, 1500)) / 1000.0)
        add_distractor(cursor, cursor + gap)
        cursor += gap

    truth.samples = np.clip(buf[:cursor + round(rate * 0.3)],
                            -32768, 32767).astype(np.int16)
    return truth


def simple_marked_wav(
    seed: int = 0,
    bursts: int = 2,
    rate: int = RATE,
) -> bytes:
    """Compact single-region session for store/service tests."""
    rng = np.random.default_rng(seed)
    floor_rms = 200.0
    marker_len = synthesize_marker(MarkerKind.START, rate).samples.size
    span = marker_span(rate)

    body = round(rate * (0.3 + bursts * 0.75))
    total = round(rate * 0.4) + marker_len + body + marker_len \
        + round(rate * 0.3)
    buf = _noise(rng, total, floor_rms)

    cursor = round(rate * 0.4)
    start_onset = _place_marker(buf, cursor, MarkerKind.START, rate)
    cursor += marker_len
    region_start = start_onset + span
    position = region_start + round(rate * 0.25)
    for _ in range(bursts):
        burst_len = round(rate * 0.3)
        buf[position:position + burst_len] += _noise(
            rng, burst_len, floor_rms * 18)
        position += burst_len + round(rate * 0.45)
    cursor = max(cursor, position) + round(rate * 0.1)
    _place_marker(buf, cursor, MarkerKind.END, rate)
    cursor += marker_len

    samples = np.clip(buf[:cursor + round(rate * 0.2)],
                      -32768, 32767).astype(np.int16)
    return write_wav(PcmBuffer(samples, rate))
