"""Marker-gated VAD segmentation against constructed ground truth."""

import dataclasses

import numpy as np
import pytest

from phonolab import PcmBuffer, detect_markers, segment_stream
from phonolab.errors import MarkerPairingError, UnpairedEndMarker
from phonolab.markers import MarkerEvent, MarkerKind, marker_span
from phonolab.segmenter import Segment, SegmenterConfig, pair_marker_regions

from audio_fixtures import build_session

RATE = 16000


def region_pcm(noise_rms=200.0, seconds=6.0, seed=0):
    """Noise bed with one region marked from 1 s to 5 s."""
    rng = np.random.default_rng(seed)
    buf = rng.normal(0, noise_rms, round(seconds * RATE))
    markers = [
        MarkerEvent(MarkerKind.START, RATE, 1.0),
        MarkerEvent(MarkerKind.END, 5 * RATE, 1.0),
    ]
    return buf, markers


def to_pcm(buf):
    return PcmBuffer(np.clip(buf, -32768, 32767).astype(np.int16), RATE)


class TestConfig:
    def test_defaults_are_valid(self):
        SegmenterConfig()

    def test_ratio_ordering_enforced(self):
        with pytest.raises(ValueError):
            SegmenterConfig(onset_ratio=2.0, offset_ratio=3.0)

    def test_positivity_enforced(self):
        with pytest.raises(ValueError):
            SegmenterConfig(frame_ms=0)


class TestPairing:
    def test_end_without_start_rejected(self):
        with pytest.raises(UnpairedEndMarker):
            pair_marker_regions(
                [MarkerEvent(MarkerKind.END, 100, 1.0)], 10_000, RATE)

    def test_stacked_starts_rejected(self):
        events = [
            MarkerEvent(MarkerKind.START, 100, 1.0),
            MarkerEvent(MarkerKind.START, 5000, 1.0),
        ]
        with pytest.raises(MarkerPairingError):
            pair_marker_regions(events, 100_000, RATE)

    def test_trailing_start_closes_at_stream_end(self):
        events = [MarkerEvent(MarkerKind.START, 1000, 1.0)]
        regions = pair_marker_regions(events, 50_000, RATE)
        assert regions == [(1000 + marker_span(RATE), 50_000)]

    def test_segment_requires_nonempty_interval(self):
        with pytest.raises(ValueError):
            Segment(id="x", start=10, end=10)


class TestSegmentStream:
    def test_all_silence_region_is_empty(self):
        buf = np.zeros(6 * RATE)
        _, markers = region_pcm()
        assert segment_stream(to_pcm(buf), markers) == []

    def test_noise_only_region_is_empty(self):
        buf, markers = region_pcm()
        assert segment_stream(to_pcm(buf), markers) == []

    def test_single_burst_recovered_within_30ms(self):
        buf, markers = region_pcm(seed=1)
        b0, b1 = round(2.0 * RATE), round(2.4 * RATE)
        rng = np.random.default_rng(2)
        buf[b0:b1] += rng.normal(0, 2000, b1 - b0)   # 20 dB SNR
        segments = segment_stream(to_pcm(buf), markers)
        assert len(segments) == 1
        tol = round(0.03 * RATE)
        assert abs(segments[0].start - b0) <= tol
        assert abs(segments[0].end - b1) <= tol

    def test_burst_shorter_than_min_segment_dropped(self):
        buf, markers = region_pcm(seed=3)
        b0 = round(2.0 * RATE)
        b1 = b0 + round(0.08 * RATE)                  # 80 ms
        rng = np.random.default_rng(4)
        buf[b0:b1] += rng.normal(0, 2000, b1 - b0)
        assert segment_stream(to_pcm(buf), markers) == []

    def test_burst_before_start_marker_ignored(self):
        buf, markers = region_pcm(seed=5)
        rng = np.random.default_rng(6)
        b0, b1 = round(0.3 * RATE), round(0.8 * RATE)
        buf[b0:b1] += rng.normal(0, 6000, b1 - b0)    # loud therapist
        assert segment_stream(to_pcm(buf), markers) == []

    def test_close_bursts_merge(self):
        buf, markers = region_pcm(seed=7)
        rng = np.random.default_rng(8)
        b0 = round(2.0 * RATE)
        first_end = b0 + round(0.3 * RATE)
        second_start = first_end + round(0.1 * RATE)  # 100 ms gap < merge_gap
        second_end = second_start + round(0.3 * RATE)
        buf[b0:first_end] += rng.normal(0, 2000, first_end - b0)
        buf[second_start:second_end] += rng.normal(
            0, 2000, second_end - second_start)
        segments = segment_stream(to_pcm(buf), markers)
        assert len(segments) == 1
        assert segments[0].start < first_end
        assert segments[0].end > second_start

    def test_unpaired_end_flows_through(self):
        buf, _ = region_pcm()
        with pytest.raises(UnpairedEndMarker):
            segment_stream(to_pcm(buf),
                           [MarkerEvent(MarkerKind.END, 1000, 1.0)])


class TestInvariants:
    @pytest.mark.parametrize("seed", range(8))
    def test_disjoint_sorted_and_inside_regions(self, seed):
        truth = build_session(seed)
        events = detect_markers(truth.pcm)
        segments = segment_stream(truth.pcm, events)
        previous_end = -1
        for segment in segments:
            assert segment.start < segment.end
            assert segment.start >= previous_end
            previous_end = segment.end
            assert any(a <= segment.start and segment.end <= b
                       for a, b in truth.regions)

    @pytest.mark.parametrize("seed", range(4))
    def test_zeroing_outside_regions_changes_nothing(self, seed):
        truth = build_session(seed)
        events = detect_markers(truth.pcm)
        baseline = segment_stream(truth.pcm, events)

        muted = np.zeros_like(truth.samples)
        for a, b in pair_marker_regions(events, len(truth.samples), truth.rate):
            muted[a:b] = truth.samples[a:b]
        rerun = segment_stream(PcmBuffer(muted, truth.rate), events)
        assert [(s.start, s.end) for s in rerun] == \
            [(s.start, s.end) for s in baseline]

    @pytest.mark.parametrize("seed", range(4))
    def test_lowering_min_segment_only_adds(self, seed):
        truth = build_session(seed)
        events = detect_markers(truth.pcm)
        loose = dataclasses.replace(SegmenterConfig(), min_segment_ms=40)
        strict_spans = {(s.start, s.end)
                        for s in segment_stream(truth.pcm, events)}
        loose_spans = {(s.start, s.end)
                       for s in segment_stream(truth.pcm, events, loose)}
        assert strict_spans <= loose_spans
