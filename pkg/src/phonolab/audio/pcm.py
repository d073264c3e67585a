"""Mono 16-bit PCM buffer, the audio currency used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import UnsupportedFormat

DEFAULT_SAMPLE_RATE = 16000
PCM_MIN = -32768
PCM_MAX = 32767


@dataclass(eq=False)
class PcmBuffer:
    """Signed 16-bit samples plus their rate.

    Mono only; multichannel input is rejected rather than down-mixed so a
    misconfigured recorder fails loudly instead of silently averaging.
    """

    samples: np.ndarray
    sample_rate: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        arr = np.asarray(self.samples)
        if arr.ndim != 1:
            raise UnsupportedFormat(
                f"expected a mono 1-D sample array, got shape {arr.shape}"
            )
        if arr.dtype != np.int16:
            if arr.size and (int(arr.min()) < PCM_MIN or int(arr.max()) > PCM_MAX):
                raise ValueError("sample outside the signed 16-bit range")
            arr = arr.astype(np.int16)
        self.samples = arr
        self.sample_rate = int(self.sample_rate)
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    def __len__(self) -> int:
        return int(self.samples.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PcmBuffer):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(
            self.samples, other.samples
        )

    @property
    def duration(self) -> float:
        """Length in seconds."""
        return self.samples.size / self.sample_rate

    def slice(self, start: int, end: int) -> "PcmBuffer":
        return PcmBuffer(self.samples[start:end].copy(), self.sample_rate)
