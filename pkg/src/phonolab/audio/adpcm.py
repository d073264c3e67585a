"""IMA-ADPCM codec: 4-bit nibbles to and from 16-bit PCM.

Blocks follow the WAV format-tag 0x0011 layout: a 4-byte header holding
the seed sample (int16 LE), the step index (uint8) and one reserved byte,
followed by packed nibbles, low nibble first.  Each block is decodable on
its own because the header re-seeds the predictor, so decoding blocks
independently equals decoding the concatenated stream.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from ..errors import MalformedBlock

STEP_TABLE = (
    7, 8, 9, 10, 11, 12, 13, 14, 16, 17,
    19, 21, 23, 25, 28, 31, 34, 37, 41, 45,
    50, 55, 60, 66, 73, 80, 88, 97, 107, 118,
    130, 143, 157, 173, 190, 209, 230, 253, 279, 307,
    337, 371, 408, 449, 494, 544, 598, 658, 724, 796,
    876, 963, 1060, 1166, 1282, 1411, 1552, 1707, 1878, 2066,
    2272, 2499, 2749, 3024, 3327, 3660, 4026, 4428, 4871, 5358,
    5894, 6484, 7132, 7845, 8630, 9493, 10442, 11487, 12635, 13899,
    15289, 16818, 18500, 20350, 22385, 24623, 27086, 29794, 32767,
)

INDEX_TABLE = (-1, -1, -1, -1, 2, 4, 6, 8,
               -1, -1, -1, -1, 2, 4, 6, 8)

MAX_STEP_INDEX = 88

# 505 samples -> 1 header seed + 504 nibbles = 252 payload bytes = 256-byte blocks
DEFAULT_SAMPLES_PER_BLOCK = 505


def _clamp16(value: int) -> int:
    if value > 32767:
        return 32767
    if value < -32768:
        return -32768
    return value


def _clamp_index(index: int) -> int:
    if index < 0:
        return 0
    if index > MAX_STEP_INDEX:
        return MAX_STEP_INDEX
    return index


@dataclass
class AdpcmState:
    """Predictor / step-index pair carried across samples and blocks."""

    predictor: int = 0
    step_index: int = 0

    def __post_init__(self):
        self.predictor = _clamp16(int(self.predictor))
        self.step_index = _clamp_index(int(self.step_index))

    def copy(self) -> "AdpcmState":
        return AdpcmState(self.predictor, self.step_index)


def decode_nibble(nibble: int, state: AdpcmState) -> int:
    """Reconstruct one sample from a 4-bit code, mutating ``state``."""
    step = STEP_TABLE[state.step_index]
    diff = step >> 3
    if nibble & 4:
        diff += step
    if nibble & 2:
        diff += step >> 1
    if nibble & 1:
        diff += step >> 2
    if nibble & 8:
        state.predictor = _clamp16(state.predictor - diff)
    else:
        state.predictor = _clamp16(state.predictor + diff)
    state.step_index = _clamp_index(state.step_index + INDEX_TABLE[nibble & 0x0F])
    return state.predictor


def encode_sample(sample: int, state: AdpcmState) -> int:
    """Quantize one sample to a nibble, mutating ``state``.

    The state update runs the decoder's reconstruction on the chosen code,
    so the encoder-side predictor trajectory is exactly what a decoder
    will compute from the emitted nibbles.
    """
    step = STEP_TABLE[state.step_index]
    diff = int(sample) - state.predictor
    nibble = 0
    if diff < 0:
        nibble = 8
        diff = -diff
    if diff >= step:
        nibble |= 4
        diff -= step
    if diff >= step >> 1:
        nibble |= 2
        diff -= step >> 1
    if diff >= step >> 2:
        nibble |= 1
    decode_nibble(nibble, state)
    return nibble


_HEADER = struct.Struct("<hBB")
HEADER_SIZE = _HEADER.size


@dataclass
class AdpcmBlock:
    """One encoded block: seed sample, entry step index, packed nibbles."""

    predictor: int
    step_index: int
    payload: bytes

    @classmethod
    def from_bytes(cls, raw: bytes) -> "AdpcmBlock":
        if len(raw) < HEADER_SIZE:
            raise MalformedBlock(f"block truncated at {len(raw)} bytes")
        predictor, step_index, _reserved = _HEADER.unpack_from(raw)
        if step_index > MAX_STEP_INDEX:
            raise MalformedBlock(
                f"header step index {step_index} exceeds {MAX_STEP_INDEX}"
            )
        return cls(predictor, step_index, bytes(raw[HEADER_SIZE:]))

    def to_bytes(self) -> bytes:
        return _HEADER.pack(self.predictor, self.step_index, 0) + self.payload


def decode_block(block: AdpcmBlock) -> tuple[np.ndarray, AdpcmState]:
    """Expand a block to PCM: the header seed plus one sample per nibble."""
    if not 0 <= block.step_index <= MAX_STEP_INDEX:
        raise MalformedBlock(f"step index {block.step_index} outside 0..{MAX_STEP_INDEX}")
    if not -32768 <= block.predictor <= 32767:
        raise MalformedBlock("header predictor outside the int16 range")
    state = AdpcmState(block.predictor, block.step_index)
    out = np.empty(1 + 2 * len(block.payload), dtype=np.int16)
    out[0] = state.predictor
    pos = 1
    for byte in block.payload:
        out[pos] = decode_nibble(byte & 0x0F, state)
        out[pos + 1] = decode_nibble(byte >> 4, state)
        pos += 2
    return out, state


def encode_block(
    samples,
    state: AdpcmState,
    samples_per_block: int = DEFAULT_SAMPLES_PER_BLOCK,
) -> tuple[AdpcmBlock, AdpcmState]:
    """Encode a fragment into one block.

    The fragment's first sample is stored verbatim in the header; the step
    index carries over from ``state``.  Fragments shorter than a full block
    are allowed (trailing block of a stream).  An odd nibble count is padded
    with a zero nibble; containers must track the true sample count.
    """
    arr = np.asarray(samples, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("cannot encode an empty fragment")
    if arr.size > samples_per_block:
        raise ValueError(
            f"fragment of {arr.size} samples exceeds {samples_per_block} per block"
        )
    seed = int(arr[0])
    entry_index = _clamp_index(int(state.step_index))
    work = AdpcmState(seed, entry_index)
    nibbles = [encode_sample(int(s), work) for s in arr[1:]]
    if len(nibbles) % 2:
        nibbles.append(0)
    payload = bytes(
        nibbles[i] | (nibbles[i + 1] << 4) for i in range(0, len(nibbles), 2)
    )
    return AdpcmBlock(seed, entry_index, payload), work.copy()


def decode_stream(raw: bytes, block_align: int) -> np.ndarray:
    """Decode back-to-back blocks of ``block_align`` bytes (last may be short)."""
    if block_align <= HEADER_SIZE:
        raise MalformedBlock(f"block alignment {block_align} too small")
    parts = []
    for pos in range(0, len(raw), block_align):
        chunk = raw[pos:pos + block_align]
        samples, _ = decode_block(AdpcmBlock.from_bytes(chunk))
        parts.append(samples)
    if not parts:
        return np.zeros(0, dtype=np.int16)
    return np.concatenate(parts)


def encode_stream(
    samples, samples_per_block: int = DEFAULT_SAMPLES_PER_BLOCK
) -> tuple[bytes, int]:
    """Encode a PCM stream into blocks; returns (payload, block_align)."""
    if samples_per_block < 2 or samples_per_block % 2 == 0:
        raise ValueError("samples_per_block must be odd and at least 3")
    block_align = HEADER_SIZE + (samples_per_block - 1) // 2
    arr = np.asarray(samples, dtype=np.int64)
    state = AdpcmState()
    chunks = []
    for pos in range(0, arr.size, samples_per_block):
        block, state = encode_block(
            arr[pos:pos + samples_per_block], state, samples_per_block
        )
        chunks.append(block.to_bytes())
    return b"".join(chunks), block_align
