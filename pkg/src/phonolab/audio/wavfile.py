"""RIFF/WAVE reader and writer for mono PCM16 and IMA-ADPCM streams."""

from __future__ import annotations

import struct

import numpy as np

from ..errors import MalformedWav, UnsupportedFormat
from .adpcm import DEFAULT_SAMPLES_PER_BLOCK, HEADER_SIZE, decode_stream, encode_stream
from .pcm import PcmBuffer

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_IMA_ADPCM = 0x0011

CODEC_PCM16 = "pcm16"
CODEC_IMA_ADPCM = "ima_adpcm"


def read_wav(data: bytes) -> PcmBuffer:
    """Parse a WAV file; IMA-ADPCM content is decoded transparently."""
    if len(data) < 12:
        raise MalformedWav(f"file of {len(data)} bytes is shorter than a RIFF header")
    if data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedWav("missing RIFF/WAVE magic")

    fmt = None
    body = None
    fact_samples = None
    pos = 12
    while pos < len(data):
        if pos + 8 > len(data):
            raise MalformedWav("dangling bytes after the last chunk")
        cid = data[pos:pos + 4]
        size = struct.unpack_from("<I", data, pos + 4)[0]
        chunk = data[pos + 8:pos + 8 + size]
        if len(chunk) < size:
            raise MalformedWav(f"chunk {cid!r} truncated")
        if cid == b"fmt ":
            fmt = _parse_fmt(chunk)
        elif cid == b"fact" and size >= 4:
            fact_samples = struct.unpack_from("<I", chunk)[0]
        elif cid == b"data":
            body = chunk
        pos += 8 + size + (size & 1)

    if fmt is None:
        raise MalformedWav("missing fmt chunk")
    if body is None:
        raise MalformedWav("missing data chunk")

    tag, rate, block_align = fmt
    if tag == WAVE_FORMAT_PCM:
        if len(body) % 2:
            raise MalformedWav("PCM16 data chunk has an odd byte count")
        samples = np.frombuffer(body, dtype="<i2").copy()
    else:
        samples = decode_stream(body, block_align)
        if fact_samples is not None and fact_samples <= samples.size:
            samples = samples[:fact_samples]
    return PcmBuffer(samples, rate)


def _parse_fmt(chunk: bytes) -> tuple[int, int, int]:
    if len(chunk) < 16:
        raise MalformedWav("fmt chunk shorter than 16 bytes")
    tag, channels, rate, _byte_rate, block_align, bits = struct.unpack_from(
        "<HHIIHH", chunk
    )
    if channels != 1:
        raise UnsupportedFormat(f"{channels} channels; only mono is handled")
    if tag == WAVE_FORMAT_PCM:
        if bits != 16:
            raise UnsupportedFormat(f"{bits}-bit PCM; only 16-bit is handled")
    elif tag == WAVE_FORMAT_IMA_ADPCM:
        if bits != 4:
            raise UnsupportedFormat(f"{bits}-bit ADPCM; only 4-bit is handled")
        if block_align <= HEADER_SIZE:
            raise MalformedWav(f"ADPCM block alignment {block_align} too small")
    else:
        raise UnsupportedFormat(f"format tag {tag:#06x} is not supported")
    if rate <= 0:
        raise MalformedWav("non-positive sample rate")
    return tag, rate, block_align


def write_wav(
    pcm: PcmBuffer,
    codec: str = CODEC_PCM16,
    samples_per_block: int = DEFAULT_SAMPLES_PER_BLOCK,
) -> bytes:
    """Serialize a buffer; an empty buffer yields a valid zero-length file."""
    if codec == CODEC_PCM16:
        fmt = struct.pack(
            "<HHIIHH", WAVE_FORMAT_PCM, 1, pcm.sample_rate,
            pcm.sample_rate * 2, 2, 16,
        )
        chunks = [(b"fmt ", fmt), (b"data", pcm.samples.astype("<i2").tobytes())]
    elif codec == CODEC_IMA_ADPCM:
        payload, block_align = encode_stream(pcm.samples, samples_per_block)
        byte_rate = max(1, round(pcm.sample_rate * block_align / samples_per_block))
        fmt = struct.pack(
            "<HHIIHHHH", WAVE_FORMAT_IMA_ADPCM, 1, pcm.sample_rate,
            byte_rate, block_align, 4, 2, samples_per_block,
        )
        fact = struct.pack("<I", len(pcm))
        chunks = [(b"fmt ", fmt), (b"fact", fact), (b"data", payload)]
    else:
        raise ValueError(f"unknown codec {codec!r}")

    out = bytearray()
    for cid, chunk in chunks:
        out += cid + struct.pack("<I", len(chunk)) + chunk
        if len(chunk) % 2:
            out += b"\x00"
    return b"RIFF" + struct.pack("<I", 4 + len(out)) + b"WAVE" + bytes(out)
