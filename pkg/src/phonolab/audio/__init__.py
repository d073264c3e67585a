from .adpcm import (
    DEFAULT_SAMPLES_PER_BLOCK,
    INDEX_TABLE,
    STEP_TABLE,
    AdpcmBlock,
    AdpcmState,
    decode_block,
    decode_nibble,
    decode_stream,
    encode_block,
    encode_sample,
    encode_stream,
)
from .pcm import PcmBuffer
from .wavfile import CODEC_IMA_ADPCM, CODEC_PCM16, read_wav, write_wav

__all__ = [
    "DEFAULT_SAMPLES_PER_BLOCK",
    "INDEX_TABLE",
    "STEP_TABLE",
    "AdpcmBlock",
    "AdpcmState",
    "CODEC_IMA_ADPCM",
    "CODEC_PCM16",
    "PcmBuffer",
    "decode_block",
    "decode_nibble",
    "decode_stream",
    "encode_block",
    "encode_sample",
    "encode_stream",
    "read_wav",
    "write_wav",
]
