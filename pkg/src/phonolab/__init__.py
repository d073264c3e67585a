"""Therapy-session audio toolkit.

Pipeline: WAV/ADPCM decoding -> marker detection -> child-speech
segmentation -> per-segment scoring -> fuzzy exercise suggestions that
adapt to therapist overrides -> cohort-level reporting.
"""

__version__ = "0.1.0"

from .audio import (  # noqa: F401
    AdpcmBlock,
    AdpcmState,
    PcmBuffer,
    decode_block,
    encode_block,
    read_wav,
    write_wav,
)
from .fcl import (  # noqa: F401
    FuzzySystem,
    default_kb,
    default_kb_text,
    infer,
    parse_fcl,
    serialize_fcl,
)
from .markers import MarkerEvent, MarkerKind, detect_markers, synthesize_marker  # noqa: F401
from .segmenter import Segment, SegmenterConfig, segment_stream  # noqa: F401
from .store import DataStore  # noqa: F401
from .therapy import (  # noqa: F401
    LearningConfig,
    Override,
    TherapySuggestion,
    apply_override,
    progress_between,
    severity_from_scores,
    suggest,
)
