"""Runtime configuration for the CLI and the HTTP service.

A JSON file (path from ``--config`` or the PHONOLAB_CONFIG environment
variable) may set the store directory, the listen address, and any field
of the segmentation or learning parameter sets.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .segmenter import SegmenterConfig
from .therapy import LearningConfig

ENV_VAR = "PHONOLAB_CONFIG"
DEFAULT_STORE_DIR = "phonolab_store"


@dataclass
class AppConfig:
    store_dir: Path = Path(DEFAULT_STORE_DIR)
    host: str = "127.0.0.1"
    port: int = 8000
    segmenter: SegmenterConfig = field(default_factory=SegmenterConfig)
    learning: LearningConfig = field(default_factory=LearningConfig)


def _build(cls, payload: dict, what: str):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(payload) - known)
    if unknown:
        raise ValueError(f"unknown {what} option(s): {', '.join(unknown)}")
    return cls(**payload)


def load_config(path: Optional[str | Path] = None) -> AppConfig:
    """Read configuration; falls back to defaults when no file is named."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return AppConfig()
    raw = json.loads(Path(path).read_text("utf-8"))
    if not isinstance(raw, dict):
        raise ValueError("config root must be a JSON object")
    known = {"store_dir", "host", "port", "segmenter", "learning"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValueError(f"unknown config option(s): {', '.join(unknown)}")
    return AppConfig(
        store_dir=Path(raw.get("store_dir", DEFAULT_STORE_DIR)),
        host=raw.get("host", "127.0.0.1"),
        port=int(raw.get("port", 8000)),
        segmenter=_build(SegmenterConfig, raw.get("segmenter", {}), "segmenter"),
        learning=_build(LearningConfig, raw.get("learning", {}), "learning"),
    )
