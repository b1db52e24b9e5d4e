"""Local sound-effect library: indexing, retrieval, loading.

Directory layout: `<id>.wav` plus a `<id>.tags` sidecar holding
comma-separated event tags. WAVs without a sidecar are skipped with a
warning. The index serializes deterministically (sorted by asset id).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..audio import freeze, read_wav, resample
from ..errors import WavError
from ..script.model import SoundCue
from .procedural import CueAudio, normalize_cue


@dataclass(frozen=True)
class AssetEntry:
    asset_id: str
    path: str
    tags: tuple[str, ...]
    duration_s: float
    sample_rate: int
    loudness_rms: float  # dBFS

    def __post_init__(self):
        if self.duration_s <= 0:
            raise ValueError(f"asset {self.asset_id}: duration must be > 0")
        object.__setattr__(self, "tags", tuple(self.tags))


@dataclass(frozen=True)
class AssetIndex:
    entries: tuple[AssetEntry, ...]

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: e.asset_id))
        ids = [e.asset_id for e in entries]
        if len(set(ids)) != len(ids):
            raise ValueError("asset ids must be unique")
        object.__setattr__(self, "entries", entries)

    def get(self, asset_id: str) -> AssetEntry:
        for e in self.entries:
            if e.asset_id == asset_id:
                return e
        raise KeyError(asset_id)

    def to_json(self) -> str:
        return json.dumps({"assets": [
            {"asset_id": e.asset_id, "path": e.path, "tags": list(e.tags),
             "duration_s": e.duration_s, "sample_rate": e.sample_rate,
             "loudness_rms": e.loudness_rms}
            for e in self.entries]}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AssetIndex":
        data = json.loads(text)
        return cls(entries=tuple(
            AssetEntry(asset_id=a["asset_id"], path=a["path"], tags=tuple(a["tags"]),
                       duration_s=a["duration_s"], sample_rate=a["sample_rate"],
                       loudness_rms=a["loudness_rms"])
            for a in data["assets"]))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), "utf-8")

    @classmethod
    def load(cls, path) -> "AssetIndex":
        return cls.from_json(Path(path).read_text("utf-8"))


def index_assets(directory) -> AssetIndex:
    """Index every readable WAV with a `.tags` sidecar under `directory`."""
    root = Path(directory)
    if not root.is_dir():
        raise NotADirectoryError(f"asset directory {root} is not readable")
    entries = []
    for wav_path in sorted(root.glob("*.wav")):
        sidecar = wav_path.with_suffix(".tags")
        if not sidecar.exists():
            warnings.warn(f"{wav_path.name}: no .tags sidecar, skipped")
            continue
        try:
            buf = read_wav(wav_path)
        except (WavError, OSError) as exc:
            warnings.warn(f"{wav_path.name}: unreadable ({exc}), skipped")
            continue
        tags = tuple(t.strip().lower() for t in
                     sidecar.read_text("utf-8").split(",") if t.strip())
        rms = float(np.sqrt(np.mean(buf.samples ** 2)))
        rms_db = 20.0 * np.log10(rms) if rms > 0 else -120.0
        entries.append(AssetEntry(
            asset_id=wav_path.stem, path=str(wav_path), tags=tags,
            duration_s=buf.duration_s, sample_rate=buf.sample_rate,
            loudness_rms=round(rms_db, 4)))
    return AssetIndex(entries=tuple(entries))


def retrieve_asset(cue: SoundCue, index: AssetIndex) -> str | None:
    """Best tag-overlap match for a cue, or None when nothing overlaps.

    Ties break by smallest |asset duration - cue duration|, then by
    lexicographic asset id; a cue without a duration skips the duration
    tie-break.
    """
    keywords = {cue.event.lower()}
    best = None
    for entry in index.entries:
        overlap = len(keywords & set(entry.tags))
        if overlap == 0:
            continue
        dur_gap = (abs(entry.duration_s - cue.duration_s)
                   if cue.duration_s is not None else 0.0)
        rank = (-overlap, dur_gap, entry.asset_id)
        if best is None or rank < best[0]:
            best = (rank, entry.asset_id)
    return best[1] if best else None


def load_asset_audio(cue_id: str, entry: AssetEntry,
                     sample_rate: int = 48000) -> CueAudio:
    """Load an asset as a normalized mono point source at the canonical rate."""
    buf = read_wav(entry.path).to_mono()
    if buf.sample_rate != sample_rate:
        buf = resample(buf, sample_rate)
    samples = normalize_cue(buf.samples[0])
    return CueAudio(cue_id=cue_id,
                    buffer=buf.__class__(sample_rate, freeze(samples.reshape(1, -1))),
                    provenance=("retrieved", entry.asset_id))
