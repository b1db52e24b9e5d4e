"""Narrative IR: validated script documents, segments, cues, spatial specs."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

ENVIRONMENT_PRESETS = ("room", "hall", "outdoor", "cave")
CUE_SOURCES = ("retrieved", "procedural", "auto")


@dataclass(frozen=True)
class Diagnostic:
    """One structured problem found while parsing or validating."""

    code: str
    message: str
    line: Optional[int] = None
    col: Optional[int] = None

    def __str__(self):
        loc = f"{self.line}:{self.col}: " if self.line is not None else ""
        return f"{loc}{self.code}: {self.message}"


@dataclass(frozen=True)
class VoiceProfile:
    """A narrator/character voice declared in the script header."""

    voice_id: str
    base_pitch: float = 120.0   # Hz, 50-400
    rate: float = 150.0         # words per minute, 60-300
    timbre_seed: int = 0

    def __post_init__(self):
        if not (50 <= self.base_pitch <= 400):
            raise ValueError(f"base_pitch {self.base_pitch} outside 50-400 Hz")
        if not (60 <= self.rate <= 300):
            raise ValueError(f"rate {self.rate} outside 60-300 wpm")


@dataclass(frozen=True)
class Segment:
    index: int
    kind: str                   # "narration" | "dialogue"
    voice_id: str
    text: str
    sentiment: float = 0.0      # [-1, 1], filled by analysis

    def __post_init__(self):
        if self.kind not in ("narration", "dialogue"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if not self.text:
            raise ValueError("segment text must be nonempty")
        if not (-1.0 <= self.sentiment <= 1.0):
            raise ValueError(f"sentiment {self.sentiment} outside [-1, 1]")

    @property
    def words(self) -> list[str]:
        return self.text.split()


@dataclass(frozen=True)
class TrajectoryPoint:
    time_s: float
    azimuth: float
    elevation: float
    distance: float


@dataclass(frozen=True)
class SpatialSpec:
    """Where a cue sits relative to the listener.

    Azimuth is degrees in [-180, 180], 0 = front, positive = listener's
    left (the ambisonic Y axis). Elevation in [-90, 90], distance meters.
    """

    azimuth: float = 0.0
    elevation: float = 0.0
    distance: float = 2.0
    trajectory: Optional[tuple[TrajectoryPoint, ...]] = None
    environment: str = "room"

    def __post_init__(self):
        if not (-180.0 <= self.azimuth <= 180.0):
            raise ValueError(f"azimuth {self.azimuth} outside [-180, 180]")
        if not (-90.0 <= self.elevation <= 90.0):
            raise ValueError(f"elevation {self.elevation} outside [-90, 90]")
        if self.distance <= 0:
            raise ValueError(f"distance {self.distance} must be > 0")
        if self.environment not in ENVIRONMENT_PRESETS:
            raise ValueError(f"unknown environment {self.environment!r}")
        if self.trajectory is not None:
            traj = tuple(self.trajectory)
            if not traj:
                raise ValueError("trajectory must have at least one keyframe")
            if traj[0].time_s != 0.0:
                raise ValueError("trajectory must start at time 0")
            times = [p.time_s for p in traj]
            if any(b <= a for a, b in zip(times, times[1:])):
                raise ValueError("trajectory keyframe times must be strictly increasing")
            for p in traj:
                if not (-180.0 <= p.azimuth <= 180.0 and -90.0 <= p.elevation <= 90.0
                        and p.distance > 0):
                    raise ValueError(f"trajectory keyframe out of range: {p}")
            object.__setattr__(self, "trajectory", traj)


@dataclass(frozen=True)
class CueAnchor:
    """Either (segment, word) or an absolute time; exactly one is set."""

    segment: Optional[int] = None
    word: Optional[int] = None
    time_s: Optional[float] = None

    def __post_init__(self):
        word_anchored = self.segment is not None and self.word is not None
        time_anchored = self.time_s is not None
        if word_anchored == time_anchored:
            raise ValueError("anchor must be (segment, word) XOR absolute time")
        if time_anchored and self.time_s < 0:
            raise ValueError("absolute anchor time must be >= 0")

    @property
    def is_absolute(self) -> bool:
        return self.time_s is not None


@dataclass(frozen=True)
class SoundCue:
    cue_id: str
    event: str
    anchor: CueAnchor
    spatial: SpatialSpec = field(default_factory=SpatialSpec)
    duration_s: Optional[float] = None   # None = asset-default
    source: str = "auto"
    confidence: float = 1.0              # tagged 1.0, prose-extracted 0.5

    def __post_init__(self):
        if self.duration_s is not None and self.duration_s <= 0:
            raise ValueError(f"duration_s {self.duration_s} must be > 0")
        if self.source not in CUE_SOURCES:
            raise ValueError(f"unknown cue source {self.source!r}")


@dataclass(frozen=True)
class ScriptDoc:
    title: str
    voices: dict[str, VoiceProfile]
    segments: tuple[Segment, ...]
    cues: tuple[SoundCue, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "cues", tuple(self.cues))

    def with_cues(self, cues) -> "ScriptDoc":
        return replace(self, cues=tuple(cues))

    def with_segments(self, segments) -> "ScriptDoc":
        return replace(self, segments=tuple(segments))


def validate(doc: ScriptDoc) -> list[Diagnostic]:
    """Empty list iff all ScriptDoc invariants hold; one diagnostic each otherwise."""
    diags: list[Diagnostic] = []
    for pos, seg in enumerate(doc.segments):
        if seg.index != pos:
            diags.append(Diagnostic(
                "segment-order", f"segment at position {pos} has index {seg.index}"))
        if seg.kind == "dialogue" and seg.voice_id not in doc.voices:
            diags.append(Diagnostic(
                "undefined-voice",
                f"segment {pos} speaks with undefined voice {seg.voice_id!r}"))
    seen_ids: set[str] = set()
    for cue in doc.cues:
        if cue.cue_id in seen_ids:
            diags.append(Diagnostic("duplicate-cue-id", f"cue id {cue.cue_id!r} reused"))
        seen_ids.add(cue.cue_id)
        a = cue.anchor
        if not a.is_absolute:
            if not (0 <= a.segment < len(doc.segments)):
                diags.append(Diagnostic(
                    "dangling-anchor",
                    f"cue {cue.cue_id} anchored to segment {a.segment} "
                    f"of a {len(doc.segments)}-segment document"))
            elif not (0 <= a.word < len(doc.segments[a.segment].words)):
                diags.append(Diagnostic(
                    "dangling-anchor",
                    f"cue {cue.cue_id} anchored to word {a.word} of segment "
                    f"{a.segment} ({len(doc.segments[a.segment].words)} words)"))
    return diags


# --- JSON-shaped serialization ----------------------------------------------

def spatial_to_dict(s: SpatialSpec) -> dict:
    return {
        "azimuth": s.azimuth,
        "elevation": s.elevation,
        "distance": s.distance,
        "trajectory": (None if s.trajectory is None else
                       [[p.time_s, p.azimuth, p.elevation, p.distance]
                        for p in s.trajectory]),
        "environment": s.environment,
    }


def spatial_from_dict(d: dict) -> SpatialSpec:
    traj = d.get("trajectory")
    return SpatialSpec(
        azimuth=d.get("azimuth", 0.0),
        elevation=d.get("elevation", 0.0),
        distance=d.get("distance", 2.0),
        trajectory=(None if traj is None else
                    tuple(TrajectoryPoint(*p) for p in traj)),
        environment=d.get("environment", "room"),
    )


def cue_to_dict(c: SoundCue) -> dict:
    anchor = ({"time_s": c.anchor.time_s} if c.anchor.is_absolute else
              {"segment": c.anchor.segment, "word": c.anchor.word})
    return {
        "cue_id": c.cue_id,
        "event": c.event,
        "anchor": anchor,
        "spatial": spatial_to_dict(c.spatial),
        "duration_s": c.duration_s,
        "source": c.source,
        "confidence": c.confidence,
    }


def cue_from_dict(d: dict) -> SoundCue:
    a = d["anchor"]
    anchor = (CueAnchor(time_s=a["time_s"]) if "time_s" in a else
              CueAnchor(segment=a["segment"], word=a["word"]))
    return SoundCue(
        cue_id=d["cue_id"],
        event=d["event"],
        anchor=anchor,
        spatial=spatial_from_dict(d["spatial"]),
        duration_s=d.get("duration_s"),
        source=d.get("source", "auto"),
        confidence=d.get("confidence", 1.0),
    )


def doc_to_dict(doc: ScriptDoc) -> dict:
    return {
        "title": doc.title,
        "voices": {vid: {"voice_id": v.voice_id, "base_pitch": v.base_pitch,
                         "rate": v.rate, "timbre_seed": v.timbre_seed}
                   for vid, v in sorted(doc.voices.items())},
        "segments": [{"index": s.index, "kind": s.kind, "voice_id": s.voice_id,
                      "text": s.text, "sentiment": s.sentiment}
                     for s in doc.segments],
        "cues": [cue_to_dict(c) for c in doc.cues],
    }


def doc_from_dict(d: dict) -> ScriptDoc:
    voices = {vid: VoiceProfile(**v) for vid, v in d["voices"].items()}
    segments = tuple(Segment(**s) for s in d["segments"])
    cues = tuple(cue_from_dict(c) for c in d["cues"])
    return ScriptDoc(title=d["title"], voices=voices, segments=segments, cues=cues)
