"""Deterministic lexicon analysis over parsed scripts.

Replaces the usual NLP stack with rule tables: event keywords plus spatial
prepositions drive cue extraction, a valence lexicon drives sentiment. Both
lexicons ship as JSON and can be overridden per project.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from .model import CueAnchor, ScriptDoc, Segment, SoundCue, SpatialSpec

_WORD_STRIP = re.compile(r"^\W+|\W+$")

PROSE_CONFIDENCE = 0.5


def normalize_word(word: str) -> str:
    return _WORD_STRIP.sub("", word).lower()


def _data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text("utf-8")


@dataclass(frozen=True)
class CueLexicon:
    """Event keywords, direction/distance phrases, and distance tiers."""

    events: dict            # event -> {"duration_s": float, "aliases": [...]}
    directions: dict        # phrase -> {"azimuth": deg} and/or {"elevation": deg}
    distances: dict         # phrase -> tier name
    distance_tiers: dict    # tier name -> meters

    @classmethod
    def load_default(cls) -> "CueLexicon":
        return cls.from_dict(json.loads(_data_text("cue_lexicon.json")))

    @classmethod
    def from_dict(cls, d: dict) -> "CueLexicon":
        return cls(events=d["events"], directions=d["directions"],
                   distances=d["distances"], distance_tiers=d["distance_tiers"])

    def event_for_word(self, word: str):
        for event, info in self.events.items():
            if word == event or word in info.get("aliases", ()):
                return event
        if word.endswith("s"):  # naive plural fold
            singular = word[:-1]
            for event, info in self.events.items():
                if singular == event or singular in info.get("aliases", ()):
                    return event
        return None

    def default_duration(self, event: str) -> float:
        return float(self.events[event]["duration_s"])


@dataclass(frozen=True)
class SentimentLexicon:
    valence: dict  # word -> value in [-1, 1]

    @classmethod
    def load_default(cls) -> "SentimentLexicon":
        return cls(valence=json.loads(_data_text("sentiment_lexicon.json")))

    def __post_init__(self):
        if not self.valence:
            raise ValueError("sentiment lexicon must be nonempty")


def sentiment_score(segment: Segment, lexicon: SentimentLexicon) -> float:
    """Mean valence of matched words, 0 when none match, clamped to [-1, 1]."""
    hits = [lexicon.valence[w] for w in map(normalize_word, segment.words)
            if w in lexicon.valence]
    if not hits:
        return 0.0
    return float(min(1.0, max(-1.0, sum(hits) / len(hits))))


def _phrase_positions(words: list[str], phrase: str):
    """Start indices where the normalized phrase occurs as consecutive words."""
    target = phrase.split()
    n = len(target)
    return [i for i in range(len(words) - n + 1) if words[i:i + n] == target]


def _nearest(positions: list[int], anchor: int):
    """Nearest position preferring matches after the anchor word."""
    after = [p for p in positions if p >= anchor]
    if after:
        return min(after)
    return max(positions) if positions else None


def extract_cues_prose(doc: ScriptDoc, lexicon: CueLexicon) -> list[SoundCue]:
    """Scan segment prose for cue-worthy events with spatial language.

    Deterministic: cues come out in (segment, word) order, anchored at the
    triggering word. A prose cue is suppressed when a tagged cue already
    sits at the same anchor or carries the same event in the same segment.
    """
    taken_anchors = {(c.anchor.segment, c.anchor.word)
                     for c in doc.cues if not c.anchor.is_absolute}
    taken_events = {(c.anchor.segment, c.event)
                    for c in doc.cues if not c.anchor.is_absolute}

    out: list[SoundCue] = []
    for seg in doc.segments:
        words = [normalize_word(w) for w in seg.words]
        dir_hits = {phrase: _phrase_positions(words, phrase)
                    for phrase in lexicon.directions}
        dist_hits = {phrase: _phrase_positions(words, phrase)
                     for phrase in lexicon.distances}
        for word_idx, word in enumerate(words):
            event = lexicon.event_for_word(word)
            if event is None:
                continue
            if (seg.index, word_idx) in taken_anchors:
                continue
            if (seg.index, event) in taken_events:
                continue

            azimuth, elevation = 0.0, 0.0
            best_dir = None
            for phrase, positions in dir_hits.items():
                pos = _nearest(positions, word_idx)
                if pos is None:
                    continue
                rank = (pos < word_idx, abs(pos - word_idx), phrase)
                if best_dir is None or rank < best_dir[0]:
                    best_dir = (rank, phrase)
            if best_dir is not None:
                rule = lexicon.directions[best_dir[1]]
                azimuth = float(rule.get("azimuth", 0.0))
                elevation = float(rule.get("elevation", 0.0))

            tier = "mid"
            best_dist = None
            for phrase, positions in dist_hits.items():
                pos = _nearest(positions, word_idx)
                if pos is None:
                    continue
                rank = (pos < word_idx, abs(pos - word_idx), phrase)
                if best_dist is None or rank < best_dist[0]:
                    best_dist = (rank, phrase)
            if best_dist is not None:
                tier = lexicon.distances[best_dist[1]]

            spatial = SpatialSpec(azimuth=azimuth, elevation=elevation,
                                  distance=float(lexicon.distance_tiers[tier]))
            out.append(SoundCue(
                cue_id=f"p{len(out):03d}",
                event=event,
                anchor=CueAnchor(segment=seg.index, word=word_idx),
                spatial=spatial,
                duration_s=lexicon.default_duration(event),
                source="auto",
                confidence=PROSE_CONFIDENCE,
            ))
            taken_events.add((seg.index, event))
    return out
