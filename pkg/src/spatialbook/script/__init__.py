"""Script parsing, narrative IR, and lexicon analysis."""

from .analysis import (CueLexicon, SentimentLexicon, extract_cues_prose,
                       normalize_word, sentiment_score)
from .model import (CueAnchor, Diagnostic, ScriptDoc, Segment, SoundCue,
                    SpatialSpec, TrajectoryPoint, VoiceProfile, doc_from_dict,
                    doc_to_dict, validate)
from .parser import parse_script, serialize

__all__ = [
    "CueAnchor", "CueLexicon", "Diagnostic", "ScriptDoc", "Segment",
    "SentimentLexicon", "SoundCue", "SpatialSpec", "TrajectoryPoint",
    "VoiceProfile", "doc_from_dict", "doc_to_dict", "extract_cues_prose",
    "normalize_word", "parse_script", "sentiment_score", "serialize",
    "validate",
]
