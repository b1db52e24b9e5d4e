"""Narrator agent: deterministic built-in synthesis plus an external adapter."""

from .adapter import AdapterConfig, external_narrate
from .phonemes import PronouncingLexicon, letter_to_sound, normalize_token, phonemize
from .synth import plan_transcript, synthesize_segment
from .voice import (IDENTITY_PROSODY, ProsodyParams, TimedTranscript, TimedWord,
                    VoiceProfile, apply_prosody)

__all__ = [
    "AdapterConfig", "IDENTITY_PROSODY", "PronouncingLexicon", "ProsodyParams",
    "TimedTranscript", "TimedWord", "VoiceProfile", "apply_prosody",
    "external_narrate", "letter_to_sound", "normalize_token", "phonemize",
    "plan_transcript", "synthesize_segment",
]
