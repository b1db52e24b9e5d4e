"""Voice-facing types: prosody parameters and timed transcripts."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..script.model import VoiceProfile  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class ProsodyParams:
    pitch_scale: float = 1.0
    rate_scale: float = 1.0
    intensity_scale: float = 1.0

    def __post_init__(self):
        if min(self.pitch_scale, self.rate_scale, self.intensity_scale) <= 0:
            raise ValueError("prosody scales must be positive")


IDENTITY_PROSODY = ProsodyParams()


def apply_prosody(sentiment: float, base: ProsodyParams = IDENTITY_PROSODY) -> ProsodyParams:
    """Map a sentiment score in [-1, 1] onto voice-parameter scales.

    Monotone in sentiment: brighter text raises pitch and pace slightly,
    any strong emotion (either sign) raises intensity.
    """
    if not (-1.0 <= sentiment <= 1.0):
        raise ValueError(f"sentiment {sentiment} outside [-1, 1]")
    return ProsodyParams(
        pitch_scale=base.pitch_scale * (1.0 + 0.1 * sentiment),
        rate_scale=base.rate_scale * (1.0 + 0.05 * sentiment),
        intensity_scale=base.intensity_scale * (1.0 + 0.1 * abs(sentiment)),
    )


@dataclass(frozen=True)
class TimedWord:
    word: str
    onset_s: float
    duration_s: float
    phonemes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.onset_s < 0:
            raise ValueError(f"word onset {self.onset_s} < 0")
        if self.duration_s <= 0:
            raise ValueError(f"word duration {self.duration_s} <= 0")
        object.__setattr__(self, "phonemes", tuple(self.phonemes))

    @property
    def end_s(self) -> float:
        return self.onset_s + self.duration_s


@dataclass(frozen=True)
class TimedTranscript:
    """Word onsets/durations aligned to a narration buffer."""

    entries: tuple[TimedWord, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        for a, b in zip(entries, entries[1:]):
            if b.onset_s <= a.onset_s:
                raise ValueError(
                    f"onsets must be strictly increasing ({a.onset_s} -> {b.onset_s})")
            if a.end_s > b.onset_s + 1e-9:
                raise ValueError(
                    f"word ending at {a.end_s:.4f}s overlaps next onset {b.onset_s:.4f}s")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def end_s(self) -> float:
        return self.entries[-1].end_s if self.entries else 0.0

    def check_against_duration(self, duration_s: float) -> None:
        if self.entries and self.end_s > duration_s + 1e-9:
            raise ValueError(
                f"transcript ends at {self.end_s:.4f}s beyond buffer "
                f"duration {duration_s:.4f}s")

    def shifted(self, offset_s: float) -> "TimedTranscript":
        return TimedTranscript(tuple(
            TimedWord(w.word, w.onset_s + offset_s, w.duration_s, w.phonemes)
            for w in self.entries))
