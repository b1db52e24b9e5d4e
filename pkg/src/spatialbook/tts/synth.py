"""Built-in deterministic narrator.

Per-phoneme formant synthesis: vowels and sonorants are an impulse-train
source through two resonators, consonants are shaped noise bursts. Fidelity
is not the point; the contract is deterministic timing with audible word
boundaries, and word timestamps produced by construction from the schedule
the synthesizer itself follows.
"""

from __future__ import annotations

import zlib

import numpy as np
from scipy.signal import lfilter

from ..audio import AudioBuffer, freeze
from ..script.model import Segment, VoiceProfile
from .phonemes import PronouncingLexicon, normalize_token, phonemize
from .voice import IDENTITY_PROSODY, ProsodyParams, TimedTranscript, TimedWord

# relative duration weights per phoneme (normalized to the wpm budget)
_DUR = {
    "IY": 0.11, "IH": 0.09, "EH": 0.10, "AE": 0.12, "AA": 0.12, "AO": 0.12,
    "AH": 0.09, "UH": 0.09, "UW": 0.11, "ER": 0.11, "EY": 0.13, "AY": 0.14,
    "OW": 0.13, "AW": 0.14, "OY": 0.15,
    "P": 0.055, "T": 0.055, "K": 0.055, "B": 0.055, "D": 0.055, "G": 0.055,
    "CH": 0.09, "JH": 0.09,
    "F": 0.08, "V": 0.08, "TH": 0.08, "DH": 0.08, "S": 0.09, "Z": 0.09,
    "SH": 0.09, "ZH": 0.09, "HH": 0.07,
    "M": 0.07, "N": 0.07, "NG": 0.08, "L": 0.07, "R": 0.07, "W": 0.07,
    "Y": 0.07,
}

_VOWEL_FORMANTS = {
    "IY": (270, 2290), "IH": (390, 1990), "EH": (530, 1840), "AE": (660, 1720),
    "AA": (730, 1090), "AO": (570, 840), "AH": (640, 1190), "UH": (440, 1020),
    "UW": (300, 870), "ER": (490, 1350), "EY": (480, 2100), "AY": (660, 1700),
    "OW": (450, 900), "AW": (700, 1100), "OY": (500, 1300),
}
_SONORANT_FORMANTS = {
    "M": (280, 900), "N": (280, 1700), "NG": (280, 2300), "L": (380, 1200),
    "R": (420, 1300), "W": (300, 700), "Y": (300, 2200),
}
# center frequency, bandwidth, voiced flag
_FRICATIVES = {
    "S": (6500, 2000, False), "SH": (3000, 1500, False), "F": (4500, 3000, False),
    "TH": (5000, 3000, False), "HH": (1500, 2000, False), "V": (4000, 2500, True),
    "Z": (6000, 2000, True), "ZH": (3000, 1500, True), "DH": (4500, 2500, True),
}
_STOPS = {
    "P": (1500, False), "B": (1200, True), "T": (4000, False), "D": (3500, True),
    "K": (2200, False), "G": (2000, True), "CH": (3200, False), "JH": (3000, True),
}

_WORD_GAP = 0.06
_SENTENCE_GAP = 0.20
_CLAUSE_GAP = 0.12
_PHONEME_PEAK = 0.35


def _gap_after(token: str) -> float:
    if token and token[-1] in ".!?":
        return _SENTENCE_GAP
    if token and token[-1] in ",;:":
        return _CLAUSE_GAP
    return _WORD_GAP


def plan_transcript(seg: Segment, voice: VoiceProfile,
                    prosody: ProsodyParams = IDENTITY_PROSODY,
                    lexicon: PronouncingLexicon | None = None) -> TimedTranscript:
    """Word schedule the synthesizer will follow, without rendering audio.

    The whole segment is normalized so its total duration (including gaps)
    is exactly word_count * 60 / (rate_wpm * rate_scale) seconds.
    """
    lexicon = lexicon or _default_lexicon()
    tokens = [t for t in seg.text.split() if normalize_token(t)]
    if not tokens:
        raise ValueError(f"segment {seg.index} has no synthesizable words")
    phones = [phonemize(t, lexicon) for t in tokens]
    raw_durs = [sum(_DUR[p] for p in ph) for ph in phones]
    raw_gaps = [_gap_after(t) for t in tokens]
    raw_total = sum(raw_durs) + sum(raw_gaps)
    target_total = len(tokens) * 60.0 / (voice.rate * prosody.rate_scale)
    scale = target_total / raw_total

    entries = []
    t = 0.0
    for token, ph, dur, gap in zip(tokens, phones, raw_durs, raw_gaps):
        entries.append(TimedWord(word=token, onset_s=t, duration_s=dur * scale,
                                 phonemes=ph))
        t += (dur + gap) * scale
    return TimedTranscript(tuple(entries))


def _resonate(x: np.ndarray, fs: int, freq: float, bw: float) -> np.ndarray:
    """Two-pole resonator normalized to unit gain at its center frequency."""
    freq = min(freq, 0.45 * fs)
    r = np.exp(-np.pi * bw / fs)
    w = 2 * np.pi * freq / fs
    a = [1.0, -2 * r * np.cos(w), r * r]
    g = (1 - r) * np.sqrt(1 - 2 * r * np.cos(2 * w) + r * r)
    return lfilter([g], a, x)


def _pulse_train(n: int, fs: int, f0: float) -> np.ndarray:
    out = np.zeros(n)
    period = fs / f0
    positions = np.arange(0, n, period)
    out[positions.astype(int)] = 1.0
    return out


def _edge_envelope(n: int, fs: int, edge_s: float = 0.005) -> np.ndarray:
    env = np.ones(n)
    e = min(int(edge_s * fs), n // 2)
    if e > 0:
        ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(e) / e)
        env[:e] = ramp
        env[-e:] = ramp[::-1]
    return env


def _render_phoneme(ph: str, n: int, fs: int, f0: float,
                    rng: np.random.Generator) -> np.ndarray:
    if n <= 0:
        return np.zeros(0)
    if ph in _VOWEL_FORMANTS or ph in _SONORANT_FORMANTS:
        f1, f2 = _VOWEL_FORMANTS.get(ph) or _SONORANT_FORMANTS[ph]
        src = _pulse_train(n, fs, f0)
        y = _resonate(src, fs, f1, 80.0) + 0.5 * _resonate(src, fs, f2, 120.0)
    elif ph in _STOPS:
        center, voiced = _STOPS[ph]
        y = np.zeros(n)
        burst_start = int(0.4 * n)
        burst = rng.standard_normal(n - burst_start)
        burst *= np.exp(-np.arange(burst.size) / (0.012 * fs))
        y[burst_start:] = _resonate(burst, fs, center, 1800.0)
        if voiced:
            y += 0.25 * _resonate(_pulse_train(n, fs, f0), fs, 250.0, 100.0)
    elif ph in _FRICATIVES:
        center, bw, voiced = _FRICATIVES[ph]
        y = _resonate(rng.standard_normal(n), fs, center, bw)
        if voiced:
            y = 0.7 * y + 0.5 * _resonate(_pulse_train(n, fs, f0), fs, 300.0, 100.0)
    else:
        y = np.zeros(n)

    peak = np.max(np.abs(y))
    if peak > 0:
        y *= _PHONEME_PEAK / peak
    return y * _edge_envelope(n, fs)


def synthesize_segment(seg: Segment, voice: VoiceProfile,
                       prosody: ProsodyParams = IDENTITY_PROSODY,
                       sample_rate: int = 48000,
                       lexicon: PronouncingLexicon | None = None,
                       ) -> tuple[AudioBuffer, TimedTranscript]:
    """Render one segment; deterministic for fixed (seg, voice, prosody, seed)."""
    lexicon = lexicon or _default_lexicon()
    transcript = plan_transcript(seg, voice, prosody, lexicon)
    # the schedule is normalized, so total duration is exactly the wpm budget
    total_s = len(transcript) * 60.0 / (voice.rate * prosody.rate_scale)
    n_total = int(round(total_s * sample_rate))
    out = np.zeros(n_total)
    rng = np.random.default_rng(
        (voice.timbre_seed & 0xFFFFFFFF, zlib.crc32(seg.text.encode("utf-8"))))

    f0_base = voice.base_pitch * prosody.pitch_scale
    for entry in transcript:
        weights = np.array([_DUR[p] for p in entry.phonemes])
        bounds = entry.onset_s + entry.duration_s * np.concatenate(
            ([0.0], np.cumsum(weights) / weights.sum()))
        n_ph = len(entry.phonemes)
        for k, ph in enumerate(entry.phonemes):
            a = int(round(bounds[k] * sample_rate))
            b = int(round(bounds[k + 1] * sample_rate))
            b = min(b, n_total)
            decline = 1.05 - 0.1 * (k / max(1, n_ph - 1))
            chunk = _render_phoneme(ph, b - a, sample_rate, f0_base * decline, rng)
            out[a:b] += chunk

    out *= 0.6 * prosody.intensity_scale
    buf = AudioBuffer(sample_rate, freeze(out.reshape(1, -1)))
    transcript.check_against_duration(buf.duration_s)
    return buf, transcript


_LEXICON_CACHE: PronouncingLexicon | None = None


def _default_lexicon() -> PronouncingLexicon:
    global _LEXICON_CACHE
    if _LEXICON_CACHE is None:
        _LEXICON_CACHE = PronouncingLexicon.load_default()
    return _LEXICON_CACHE
