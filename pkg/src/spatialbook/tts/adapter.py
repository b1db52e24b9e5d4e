"""External narrator adapter.

Protocol: the adapter command receives one JSON request on stdin
    {"text", "voice_id", "pitch_hz", "rate_wpm", "seed"}
and must print one JSON response on stdout
    {"wav_path": "...", "words": [{"w", "onset_s", "dur_s"}, ...]}
with exit code 0. Responses are validated against the transcript invariants
before being accepted; every failure mode surfaces as a distinct error.
"""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass

from ..audio import AudioBuffer, read_wav, resample
from ..errors import (AdapterConfigError, AdapterExitError,
                      AdapterSchemaError, AdapterTimestampError)
from ..script.model import Segment, VoiceProfile
from .phonemes import PronouncingLexicon, normalize_token, phonemize
from .voice import TimedTranscript, TimedWord


@dataclass(frozen=True)
class AdapterConfig:
    command: tuple[str, ...]
    timeout_s: float = 120.0
    fallback_to_builtin: bool = True

    def __post_init__(self):
        object.__setattr__(self, "command", tuple(self.command))


def external_narrate(seg: Segment, voice: VoiceProfile,
                     config: AdapterConfig | None,
                     sample_rate: int = 48000,
                     lexicon: PronouncingLexicon | None = None,
                     ) -> tuple[AudioBuffer, TimedTranscript]:
    """Run the configured narrator command for one segment."""
    if config is None or not config.command:
        raise AdapterConfigError("no narrator adapter command configured")

    request = json.dumps({
        "text": seg.text,
        "voice_id": voice.voice_id,
        "pitch_hz": voice.base_pitch,
        "rate_wpm": voice.rate,
        "seed": voice.timbre_seed,
    })
    try:
        proc = subprocess.run(list(config.command), input=request,
                              capture_output=True, text=True,
                              timeout=config.timeout_s)
    except FileNotFoundError as exc:
        raise AdapterConfigError(f"adapter command not found: {exc}") from exc
    except subprocess.TimeoutExpired as exc:
        raise AdapterExitError(f"adapter timed out after {config.timeout_s}s") from exc
    if proc.returncode != 0:
        raise AdapterExitError(
            f"adapter exited {proc.returncode}: {proc.stderr.strip()[:500]}")

    try:
        response = json.loads(proc.stdout)
    except json.JSONDecodeError as exc:
        raise AdapterSchemaError(f"adapter stdout is not JSON: {exc}") from exc
    if not isinstance(response, dict) or "wav_path" not in response \
            or not isinstance(response.get("words"), list):
        raise AdapterSchemaError("response must carry wav_path and a words list")

    words = []
    for i, w in enumerate(response["words"]):
        if not isinstance(w, dict) or not {"w", "onset_s", "dur_s"} <= set(w):
            raise AdapterSchemaError(f"words[{i}] must carry w/onset_s/dur_s")
        phones = ()
        if lexicon is not None and normalize_token(str(w["w"])):
            phones = phonemize(str(w["w"]), lexicon)
        try:
            words.append(TimedWord(word=str(w["w"]), onset_s=float(w["onset_s"]),
                                   duration_s=float(w["dur_s"]), phonemes=phones))
        except (TypeError, ValueError) as exc:
            raise AdapterTimestampError(f"words[{i}]: {exc}") from exc

    try:
        transcript = TimedTranscript(tuple(words))
    except ValueError as exc:
        raise AdapterTimestampError(str(exc)) from exc

    buf = read_wav(response["wav_path"]).to_mono()
    if buf.sample_rate != sample_rate:
        buf = resample(buf, sample_rate)
    try:
        transcript.check_against_duration(buf.duration_s)
    except ValueError as exc:
        raise AdapterTimestampError(str(exc)) from exc
    return buf, transcript
