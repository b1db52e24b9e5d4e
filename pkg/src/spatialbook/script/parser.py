"""Script-format parser.

Format (UTF-8 text):
- header lines: `#title <text>` and `#voice <id> pitch=<Hz> rate=<wpm> [seed=<int>]`
- one blank-line-separated paragraph per segment
- dialogue paragraphs start with `@<voice-id>:`
- inline cue tags `[sfx: <event> | az=<deg> el=<deg> dist=<m> env=<preset>
  at=<word-index|t=<sec>> dur=<sec> src=<retrieved|procedural|auto>
  traj=<t:az:el:dist;...>]`

The parser recovers per line and collects every diagnostic; it raises
ScriptParseError (carrying all of them) only after the full document has
been scanned.
"""

from __future__ import annotations

import json
import re

from ..errors import ScriptParseError
from .model import (CueAnchor, Diagnostic, ScriptDoc, Segment, SoundCue,
                    SpatialSpec, TrajectoryPoint, VoiceProfile, doc_to_dict)

_TAG_RE = re.compile(r"\[sfx:([^\]]*)\]")
_VOICE_RE = re.compile(r"^@([A-Za-z_][\w-]*):\s*(.*)$", re.S)

DEFAULT_NARRATOR = "narrator"


def serialize(doc: ScriptDoc) -> str:
    """Serialize the IR to its documented JSON schema."""
    return json.dumps(doc_to_dict(doc), indent=2)


class _Parser:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        self.diags: list[Diagnostic] = []
        self.voices: dict[str, VoiceProfile] = {}
        self.title = ""
        self.segments: list[Segment] = []
        self.cues: list[SoundCue] = []
        # paragraph accumulator: list of (line_no, line_text)
        self.para: list[tuple[int, str]] = []

    def error(self, code: str, msg: str, line: int, col: int = 1):
        self.diags.append(Diagnostic(code, msg, line, col))

    # --- header ---------------------------------------------------------

    def header_line(self, line_no: int, line: str):
        parts = line.split()
        directive = parts[0]
        if directive == "#title":
            self.title = line[len("#title"):].strip()
        elif directive == "#voice":
            self.voice_line(line_no, parts[1:])
        else:
            self.error("syntax", f"unknown directive {directive!r}", line_no)

    def voice_line(self, line_no: int, fields: list[str]):
        if not fields:
            self.error("syntax", "#voice needs an id", line_no)
            return
        vid = fields[0]
        kwargs = {"voice_id": vid}
        key_map = {"pitch": "base_pitch", "rate": "rate", "seed": "timbre_seed"}
        for tok in fields[1:]:
            if "=" not in tok:
                self.error("syntax", f"expected key=value in #voice, got {tok!r}", line_no)
                return
            key, val = tok.split("=", 1)
            if key not in key_map:
                self.error("syntax", f"unknown #voice key {key!r}", line_no)
                return
            try:
                kwargs[key_map[key]] = int(val) if key == "seed" else float(val)
            except ValueError:
                self.error("syntax", f"bad number {val!r} for #voice {key}", line_no)
                return
        if vid in self.voices:
            self.error("duplicate-voice", f"voice {vid!r} redefined", line_no)
            return
        try:
            self.voices[vid] = VoiceProfile(**kwargs)
        except ValueError as exc:
            self.error("voice-range", str(exc), line_no)

    # --- cue tags ---------------------------------------------------------

    def parse_tag(self, body: str, line_no: int, col: int, words_before: int,
                  segment_index: int):
        parts = body.split("|", 1)
        event = parts[0].strip()
        if not event or not re.fullmatch(r"[\w-]+", event):
            self.error("malformed-cue", f"bad cue event {event!r}", line_no, col)
            return
        params: dict[str, str] = {}
        if len(parts) == 2:
            for tok in parts[1].split():
                if "=" not in tok:
                    self.error("malformed-cue",
                               f"expected key=value in cue tag, got {tok!r}",
                               line_no, col)
                    return
                key, val = tok.split("=", 1)
                params[key] = val

        def number(key: str, default=None):
            if key not in params:
                return default
            try:
                return float(params[key])
            except ValueError:
                raise _TagError(f"bad number {params[key]!r} for {key}")

        try:
            spatial_kwargs = {}
            if "az" in params:
                spatial_kwargs["azimuth"] = number("az")
            if "el" in params:
                spatial_kwargs["elevation"] = number("el")
            if "dist" in params:
                spatial_kwargs["distance"] = number("dist")
            if "env" in params:
                spatial_kwargs["environment"] = params["env"]
            if "traj" in params:
                spatial_kwargs["trajectory"] = self._trajectory(params["traj"])
            duration = number("dur")
            source = params.get("src", "auto")

            anchor_raw = params.get("at")
            if anchor_raw is None:
                anchor = CueAnchor(segment=segment_index,
                                   word=max(0, words_before - 1))
            elif anchor_raw.startswith("t="):
                try:
                    anchor = CueAnchor(time_s=float(anchor_raw[2:]))
                except ValueError:
                    raise _TagError(f"bad absolute time {anchor_raw!r}")
            else:
                try:
                    anchor = CueAnchor(segment=segment_index, word=int(anchor_raw))
                except ValueError:
                    raise _TagError(f"bad word index {anchor_raw!r}")

            unknown = set(params) - {"az", "el", "dist", "env", "at", "dur", "src", "traj"}
            if unknown:
                raise _TagError(f"unknown cue key(s) {sorted(unknown)}")

            spatial = SpatialSpec(**spatial_kwargs)
            cue = SoundCue(cue_id=f"c{len(self.cues):03d}", event=event,
                           anchor=anchor, spatial=spatial, duration_s=duration,
                           source=source, confidence=1.0)
        except _TagError as exc:
            self.error("malformed-cue", str(exc), line_no, col)
            return
        except ValueError as exc:
            # range violations from SpatialSpec/SoundCue construction
            self.error("spatial-range", str(exc), line_no, col)
            return
        self.cues.append(cue)

    @staticmethod
    def _trajectory(raw: str) -> tuple[TrajectoryPoint, ...]:
        points = []
        for part in raw.split(";"):
            fields = part.split(":")
            if len(fields) != 4:
                raise _TagError(f"trajectory keyframe {part!r} needs t:az:el:dist")
            try:
                points.append(TrajectoryPoint(*(float(f) for f in fields)))
            except ValueError:
                raise _TagError(f"bad number in trajectory keyframe {part!r}")
        return tuple(points)

    # --- paragraphs -------------------------------------------------------

    def flush_paragraph(self):
        if not self.para:
            return
        first_line_no = self.para[0][0]
        segment_index = len(self.segments)
        kind, voice_id = "narration", DEFAULT_NARRATOR

        lines = list(self.para)
        self.para = []
        m = _VOICE_RE.match(lines[0][1])
        if m:
            kind, voice_id = "dialogue", m.group(1)
            lines[0] = (lines[0][0], m.group(2))
            if voice_id not in self.voices:
                self.error("unknown-voice",
                           f"dialogue references undefined voice {voice_id!r}",
                           lines[0][0])

        words: list[str] = []
        pending_tags: list[tuple[str, int, int, int]] = []  # body, line, col, words_before
        for line_no, line in lines:
            pos = 0
            for m in _TAG_RE.finditer(line):
                words.extend(line[pos:m.start()].split())
                pending_tags.append((m.group(1), line_no, m.start() + 1, len(words)))
                pos = m.end()
            rest = line[pos:]
            if "[sfx:" in rest:
                self.error("malformed-cue", "unterminated cue tag", line_no,
                           rest.index("[sfx:") + pos + 1)
                rest = rest[:rest.index("[sfx:")]
            words.extend(rest.split())

        text = " ".join(words)
        if not text:
            # paragraph consisted only of tags; cues still need a segment anchor
            self.error("syntax", "paragraph has cue tags but no text", first_line_no)
            return
        self.segments.append(Segment(index=segment_index, kind=kind,
                                     voice_id=voice_id, text=text))
        for body, line_no, col, words_before in pending_tags:
            self.parse_tag(body, line_no, col, words_before, segment_index)

    # --- driver -----------------------------------------------------------

    def run(self) -> ScriptDoc:
        for line_no, line in enumerate(self.lines, start=1):
            stripped = line.strip()
            if stripped.startswith("#"):
                self.header_line(line_no, stripped)
            elif not stripped:
                self.flush_paragraph()
            else:
                self.para.append((line_no, stripped))
        self.flush_paragraph()

        if not self.segments:
            self.error("no-segments", "document contains no segments", None)
        if (DEFAULT_NARRATOR not in self.voices
                and any(s.kind == "narration" for s in self.segments)):
            self.voices[DEFAULT_NARRATOR] = VoiceProfile(DEFAULT_NARRATOR)

        if self.diags:
            raise ScriptParseError(self.diags)
        return ScriptDoc(title=self.title, voices=self.voices,
                         segments=tuple(self.segments), cues=tuple(self.cues))


class _TagError(Exception):
    pass


def parse_script(text: str) -> ScriptDoc:
    """Parse a script document; raises ScriptParseError with every diagnostic."""
    return _Parser(text).run()
