"""Word-to-phoneme mapping: pronouncing lexicon with letter-to-sound fallback.

Lexicon file format: one `WORD  PH1 PH2 ...` per line, ARPAbet symbols,
CMU-dict layout (stress digits are stripped on load). Misses fall back to
the rule table below, so phonemize never returns an empty sequence for a
nonempty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

VOWELS = {"AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH", "IY",
          "OW", "OY", "UH", "UW"}
CONSONANTS = {"B", "CH", "D", "DH", "F", "G", "HH", "JH", "K", "L", "M", "N",
              "NG", "P", "R", "S", "SH", "T", "TH", "V", "W", "Y", "Z", "ZH"}
ARPABET = VOWELS | CONSONANTS

_STRESS = re.compile(r"\d")
_NORM = re.compile(r"[^a-z']")

# letter-to-sound rules: longest match first at each position
_LTS_DIGRAPHS = {
    "tch": ("CH",),
    "igh": ("AY",),
    "th": ("TH",), "sh": ("SH",), "ch": ("CH",), "ph": ("F",), "wh": ("W",),
    "ck": ("K",), "ng": ("NG",), "qu": ("K", "W"),
    "ee": ("IY",), "ea": ("IY",), "oo": ("UW",), "ou": ("AW",), "ow": ("AW",),
    "ai": ("EY",), "ay": ("EY",), "oa": ("OW",), "oi": ("OY",), "oy": ("OY",),
    "au": ("AO",), "aw": ("AO",),
    "ar": ("AA", "R"), "or": ("AO", "R"), "er": ("ER",), "ir": ("ER",),
    "ur": ("ER",),
}
_LTS_SINGLES = {
    "a": ("AE",), "b": ("B",), "c": ("K",), "d": ("D",), "e": ("EH",),
    "f": ("F",), "g": ("G",), "h": ("HH",), "i": ("IH",), "j": ("JH",),
    "k": ("K",), "l": ("L",), "m": ("M",), "n": ("N",), "o": ("AO",),
    "p": ("P",), "q": ("K",), "r": ("R",), "s": ("S",), "t": ("T",),
    "u": ("AH",), "v": ("V",), "w": ("W",), "x": ("K", "S"), "y": ("IH",),
    "z": ("Z",), "'": (),
}
_LTS_VOWEL_LETTERS = set("aeiou")


def normalize_token(word: str) -> str:
    """Lowercase and strip anything that is not a letter or apostrophe."""
    return _NORM.sub("", word.lower())


@dataclass(frozen=True)
class PronouncingLexicon:
    entries: dict  # normalized word -> tuple of ARPAbet symbols

    @classmethod
    def load_default(cls) -> "PronouncingLexicon":
        text = resources.files(__package__).joinpath("data", "lexicon.txt").read_text("utf-8")
        return cls.from_text(text)

    @classmethod
    def from_text(cls, text: str) -> "PronouncingLexicon":
        entries = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith(";"):
                continue
            fields = line.split()
            phones = tuple(_STRESS.sub("", p) for p in fields[1:])
            bad = [p for p in phones if p not in ARPABET]
            if bad:
                raise ValueError(f"unknown ARPAbet symbol(s) {bad} in line {line!r}")
            entries[fields[0].lower()] = phones
        return cls(entries=entries)


def letter_to_sound(word: str) -> tuple[str, ...]:
    """Rule-table fallback for out-of-lexicon words."""
    if (len(word) > 3 and word.endswith("e")
            and any(c in _LTS_VOWEL_LETTERS for c in word[:-1])):
        word = word[:-1]  # silent final e
    out: list[str] = []
    i = 0
    while i < len(word):
        matched = False
        for span in (3, 2):
            chunk = word[i:i + span]
            if chunk in _LTS_DIGRAPHS:
                out.extend(_LTS_DIGRAPHS[chunk])
                i += span
                matched = True
                break
        if matched:
            continue
        c = word[i]
        if c == "y" and i == 0:
            out.append("Y")
        else:
            out.extend(_LTS_SINGLES.get(c, ()))
        i += 1
    return tuple(out)


def phonemize(word: str, lexicon: PronouncingLexicon) -> tuple[str, ...]:
    """ARPAbet sequence for one word; never empty for a nonempty word."""
    norm = normalize_token(word)
    if not norm:
        raise ValueError(f"word {word!r} is empty after normalization")
    hit = lexicon.entries.get(norm)
    if hit:
        return hit
    phones = letter_to_sound(norm)
    return phones if phones else ("AH",)
