"""Parser grammar, diagnostics, and round-trip stability."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spatialbook.errors import ScriptParseError
from spatialbook.script import (CueAnchor, ScriptDoc, SoundCue, SpatialSpec,
                                doc_from_dict, parse_script, serialize,
                                validate)


def codes(excinfo):
    return [d.code for d in excinfo.value.diagnostics]


def test_empty_document_errors():
    with pytest.raises(ScriptParseError) as exc:
        parse_script("")
    assert "no-segments" in codes(exc)


def test_single_narration_line():
    doc = parse_script("The rain had stopped.\n")
    assert len(doc.segments) == 1
    assert doc.segments[0].kind == "narration"
    assert doc.segments[0].text == "The rain had stopped."
    assert doc.cues == ()


def test_golden_cue_tag():
    doc = parse_script("He ran. [sfx: footsteps | az=90 dist=3 at=1]\n")
    assert len(doc.segments) == 1
    assert doc.segments[0].text == "He ran."
    expected = SoundCue(
        cue_id="c000", event="footsteps",
        anchor=CueAnchor(segment=0, word=1),
        spatial=SpatialSpec(azimuth=90.0, distance=3.0),
        duration_s=None, source="auto", confidence=1.0)
    assert doc.cues == (expected,)


def test_default_anchor_is_preceding_word():
    doc = parse_script("Thunder rolled overhead. [sfx: thunder]\n")
    assert doc.cues[0].anchor == CueAnchor(segment=0, word=2)


def test_absolute_time_anchor():
    doc = parse_script("Silence. [sfx: wind | at=t=3.5 dur=2]\n")
    cue = doc.cues[0]
    assert cue.anchor.is_absolute
    assert cue.anchor.time_s == 3.5
    assert cue.duration_s == 2.0


def test_dialogue_and_voices():
    doc = parse_script(
        "#voice anna pitch=220 rate=160 seed=3\n"
        "\n"
        "@anna: Did you hear that?\n"
        "\n"
        "She waited.\n")
    assert doc.segments[0].kind == "dialogue"
    assert doc.segments[0].voice_id == "anna"
    assert doc.segments[0].text == "Did you hear that?"
    assert doc.voices["anna"].base_pitch == 220
    assert doc.voices["anna"].timbre_seed == 3
    # implicit narrator profile appears because narration segments exist
    assert "narrator" in doc.voices


def test_unknown_voice_diagnostic():
    with pytest.raises(ScriptParseError) as exc:
        parse_script("@ghost: Boo.\n")
    assert "unknown-voice" in codes(exc)
    d = exc.value.diagnostics[0]
    assert d.line == 1


def test_malformed_cue_diagnostic():
    with pytest.raises(ScriptParseError) as exc:
        parse_script("He ran. [sfx: footsteps | az=fast]\n")
    assert "malformed-cue" in codes(exc)


def test_out_of_range_spatial_diagnostic():
    with pytest.raises(ScriptParseError) as exc:
        parse_script("He ran. [sfx: footsteps | az=200]\n")
    assert "spatial-range" in codes(exc)


def test_parser_recovers_and_collects_all():
    bad = ("He ran. [sfx: footsteps | az=200]\n"
           "\n"
           "@ghost: Boo.\n"
           "\n"
           "#voice broken pitch=9000 rate=150\n")
    with pytest.raises(ScriptParseError) as exc:
        parse_script(bad)
    got = codes(exc)
    assert "spatial-range" in got
    assert "unknown-voice" in got
    assert "voice-range" in got


def test_multiline_paragraphs_merge():
    doc = parse_script("The night\nwas long.\n\nA new dawn.\n")
    assert [s.text for s in doc.segments] == ["The night was long.", "A new dawn."]


def test_trajectory_tag():
    doc = parse_script("A car passed. [sfx: wind | traj=0:90:0:5;2:-90:0:5 dur=2]\n")
    traj = doc.cues[0].spatial.trajectory
    assert len(traj) == 2
    assert traj[0].azimuth == 90.0
    assert traj[1].time_s == 2.0


def test_title_header():
    doc = parse_script("#title The Storm\n\nIt began.\n")
    assert doc.title == "The Storm"


def test_serialize_round_trip():
    doc = parse_script(
        "#title T\n"
        "#voice anna pitch=220 rate=160\n"
        "\n"
        "He ran. [sfx: footsteps | az=90 dist=3 at=1]\n"
        "\n"
        "@anna: Stop!\n")
    again = doc_from_dict(json.loads(serialize(doc)))
    assert again == doc
    # idempotent: serializing the round-tripped doc matches
    assert serialize(again) == serialize(doc)


def test_validate_clean_doc():
    doc = parse_script("He ran. [sfx: footsteps | at=1]\n")
    assert validate(doc) == []


def test_validate_dangling_anchor():
    doc = parse_script("He ran. [sfx: footsteps | at=1]\n")
    bad_cue = SoundCue(cue_id="x", event="footsteps",
                       anchor=CueAnchor(segment=7, word=0))
    diags = validate(doc.with_cues(doc.cues + (bad_cue,)))
    assert [d.code for d in diags] == ["dangling-anchor"]


def test_validate_undefined_dialogue_voice():
    doc = parse_script("He ran.\n")
    seg = doc.segments[0]
    bad = seg.__class__(index=0, kind="dialogue", voice_id="nobody", text="Hi.")
    diags = validate(doc.with_segments([bad]))
    assert [d.code for d in diags] == ["undefined-voice"]


_word = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=8)


@given(st.lists(st.lists(_word, min_size=1, max_size=12), min_size=1, max_size=6),
       st.randoms())
@settings(max_examples=50, deadline=None)
def test_fuzzed_wellformed_documents_parse(paragraphs, rnd):
    text = "\n\n".join(" ".join(words) for words in paragraphs)
    doc = parse_script(text)
    assert len(doc.segments) == len(paragraphs)
    assert validate(doc) == []
    # segment indices are gap-free
    assert [s.index for s in doc.segments] == list(range(len(paragraphs)))
