"""Asset library and procedural recipe tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spatialbook.audio import AudioBuffer, write_wav
from spatialbook.script import CueAnchor, SoundCue
from spatialbook.sfx import (CUE_RMS_DB, FOOTSTEP_RATE_HZ, PROCEDURAL_EVENTS,
                             AssetIndex, index_assets, load_asset_audio,
                             retrieve_asset, synthesize_procedural)


def make_asset(directory, asset_id, tags, seconds=1.0, rate=48000):
    rng = np.random.default_rng(abs(hash(asset_id)) % 2 ** 32)
    buf = AudioBuffer.mono(0.5 * rng.uniform(-1, 1, int(seconds * rate)), rate)
    write_wav(buf, directory / f"{asset_id}.wav")
    (directory / f"{asset_id}.tags").write_text(tags)


def cue(event, duration=None, cue_id="c000"):
    return SoundCue(cue_id=cue_id, event=event,
                    anchor=CueAnchor(segment=0, word=0), duration_s=duration)


class TestIndex:
    def test_empty_directory(self, tmp_path):
        index = index_assets(tmp_path)
        assert index.entries == ()

    def test_three_tagged_wavs_sorted(self, tmp_path):
        for name in ("zeta", "alpha", "mid"):
            make_asset(tmp_path, name, "thunder")
        index = index_assets(tmp_path)
        assert [e.asset_id for e in index.entries] == ["alpha", "mid", "zeta"]

    def test_untagged_wav_warns_and_skips(self, tmp_path):
        make_asset(tmp_path, "tagged", "rain")
        write_wav(AudioBuffer.silence(100, 48000), tmp_path / "orphan.wav")
        with pytest.warns(UserWarning, match="orphan"):
            index = index_assets(tmp_path)
        assert [e.asset_id for e in index.entries] == ["tagged"]

    def test_reindex_is_byte_identical(self, tmp_path):
        make_asset(tmp_path, "a", "wind", seconds=0.5)
        make_asset(tmp_path, "b", "rain,storm", seconds=1.5)
        first = index_assets(tmp_path).to_json()
        second = index_assets(tmp_path).to_json()
        assert first == second
        assert AssetIndex.from_json(first).to_json() == first

    def test_unreadable_directory(self, tmp_path):
        with pytest.raises(NotADirectoryError):
            index_assets(tmp_path / "missing")


class TestRetrieve:
    def test_single_tag_match(self, tmp_path):
        make_asset(tmp_path, "boom", "thunder")
        index = index_assets(tmp_path)
        assert retrieve_asset(cue("thunder"), index) == "boom"

    def test_no_overlap_is_none(self, tmp_path):
        make_asset(tmp_path, "boom", "thunder")
        index = index_assets(tmp_path)
        assert retrieve_asset(cue("rain"), index) is None

    def test_duration_tie_break(self, tmp_path):
        make_asset(tmp_path, "short", "thunder", seconds=2.0)
        make_asset(tmp_path, "long", "thunder", seconds=9.0)
        index = index_assets(tmp_path)
        assert retrieve_asset(cue("thunder", duration=8.0), index) == "long"

    def test_lexicographic_tie_break(self, tmp_path):
        make_asset(tmp_path, "bbb", "wind", seconds=3.0)
        make_asset(tmp_path, "aaa", "wind", seconds=3.0)
        index = index_assets(tmp_path)
        assert retrieve_asset(cue("wind", duration=3.0), index) == "aaa"

    def test_pure_function(self, tmp_path):
        make_asset(tmp_path, "boom", "thunder")
        index = index_assets(tmp_path)
        c = cue("thunder")
        assert retrieve_asset(c, index) == retrieve_asset(c, index)

    def test_loaded_asset_is_normalized_mono(self, tmp_path):
        make_asset(tmp_path, "boom", "thunder")
        index = index_assets(tmp_path)
        audio = load_asset_audio("c000", index.get("boom"))
        assert audio.buffer.channels == 1
        assert audio.buffer.sample_rate == 48000
        rms_db = 20 * np.log10(np.sqrt(np.mean(audio.buffer.samples ** 2)))
        assert rms_db == pytest.approx(CUE_RMS_DB, abs=0.5)
        assert audio.provenance == ("retrieved", "boom")


def band_energy_ratio(buf, split_hz, below=True):
    spec = np.abs(np.fft.rfft(buf.channel(0))) ** 2
    freqs = np.fft.rfftfreq(buf.n_samples, 1 / buf.sample_rate)
    total = spec.sum()
    part = spec[freqs <= split_hz].sum() if below else spec[freqs >= split_hz].sum()
    return part / total


class TestProcedural:
    def test_zero_duration_rejected(self):
        with pytest.raises(ValueError):
            synthesize_procedural("rain", 0.0, 1)

    def test_unknown_event_rejected(self):
        with pytest.raises(ValueError):
            synthesize_procedural("dragon", 1.0, 1)

    def test_determinism(self):
        a = synthesize_procedural("thunder", 1.5, 42)
        b = synthesize_procedural("thunder", 1.5, 42)
        assert np.array_equal(a.buffer.samples, b.buffer.samples)

    def test_seed_changes_output(self):
        a = synthesize_procedural("rain", 1.0, 1)
        b = synthesize_procedural("rain", 1.0, 2)
        assert not np.array_equal(a.buffer.samples, b.buffer.samples)

    def test_thunder_energy_below_300hz(self):
        audio = synthesize_procedural("thunder", 3.0, 7)
        assert band_energy_ratio(audio.buffer, 300.0, below=True) >= 0.8

    def test_rain_energy_above_2khz(self):
        audio = synthesize_procedural("rain", 2.0, 7)
        assert band_energy_ratio(audio.buffer, 2000.0, below=False) >= 0.8

    def test_footstep_onset_count(self):
        duration = 3.0
        audio = synthesize_procedural("footsteps", duration, 5)
        x = audio.buffer.channel(0)
        fs = audio.buffer.sample_rate
        # energy-peak oracle: short-window energy, count prominent peaks
        win = int(0.02 * fs)
        energy = np.array([np.sum(x[i:i + win] ** 2)
                           for i in range(0, x.size - win, win // 2)])
        threshold = 0.25 * energy.max()
        peaks = 0
        armed = True
        for e in energy:
            if armed and e > threshold:
                peaks += 1
                armed = False
            elif e < 0.1 * energy.max():
                armed = True
        assert peaks == round(duration * FOOTSTEP_RATE_HZ)

    @given(st.sampled_from(PROCEDURAL_EVENTS), st.integers(0, 2 ** 31 - 1))
    @settings(max_examples=30, deadline=None)
    def test_never_clips(self, event, seed):
        audio = synthesize_procedural(event, 0.7, seed)
        assert np.max(np.abs(audio.buffer.samples)) <= 1.0
        assert np.all(np.isfinite(audio.buffer.samples))
