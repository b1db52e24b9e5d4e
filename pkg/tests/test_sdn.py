"""Scattering-delay-network reverb: matrix algebra, decay behavior, RT60."""

import numpy as np
import pytest

from spatialbook.audio import AudioBuffer
from spatialbook.spatial import (RoomModel, room_impulse_response,
                                 scattering_matrix, sdn_reverb)

FIXTURE_DIMS = (5.0, 4.0, 3.0)
SRC = (1.5, 2.2, 1.6)
MIC = (3.4, 1.9, 1.5)


def make_room(absorption):
    return RoomModel(dimensions=FIXTURE_DIMS, absorption=(absorption,) * 6,
                     source_pos=SRC, listener_pos=MIC)


def schroeder_rt60(ir_mono, fs):
    """Backward-integration decay oracle: fit -5..-25 dB, extrapolate to -60."""
    energy = ir_mono ** 2
    edc = np.cumsum(energy[::-1])[::-1]
    edc_db = 10 * np.log10(edc / edc[0] + 1e-300)
    t = np.arange(edc_db.size) / fs
    mask = (edc_db <= -5.0) & (edc_db >= -25.0)
    if mask.sum() < 10:
        raise ValueError("decay range too short for RT60 fit")
    slope, intercept = np.polyfit(t[mask], edc_db[mask], 1)
    return -60.0 / slope


class TestScatteringMatrix:
    def test_orthogonality(self):
        s = scattering_matrix(5)
        assert np.max(np.abs(s @ s.T - np.eye(5))) < 1e-12

    def test_energy_preserving(self):
        s = scattering_matrix(5)
        rng = np.random.default_rng(0)
        v = rng.standard_normal(5)
        assert np.sum((s @ v) ** 2) == pytest.approx(np.sum(v ** 2), rel=1e-12)

    def test_column_sums_one(self):
        # pressure-wave bookkeeping relies on unit column sums
        s = scattering_matrix(5)
        assert np.allclose(s.sum(axis=0), 1.0, atol=1e-12)


class TestImpulseResponse:
    def test_full_absorption_kills_recirculation(self):
        room = make_room(1.0)
        ir = room_impulse_response(room, 48000)
        # beyond the longest first-order path nothing should remain
        dims = np.array(FIXTURE_DIMS)
        longest_first = (np.linalg.norm(dims) * 2 + 1.0) / 343.0
        tail = ir.taps[:, int(longest_first * 48000):]
        assert np.max(np.abs(tail)) < 1e-12

    def test_direct_path_delay_and_gain(self):
        room = make_room(1.0)
        ir = room_impulse_response(room, 48000, include_direct=True)
        d = np.linalg.norm(np.array(SRC) - np.array(MIC))
        n_direct = int(round(d / 343.0 * 48000))
        mono = ir.taps.sum(axis=0)
        assert abs(mono[n_direct]) > 0
        # direct energy follows the 1/max(d,1) law across both pan channels
        assert np.sum(ir.taps[:, n_direct] ** 2) == pytest.approx(
            (1.0 / max(d, 1.0)) ** 2, rel=1e-9)

    def test_wet_only_excludes_direct(self):
        room = make_room(0.5)
        with_direct = room_impulse_response(room, 48000, include_direct=True)
        wet = room_impulse_response(room, 48000, include_direct=False)
        d = np.linalg.norm(np.array(SRC) - np.array(MIC))
        n_direct = int(round(d / 343.0 * 48000))
        assert np.sum(wet.taps[:, n_direct] ** 2) < \
            np.sum(with_direct.taps[:, n_direct] ** 2)

    def test_energy_finite_and_decaying(self):
        room = make_room(0.3)
        ir = room_impulse_response(room, 48000)
        assert np.all(np.isfinite(ir.taps))
        energy = ir.taps.sum(axis=0) ** 2
        fs = 48000
        # windowed energy must not grow after the early part
        windows = [energy[i * fs // 4:(i + 1) * fs // 4].sum()
                   for i in range(min(4, energy.size // (fs // 4)))]
        assert all(b <= a * 1.001 for a, b in zip(windows[1:], windows[2:]))

    def test_rt60_strictly_decreases_with_absorption(self):
        rts = []
        for alpha in (0.2, 0.4, 0.6, 0.8):
            ir = room_impulse_response(make_room(alpha), 48000,
                                       include_direct=False)
            rts.append(schroeder_rt60(ir.taps.sum(axis=0), 48000))
        assert all(b < a for a, b in zip(rts, rts[1:])), rts

    def test_stability_at_low_absorption(self):
        for alpha in (0.05, 0.1, 0.3):
            ir = room_impulse_response(make_room(alpha), 48000,
                                       include_direct=False)
            energy = ir.taps.sum(axis=0) ** 2
            fs = 48000
            start = int(0.1 * fs)  # past the mixing time
            windows = []
            while start + fs <= energy.size:
                windows.append(energy[start:start + fs].sum())
                start += fs
            assert all(b <= a * 1.0001 for a, b in zip(windows, windows[1:]))


class TestReverbOp:
    def test_stereo_output_shape(self):
        rng = np.random.default_rng(1)
        dry = AudioBuffer.mono(rng.uniform(-0.5, 0.5, 4800), 48000)
        wet = sdn_reverb(dry, make_room(0.4))
        assert wet.channels == 2
        assert wet.n_samples > dry.n_samples
        assert np.all(np.isfinite(wet.samples))

    def test_model_validation(self):
        with pytest.raises(ValueError):
            RoomModel(dimensions=(5, 4, 3), absorption=(0.0,) * 6,
                      source_pos=SRC, listener_pos=MIC)
        with pytest.raises(ValueError):
            RoomModel(dimensions=(5, 4, 3), absorption=(0.5,) * 6,
                      source_pos=(9.0, 1.0, 1.0), listener_pos=MIC)
