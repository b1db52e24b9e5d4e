"""HOA encode against an independent spherical-harmonic oracle."""

import math

import numpy as np
import pytest
from scipy.special import lpmv

from spatialbook.audio import AudioBuffer
from spatialbook.spatial import AmbisonicBuffer, decode_matrix, hoa_encode, sh_gains


def sn3d_oracle(azimuth_deg, elevation_deg, order):
    """Direct SN3D evaluation from associated Legendre functions.

    Independent route: scipy's lpmv (Condon-Shortley phase removed) plus the
    Schmidt semi-normalization, instead of the hard-coded closed forms.
    """
    az = np.deg2rad(azimuth_deg)
    el = np.deg2rad(elevation_deg)
    out = []
    for l in range(order + 1):
        for m in range(-l, l + 1):
            am = abs(m)
            norm = np.sqrt(
                (2.0 if m != 0 else 1.0)
                * math.factorial(l - am) / math.factorial(l + am))
            leg = (-1.0) ** am * lpmv(am, l, np.sin(el))
            trig = np.cos(am * az) if m >= 0 else np.sin(am * az)
            out.append(norm * leg * trig)
    return np.array(out)


class TestShGains:
    def test_front_order1(self):
        gains = sh_gains(0.0, 0.0, 1)
        assert np.allclose(gains, [1.0, 0.0, 0.0, 1.0], atol=1e-15)

    def test_left_order1(self):
        gains = sh_gains(90.0, 0.0, 1)
        assert np.allclose(gains, [1.0, 1.0, 0.0, 0.0], atol=1e-15)

    def test_up_order1(self):
        gains = sh_gains(0.0, 90.0, 1)
        assert np.allclose(gains, [1.0, 0.0, 1.0, 0.0], atol=1e-15)

    def test_cardinals_match_oracle_order1(self):
        for az in (0.0, 45.0, 90.0, 135.0, 180.0, -135.0, -90.0, -45.0):
            assert np.max(np.abs(sh_gains(az, 0.0, 1) - sn3d_oracle(az, 0.0, 1))) < 1e-9

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_matches_oracle_generic_directions(self, order):
        rng = np.random.default_rng(order)
        for _ in range(25):
            az = float(rng.uniform(-180, 180))
            el = float(rng.uniform(-90, 90))
            got = sh_gains(az, el, order)
            want = sn3d_oracle(az, el, order)
            assert np.max(np.abs(got - want)) < 1e-9

    def test_order2_specific_direction(self):
        got = sh_gains(37.0, 12.0, 2)
        want = sn3d_oracle(37.0, 12.0, 2)
        assert np.max(np.abs(got - want)) < 1e-9

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            sh_gains(0.0, 0.0, 4)
        with pytest.raises(ValueError):
            sh_gains(0.0, 0.0, 0)


class TestEncode:
    def test_w_channel_equals_input(self):
        rng = np.random.default_rng(0)
        mono = AudioBuffer.mono(rng.standard_normal(256), 48000)
        ambi = hoa_encode(mono, 123.0, -40.0, 3)
        assert ambi.channels.shape == (16, 256)
        assert np.array_equal(ambi.channels[0], mono.channel(0))

    def test_linearity_exact_power_of_two(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(128)
        a = hoa_encode(AudioBuffer.mono(2.0 * x, 48000), 30.0, 10.0, 2)
        b = hoa_encode(AudioBuffer.mono(x, 48000), 30.0, 10.0, 2)
        assert np.array_equal(a.channels, 2.0 * b.channels)

    def test_linearity_general_scalar(self):
        rng = np.random.default_rng(2)
        x = rng.standard_normal(128)
        a = hoa_encode(AudioBuffer.mono(3.7 * x, 48000), 30.0, 10.0, 2)
        b = hoa_encode(AudioBuffer.mono(x, 48000), 30.0, 10.0, 2)
        assert np.allclose(a.channels, 3.7 * b.channels, rtol=1e-14, atol=1e-16)

    def test_channel_count_invariant(self):
        mono = AudioBuffer.mono(np.zeros(16), 48000)
        for order in (1, 2, 3):
            assert hoa_encode(mono, 0, 0, order).channels.shape[0] == (order + 1) ** 2

    def test_rejects_stereo(self):
        buf = AudioBuffer.stereo(np.zeros(8), np.zeros(8), 48000)
        with pytest.raises(ValueError):
            hoa_encode(buf, 0, 0, 1)

    def test_bad_channel_count_rejected(self):
        with pytest.raises(ValueError):
            AmbisonicBuffer(order=1, channels=np.zeros((5, 10)), sample_rate=48000)


class TestDecodeGains:
    def test_feed_power_is_azimuth_independent(self):
        # 8 uniform speakers alias nothing below the 8th harmonic, so the
        # summed squared feed gains cannot depend on source azimuth
        for order in (1, 2, 3):
            D = decode_matrix(order)
            powers = [np.sum((D @ sh_gains(az, 0.0, order)) ** 2)
                      for az in np.arange(0.0, 360.0, 5.0)]
            spread_db = 10 * np.log10(max(powers) / min(powers))
            assert spread_db < 1e-9

    def test_panning_smoothness_default_order(self):
        D = decode_matrix(1)
        az = np.arange(0.0, 361.0, 1.0)
        gains = np.stack([D @ sh_gains(a, 0.0, 1) for a in az])
        steps = np.abs(np.diff(gains, axis=0))
        assert steps.max() < 0.01
