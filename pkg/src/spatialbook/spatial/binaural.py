"""Decode ambisonics to two ears (or two speakers).

Sampling (projection) decode to 8 equally spaced virtual speakers, then:
- binaural: per speaker-ear Woodworth delay on a spherical head plus a
  first-order head-shadow shelf. The shelf's high-frequency asymptote is
  sqrt(1 + cos(angle to ear)) with a 0.3 floor (residual diffraction at
  the far ear); the sqrt form keeps the summed two-ear energy constant
  per speaker while preserving the interaural level contrast.
- stereo_speakers: constant-power tangent-law pan of each virtual speaker
  onto a +-30 degree pair.

Power preservation is exact at the decode stage: with 8 speakers and
order <= 3 the squared panning pattern has no harmonics the ring can
alias, so summed feed energy is azimuth-independent. The 2-channel fold
after it necessarily trades some of that constancy for localization cues
(mirror-symmetric speaker pairs reach an ear coherently), so output
energy carries a small direction-dependent ripple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from ..audio import AudioBuffer, convolve_arrays, freeze
from .ambisonics import AmbisonicBuffer, acn_degree_order, sh_gains

SPEED_OF_SOUND = 343.0
N_VIRTUAL_SPEAKERS = 8
STEREO_SPREAD_DEG = 30.0

VIRTUAL_SPEAKER_AZ = tuple(float(i * 360.0 / N_VIRTUAL_SPEAKERS)
                           for i in range(N_VIRTUAL_SPEAKERS))


@dataclass(frozen=True)
class ListenerProfile:
    mode: str = "binaural"          # "binaural" | "stereo_speakers"
    head_radius: float = 0.0875     # meters

    def __post_init__(self):
        if self.mode not in ("binaural", "stereo_speakers"):
            raise ValueError(f"unknown listener mode {self.mode!r}")
        if not (0.06 <= self.head_radius <= 0.12):
            raise ValueError(f"head_radius {self.head_radius} outside [0.06, 0.12]")


def woodworth_itd(azimuth_deg: float, head_radius: float) -> float:
    """Ray-geometric ITD a(theta + sin theta)/c for a lateral angle."""
    theta = abs(np.deg2rad(azimuth_deg))
    theta = min(theta, np.pi - theta)  # lateral angle folds front/back
    return head_radius * (theta + np.sin(theta)) / SPEED_OF_SOUND


def _ear_delay_s(source_az_deg: float, ear_az_deg: float, head_radius: float) -> float:
    """Arrival-time offset at one ear, relative to the head center.

    Unshadowed side: straight path, -a cos(gamma)/c (early). Shadowed side:
    the wave creeps around the sphere, a (gamma - pi/2)/c. Reproduces the
    Woodworth ITD exactly for sources on the horizontal plane.
    """
    gamma = np.deg2rad(abs((source_az_deg - ear_az_deg + 180.0) % 360.0 - 180.0))
    a_c = head_radius / SPEED_OF_SOUND
    if gamma <= np.pi / 2:
        return -a_c * np.cos(gamma)
    return a_c * (gamma - np.pi / 2)


def _shadow_shelf(x: np.ndarray, fs: int, hf_gain: float,
                  head_radius: float) -> np.ndarray:
    """First-order spherical-head shadow: unity at DC, hf_gain at Nyquist."""
    beta = 2.0 * SPEED_OF_SOUND / head_radius  # rad/s corner
    k = 2.0 * fs / beta
    b = np.array([1.0 + hf_gain * k, 1.0 - hf_gain * k])
    a = np.array([1.0 + k, 1.0 - k])
    return lfilter(b / a[0], a / a[0], x)


_DELAY_HALF_TAPS = 24
SHADOW_FLOOR = 0.3


def fractional_delay(x: np.ndarray, delay_samples: float) -> np.ndarray:
    """Delay by a non-integer number of samples (windowed-sinc kernel).

    Output has the same length as the input; content shifts right by
    `delay_samples` (must be >= 0), leading samples fill with zeros.
    """
    if delay_samples < 0:
        raise ValueError("delay must be nonnegative")
    d_int = int(np.floor(delay_samples))
    frac = delay_samples - d_int
    out = np.zeros(x.size)
    if frac == 0.0:
        out[d_int:] = x[:x.size - d_int]
        return out
    j = np.arange(-_DELAY_HALF_TAPS, _DELAY_HALF_TAPS + 1)
    kernel = np.sinc(j - frac)
    kernel *= 0.5 + 0.5 * np.cos(np.pi * (j - frac) / (_DELAY_HALF_TAPS + 1))
    y = convolve_arrays(x, kernel)
    start = d_int - _DELAY_HALF_TAPS
    src_lo = max(0, -start)
    dst_lo = max(0, start)
    n = min(y.size - src_lo, x.size - dst_lo)
    if n > 0:
        out[dst_lo:dst_lo + n] = y[src_lo:src_lo + n]
    return out


def decode_matrix(order: int) -> np.ndarray:
    """Projection decode gains, shape (speakers, channels)."""
    az = np.array(VIRTUAL_SPEAKER_AZ)
    gains = sh_gains(az, np.zeros_like(az), order)  # (spk, n_ch)
    weights = np.array([2 * l + 1 for l, _ in acn_degree_order()[:(order + 1) ** 2]])
    return gains * weights[None, :] / N_VIRTUAL_SPEAKERS


def decode_feeds(ambi: AmbisonicBuffer) -> np.ndarray:
    """Virtual-speaker signals of the sampling decode, shape (8, n)."""
    return decode_matrix(ambi.order) @ ambi.channels


def _binaural_downmix(feeds: np.ndarray, fs: int, head_radius: float) -> np.ndarray:
    a_c = head_radius / SPEED_OF_SOUND
    out = np.zeros((2, feeds.shape[1]))
    for ear_idx, ear_az in enumerate((90.0, -90.0)):
        for spk_idx, spk_az in enumerate(VIRTUAL_SPEAKER_AZ):
            delay_s = _ear_delay_s(spk_az, ear_az, head_radius) + a_c
            gamma = np.deg2rad(abs((spk_az - ear_az + 180.0) % 360.0 - 180.0))
            hf_gain = max(np.sqrt(1.0 + np.cos(gamma)), SHADOW_FLOOR)
            sig = fractional_delay(feeds[spk_idx], delay_s * fs)
            out[ear_idx] += _shadow_shelf(sig, fs, hf_gain, head_radius)
    return out


def _tangent_pan_gains(azimuth_deg: float) -> tuple[float, float]:
    """Constant-power tangent-law gains onto speakers at +-30 degrees."""
    az = np.deg2rad(azimuth_deg)
    pan = np.arctan2(np.sin(az), abs(np.cos(az)))  # fold rear sources forward
    pan = np.clip(pan, -np.deg2rad(STEREO_SPREAD_DEG), np.deg2rad(STEREO_SPREAD_DEG))
    q = np.tan(pan) / np.tan(np.deg2rad(STEREO_SPREAD_DEG))
    norm = np.sqrt(2.0 * (1.0 + q * q))
    return (1.0 + q) / norm, (1.0 - q) / norm


def _stereo_downmix(feeds: np.ndarray) -> np.ndarray:
    out = np.zeros((2, feeds.shape[1]))
    for spk_idx, spk_az in enumerate(VIRTUAL_SPEAKER_AZ):
        g_left, g_right = _tangent_pan_gains(spk_az)
        out[0] += g_left * feeds[spk_idx]
        out[1] += g_right * feeds[spk_idx]
    return out


def hoa_decode(ambi: AmbisonicBuffer, profile: ListenerProfile) -> AudioBuffer:
    """Decode to stereo: channel 0 = left ear/speaker, channel 1 = right."""
    feeds = decode_feeds(ambi)
    if profile.mode == "binaural":
        out = _binaural_downmix(feeds, ambi.sample_rate, profile.head_radius)
    else:
        out = _stereo_downmix(feeds)
    return AudioBuffer(ambi.sample_rate, freeze(out))
