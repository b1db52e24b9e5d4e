"""Distance and motion effects for point sources.

Distance law: amplitude 1/max(d, 1) plus a one-pole air-absorption low-pass
with cutoff 20000/max(d, 1) Hz (bypassed when the cutoff reaches the
audible limit, so distance 1 is exactly transparent).

Doppler: a variable delay line indexed at the emission time solved from
t_e + d(t_e)/c = t, so an approaching source at speed v shifts a tone by
the physical factor c/(c - v). Reads use 4-point cubic interpolation.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from ..audio import AudioBuffer, freeze
from ..script.model import TrajectoryPoint

SPEED_OF_SOUND = 343.0
_AUDIBLE_CUTOFF = 20000.0


def distance_attenuate(buf: AudioBuffer, distance_m: float) -> AudioBuffer:
    """Apply inverse-distance gain and air-absorption low-pass."""
    if distance_m <= 0:
        raise ValueError(f"distance must be positive, got {distance_m}")
    d = max(distance_m, 1.0)
    gain = 1.0 / d
    cutoff = _AUDIBLE_CUTOFF / d
    samples = buf.samples * gain
    if cutoff < _AUDIBLE_CUTOFF:
        a = np.exp(-2.0 * np.pi * cutoff / buf.sample_rate)
        samples = lfilter([1.0 - a], [1.0, -a], samples, axis=1)
    return AudioBuffer(buf.sample_rate, freeze(np.ascontiguousarray(samples)))


def trajectory_value(trajectory: tuple[TrajectoryPoint, ...], t, field: str) -> np.ndarray:
    """Piecewise-linear interpolation of one trajectory field over time."""
    times = np.array([p.time_s for p in trajectory])
    values = np.array([getattr(p, field) for p in trajectory])
    return np.interp(t, times, values)


def _cubic_read(x: np.ndarray, positions: np.ndarray) -> np.ndarray:
    """Catmull-Rom read of x at fractional sample positions (0 outside)."""
    n = x.size
    valid = (positions >= 0) & (positions <= n - 1)
    p = np.clip(positions, 0.0, n - 1.0)
    i = np.floor(p).astype(np.int64)
    f = p - i
    idx = np.clip(np.stack([i - 1, i, i + 1, i + 2]), 0, n - 1)
    x0, x1, x2, x3 = x[idx[0]], x[idx[1]], x[idx[2]], x[idx[3]]
    out = 0.5 * (2 * x1
                 + (-x0 + x2) * f
                 + (2 * x0 - 5 * x1 + 4 * x2 - x3) * f ** 2
                 + (-x0 + 3 * x1 - 3 * x2 + x3) * f ** 3)
    return np.where(valid, out, 0.0)


def doppler_shift(buf: AudioBuffer, trajectory: tuple[TrajectoryPoint, ...],
                  sample_rate: int | None = None) -> AudioBuffer:
    """Variable-delay render of a moving source (mono in, mono out).

    The source signal is taken as emitted along the trajectory; the output
    is what arrives at the listener, delayed by distance/c with the delay
    evaluated at the emission time (fixed-point solve, which converges fast
    because source speeds stay well below c).
    """
    if buf.channels != 1:
        raise ValueError("doppler_shift expects a mono buffer")
    if not trajectory:
        raise ValueError("trajectory must have at least one keyframe")
    fs = sample_rate or buf.sample_rate
    n = buf.n_samples
    t = np.arange(n) / fs

    t_emit = t - trajectory_value(trajectory, t, "distance") / SPEED_OF_SOUND
    for _ in range(12):
        d = trajectory_value(trajectory, np.maximum(t_emit, 0.0), "distance")
        t_emit = t - d / SPEED_OF_SOUND

    out = _cubic_read(buf.channel(0), t_emit * fs)
    return AudioBuffer(fs, freeze(out.reshape(1, -1)))
