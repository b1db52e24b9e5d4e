"""Time-series features: envelopes, spectrograms, multiscale integration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio import AudioBuffer

ENVELOPE_HOP_S = 0.025       # alignment envelopes run on a 25 ms grid
SHORT_WINDOW_S = 0.05        # fine-detail integration scale
LONG_WINDOW_S = 0.4          # category-level integration scale
ENVELOPE_FLOOR_DB = -80.0


@dataclass(frozen=True)
class FeatureSeries:
    values: np.ndarray
    hop_s: float

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64, copy=True)
        if vals.ndim != 1:
            raise ValueError("FeatureSeries holds a 1-D sequence")
        if self.hop_s <= 0:
            raise ValueError(f"hop_s must be positive, got {self.hop_s}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size

    @property
    def duration_s(self) -> float:
        return len(self) * self.hop_s

    def times(self) -> np.ndarray:
        return np.arange(len(self)) * self.hop_s


def log_energy_envelope(buf: AudioBuffer, hop_s: float = ENVELOPE_HOP_S) -> FeatureSeries:
    """dB RMS envelope on a fixed hop; window is twice the hop."""
    mono = buf.samples.mean(axis=0)
    hop = max(1, int(round(hop_s * buf.sample_rate)))
    win = 2 * hop
    n_frames = max(1, 1 + (mono.size - 1) // hop)
    padded = np.concatenate([mono, np.zeros(win)])
    frames = np.stack([padded[k * hop:k * hop + win] for k in range(n_frames)])
    rms = np.sqrt(np.mean(frames ** 2, axis=1))
    db = 20.0 * np.log10(np.maximum(rms, 10.0 ** (ENVELOPE_FLOOR_DB / 20.0)))
    return FeatureSeries(values=db, hop_s=hop_s)


def spectrogram(buf: AudioBuffer, frame: int, hop: int) -> np.ndarray:
    """Hann-windowed magnitude frames, shape (n_frames, frame//2 + 1)."""
    if frame <= 0 or frame & (frame - 1):
        raise ValueError(f"frame size {frame} must be a power of two")
    if not (0 < hop <= frame):
        raise ValueError(f"hop {hop} must be in 1..frame")
    x = buf.samples.mean(axis=0)
    if x.size < frame:
        raise ValueError(f"buffer ({x.size}) shorter than one frame ({frame})")
    n_frames = (x.size - frame) // hop + 1
    window = np.hanning(frame)
    out = np.empty((n_frames, frame // 2 + 1))
    for k in range(n_frames):
        out[k] = np.abs(np.fft.rfft(x[k * hop:k * hop + frame] * window))
    return out


def _gaussian_kernel(sigma: float) -> np.ndarray:
    radius = int(np.ceil(3.0 * sigma))
    k = np.exp(-0.5 * (np.arange(-radius, radius + 1) / sigma) ** 2)
    return k / k.sum()


def _conv_axis(grid: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    radius = kernel.size // 2
    if radius == 0:
        return grid * kernel[0]
    moved = np.moveaxis(grid, axis, -1)
    pad = min(radius, moved.shape[-1])
    padded = np.pad(moved, [(0, 0)] * (moved.ndim - 1) + [(radius, radius)],
                    mode="symmetric" if pad >= radius else "edge")
    out = np.apply_along_axis(lambda r: np.convolve(r, kernel, mode="valid"),
                              -1, padded)
    return np.moveaxis(out, -1, axis)


def spectrotemporal_filter(grid: np.ndarray, sigma_f: float,
                           sigma_t: float) -> np.ndarray:
    """Separable Gaussian smoothing of a (time, frequency) magnitude grid.

    Kernels truncate at 3 sigma and normalize to unit sum; boundaries use
    reflective padding, so a constant grid passes through unchanged.
    """
    if sigma_f <= 0 or sigma_t <= 0:
        raise ValueError("sigma_f and sigma_t must be positive")
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2:
        raise ValueError("expected a 2-D time-frequency grid")
    out = _conv_axis(grid, _gaussian_kernel(sigma_t), axis=0)
    return _conv_axis(out, _gaussian_kernel(sigma_f), axis=1)


def multiscale_integrate(f_short: FeatureSeries, f_long: FeatureSeries,
                         w_short: float, w_long: float) -> FeatureSeries:
    """Pointwise weighted sum on the short series' grid.

    The long series is linearly resampled onto the short hop first; weights
    must be nonnegative and sum to one.
    """
    if w_short < 0 or w_long < 0 or abs(w_short + w_long - 1.0) > 1e-9:
        raise ValueError(f"weights must be >= 0 and sum to 1, got "
                         f"({w_short}, {w_long})")
    resampled = np.interp(f_short.times(), f_long.times(), f_long.values)
    return FeatureSeries(values=w_short * f_short.values + w_long * resampled,
                         hop_s=f_short.hop_s)
