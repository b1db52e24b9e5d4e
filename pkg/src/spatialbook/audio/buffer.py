"""Core audio value types.

All DSP in the package runs on 64-bit floats; 32-bit float / PCM appear only
at file boundaries. Buffers are immutable once constructed and safe to share
across threads: sample arrays are frozen (read-only) at construction.

Constructors copy their input unless it is already a read-only float64 array,
so internal ops can mark a freshly computed array read-only and hand it over
without a second copy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def freeze(arr: np.ndarray) -> np.ndarray:
    """Mark an array read-only so buffer constructors can share it."""
    arr.flags.writeable = False
    return arr


def _own_planar(data, what: str) -> np.ndarray:
    """Return a read-only float64 (channels, n) array, copying if needed."""
    if isinstance(data, np.ndarray) and data.dtype == np.float64 and not data.flags.writeable:
        arr = data
    else:
        arr = np.array(data, dtype=np.float64, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{what}: expected 1-D or 2-D data, got ndim={arr.ndim}")
    if arr.shape[0] < 1:
        raise ValueError(f"{what}: needs at least one channel")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what}: contains NaN/Inf values")
    arr.flags.writeable = False
    return arr


def _check_rate(rate) -> int:
    if int(rate) != rate or rate <= 0:
        raise ValueError(f"sample_rate must be a positive integer, got {rate}")
    return int(rate)


@dataclass(frozen=True)
class AudioBuffer:
    """Planar PCM frames: `samples` has shape (channels, n_samples)."""

    sample_rate: int
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))
        object.__setattr__(self, "samples", _own_planar(self.samples, "AudioBuffer"))

    @classmethod
    def mono(cls, data, sample_rate: int) -> "AudioBuffer":
        return cls(sample_rate, data)

    @classmethod
    def stereo(cls, left, right, sample_rate: int) -> "AudioBuffer":
        return cls(sample_rate, np.stack([np.asarray(left, np.float64),
                                          np.asarray(right, np.float64)]))

    @classmethod
    def silence(cls, n: int, sample_rate: int, channels: int = 1) -> "AudioBuffer":
        return cls(sample_rate, freeze(np.zeros((channels, n))))

    @property
    def channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate

    def channel(self, i: int) -> np.ndarray:
        return self.samples[i]

    def to_mono(self) -> "AudioBuffer":
        if self.channels == 1:
            return self
        return AudioBuffer(self.sample_rate, freeze(self.samples.mean(axis=0, keepdims=True)))

    def to_stereo(self) -> "AudioBuffer":
        """Duplicate a mono buffer into two identical channels."""
        if self.channels == 2:
            return self
        if self.channels != 1:
            raise ValueError(f"cannot upmix {self.channels} channels to stereo")
        return AudioBuffer(self.sample_rate, freeze(np.vstack([self.samples[0], self.samples[0]])))

    def scaled(self, gain: float) -> "AudioBuffer":
        return AudioBuffer(self.sample_rate, freeze(self.samples * gain))


@dataclass(frozen=True)
class ImpulseResponse:
    """Finite-energy FIR taps; shape (channels, n), mono or stereo."""

    sample_rate: int
    taps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))
        arr = _own_planar(self.taps, "ImpulseResponse")
        if arr.shape[1] == 0:
            raise ValueError("impulse response must have nonzero length")
        object.__setattr__(self, "taps", arr)

    @property
    def channels(self) -> int:
        return self.taps.shape[0]

    @property
    def n_taps(self) -> int:
        return self.taps.shape[1]


@dataclass(frozen=True)
class Spectrum:
    """Half spectrum of a real frame: frame_size/2 + 1 complex bins."""

    bins: np.ndarray
    frame_size: int
    sample_rate: int

    def __post_init__(self):
        bins = np.array(self.bins, dtype=np.complex128, copy=True)
        if self.frame_size <= 0:
            raise ValueError("frame_size must be positive")
        if bins.shape != (self.frame_size // 2 + 1,):
            raise ValueError(
                f"half spectrum of frame_size {self.frame_size} needs "
                f"{self.frame_size // 2 + 1} bins, got {bins.shape}")
        bins.flags.writeable = False
        object.__setattr__(self, "bins", bins)

    @property
    def n_bins(self) -> int:
        return self.bins.shape[0]

    def bin_frequency(self, k: int) -> float:
        return k * self.sample_rate / self.frame_size
