"""Shared DSP primitives: DFT, fast convolution, resampling.

Conventions fixed here for the whole package:
- half spectrum for real input (frame_size/2 + 1 bins),
- frames zero-padded to the next power of two,
- fast convolution via one zero-padded FFT, switching to overlap-add
  partitioning when the impulse response exceeds 8192 taps.
"""

from __future__ import annotations

import numpy as np

from .buffer import AudioBuffer, ImpulseResponse, Spectrum, freeze

OVERLAP_ADD_THRESHOLD = 8192


def next_pow2(n: int) -> int:
    if n <= 1:
        return 1
    return 1 << (n - 1).bit_length()


def dft(frame) -> Spectrum:
    """Half spectrum of a real frame, zero-padded to a power of two.

    The sample rate recorded on the result defaults to 1 (bin frequencies in
    cycles/sample); pass an AudioBuffer channel through `spectrum_of` when the
    rate matters.
    """
    frame = np.asarray(frame, dtype=np.float64)
    if frame.ndim != 1:
        raise ValueError("dft expects a 1-D real frame")
    if frame.size == 0:
        raise ValueError("dft of a zero-length frame")
    n = next_pow2(frame.size)
    bins = np.fft.rfft(frame, n=n)
    return Spectrum(bins=bins, frame_size=n, sample_rate=1)


def spectrum_of(buf: AudioBuffer, channel: int = 0) -> Spectrum:
    spec = dft(buf.channel(channel))
    return Spectrum(bins=spec.bins, frame_size=spec.frame_size,
                    sample_rate=buf.sample_rate)


def idft(spec: Spectrum) -> np.ndarray:
    """Real frame of length frame_size inverting `dft`."""
    return np.fft.irfft(spec.bins, n=spec.frame_size)


def _fft_convolve_1d(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    out_len = x.size + h.size - 1
    n = next_pow2(out_len)
    y = np.fft.irfft(np.fft.rfft(x, n) * np.fft.rfft(h, n), n)
    return y[:out_len]


def _overlap_add_1d(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Partitioned convolution for long IRs: fixed-size blocks of x."""
    block = OVERLAP_ADD_THRESHOLD
    n_fft = next_pow2(block + h.size - 1)
    H = np.fft.rfft(h, n_fft)
    out = np.zeros(x.size + h.size - 1)
    for start in range(0, x.size, block):
        seg = x[start:start + block]
        y = np.fft.irfft(np.fft.rfft(seg, n_fft) * H, n_fft)
        out[start:start + seg.size + h.size - 1] += y[:seg.size + h.size - 1]
    return out


def convolve_arrays(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Linear convolution of two 1-D arrays, length len(x)+len(h)-1."""
    x = np.asarray(x, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    if x.size == 0 or h.size == 0:
        raise ValueError("convolution operands must be nonempty")
    if h.size > OVERLAP_ADD_THRESHOLD and x.size > OVERLAP_ADD_THRESHOLD:
        return _overlap_add_1d(x, h)
    return _fft_convolve_1d(x, h)


def convolve(x: AudioBuffer, h: ImpulseResponse) -> AudioBuffer:
    """Convolve a buffer with an IR; output length len(x) + len(h) - 1.

    Channel pairing: mono x with stereo IR yields stereo out (and vice
    versa); equal channel counts convolve pairwise.
    """
    if x.sample_rate != h.sample_rate:
        raise ValueError(
            f"sample-rate mismatch: buffer {x.sample_rate} Hz vs IR {h.sample_rate} Hz")
    n_out_ch = max(x.channels, h.channels)
    if x.channels not in (1, n_out_ch) or h.channels not in (1, n_out_ch):
        raise ValueError(
            f"cannot pair {x.channels}-channel audio with {h.channels}-channel IR")
    out = np.empty((n_out_ch, x.n_samples + h.n_taps - 1))
    for ch in range(n_out_ch):
        xc = x.channel(min(ch, x.channels - 1))
        hc = h.taps[min(ch, h.channels - 1)]
        out[ch] = convolve_arrays(xc, hc)
    return AudioBuffer(x.sample_rate, freeze(out))


_SINC_HALF_WIDTH = 32  # taps each side of the interpolation window


def resample(buf: AudioBuffer, target: int) -> AudioBuffer:
    """Windowed-sinc resampling; duration preserved within one output sample."""
    if target <= 0:
        raise ValueError(f"target rate must be positive, got {target}")
    if target == buf.sample_rate:
        return buf

    src = buf.sample_rate
    n_in = buf.n_samples
    n_out = int(round(n_in * target / src))
    ratio = src / target
    # low-pass at the lower of the two Nyquists, with a little rolloff margin
    cutoff = 0.97 * min(1.0, target / src) / 2.0

    out = np.empty((buf.channels, n_out))
    k = np.arange(-_SINC_HALF_WIDTH, _SINC_HALF_WIDTH + 1)
    chunk = 1 << 15
    for start in range(0, n_out, chunk):
        idx = np.arange(start, min(start + chunk, n_out))
        center = idx * ratio
        base = np.floor(center).astype(np.int64)
        frac = center - base
        offsets = k[None, :] - frac[:, None]  # (chunk, taps)
        kernel = np.sinc(2.0 * cutoff * offsets)
        window = 0.5 + 0.5 * np.cos(np.pi * offsets / (_SINC_HALF_WIDTH + 1))
        kernel *= window
        kernel /= kernel.sum(axis=1, keepdims=True)
        gather = np.clip(base[:, None] + k[None, :], 0, n_in - 1)
        for ch in range(buf.channels):
            out[ch, idx] = np.sum(buf.channel(ch)[gather] * kernel, axis=1)
    return AudioBuffer(target, freeze(out))
