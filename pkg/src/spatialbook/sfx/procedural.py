"""Recipe-based sound-effect synthesis.

Each event keyword has a fixed noise-shaping recipe with a documented
spectral signature (rain lives above 2 kHz, thunder below 300 Hz, ...).
Output is deterministic for (event, duration_s, seed), peak-bounded, and
loudness-normalized so the mixer owns all level decisions.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from ..audio import AudioBuffer, freeze

PROCEDURAL_EVENTS = ("rain", "wind", "thunder", "footsteps", "door", "crowd", "fire")

FOOTSTEP_RATE_HZ = 2.0      # steps per second
CUE_RMS_DB = -23.0          # every cue is normalized here before spatialization


@dataclass(frozen=True)
class CueAudio:
    """Mono, canonical-rate audio resolved for one cue."""

    cue_id: str
    buffer: AudioBuffer
    provenance: tuple[str, str]   # ("retrieved", asset_id) | ("procedural", seed)

    def __post_init__(self):
        if self.buffer.channels != 1:
            raise ValueError("cue audio must be mono")


def normalize_cue(samples: np.ndarray, target_db: float = CUE_RMS_DB) -> np.ndarray:
    """Scale to the target RMS, then cap the peak at 1.0 if that would clip."""
    rms = float(np.sqrt(np.mean(samples ** 2)))
    if rms > 0:
        samples = samples * (10.0 ** (target_db / 20.0) / rms)
    peak = float(np.max(np.abs(samples))) if samples.size else 0.0
    if peak > 1.0:
        samples = samples * (0.999 / peak)
    return samples


def _one_pole_lp(x: np.ndarray, fs: int, cutoff: float) -> np.ndarray:
    a = np.exp(-2.0 * np.pi * cutoff / fs)
    return lfilter([1.0 - a], [1.0, -a], x)


def _one_pole_hp(x: np.ndarray, fs: int, cutoff: float) -> np.ndarray:
    return x - _one_pole_lp(x, fs, cutoff)


def _resonator(x: np.ndarray, fs: int, freq: float, bw: float) -> np.ndarray:
    r = np.exp(-np.pi * bw / fs)
    w = 2 * np.pi * min(freq, 0.45 * fs) / fs
    g = (1 - r) * np.sqrt(1 - 2 * r * np.cos(2 * w) + r * r)
    return lfilter([g], [1.0, -2 * r * np.cos(w), r * r], x)


def _recipe_rain(rng, n, fs):
    hiss = _one_pole_hp(_one_pole_hp(rng.standard_normal(n), fs, 2500.0), fs, 2500.0)
    # sparse droplet ticks on top of the hiss bed
    ticks = np.zeros(n)
    n_drops = max(1, int(12 * n / fs))
    ticks[rng.integers(0, n, n_drops)] = rng.uniform(0.5, 1.0, n_drops)
    return hiss + 0.4 * _one_pole_hp(ticks, fs, 3000.0)


def _recipe_wind(rng, n, fs):
    bed = _resonator(rng.standard_normal(n), fs, 400.0, 350.0)
    # slow gust envelope: heavily smoothed noise, kept positive
    gust = _one_pole_lp(rng.standard_normal(n), fs, 0.4)
    gust = 1.0 + gust / (np.max(np.abs(gust)) + 1e-12)
    return bed * gust


def _recipe_thunder(rng, n, fs):
    brown = np.cumsum(rng.standard_normal(n))
    brown -= np.linspace(brown[0], brown[-1], n)  # detrend to kill DC drift
    rumble = _one_pole_lp(_one_pole_lp(brown, fs, 150.0), fs, 150.0)
    t = np.arange(n) / fs
    envelope = np.exp(-t / max(0.4, 0.35 * n / fs))
    crack = np.zeros(n)
    m = min(n, int(0.08 * fs))
    crack[:m] = rng.standard_normal(m) * np.exp(-np.arange(m) / (0.01 * fs))
    return rumble * envelope + 0.15 * _one_pole_lp(crack, fs, 250.0)


def _recipe_footsteps(rng, n, fs, duration_s):
    out = np.zeros(n)
    n_steps = int(round(duration_s * FOOTSTEP_RATE_HZ))
    step_len = min(int(0.09 * fs), n)
    for k in range(n_steps):
        start = int((k / FOOTSTEP_RATE_HZ + 0.05) * fs)
        if start >= n:
            break
        m = min(step_len, n - start)
        thump = _resonator(rng.standard_normal(m), fs, 140.0, 90.0)
        scrape = 0.25 * _one_pole_hp(rng.standard_normal(m), fs, 1500.0)
        burst = (thump + scrape) * np.exp(-np.arange(m) / (0.02 * fs))
        out[start:start + m] += burst
    return out


def _recipe_door(rng, n, fs):
    out = np.zeros(n)
    m = min(n, int(0.35 * fs))
    thump = _resonator(rng.standard_normal(m), fs, 90.0, 60.0)
    creak = 0.3 * _resonator(rng.standard_normal(m), fs, 900.0, 500.0)
    out[:m] = (thump + creak) * np.exp(-np.arange(m) / (0.05 * fs))
    return out


def _recipe_crowd(rng, n, fs):
    out = np.zeros(n)
    for _ in range(12):
        voice = _resonator(rng.standard_normal(n), fs,
                           float(rng.uniform(250, 2800)), 400.0)
        env = _one_pole_lp(rng.standard_normal(n), fs, 1.5)
        env = np.abs(env) / (np.max(np.abs(env)) + 1e-12)
        out += voice * env
    return out


def _recipe_fire(rng, n, fs):
    bed = _one_pole_lp(rng.standard_normal(n), fs, 600.0)
    crackle = np.zeros(n)
    n_pops = max(1, int(8 * n / fs))
    pos = rng.integers(0, max(1, n - int(0.01 * fs)), n_pops)
    for p in pos:
        m = min(int(0.008 * fs), n - p)
        crackle[p:p + m] += rng.uniform(0.4, 1.0) * np.exp(-np.arange(m) / (0.001 * fs))
    return bed + 2.0 * _one_pole_hp(crackle, fs, 2000.0)


def synthesize_procedural(event: str, duration_s: float, seed: int,
                          sample_rate: int = 48000) -> CueAudio:
    """Render an event recipe; deterministic for (event, duration_s, seed)."""
    if event not in PROCEDURAL_EVENTS:
        raise ValueError(f"no procedural recipe for event {event!r}")
    if duration_s <= 0:
        raise ValueError(f"duration_s must be positive, got {duration_s}")

    n = int(round(duration_s * sample_rate))
    rng = np.random.default_rng(
        (seed & 0xFFFFFFFF, zlib.crc32(event.encode("ascii"))))
    if event == "rain":
        raw = _recipe_rain(rng, n, sample_rate)
    elif event == "wind":
        raw = _recipe_wind(rng, n, sample_rate)
    elif event == "thunder":
        raw = _recipe_thunder(rng, n, sample_rate)
    elif event == "footsteps":
        raw = _recipe_footsteps(rng, n, sample_rate, duration_s)
    elif event == "door":
        raw = _recipe_door(rng, n, sample_rate)
    elif event == "crowd":
        raw = _recipe_crowd(rng, n, sample_rate)
    else:
        raw = _recipe_fire(rng, n, sample_rate)

    samples = normalize_cue(raw)
    buf = AudioBuffer(sample_rate, freeze(samples.reshape(1, -1)))
    return CueAudio(cue_id="", buffer=buf, provenance=("procedural", str(seed)))
