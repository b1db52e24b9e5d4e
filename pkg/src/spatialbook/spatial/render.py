"""Per-cue spatial rendering: motion -> distance -> HOA -> ears, plus reverb.

Pipeline per cue: doppler_shift (when a trajectory is present), then
distance attenuation, then HOA encode (block-wise per 256 samples for
moving sources), then decode to the listener profile. The wet path feeds
the raw cue into the room's scattering network (whose geometry already
carries the source distance) and mixes at the environment's wet/dry ratio;
a zero ratio skips the wet path entirely, keeping the dry render bitwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np
from scipy.signal import lfilter

from ..audio import AudioBuffer, convolve_arrays, freeze
from ..script.model import SpatialSpec
from ..sfx.procedural import CueAudio
from .ambisonics import AmbisonicBuffer, hoa_encode, sh_gains
from .binaural import ListenerProfile, hoa_decode
from .propagation import (_AUDIBLE_CUTOFF, distance_attenuate, doppler_shift,
                          trajectory_value)
from .sdn import RoomModel, room_impulse_response

ENCODE_BLOCK = 256
_POSITION_MARGIN = 0.05  # keep sources at least 5% inside each wall


@dataclass(frozen=True)
class EnvironmentPreset:
    name: str
    dimensions: tuple[float, float, float]
    absorption: tuple[float, ...] | float
    wet_dry: float

    def __post_init__(self):
        if not (0.0 <= self.wet_dry <= 1.0):
            raise ValueError(f"wet_dry {self.wet_dry} outside [0, 1]")


def load_environments(overrides: dict | None = None) -> dict[str, EnvironmentPreset]:
    """Shipped presets, optionally overridden per project config."""
    raw = json.loads(resources.files(__package__)
                     .joinpath("data", "presets.json").read_text("utf-8"))
    if overrides:
        for name, fields in overrides.items():
            raw.setdefault(name, {}).update(fields)
    return {name: EnvironmentPreset(
        name=name, dimensions=tuple(p["dimensions"]),
        absorption=p["absorption"], wet_dry=float(p["wet_dry"]))
        for name, p in raw.items()}


def direction_vector(azimuth_deg: float, elevation_deg: float) -> np.ndarray:
    az, el = np.deg2rad(azimuth_deg), np.deg2rad(elevation_deg)
    return np.array([np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)])


def room_for_cue(preset: EnvironmentPreset, spec: SpatialSpec) -> RoomModel:
    """Place listener near the room center and the source per the cue spec.

    The source clips into the room interior when the requested distance
    exceeds the walls; moving cues use their first keyframe for the room
    geometry (the reverb is a static approximation per cue).
    """
    dims = np.array(preset.dimensions)
    listener = dims / 2.0 + np.array([0.11, 0.07, -0.05])  # avoid exact symmetry
    if spec.trajectory:
        p0 = spec.trajectory[0]
        az, el, dist = p0.azimuth, p0.elevation, p0.distance
    else:
        az, el, dist = spec.azimuth, spec.elevation, spec.distance
    source = listener + dist * direction_vector(az, el)
    lo = dims * _POSITION_MARGIN
    hi = dims * (1.0 - _POSITION_MARGIN)
    source = np.minimum(np.maximum(source, lo), hi)
    if np.linalg.norm(source - listener) < 1e-6:
        source = listener + np.array([0.5, 0.0, 0.0])
    return RoomModel(dimensions=tuple(dims), absorption=preset.absorption,
                     source_pos=tuple(source), listener_pos=tuple(listener))


@lru_cache(maxsize=32)
def _cached_wet_ir(room: RoomModel, sample_rate: int):
    return room_impulse_response(room, sample_rate, include_direct=False)


def _encode_moving(mono: AudioBuffer, spec: SpatialSpec, order: int) -> AmbisonicBuffer:
    """Block-wise encode along the trajectory with per-block distance gain."""
    fs = mono.sample_rate
    x = mono.channel(0)
    n = x.size
    n_ch = (order + 1) ** 2
    channels = np.empty((n_ch, n))
    zi = np.zeros(1)
    for start in range(0, n, ENCODE_BLOCK):
        stop = min(start + ENCODE_BLOCK, n)
        t_mid = (start + stop) / 2.0 / fs
        az = float(trajectory_value(spec.trajectory, t_mid, "azimuth"))
        el = float(trajectory_value(spec.trajectory, t_mid, "elevation"))
        dist = max(float(trajectory_value(spec.trajectory, t_mid, "distance")), 1e-3)
        blk = x[start:stop] / max(dist, 1.0)
        cutoff = _AUDIBLE_CUTOFF / max(dist, 1.0)
        if cutoff < _AUDIBLE_CUTOFF:
            a = np.exp(-2.0 * np.pi * cutoff / fs)
            blk, zi = lfilter([1.0 - a], [1.0, -a], blk, zi=zi)
        else:
            zi = blk[-1:].copy()
        channels[:, start:stop] = sh_gains(az, el, order)[:, None] * blk[None, :]
    return AmbisonicBuffer(order=order, channels=freeze(channels), sample_rate=fs)


def render_cue(cue_audio: CueAudio, spec: SpatialSpec, env: RoomModel,
               profile: ListenerProfile, order: int = 1,
               wet_dry: float = 0.0) -> AudioBuffer:
    """Spatialize one cue to stereo; output extends over the reverb tail."""
    mono = cue_audio.buffer
    fs = mono.sample_rate
    if spec.trajectory:
        moved = doppler_shift(mono, spec.trajectory)
        ambi = _encode_moving(moved, spec, order)
    else:
        attenuated = distance_attenuate(mono, spec.distance)
        ambi = hoa_encode(attenuated, spec.azimuth, spec.elevation, order)
    dry = hoa_decode(ambi, profile)

    if wet_dry <= 0.0:
        return dry

    wet_ir = _cached_wet_ir(env, fs)
    wet_src = (doppler_shift(mono, spec.trajectory) if spec.trajectory else mono)
    n_out = wet_src.n_samples + wet_ir.n_taps - 1
    out = np.zeros((2, n_out))
    out[:, :dry.n_samples] = dry.samples
    for ch in range(2):
        out[ch] += wet_dry * convolve_arrays(wet_src.channel(0), wet_ir.taps[ch])
    return AudioBuffer(fs, freeze(out))
