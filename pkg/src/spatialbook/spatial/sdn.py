"""Scattering-delay-network room reverberation.

Standard construction: one scattering node per wall, placed at the
first-order reflection point between source and listener; bidirectional
delay lines between every node pair with delays set by geometry; each node
scatters its five incoming wave variables through A = (2/5)J - I (lossless,
orthogonal) and applies the wall reflection factor sqrt(1 - absorption) per
bounce. Source-to-node, node-to-mic, and direct paths carry 1/distance
style gains so the first-order reflections land at physical amplitudes.

The loop is simulated block-wise: every feedback path has at least the
minimum inter-node delay, so blocks up to that length can be processed
with plain array ops without violating causality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio import AudioBuffer, ImpulseResponse, convolve, freeze

SPEED_OF_SOUND = 343.0
N_WALLS = 6
WALL_NAMES = ("x0", "x1", "y0", "y1", "z0", "z1")

_MAX_IR_SECONDS = 4.0
_MIN_IR_SECONDS = 0.3


@dataclass(frozen=True)
class RoomModel:
    dimensions: tuple[float, float, float]
    absorption: tuple[float, ...]          # per wall, order WALL_NAMES
    source_pos: tuple[float, float, float]
    listener_pos: tuple[float, float, float]

    def __post_init__(self):
        dims = tuple(float(v) for v in self.dimensions)
        if len(dims) != 3 or min(dims) <= 0:
            raise ValueError(f"room dimensions must be 3 positive lengths, got {dims}")
        absorption = self.absorption
        if np.isscalar(absorption):
            absorption = (float(absorption),) * N_WALLS
        absorption = tuple(float(a) for a in absorption)
        if len(absorption) != N_WALLS:
            raise ValueError(f"need {N_WALLS} wall absorptions, got {len(absorption)}")
        if any(not (0.0 < a <= 1.0) for a in absorption):
            raise ValueError(f"absorption must lie in (0, 1], got {absorption}")
        for name, pos in (("source", self.source_pos), ("listener", self.listener_pos)):
            p = tuple(float(v) for v in pos)
            if len(p) != 3 or any(not (0.0 < p[i] < dims[i]) for i in range(3)):
                raise ValueError(f"{name} position {p} not strictly inside room {dims}")
        object.__setattr__(self, "dimensions", dims)
        object.__setattr__(self, "absorption", absorption)
        object.__setattr__(self, "source_pos", tuple(float(v) for v in self.source_pos))
        object.__setattr__(self, "listener_pos", tuple(float(v) for v in self.listener_pos))

    def sabine_rt60(self) -> float:
        lx, ly, lz = self.dimensions
        areas = (ly * lz, ly * lz, lx * lz, lx * lz, lx * ly, lx * ly)
        absorbing = sum(a * s for a, s in zip(self.absorption, areas))
        return 0.161 * (lx * ly * lz) / max(absorbing, 1e-9)


def scattering_matrix(n: int = N_WALLS - 1) -> np.ndarray:
    """Isotropic lossless scattering: (2/n)J - I (orthogonal for any n)."""
    return (2.0 / n) * np.ones((n, n)) - np.eye(n)


def _reflection_point(wall: int, source: np.ndarray, listener: np.ndarray,
                      dims: np.ndarray) -> np.ndarray:
    axis = wall // 2
    plane = 0.0 if wall % 2 == 0 else dims[axis]
    image = source.copy()
    image[axis] = 2.0 * plane - image[axis]
    denom = listener[axis] - image[axis]
    t = 0.5 if abs(denom) < 1e-12 else (plane - image[axis]) / denom
    t = min(max(t, 0.0), 1.0)
    point = image + t * (listener - image)
    point[axis] = plane
    # keep the in-plane coordinates inside the wall rectangle
    for other in range(3):
        if other != axis:
            point[other] = min(max(point[other], 0.0), dims[other])
    return point


def _pan_gains(direction: np.ndarray) -> tuple[float, float]:
    """Constant-power stereo pan from a listener-frame direction (+y = left)."""
    norm = np.linalg.norm(direction[:2])
    if norm < 1e-12:
        s = 0.0
    else:
        s = direction[1] / np.linalg.norm(direction)
    left = np.sqrt((1.0 + s) / 2.0)
    right = np.sqrt((1.0 - s) / 2.0)
    return float(left), float(right)


def room_impulse_response(room: RoomModel, sample_rate: int = 48000,
                          include_direct: bool = True,
                          max_seconds: float = _MAX_IR_SECONDS) -> ImpulseResponse:
    """Stereo SDN impulse response for the room's source/listener pair."""
    dims = np.array(room.dimensions)
    src = np.array(room.source_pos)
    mic = np.array(room.listener_pos)
    nodes = np.stack([_reflection_point(w, src, mic, dims) for w in range(N_WALLS)])
    beta = np.sqrt(1.0 - np.array(room.absorption))

    d_sn = np.linalg.norm(nodes - src, axis=1)          # source -> node
    d_nm = np.linalg.norm(nodes - mic, axis=1)          # node -> mic
    d_sm = float(np.linalg.norm(mic - src))             # direct
    d_nn = np.linalg.norm(nodes[:, None, :] - nodes[None, :, :], axis=2)

    to_samples = sample_rate / SPEED_OF_SOUND
    del_sn = np.maximum(1, np.round(d_sn * to_samples).astype(int))
    del_nm = np.maximum(1, np.round(d_nm * to_samples).astype(int))
    del_sm = max(1, int(round(d_sm * to_samples)))
    del_nn = np.maximum(1, np.round(d_nn * to_samples).astype(int))

    g_sn = 1.0 / np.maximum(d_sn, 1.0)
    g_nm = 1.0 / (1.0 + d_nm / np.maximum(d_sn, 1e-3))
    g_sm = 1.0 / max(d_sm, 1.0)

    duration = min(max(1.5 * room.sabine_rt60() + d_sm / SPEED_OF_SOUND,
                       _MIN_IR_SECONDS), max_seconds)
    n_total = int(round(duration * sample_rate))

    others = [[j for j in range(N_WALLS) if j != i] for i in range(N_WALLS)]
    # slot_of[j][i]: position of sender i in node j's incoming stack
    slot_of = [{i: k for k, i in enumerate(others[j])} for j in range(N_WALLS)]
    scatter = scattering_matrix(N_WALLS - 1)

    margin = int(del_nn.max()) + 1
    incoming = np.zeros((N_WALLS, N_WALLS - 1, n_total + margin))
    source_feed = np.zeros((N_WALLS, n_total))
    for k in range(N_WALLS):
        if del_sn[k] < n_total:
            source_feed[k, del_sn[k]] = g_sn[k]

    out = np.zeros((2, n_total + margin))
    pans = [_pan_gains(nodes[k] - mic) for k in range(N_WALLS)]

    feedback_delays = del_nn[~np.eye(N_WALLS, dtype=bool)]
    block = max(1, int(feedback_delays.min()))

    for t0 in range(0, n_total, block):
        t1 = min(t0 + block, n_total)
        for j in range(N_WALLS):
            waves = incoming[j, :, t0:t1] + 0.5 * source_feed[j, t0:t1]
            node_pressure = (2.0 / (N_WALLS - 1)) * waves.sum(axis=0)
            tap = g_nm[j] * beta[j] * node_pressure
            gl, gr = pans[j]
            out[0, t0 + del_nm[j]:t1 + del_nm[j]] += gl * tap
            out[1, t0 + del_nm[j]:t1 + del_nm[j]] += gr * tap
            scattered = beta[j] * (scatter @ waves)
            for row, i in enumerate(others[j]):
                d = del_nn[j, i]
                incoming[i, slot_of[i][j], t0 + d:t1 + d] += scattered[row]

    if include_direct and del_sm < n_total:
        gl, gr = _pan_gains(src - mic)
        out[0, del_sm] += gl * g_sm
        out[1, del_sm] += gr * g_sm

    return ImpulseResponse(sample_rate, freeze(out[:, :n_total]))


def sdn_reverb(dry: AudioBuffer, room: RoomModel,
               include_direct: bool = True) -> AudioBuffer:
    """Convolve a (mono) dry signal with the room's SDN response; stereo out."""
    mono = dry.to_mono()
    ir = room_impulse_response(room, mono.sample_rate, include_direct)
    return convolve(mono, ir)
