"""Higher-order ambisonics: ACN-ordered, SN3D-normalized encode.

Real spherical harmonics up to order 3, hard-coded closed forms. Azimuth is
degrees with 0 = front and positive = listener's left (the ambisonic +Y
axis); elevation positive up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio import AudioBuffer, freeze

MAX_ORDER = 3


@dataclass(frozen=True)
class AmbisonicBuffer:
    """(order+1)^2 channels in ACN order, SN3D normalization."""

    order: int
    channels: np.ndarray  # shape ((order+1)^2, n)
    sample_rate: int

    def __post_init__(self):
        if not (1 <= self.order <= MAX_ORDER):
            raise ValueError(f"order {self.order} outside 1..{MAX_ORDER}")
        arr = self.channels
        if not (isinstance(arr, np.ndarray) and arr.dtype == np.float64
                and not arr.flags.writeable):
            arr = np.array(arr, dtype=np.float64)
            arr.flags.writeable = False
        expected = (self.order + 1) ** 2
        if arr.ndim != 2 or arr.shape[0] != expected:
            raise ValueError(
                f"order {self.order} needs {expected} channels, got {arr.shape}")
        object.__setattr__(self, "channels", arr)

    @property
    def n_samples(self) -> int:
        return self.channels.shape[1]


def sh_gains(azimuth_deg, elevation_deg, order: int) -> np.ndarray:
    """SN3D real spherical harmonics at the given direction(s), ACN order.

    Scalars give shape ((order+1)^2,); arrays broadcast to (..., (order+1)^2).
    """
    if not (1 <= order <= MAX_ORDER):
        raise ValueError(f"order {order} outside 1..{MAX_ORDER}")
    az = np.deg2rad(np.asarray(azimuth_deg, dtype=np.float64))
    el = np.deg2rad(np.asarray(elevation_deg, dtype=np.float64))
    az, el = np.broadcast_arrays(az, el)

    ca, sa = np.cos(az), np.sin(az)
    c2a, s2a = np.cos(2 * az), np.sin(2 * az)
    c3a, s3a = np.cos(3 * az), np.sin(3 * az)
    ce, se = np.cos(el), np.sin(el)

    out = [np.ones_like(az)]                      # ACN 0: W
    out += [sa * ce, se, ca * ce]                 # ACN 1-3: Y, Z, X
    if order >= 2:
        r3 = np.sqrt(3.0) / 2.0
        out += [
            r3 * s2a * ce ** 2,                   # ACN 4: V
            r3 * sa * np.sin(2 * el),             # ACN 5: T
            (3.0 * se ** 2 - 1.0) / 2.0,          # ACN 6: R
            r3 * ca * np.sin(2 * el),             # ACN 7: S
            r3 * c2a * ce ** 2,                   # ACN 8: U
        ]
    if order >= 3:
        out += [
            np.sqrt(5.0 / 8.0) * s3a * ce ** 3,               # ACN 9
            (np.sqrt(15.0) / 2.0) * s2a * se * ce ** 2,       # ACN 10
            np.sqrt(3.0 / 8.0) * sa * ce * (5 * se ** 2 - 1),  # ACN 11
            se * (5 * se ** 2 - 3) / 2.0,                     # ACN 12
            np.sqrt(3.0 / 8.0) * ca * ce * (5 * se ** 2 - 1),  # ACN 13
            (np.sqrt(15.0) / 2.0) * c2a * se * ce ** 2,       # ACN 14
            np.sqrt(5.0 / 8.0) * c3a * ce ** 3,               # ACN 15
        ]
    return np.stack(out, axis=-1)


def acn_degree_order():
    """(l, m) for each ACN index up to MAX_ORDER."""
    pairs = []
    for l in range(MAX_ORDER + 1):
        for m in range(-l, l + 1):
            pairs.append((l, m))
    return pairs


def hoa_encode(mono: AudioBuffer, azimuth_deg: float, elevation_deg: float,
               order: int) -> AmbisonicBuffer:
    """Encode a mono point source; W equals the input (SN3D W gain = 1)."""
    if mono.channels != 1:
        raise ValueError("hoa_encode expects a mono buffer")
    gains = sh_gains(azimuth_deg, elevation_deg, order)
    channels = gains[:, None] * mono.samples[0][None, :]
    return AmbisonicBuffer(order=order, channels=freeze(channels),
                           sample_rate=mono.sample_rate)
