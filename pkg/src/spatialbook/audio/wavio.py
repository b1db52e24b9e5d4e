"""WAV (RIFF) reading and writing.

Supports PCM 16/24-bit and IEEE float32, 1-2 channels. Parsed by hand so that
malformed headers, unsupported codecs, and truncated data each get a distinct
diagnostic, and so the writer controls the byte-exact header layout.

PCM writes reject samples outside [-1, 1]; limiting is the mixer's job, not a
silent saturation here.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from ..errors import WavClipError, WavCodecError, WavDataError, WavHeaderError
from .buffer import AudioBuffer, freeze

FORMAT_PCM = 1
FORMAT_IEEE_FLOAT = 3

_SCALE_16 = 32768.0
_SCALE_24 = 8388608.0


def read_wav(path) -> AudioBuffer:
    """Read a RIFF/WAVE file into a float64 buffer scaled to [-1, 1]."""
    raw = Path(path).read_bytes()
    if len(raw) < 12:
        raise WavHeaderError(f"{path}: too short for a RIFF header ({len(raw)} bytes)")
    if raw[0:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise WavHeaderError(f"{path}: not a RIFF/WAVE file")

    fmt = None
    data = None
    pos = 12
    while pos + 8 <= len(raw):
        cid = raw[pos:pos + 4]
        (size,) = struct.unpack_from("<I", raw, pos + 4)
        body = raw[pos + 8:pos + 8 + size]
        if cid == b"fmt ":
            if size < 16 or len(body) < 16:
                raise WavHeaderError(f"{path}: fmt chunk too short ({size} bytes)")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            if len(body) < size:
                raise WavDataError(
                    f"{path}: data chunk truncated ({len(body)} of {size} bytes)")
            data = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None:
        raise WavHeaderError(f"{path}: missing fmt chunk")
    if data is None:
        raise WavDataError(f"{path}: missing data chunk")

    tag, channels, rate, _byte_rate, block_align, bits = fmt
    if tag not in (FORMAT_PCM, FORMAT_IEEE_FLOAT):
        raise WavCodecError(f"{path}: unsupported format tag {tag}")
    if channels not in (1, 2):
        raise WavCodecError(f"{path}: unsupported channel count {channels}")
    if tag == FORMAT_PCM and bits not in (16, 24):
        raise WavCodecError(f"{path}: unsupported PCM depth {bits}")
    if tag == FORMAT_IEEE_FLOAT and bits != 32:
        raise WavCodecError(f"{path}: unsupported float depth {bits}")
    expected_align = channels * bits // 8
    if block_align != expected_align:
        raise WavHeaderError(
            f"{path}: block align {block_align} inconsistent with {channels}ch/{bits}bit")
    if len(data) % expected_align != 0:
        raise WavDataError(
            f"{path}: data length {len(data)} is not a whole number of frames")

    n_frames = len(data) // expected_align
    if tag == FORMAT_IEEE_FLOAT:
        flat = np.frombuffer(data, dtype="<f4").astype(np.float64)
    elif bits == 16:
        flat = np.frombuffer(data, dtype="<i2").astype(np.float64) / _SCALE_16
    else:  # 24-bit packed
        b = np.frombuffer(data, dtype=np.uint8).reshape(-1, 3)
        ints = (b[:, 0].astype(np.int32)
                | (b[:, 1].astype(np.int32) << 8)
                | (b[:, 2].astype(np.int32) << 16))
        ints = np.where(ints >= 1 << 23, ints - (1 << 24), ints)
        flat = ints.astype(np.float64) / _SCALE_24

    planar = flat.reshape(n_frames, channels).T.copy()
    return AudioBuffer(rate, freeze(planar))


def write_wav(buf: AudioBuffer, path, format: str = "float32") -> None:
    """Write a buffer to a WAV file in pcm16, pcm24, or float32 layout."""
    if format not in ("pcm16", "pcm24", "float32"):
        raise ValueError(f"unknown format {format!r}")
    interleaved = buf.samples.T  # (n, channels)

    if format == "float32":
        payload = interleaved.astype("<f4").tobytes()
        tag, bits = FORMAT_IEEE_FLOAT, 32
    else:
        peak = np.max(np.abs(interleaved)) if interleaved.size else 0.0
        if peak > 1.0:
            raise WavClipError(
                f"sample peak {peak:.6f} exceeds [-1, 1]; limit before writing {format}")
        if format == "pcm16":
            ints = np.clip(np.round(interleaved * _SCALE_16), -32768, 32767)
            payload = ints.astype("<i2").tobytes()
            tag, bits = FORMAT_PCM, 16
        else:
            ints = np.clip(np.round(interleaved * _SCALE_24),
                           -_SCALE_24, _SCALE_24 - 1).astype(np.int32)
            b = np.empty((ints.size, 3), dtype=np.uint8)
            flat = ints.reshape(-1)
            b[:, 0] = flat & 0xFF
            b[:, 1] = (flat >> 8) & 0xFF
            b[:, 2] = (flat >> 16) & 0xFF
            payload = b.tobytes()
            tag, bits = FORMAT_PCM, 24

    channels = buf.channels
    block_align = channels * bits // 8
    byte_rate = buf.sample_rate * block_align
    fmt_chunk = struct.pack("<HHIIHH", tag, channels, buf.sample_rate,
                            byte_rate, block_align, bits)
    chunks = [(b"fmt ", fmt_chunk)]
    if tag == FORMAT_IEEE_FLOAT:
        chunks.append((b"fact", struct.pack("<I", buf.n_samples)))
    chunks.append((b"data", payload))

    body = bytearray(b"WAVE")
    for cid, chunk in chunks:
        body += cid + struct.pack("<I", len(chunk)) + chunk
        if len(chunk) & 1:
            body += b"\x00"
    blob = b"RIFF" + struct.pack("<I", len(body)) + bytes(body)
    Path(path).write_bytes(blob)
