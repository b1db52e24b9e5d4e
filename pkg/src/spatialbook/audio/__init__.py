"""Foundational audio types, WAV I/O, and DSP primitives."""

from .buffer import AudioBuffer, ImpulseResponse, Spectrum, freeze
from .dsp import convolve, convolve_arrays, dft, idft, next_pow2, resample, spectrum_of
from .wavio import read_wav, write_wav

CANONICAL_RATE = 48000

__all__ = [
    "AudioBuffer", "ImpulseResponse", "Spectrum", "freeze",
    "convolve", "convolve_arrays", "dft", "idft", "next_pow2", "resample",
    "spectrum_of", "read_wav", "write_wav", "CANONICAL_RATE",
]
