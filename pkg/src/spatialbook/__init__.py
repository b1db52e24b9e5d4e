"""spatialbook: script in, spatialized audiobook out.

A batch pipeline that parses an annotated narrative script, synthesizes
timed narration, generates or retrieves sound effects, spatializes them
with higher-order ambisonics and scattering-delay-network reverb, aligns
them to the realized narration, and mixes a mastered stereo output under
an iterative quality-correction loop.
"""

__version__ = "0.1.0"
