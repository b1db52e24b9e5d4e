"""Sound-effect agent: library retrieval with procedural fallback."""

from .library import (AssetEntry, AssetIndex, index_assets, load_asset_audio,
                      retrieve_asset)
from .procedural import (CUE_RMS_DB, FOOTSTEP_RATE_HZ, PROCEDURAL_EVENTS,
                         CueAudio, normalize_cue, synthesize_procedural)

__all__ = [
    "AssetEntry", "AssetIndex", "CUE_RMS_DB", "CueAudio", "FOOTSTEP_RATE_HZ",
    "PROCEDURAL_EVENTS", "index_assets", "load_asset_audio", "normalize_cue",
    "retrieve_asset", "synthesize_procedural",
]
