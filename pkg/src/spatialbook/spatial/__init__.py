"""3D rendering engine: HOA encode/decode, head model, motion, SDN reverb."""

from .ambisonics import MAX_ORDER, AmbisonicBuffer, hoa_encode, sh_gains
from .binaural import (N_VIRTUAL_SPEAKERS, SPEED_OF_SOUND, ListenerProfile,
                       decode_feeds, decode_matrix, fractional_delay,
                       hoa_decode, woodworth_itd)
from .propagation import distance_attenuate, doppler_shift, trajectory_value
from .render import (ENCODE_BLOCK, EnvironmentPreset, direction_vector,
                     load_environments, render_cue, room_for_cue)
from .sdn import (N_WALLS, RoomModel, room_impulse_response, scattering_matrix,
                  sdn_reverb)

__all__ = [
    "AmbisonicBuffer", "ENCODE_BLOCK", "EnvironmentPreset", "ListenerProfile",
    "MAX_ORDER", "N_VIRTUAL_SPEAKERS", "N_WALLS", "RoomModel",
    "SPEED_OF_SOUND", "decode_feeds", "decode_matrix", "direction_vector",
    "distance_attenuate", "doppler_shift", "fractional_delay", "hoa_decode",
    "hoa_encode", "load_environments", "render_cue", "room_for_cue",
    "room_impulse_response", "scattering_matrix", "sdn_reverb", "sh_gains",
    "trajectory_value", "woodworth_itd",
]
