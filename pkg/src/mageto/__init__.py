"""Mageto: keystreams from a one-dimensional cellular automaton of machine words."""

from .ca import (
    BranchRecord,
    CaParams,
    CaState,
    Mode,
    SeedMaterial,
    ct_greater,
    evolve,
    init_state,
    mix,
    mixed_state,
    serialize_cell,
    update_cell,
)
from .errors import DataTooShort, InsufficientData, MagetoError, NotMixed, PatternLocked, SeedTooLong
from .variants import (
    CombinedState,
    ExtractionPattern,
    KeystreamVariant,
    MaskArray,
    V1Stream,
    V3Stream,
    v1_keystream,
    v2_init,
    v2_keystream,
    v3_keystream,
    v3_pack_mask,
)

__version__ = "0.1.0"
