"""Secure keystreams built on a mixed automaton.

v1  emits one byte of each updated cell, picked by an extraction pattern.
v2  XORs the full cell streams of two (or three) automata seeded with
    different IVs.
v3  XORs each updated cell with a mask packed from the branch decisions of
    the previous evolution.

The stream classes buffer the tail of the last update, so consecutive reads
concatenate to exactly what a single larger read would have produced. The
module-level ``*_keystream`` functions are one-shot wrappers around them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .ca import CaParams, CaState, Mode, BranchRecord, SeedMaterial, advance, init_state, mix
from .errors import PatternLocked

ALPHA_IV = b"1234567890/3"
BETA_IV = b"9876543210/3"
GAMMA_IV = b"1928374650/3"

MASK_BITS = 128


class ExtractionPattern(str, enum.Enum):
    BROKEN5 = "broken5"
    BROKEN_PAIRS = "brokenpairs"
    SECURE = "secure"

    @property
    def broken(self) -> bool:
        return self is not ExtractionPattern.SECURE

    @property
    def bytes_per_cell(self) -> int:
        return 2 if self is ExtractionPattern.BROKEN_PAIRS else 1

    def offsets(self, ordinals: np.ndarray, cell_bytes: int = 4) -> np.ndarray:
        """Byte offsets (0 = most significant) taken from each cell ordinal.

        Returns an array of shape (len(ordinals), bytes_per_cell).
        """
        k = np.asarray(ordinals, dtype=np.int64)[:, None]
        if self is ExtractionPattern.BROKEN5:
            return np.zeros_like(k)
        if self is ExtractionPattern.BROKEN_PAIRS:
            return (k % 2) * 2 + np.arange(2)
        return k % cell_bytes

    def positions(self, ncells: int, cell_bytes: int = 4) -> list[int]:
        """1-indexed positions in the serialized cell stream, first `ncells` cells."""
        k = np.arange(ncells)
        pos = k[:, None] * cell_bytes + self.offsets(k, cell_bytes) + 1
        return pos.ravel().tolist()


class _Buffered:
    """Holds the surplus bytes of the last update between reads."""

    def __init__(self):
        self._spill = b""

    def _produce(self, n: int) -> bytes:
        raise NotImplementedError

    def read(self, n: int) -> bytes:
        if n < 0:
            raise ValueError("byte count must be >= 0")
        out = self._spill[:n]
        self._spill = self._spill[n:]
        need = n - len(out)
        if need:
            fresh = self._produce(need)
            out += fresh[:need]
            self._spill = fresh[need:]
        return out


def _be_bytes(words: np.ndarray, width: int) -> np.ndarray:
    """(n, width/8) uint8 view of big-endian words."""
    dtype = ">u4" if width == 32 else ">u8"
    return words.astype(dtype).view(np.uint8).reshape(len(words), width // 8)


class V1Stream(_Buffered):
    def __init__(self, state: CaState, pattern=ExtractionPattern.SECURE,
                 unlock_analysis: bool = False, mode: Mode = Mode.BRANCHING):
        super().__init__()
        pattern = ExtractionPattern(pattern)
        if pattern.broken and not unlock_analysis:
            raise PatternLocked(f"pattern {pattern.value!r} is broken; analysis use only")
        state.require_mixed()
        self.state, self.pattern, self.mode = state, pattern, Mode(mode)

    def _produce(self, n):
        st = self.state
        per = self.pattern.bytes_per_cell
        updates = -(-n // per)
        first = st.updates_done - st.origin
        tr = advance(st, updates, self.mode)
        cb = st.params.cell_bytes
        offs = self.pattern.offsets(np.arange(first, first + updates), cb)
        raw = _be_bytes(tr.cells, st.params.b)
        return raw[np.arange(updates)[:, None], offs].tobytes()


def v1_keystream(state: CaState, pattern=ExtractionPattern.SECURE, n: int = 0,
                 unlock_analysis: bool = False, mode: Mode = Mode.BRANCHING) -> bytes:
    return V1Stream(state, pattern, unlock_analysis, mode).read(n)


@dataclass(eq=False)
class CombinedState(_Buffered):
    alpha: CaState
    beta: CaState
    gamma: CaState | None = None
    mode: Mode = Mode.BRANCHING
    _spill: bytes = field(default=b"", repr=False)

    def __post_init__(self):
        members = self.members
        if any(m.params != self.alpha.params for m in members):
            raise ValueError("combined streams must share parameters")
        for m in members:
            m.require_mixed()

    @property
    def members(self):
        return [m for m in (self.alpha, self.beta, self.gamma) if m is not None]

    def _words(self, updates: int):
        traces = [advance(m, updates, self.mode) for m in self.members]
        out = traces[0].cells.copy()
        for t in traces[1:]:
            out ^= t.cells
        return out, traces

    def _produce(self, n):
        cb = self.alpha.params.cell_bytes
        out, _ = self._words(-(-n // cb))
        return _be_bytes(out, self.alpha.params.b).tobytes()


def v2_init(key: bytes = b"", salt: bytes = b"", extra: bytes = b"",
            params: CaParams | None = None, triple: bool = False,
            mode: Mode = Mode.BRANCHING) -> CombinedState:
    """Seed alpha/beta (and optionally gamma) with key || salt || extra || IV and mix them."""
    base = bytes(key) + bytes(salt) + bytes(extra)
    ivs = [ALPHA_IV, BETA_IV] + ([GAMMA_IV] if triple else [])
    members = []
    for iv in ivs:
        st = init_state(SeedMaterial(base, b"", iv), params)
        mix(st, mode)
        members.append(st)
    return CombinedState(*members, mode=mode)


def v2_keystream(cs: CombinedState, n: int) -> bytes:
    return cs.read(n)


@dataclass(frozen=True)
class MaskArray:
    words: tuple[int, ...]
    width: int = 32


def v3_pack_mask(rec, width: int = 32) -> MaskArray:
    """Pack 128 branch bits into mask words, first bit = MSB of the first word."""
    bits = rec.bits if isinstance(rec, BranchRecord) else tuple(rec)
    if len(bits) != MASK_BITS:
        raise ValueError(f"mask needs exactly {MASK_BITS} branch bits, got {len(bits)}")
    words = tuple(int("".join(str(int(b)) for b in bits[i:i + width]), 2)
                  for i in range(0, MASK_BITS, width))
    return MaskArray(words, width)


def _pack_many(bits: np.ndarray, width: int) -> np.ndarray:
    """Vectorised v3_pack_mask over rows of a (k, 128) bit matrix."""
    packed = np.packbits(bits.astype(np.uint8), axis=1)  # (k, 16) bytes, MSB first
    dtype = ">u4" if width == 32 else ">u8"
    return packed.view(dtype).astype(np.uint64)


class V3Stream(_Buffered):
    def __init__(self, state: CaState, mode: Mode = Mode.BRANCHING):
        super().__init__()
        state.require_mixed()
        if state.params.a != MASK_BITS:
            raise ValueError(f"v3 needs {MASK_BITS} cells to fill its mask")
        self.state, self.mode = state, Mode(mode)

    def _words(self, updates: int):
        """Masked output words plus the raw trace and per-update mask words."""
        st = self.state
        a, b = st.params.a, st.params.b
        start = st.position
        if updates == 0:
            empty = np.empty(0, dtype=np.uint64)
            return empty, advance(st, 0, self.mode), empty
        prev = np.array(st.last_branches.bits, dtype=np.uint8)
        partial = np.array(st._partial, dtype=np.uint8)
        tr = advance(st, updates, self.mode)
        # branch bits from the start of the current evolution onwards
        bits = np.concatenate([partial, tr.bits])
        nevo = (start + updates - 1) // a + 1
        rows = np.concatenate([prev[None, :], bits[:(nevo - 1) * a].reshape(nevo - 1, a)])
        masks = _pack_many(rows, b)
        nwords = masks.shape[1]
        g = start + np.arange(updates)
        per_update = masks[g // a, (g % a) % nwords]
        return tr.cells ^ per_update, tr, per_update

    def _produce(self, n):
        cb = self.state.params.cell_bytes
        out, _, _ = self._words(-(-n // cb))
        return _be_bytes(out, self.state.params.b).tobytes()


def v3_keystream(state: CaState, n: int, mode: Mode = Mode.BRANCHING) -> bytes:
    return V3Stream(state, mode).read(n)


class Variant(str, enum.Enum):
    V1 = "v1"
    V2 = "v2"
    V2_TRIPLE = "v2-triple"
    V3 = "v3"


@dataclass(frozen=True)
class KeystreamVariant:
    tag: Variant = Variant.V3
    pattern: ExtractionPattern = ExtractionPattern.SECURE

    def __post_init__(self):
        object.__setattr__(self, "tag", Variant(self.tag))
        object.__setattr__(self, "pattern", ExtractionPattern(self.pattern))

    @property
    def label(self) -> str:
        if self.tag is Variant.V1:
            return f"v1-{self.pattern.value}"
        return self.tag.value

    def open(self, seed, params: CaParams | None = None, mode: Mode = Mode.BRANCHING,
             unlock_analysis: bool = False):
        """A fresh, mixed stream object for `seed` with a ``read(n)`` method."""
        seed = SeedMaterial.coerce(seed)
        if self.tag in (Variant.V2, Variant.V2_TRIPLE):
            return v2_init(seed.key, seed.salt, seed.extra, params,
                           triple=self.tag is Variant.V2_TRIPLE, mode=mode)
        state = init_state(seed, params)
        mix(state, mode)
        if self.tag is Variant.V1:
            return V1Stream(state, self.pattern, unlock_analysis, mode)
        return V3Stream(state, mode)


def keystream(variant: KeystreamVariant, seed, n: int, params: CaParams | None = None,
              mode: Mode = Mode.BRANCHING, unlock_analysis: bool = False) -> bytes:
    return variant.open(seed, params, mode, unlock_analysis).read(n)


@dataclass
class V3Trace:
    """Per evolution: updated cells, mask words in force, and output words."""

    cells: np.ndarray  # (E, a)
    masks: np.ndarray  # (E, words)
    outputs: np.ndarray  # (E, a)
    width: int = 32


@dataclass
class V2Trace:
    """Per evolution: XOR carries of each member and combined output words."""

    carries: list  # one (E, a) array per member
    outputs: np.ndarray  # (E, a)
    width: int = 32


def capture_v3_trace(state: CaState, evolutions: int, mode: Mode = Mode.BRANCHING) -> V3Trace:
    if state.position:
        raise ValueError("trace capture needs a state aligned on an evolution boundary")
    a = state.params.a
    gen = V3Stream(state, mode)
    out, tr, per_update = gen._words(evolutions * a)
    nwords = MASK_BITS // state.params.b
    masks = per_update.reshape(evolutions, a)[:, :nwords]
    return V3Trace(tr.cells.reshape(evolutions, a), masks.copy(),
                   out.reshape(evolutions, a), state.params.b)


def capture_v2_trace(cs: CombinedState, evolutions: int) -> V2Trace:
    if cs.alpha.position:
        raise ValueError("trace capture needs states aligned on an evolution boundary")
    a = cs.alpha.params.a
    out, traces = cs._words(evolutions * a)
    return V2Trace([t.carries.reshape(evolutions, a) for t in traces],
                   out.reshape(evolutions, a), cs.alpha.params.b)
