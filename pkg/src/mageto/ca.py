"""The Mageto automaton: parameters, state, the serial update rule and mixing.

Cells are unsigned words of 32 or 64 bits. One *evolution* updates every
cell once, left to right; each update threads a running carry to the next:

    carry ^= A[i+1]   if A[i+2] > A[i+3]   else   carry ^= ~A[i+1]
    A[i]  ^= carry
    carry += d        (mod 2**b)

Neighbour indices wrap around the array and see the array as it is at that
moment, so the last three updates of an evolution read cells already updated
in the same evolution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .errors import NotMixed, SeedTooLong

DEFAULT_CELLS = 128
DEFAULT_WIDTH = 32
DEFAULT_CARRY = 987654321  # 0x3ADE68B1


class Mode(str, enum.Enum):
    BRANCHING = "branching"
    BRANCHLESS = "branchless"


def alternating_constant(width: int) -> int:
    """The 0101... bit pattern filling `width` bits."""
    return int("01" * (width // 2), 2)


@dataclass(frozen=True)
class CaParams:
    a: int = DEFAULT_CELLS
    b: int = DEFAULT_WIDTH
    c0: int = DEFAULT_CARRY
    d: int | None = None

    def __post_init__(self):
        if self.b not in (32, 64):
            raise ValueError(f"cell width must be 32 or 64 bits, got {self.b}")
        if self.a < 4:
            raise ValueError(f"need at least 4 cells, got {self.a}")
        if self.d is None:
            object.__setattr__(self, "d", alternating_constant(self.b))
        if self.d == 0:
            raise ValueError("d must be nonzero")
        if not (0 <= self.c0 <= self.mask and 0 < self.d <= self.mask):
            raise ValueError("c0 and d must fit in the cell width")

    @property
    def e(self) -> int:
        """Mixing length in cell updates (four evolutions)."""
        return 4 * self.a

    @property
    def mask(self) -> int:
        return (1 << self.b) - 1

    @property
    def cell_bytes(self) -> int:
        return self.b // 8

    @property
    def seed_capacity(self) -> int:
        return self.a * self.b // 8


@dataclass(frozen=True)
class SeedMaterial:
    key: bytes = b""
    salt: bytes = b""
    extra: bytes = b""

    def concat(self) -> bytes:
        return bytes(self.key) + bytes(self.salt) + bytes(self.extra)

    @classmethod
    def coerce(cls, seed) -> "SeedMaterial":
        if isinstance(seed, SeedMaterial):
            return seed
        if isinstance(seed, str):
            seed = seed.encode("utf-8")
        return cls(key=bytes(seed))


@dataclass(frozen=True)
class BranchRecord:
    """Branch decisions of one evolution: 0 for the `>` branch, 1 otherwise."""

    bits: tuple[int, ...]

    def __len__(self):
        return len(self.bits)


@dataclass(eq=False)
class CaState:
    params: CaParams
    cells: np.ndarray  # uint64, one word per cell
    carry: int
    updates_done: int = 0
    last_branches: BranchRecord | None = None
    # update count at which keystream output starts; None until mixed
    origin: int | None = None
    _partial: list = field(default_factory=list, repr=False)

    @property
    def position(self) -> int:
        """Index of the cell the next update will touch."""
        return self.updates_done % self.params.a

    @property
    def mixed(self) -> bool:
        return self.origin is not None

    def require_mixed(self):
        if not self.mixed:
            raise NotMixed("state must be mixed before producing keystream")

    def copy(self) -> "CaState":
        return CaState(self.params, self.cells.copy(), self.carry, self.updates_done,
                       self.last_branches, self.origin, list(self._partial))

    def snapshot(self):
        return tuple(int(c) for c in self.cells), self.carry, self.updates_done


def serialize_cell(cell: int, width: int = DEFAULT_WIDTH) -> bytes:
    """Big-endian bytes of one cell: the first byte is the most significant."""
    return int(cell).to_bytes(width // 8, "big")


def serialize_cells(cells: np.ndarray, width: int = DEFAULT_WIDTH) -> bytes:
    dtype = ">u4" if width == 32 else ">u8"
    return np.asarray(cells, dtype=np.uint64).astype(dtype).tobytes()


def ct_greater(x: int, y: int, width: int = DEFAULT_WIDTH) -> int:
    """All-ones word if x > y (unsigned) else 0, with no data-dependent branch."""
    mask = (1 << width) - 1
    r = _kernel.ct_greater(np.uint64(x & mask), np.uint64(y & mask), np.uint64(width - 1))
    return int(r) & mask


def init_state(seed, params: CaParams | None = None) -> CaState:
    """Zero the cells, copy the seed bytes over the front, set the carry to c0.

    No mixing happens here; call `mix` before drawing keystream.
    """
    params = params or CaParams()
    raw = SeedMaterial.coerce(seed).concat()
    if len(raw) > params.seed_capacity:
        raise SeedTooLong(f"seed is {len(raw)} bytes, at most {params.seed_capacity} fit")
    buf = raw.ljust(params.seed_capacity, b"\0")
    dtype = ">u4" if params.b == 32 else ">u8"
    cells = np.frombuffer(buf, dtype=dtype).astype(np.uint64)
    return CaState(params, cells, params.c0)


def update_cell(state: CaState, i: int | None = None, mode: Mode = Mode.BRANCHING) -> int:
    """Update one cell in place with plain integer arithmetic; return the branch bit.

    This is the slow reference path. `i` defaults to the next cell in order.
    """
    p = state.params
    a, mask = p.a, p.mask
    if i is None:
        i = state.position
    if not 0 <= i < a:
        raise IndexError(f"cell index {i} out of range for {a} cells")
    cells = state.cells
    a1, a2, a3 = (int(cells[(i + k) % a]) for k in (1, 2, 3))
    if Mode(mode) is Mode.BRANCHLESS:
        gt = ct_greater(a2, a3, p.b)
        v, w = a1, ~a1 & mask
        carry = state.carry ^ ((v & gt) | (w & ~gt & mask))
        bit = ~gt & 1
    elif a2 > a3:
        carry, bit = state.carry ^ a1, 0
    else:
        carry, bit = state.carry ^ (~a1 & mask), 1
    cells[i] = int(cells[i]) ^ carry
    state.carry = (carry + p.d) & mask
    _record_bits(state, np.array([bit], dtype=np.uint8))
    state.updates_done += 1
    return bit


def _record_bits(state: CaState, bits: np.ndarray):
    """Fold new branch bits into the current evolution; keep the last complete one."""
    a = state.params.a
    pending = len(state._partial)
    total = pending + len(bits)
    if total < a:
        state._partial.extend(bits.tolist())
        return
    # end of the last complete evolution, in `bits` coordinates
    end = total // a * a - pending
    if end >= a:
        last = bits[end - a:end].tolist()
    else:
        last = state._partial + bits[:end].tolist()
    state.last_branches = BranchRecord(tuple(last))
    state._partial = bits[end:].tolist()


@dataclass
class StepTrace:
    """Per-update record of a run: updated cell, carry used, branch bit."""

    cells: np.ndarray
    carries: np.ndarray
    bits: np.ndarray
    start: int  # cell index of the first update


def advance(state: CaState, n: int, mode: Mode = Mode.BRANCHING) -> StepTrace:
    """Run `n` serial updates from the current position with the compiled kernel."""
    p = state.params
    out_cells = np.empty(n, dtype=np.uint64)
    out_carries = np.empty(n, dtype=np.uint64)
    out_bits = np.empty(n, dtype=np.uint8)
    start = state.position
    if n:
        carry = _kernel.advance(
            state.cells, np.uint64(state.carry), np.uint64(p.d), np.uint64(p.mask),
            np.uint64(p.b - 1), start, n, Mode(mode) is Mode.BRANCHLESS,
            out_cells, out_carries, out_bits)
        state.carry = int(carry)
        _record_bits(state, out_bits)
        state.updates_done += n
    return StepTrace(out_cells, out_carries, out_bits, start)


def evolve(state: CaState, mode: Mode = Mode.BRANCHING) -> BranchRecord:
    """Update cells 0..a-1 once, in order, and return the branch record."""
    if state.position:
        raise ValueError("evolve needs a state aligned on an evolution boundary")
    advance(state, state.params.a, mode)
    return state.last_branches


def mix(state: CaState, mode: Mode = Mode.BRANCHING) -> None:
    """Run the e = 4a discarded mixing updates and mark where output starts."""
    for _ in range(4):
        evolve(state, mode)
    state.origin = state.updates_done


def mixed_state(seed, params: CaParams | None = None, mode: Mode = Mode.BRANCHING) -> CaState:
    state = init_state(seed, params)
    mix(state, mode)
    return state


def evolution_history(seed, ncells: int, params: CaParams | None = None,
                      mixed: bool = True, mode: Mode = Mode.BRANCHING) -> bytes:
    """The next `ncells` updated cells, serialized in update order."""
    state = init_state(seed, params)
    if mixed:
        mix(state, mode)
    return serialize_cells(advance(state, ncells, mode).cells, state.params.b)
