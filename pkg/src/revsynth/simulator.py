"""Bit-exact evaluation of circuits on basis states.

Two evaluation paths are provided:

* single state: a state is a Python ``int`` whose bit ``w`` is the value on
  wire ``w``.  Python integers are unbounded, so circuits wider than a
  machine word need no special handling.
* bit-sliced: every wire carries a ``2**n``-bit mask whose bit ``x`` is the
  wire's value when the circuit runs on input word ``x``.  One gate is then
  one big-integer AND/XOR, which makes exhaustive verification cheap.

Input words follow the package convention (x1 is the most significant bit).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .circuit import Circuit, Gate, WireRole
from .exceptions import IndexOutOfRange, TooLarge, WidthMismatch
from .truth_table import TruthTable

MAX_EXHAUSTIVE_N = 20


def apply_gate(state: int, gate: Gate, width: int | None = None) -> int:
    if width is not None:
        for w in gate.support:
            if not 0 <= w < width:
                raise IndexOutOfRange(f"wire {w} out of range for width {width}")
    for c in gate.controls:
        if not (state >> c) & 1:
            return state
    return state ^ (1 << gate.target)


def parse_state(bits: str) -> int:
    """``'110'`` -> state with wire 0 = 1, wire 1 = 1, wire 2 = 0."""
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


def format_state(state: int, width: int) -> str:
    return "".join(str((state >> i) & 1) for i in range(width))


def _coerce_input(circuit: Circuit, word: int | str) -> int:
    n = circuit.n
    if isinstance(word, str):
        if len(word) != n or set(word) - {"0", "1"}:
            raise WidthMismatch(f"input {word!r} is not a {n}-bit string")
        return int(word, 2) if n else 0
    if not 0 <= word < (1 << n):
        raise WidthMismatch(f"input {word} does not fit in {n} bits")
    return word


def initial_state(circuit: Circuit, word: int | str) -> int:
    x = _coerce_input(circuit, word)
    n = circuit.n
    state = 0
    for i, w in enumerate(circuit.input_wires):
        if (x >> (n - 1 - i)) & 1:
            state |= 1 << w
    return state


def run_gates(state: int, gates: Iterable[Gate]) -> int:
    for g in gates:
        c = g.controls
        if not c:
            state ^= 1 << g.target
        elif len(c) == 1:
            if (state >> c[0]) & 1:
                state ^= 1 << g.target
        elif (state >> c[0]) & 1 and (state >> c[1]) & 1:
            state ^= 1 << g.target
    return state


def run(circuit: Circuit, word: int | str) -> int:
    """Final state of ``circuit`` on input ``word`` with all ancillae at 0."""
    return run_gates(initial_state(circuit, word), circuit.gates)


def read_word(state: int, wires: Sequence[int]) -> int:
    out = 0
    for w in wires:
        out = (out << 1) | ((state >> w) & 1)
    return out


# -- bit-sliced evaluation ---------------------------------------------------

def input_masks(n: int) -> list[int]:
    """Mask of variable x_{i+1} over all 2**n input words (x1 = MSB)."""
    masks = []
    total = 1 << n
    for i in range(n):
        half = 1 << (n - 1 - i)
        period = half << 1
        block = ((1 << half) - 1) << half
        repeat = ((1 << total) - 1) // ((1 << period) - 1)
        masks.append(block * repeat)
    return masks


def _check_n(n: int):
    if n > MAX_EXHAUSTIVE_N:
        raise TooLarge(f"exhaustive simulation over 2**{n} inputs exceeds the cap n <= {MAX_EXHAUSTIVE_N}")


def simulate_all(
    circuit: Circuit,
    stop: int | None = None,
    probes: Sequence[int] = (),
) -> tuple[list[int], dict[int, list[int]]]:
    """Run every input word at once.

    Returns the wire masks after the first ``stop`` gates (all gates by
    default) and a snapshot of the masks at each gate position in ``probes``.
    """
    n = circuit.n
    _check_n(n)
    full = (1 << (1 << n)) - 1
    values = [0] * circuit.width
    for w, mask in zip(circuit.input_wires, input_masks(n)):
        values[w] = mask
    gates = circuit.gates
    if stop is None:
        stop = len(gates)
    if not 0 <= stop <= len(gates):
        raise IndexOutOfRange(f"probe point {stop} outside 0..{len(gates)}")
    pending = sorted(set(p for p in probes if p <= stop))
    snapshots: dict[int, list[int]] = {}
    pi = 0
    for pos in range(stop):
        while pi < len(pending) and pending[pi] == pos:
            snapshots[pos] = list(values)
            pi += 1
        g = gates[pos]
        c = g.controls
        if not c:
            values[g.target] ^= full
        elif len(c) == 1:
            values[g.target] ^= values[c[0]]
        else:
            values[g.target] ^= values[c[0]] & values[c[1]]
    while pi < len(pending):
        snapshots[pending[pi]] = list(values)
        pi += 1
    return values, snapshots


def mask_to_bits(mask: int, length: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((length + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length]


def words_from_masks(masks: Sequence[int], n_rows: int) -> np.ndarray:
    out = np.zeros(n_rows, dtype=np.int64)
    for mask in masks:
        out = (out << 1) | mask_to_bits(mask, n_rows).astype(np.int64)
    return out


def extract_transformation(circuit: Circuit, n: int | None = None) -> TruthTable:
    if n is None:
        n = circuit.n
    if n != circuit.n:
        raise WidthMismatch(f"circuit has {circuit.n} significant inputs, not {n}")
    _check_n(n)
    values, _ = simulate_all(circuit)
    outs = circuit.output_wires
    words = words_from_masks([values[w] for w in outs], 1 << n)
    m = len(outs)
    if m != n:
        raise WidthMismatch(f"circuit has {m} output wires but {n} inputs")
    return TruthTable(n, tuple(int(v) for v in words))


@dataclass
class VerificationReport:
    passed: bool
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)
    ancilla_final: dict[int, str] = field(default_factory=dict)


def _summarise(mask: int, full: int) -> str:
    if mask == 0:
        return "zero"
    if mask == full:
        return "one"
    return "varies"


def verify_against(circuit: Circuit, tt: TruthTable) -> VerificationReport:
    if tt.n != circuit.n:
        raise WidthMismatch(f"truth table has n={tt.n}, circuit has {circuit.n} significant inputs")
    _check_n(tt.n)
    values, _ = simulate_all(circuit)
    outs = circuit.output_wires
    if len(outs) != tt.n:
        raise WidthMismatch(f"circuit has {len(outs)} output wires, truth table needs {tt.n}")
    actual = words_from_masks([values[w] for w in outs], 1 << tt.n)
    expected = np.asarray(tt.entries, dtype=np.int64)
    bad = np.nonzero(actual != expected)[0]
    mismatches = [(int(x), int(expected[x]), int(actual[x])) for x in bad]
    full = (1 << (1 << tt.n)) - 1
    skip = set(circuit.input_wires) | set(outs)
    ancilla = {w: _summarise(values[w], full) for w in range(circuit.width) if w not in skip}
    return VerificationReport(not mismatches, mismatches, ancilla)


Predicate = Callable[[int], int]


def predicate_mask(n: int, predicate: Predicate) -> int:
    mask = 0
    for x in range(1 << n):
        if predicate(x):
            mask |= 1 << x
    return mask


def wire_predicate_check(
    circuit: Circuit,
    wire: int,
    predicate: Predicate,
    probe_point: int | None = None,
) -> bool:
    """True iff, for every input x, ``wire`` holds ``predicate(x)`` after the
    first ``probe_point`` gates (default: all gates)."""
    if not 0 <= wire < circuit.width:
        raise IndexOutOfRange(f"wire {wire} out of range for width {circuit.width}")
    values, _ = simulate_all(circuit, stop=probe_point)
    return values[wire] == predicate_mask(circuit.n, predicate)


def zero_wires_at(circuit: Circuit, wires: Sequence[int], probes: Sequence[int]) -> dict[int, list[int]]:
    """For each probe position, the subset of ``wires`` that is not 0 on some input."""
    _, snaps = simulate_all(circuit, probes=probes)
    return {p: [w for w in wires if snaps[p][w]] for p in probes}


def scratch_wires(circuit: Circuit) -> list[int]:
    return circuit.wires_with_role(WireRole.SCRATCH)
