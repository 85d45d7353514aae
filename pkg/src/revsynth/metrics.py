"""Gate count L(S), depth D(S) and ancilla count Q(S) of a circuit.

Depth uses unit delay per gate.  Two gates conflict when their supports
(controls and target) share any wire, control-control sharing included.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .circuit import Circuit, Gate


@dataclass(frozen=True)
class Metrics:
    gate_count: int
    depth: int
    ancilla: int
    per_level_histogram: tuple[int, ...] = field(default=())


def gate_count(circuit: Circuit | Sequence[Gate]) -> int:
    gates = circuit.gates if isinstance(circuit, Circuit) else circuit
    return len(gates)


def levels(gates: Iterable[Gate]) -> list[int]:
    """Layer index (1-based) of every gate under greedy per-wire levelization."""
    wire_level: dict[int, int] = {}
    out = []
    for g in gates:
        lvl = 1 + max((wire_level.get(w, 0) for w in g.support), default=0)
        for w in g.support:
            wire_level[w] = lvl
        out.append(lvl)
    return out


def depth(circuit: Circuit | Iterable[Gate]) -> int:
    gates = circuit.gates if isinstance(circuit, Circuit) else circuit
    wire_level: dict[int, int] = {}
    best = 0
    for g in gates:
        sup = g.support
        lvl = 1 + max(wire_level.get(w, 0) for w in sup)
        for w in sup:
            wire_level[w] = lvl
        if lvl > best:
            best = lvl
    return best


def ancilla_count(circuit: Circuit) -> int:
    return circuit.width - circuit.n


def measure(circuit: Circuit) -> Metrics:
    lv = levels(circuit.gates)
    counts = Counter(lv)
    hist = tuple(counts[i] for i in range(1, max(lv, default=0) + 1))
    return Metrics(len(circuit.gates), len(hist), ancilla_count(circuit), hist)
