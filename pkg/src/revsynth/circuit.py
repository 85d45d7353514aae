"""Gates, circuits and wire bookkeeping.

A circuit is a flat, ordered list of NOT / CNOT / 2-CNOT gates over a dense
set of wires ``0 .. width-1``.  The first ``n`` wires of a circuit built with
``Circuit(n)`` are its significant inputs; every other wire is an ancilla
initialised to 0.  Gate order is composition order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .exceptions import DegenerateGate, IndexOutOfRange


class GateKind(Enum):
    NOT = 0
    CNOT = 1
    CCNOT = 2

    @property
    def arity(self) -> int:
        """Number of control wires."""
        return self.value


class WireRole(Enum):
    SIGNIFICANT_INPUT = "input"
    NEGATION = "negation"
    STORAGE = "storage"
    SCRATCH = "scratch"
    OUTPUT = "output"


@dataclass(frozen=True, slots=True)
class Gate:
    """One reversible element: ``target ^= AND(controls)``.

    With no controls the AND is the constant 1, so the gate is a NOT.
    """

    kind: GateKind
    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if len(self.controls) != self.kind.arity:
            raise DegenerateGate(
                f"{self.kind.name} takes {self.kind.arity} controls, got {len(self.controls)}"
            )
        if len(set(self.controls)) != len(self.controls):
            raise DegenerateGate(f"duplicate controls {self.controls}")
        if self.target in self.controls:
            raise DegenerateGate(f"target {self.target} is also a control")

    @property
    def support(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    @classmethod
    def from_wires(cls, controls: Sequence[int], target: int) -> "Gate":
        if len(controls) > 2:
            raise DegenerateGate(f"at most 2 controls are supported, got {len(controls)}")
        return cls(GateKind(len(controls)), tuple(controls), target)


def not_gate(target: int) -> Gate:
    return Gate(GateKind.NOT, (), target)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control,), target)


def ccnot(control1: int, control2: int, target: int) -> Gate:
    return Gate(GateKind.CCNOT, (control1, control2), target)


def inverse_sequence(gates: Iterable[Gate]) -> list[Gate]:
    """Return the gate list that undoes ``gates``.

    Every gate is an involution, so the inverse is the same gates reversed.
    """
    return list(gates)[::-1]


@dataclass
class Circuit:
    """Mutable circuit under construction.

    ``output_wires`` defaults to the input wires until it is set explicitly,
    which is what a hand-built in-place circuit expects.
    """

    n_inputs: int = 0
    gates: list[Gate] = field(default_factory=list)
    roles: list[WireRole] = field(default_factory=list)
    input_wires: list[int] = field(default_factory=list)
    _output_wires: list[int] | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.roles:
            for _ in range(self.n_inputs):
                self.alloc_wire(WireRole.SIGNIFICANT_INPUT)

    @property
    def width(self) -> int:
        return len(self.roles)

    @property
    def n(self) -> int:
        return len(self.input_wires)

    @property
    def output_wires(self) -> list[int]:
        if self._output_wires is None:
            return list(self.input_wires)
        return list(self._output_wires)

    @output_wires.setter
    def output_wires(self, wires: Sequence[int]):
        wires = list(wires)
        for w in wires:
            self._check_index(w)
        self._output_wires = wires

    def alloc_wire(self, role: WireRole) -> int:
        if role is WireRole.SIGNIFICANT_INPUT and self.gates:
            raise ValueError("significant inputs must be allocated before the first gate")
        self.roles.append(role)
        index = len(self.roles) - 1
        if role is WireRole.SIGNIFICANT_INPUT and index not in self.input_wires:
            self.input_wires.append(index)
            self.n_inputs = len(self.input_wires)
        return index

    def _check_index(self, wire: int):
        if not 0 <= wire < len(self.roles):
            raise IndexOutOfRange(f"wire {wire} out of range for width {len(self.roles)}")

    def add_gate(self, gate: Gate) -> None:
        for w in gate.support:
            self._check_index(w)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.add_gate(g)

    # fluent helpers
    def x(self, target: int) -> "Circuit":
        self.add_gate(not_gate(target))
        return self

    def cx(self, control: int, target: int) -> "Circuit":
        self.add_gate(cnot(control, target))
        return self

    def ccx(self, control1: int, control2: int, target: int) -> "Circuit":
        self.add_gate(ccnot(control1, control2, target))
        return self

    def wires_with_role(self, role: WireRole) -> list[int]:
        return [w for w, r in enumerate(self.roles) if r is role]

    def __len__(self) -> int:
        return len(self.gates)

    def copy(self) -> "Circuit":
        return Circuit(
            n_inputs=self.n_inputs,
            gates=list(self.gates),
            roles=list(self.roles),
            input_wires=list(self.input_wires),
            _output_wires=None if self._output_wires is None else list(self._output_wires),
        )

    def same_structure(self, other: "Circuit") -> bool:
        return (
            self.gates == other.gates
            and self.roles == other.roles
            and self.input_wires == other.input_wires
            and self.output_wires == other.output_wires
        )


class WirePool:
    """Hands out ancilla wires and takes them back for reuse.

    Used where a sub-circuit is torn down and rebuilt on the same wires
    (one XOR provider per group).  ``recycle`` returns every wire taken so
    far; callers are responsible for having zeroed them.
    """

    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        self._free: dict[WireRole, list[int]] = {}
        self._taken: list[tuple[WireRole, int]] = []
        self.allocated: list[int] = []

    def take(self, role: WireRole) -> int:
        free = self._free.setdefault(role, [])
        if free:
            wire = free.pop(0)
        else:
            wire = self.circuit.alloc_wire(role)
            self.allocated.append(wire)
        self._taken.append((role, wire))
        return wire

    def recycle(self) -> None:
        for role, wire in self._taken:
            self._free.setdefault(role, []).append(wire)
        for free in self._free.values():
            free.sort()
        self._taken.clear()
