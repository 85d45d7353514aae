"""Truth-table files and TFC-style netlists.

Truth-table file::

    # optional comments
    n 3
    000        <- f(000)
    001        <- f(001)
    ...        (exactly 2**n lines, row index = input word, x1 first)

Netlist file::

    .v x1,x2,nx1,nx2,y1,y2,w1
    .i x1,x2
    .o y1,y2
    .c nx1,nx2,y1,y2,w1
    #@storage w1
    BEGIN
    t2 x1,nx1
    t1 nx1
    t3 x1,x2,y1
    END

Wires are declared in index order.  Names: inputs ``x<i>``, negations
``nx<i>``, outputs ``y<i>``, every other ancilla ``w<i>`` in allocation
order.  ``.c`` wires start at 0.  The ``#@storage`` comment marks the
``w`` wires that hold stored values; unmarked ``w`` wires are scratch.
"""
from __future__ import annotations

import re

from .circuit import Circuit, Gate, WireRole
from .exceptions import BadDigit, DegenerateGate, ParseError, UnknownGateArity, WrongLineCount
from .truth_table import TruthTable


# -- truth tables -------------------------------------------------------------

def parse_truth_table(text: str) -> TruthTable:
    n = None
    rows: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise ParseError(f"expected header 'n <int>', got {line!r}", lineno)
            n = int(parts[1])
            continue
        if len(rows) == 1 << n:
            raise WrongLineCount(f"more than 2^{n} = {1 << n} data lines", lineno)
        bad = set(line) - {"0", "1"}
        if bad:
            raise BadDigit(f"unexpected character(s) {''.join(sorted(bad))!r}", lineno)
        if len(line) != n:
            raise ParseError(f"expected {n} bits, got {len(line)}", lineno)
        rows.append(int(line, 2) if n else 0)
    if n is None:
        raise ParseError("missing header 'n <int>'")
    if len(rows) != 1 << n:
        raise WrongLineCount(f"expected {1 << n} data lines, got {len(rows)}")
    return TruthTable(n, tuple(rows))


def write_truth_table(tt: TruthTable, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n {tt.n}")
    lines.extend(tt.to_strings())
    return "\n".join(lines) + "\n"


# -- netlists -----------------------------------------------------------------

_PREFIX = {
    WireRole.SIGNIFICANT_INPUT: "x",
    WireRole.NEGATION: "nx",
    WireRole.OUTPUT: "y",
    WireRole.STORAGE: "w",
    WireRole.SCRATCH: "w",
}


def wire_names(circuit: Circuit) -> list[str]:
    counters: dict[str, int] = {}
    names = [""] * circuit.width
    for i, w in enumerate(circuit.input_wires):
        names[w] = f"x{i + 1}"
    for w, role in enumerate(circuit.roles):
        if role is WireRole.SIGNIFICANT_INPUT:
            continue
        prefix = _PREFIX[role]
        counters[prefix] = counters.get(prefix, 0) + 1
        names[w] = f"{prefix}{counters[prefix]}"
    return names


def write_netlist(circuit: Circuit) -> str:
    names = wire_names(circuit)
    ancilla = [names[w] for w in range(circuit.width) if circuit.roles[w] is not WireRole.SIGNIFICANT_INPUT]
    storage = [names[w] for w in circuit.wires_with_role(WireRole.STORAGE)]
    lines = [
        ".v " + ",".join(names),
        ".i " + ",".join(names[w] for w in circuit.input_wires),
        ".o " + ",".join(names[w] for w in circuit.output_wires),
        ".c " + ",".join(ancilla),
    ]
    if storage:
        lines.append("#@storage " + ",".join(storage))
    lines.append("BEGIN")
    for g in circuit.gates:
        lines.append(f"t{len(g.controls) + 1} " + ",".join(names[w] for w in g.support))
    lines.append("END")
    return "\n".join(lines) + "\n"


_GATE = re.compile(r"^t(\d+)\s+(.*)$")


def _split_names(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _role_for(name: str, storage: set[str]) -> WireRole:
    if re.fullmatch(r"nx\d+", name):
        return WireRole.NEGATION
    if re.fullmatch(r"y\d+", name):
        return WireRole.OUTPUT
    if name in storage:
        return WireRole.STORAGE
    return WireRole.SCRATCH


def parse_netlist(text: str) -> Circuit:
    header: dict[str, list[str]] = {}
    storage: set[str] = set()
    body: list[tuple[int, str]] = []
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#@storage"):
            storage.update(_split_names(line[len("#@storage"):]))
            continue
        if not line or line.startswith("#"):
            continue
        if state == "header":
            if line == "BEGIN":
                state = "body"
                continue
            m = re.match(r"^\.(v|i|o|c)\b\s*(.*)$", line)
            if not m:
                raise ParseError(f"unexpected header line {line!r}", lineno)
            header[m.group(1)] = _split_names(m.group(2))
        elif state == "body":
            if line == "END":
                state = "done"
                continue
            body.append((lineno, line))
        else:
            raise ParseError("content after END", lineno)
    if state != "done":
        raise ParseError("missing BEGIN/END block")
    if "v" not in header:
        raise ParseError("missing .v declaration")
    names = header["v"]
    if len(set(names)) != len(names):
        raise ParseError("duplicate wire names in .v")
    index = {name: w for w, name in enumerate(names)}
    inputs = header.get("i", [])
    consts = set(header.get("c", []))
    for group in ("i", "o", "c"):
        for name in header.get(group, []):
            if name not in index:
                raise ParseError(f"undeclared wire {name!r} in .{group}")
    for name in names:
        if name not in consts and name not in inputs:
            raise ParseError(f"wire {name!r} is neither an input nor a constant")

    circuit = Circuit(0)
    input_set = set(inputs)
    for name in names:
        if name in input_set:
            circuit.roles.append(WireRole.SIGNIFICANT_INPUT)
        else:
            circuit.roles.append(_role_for(name, storage))
    circuit.input_wires = [index[name] for name in inputs]
    circuit.n_inputs = len(inputs)
    circuit.output_wires = [index[name] for name in header.get("o", inputs)]

    for lineno, line in body:
        m = _GATE.match(line)
        if not m:
            raise ParseError(f"cannot parse gate line {line!r}", lineno)
        arity = int(m.group(1))
        wires = _split_names(m.group(2))
        if arity not in (1, 2, 3):
            raise UnknownGateArity(f"unsupported gate t{arity}", lineno)
        if len(wires) != arity:
            raise ParseError(f"t{arity} expects {arity} wires, got {len(wires)}", lineno)
        for name in wires:
            if name not in index:
                raise ParseError(f"undeclared wire {name!r}", lineno)
        try:
            gate = Gate.from_wires([index[w] for w in wires[:-1]], index[wires[-1]])
        except DegenerateGate as exc:
            raise ParseError(str(exc), lineno) from exc
        circuit.add_gate(gate)
    return circuit
