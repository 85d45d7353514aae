import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revsynth.circuit import Circuit, Gate, WireRole, ccnot
from revsynth.exceptions import BadDigit, ParseError, UnknownGateArity, WrongLineCount
from revsynth.io import parse_netlist, parse_truth_table, wire_names, write_netlist, write_truth_table
from revsynth.synthesis import synthesize
from revsynth.truth_table import TruthTable


def test_identity_one_bit():
    assert parse_truth_table("n 1\n0\n1\n") == TruthTable.identity(1)


def test_not_one_bit():
    assert parse_truth_table("# negation\nn 1\n1\n0\n").entries == (1, 0)


def test_wrong_line_count():
    with pytest.raises(WrongLineCount):
        parse_truth_table("n 1\n0\n1\n0\n")
    with pytest.raises(WrongLineCount):
        parse_truth_table("n 2\n00\n01\n")


def test_bad_digit_reports_line():
    with pytest.raises(BadDigit) as exc:
        parse_truth_table("n 2\n00\n0x\n10\n11\n")
    assert exc.value.line == 3


@pytest.mark.parametrize("text", ["", "m 2\n", "n two\n", "n 2\n000\n01\n10\n11\n"])
def test_malformed_tables(text):
    with pytest.raises(ParseError):
        parse_truth_table(text)


def test_truth_table_roundtrip():
    tt = TruthTable.random(4, 1)
    assert parse_truth_table(write_truth_table(tt, comment="seeded")) == tt


def test_single_ccnot_line():
    c = Circuit(3)
    c.add_gate(ccnot(0, 1, 2))
    assert "t3 x1,x2,x3" in write_netlist(c).splitlines()


def test_unknown_arity():
    text = ".v a,b,c,d\n.i a,b,c,d\n.o a,b,c,d\n.c\nBEGIN\nt4 a,b,c,d\nEND\n"
    with pytest.raises(UnknownGateArity):
        parse_netlist(text)


@pytest.mark.parametrize(
    "text",
    [
        ".v a\n.i a\n.o a\nBEGIN\nt1 b\nEND\n",
        ".v a\n.i a\n.o a\nBEGIN\nt2 a\nEND\n",
        ".v a\n.i a\n.o a\nBEGIN\nt1 a\n",
        ".v a,b\n.i a\n.o a\nBEGIN\nEND\n",
        ".v a,b\n.i a,b\n.o a,b\nBEGIN\nt2 a,a\nEND\n",
        ".v a\n.i a\n.o a\n.q junk\nBEGIN\nEND\n",
    ],
)
def test_bad_netlists(text):
    with pytest.raises(ParseError):
        parse_netlist(text)


def test_hand_written_netlist_roles():
    text = ".v a,b,z\n.i a,b\n.o z,b\n.c z\nBEGIN\nt3 a,b,z\nEND\n"
    c = parse_netlist(text)
    assert c.n == 2 and c.width == 3
    assert c.output_wires == [2, 1]
    assert c.roles[2] is WireRole.SCRATCH


def test_wire_naming_convention():
    c, _ = synthesize(TruthTable.random(3, 0), 30)
    names = wire_names(c)
    assert names[:9] == ["x1", "x2", "x3", "nx1", "nx2", "nx3", "y1", "y2", "y3"]
    assert all(n.startswith("w") for n in names[9:])


def _random_circuit(seed, width):
    rng = random.Random(seed)
    n = rng.randint(1, width)
    c = Circuit(n)
    roles = [WireRole.NEGATION, WireRole.OUTPUT, WireRole.STORAGE, WireRole.SCRATCH]
    for _ in range(width - n):
        c.alloc_wire(rng.choice(roles))
    for _ in range(rng.randint(0, 60)):
        arity = rng.randint(0, min(2, width - 1))
        wires = rng.sample(range(width), arity + 1)
        c.add_gate(Gate.from_wires(wires[:-1], wires[-1]))
    outs = c.wires_with_role(WireRole.OUTPUT)
    if outs:
        c.output_wires = outs
    return c


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12))
def test_random_roundtrip(seed, width):
    c = _random_circuit(seed, width)
    back = parse_netlist(write_netlist(c))
    assert back.gates == c.gates
    assert back.width == c.width
    assert back.roles == c.roles
    assert back.input_wires == c.input_wires
    assert back.output_wires == c.output_wires
