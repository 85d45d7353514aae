import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revsynth.circuit import Circuit, WireRole, ccnot, cnot, not_gate
from revsynth.exceptions import TooLarge, WidthMismatch
from revsynth.simulator import (
    apply_gate,
    extract_transformation,
    format_state,
    parse_state,
    predicate_mask,
    read_word,
    run,
    simulate_all,
    verify_against,
    wire_predicate_check,
)
from revsynth.synthesis import synthesize
from revsynth.truth_table import TruthTable


def test_toffoli_fires():
    assert format_state(apply_gate(parse_state("110"), ccnot(0, 1, 2)), 3) == "111"


def test_toffoli_one_control_low():
    assert format_state(apply_gate(parse_state("100"), ccnot(0, 1, 2)), 3) == "100"


def test_not():
    assert format_state(apply_gate(parse_state("000"), not_gate(1)), 3) == "010"


def test_empty_circuit_keeps_input():
    c = Circuit(3)
    c.alloc_wire(WireRole.SCRATCH)
    assert format_state(run(c, "101"), 4) == "1010"


def test_cnot_to_ancilla():
    c = Circuit(3)
    c.alloc_wire(WireRole.SCRATCH)
    c.add_gate(cnot(0, 3))
    for x in range(4, 8):
        assert (run(c, x) >> 3) & 1 == 1


def test_bad_input_word():
    with pytest.raises(WidthMismatch):
        run(Circuit(2), "101")
    with pytest.raises(WidthMismatch):
        run(Circuit(2), 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_negation_stage(n):
    c = Circuit(n)
    neg = []
    for i in range(n):
        w = c.alloc_wire(WireRole.NEGATION)
        c.add_gate(cnot(i, w))
        c.add_gate(not_gate(w))
        neg.append(w)
    for x in range(1 << n):
        assert read_word(run(c, x), neg) == (~x) & ((1 << n) - 1)


def test_identity_extraction():
    assert extract_transformation(Circuit(3)) == TruthTable.identity(3)


def test_not_on_output_complements_bit():
    c = Circuit(3).x(1)
    tt = extract_transformation(c)
    assert all(tt(x) == x ^ 0b010 for x in range(8))


def test_verify_matching_and_single_flip():
    c = Circuit(3)
    tt = TruthTable.identity(3)
    assert verify_against(c, tt).passed
    flipped = TruthTable(3, tt.entries[:5] + (tt.entries[5] ^ 1,) + tt.entries[6:])
    rep = verify_against(c, flipped)
    assert not rep.passed
    assert rep.mismatches == [(5, 4, 5)]


def test_verify_width_mismatch():
    with pytest.raises(WidthMismatch):
        verify_against(Circuit(3), TruthTable.identity(2))


def test_verify_synthesized_n4():
    tt = TruthTable.random(4, 3)
    c, _ = synthesize(tt, 40)
    rep = verify_against(c, tt)
    assert rep.passed
    assert set(rep.ancilla_final.values()) <= {"zero", "one", "varies"}


def test_untouched_wire_is_zero():
    c = Circuit(2)
    w = c.alloc_wire(WireRole.SCRATCH)
    c.cx(0, 1)
    assert wire_predicate_check(c, w, lambda x: 0, probe_point=0)
    assert wire_predicate_check(c, w, lambda x: 0)


def test_exhaustive_cap():
    with pytest.raises(TooLarge):
        simulate_all(Circuit(21))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 40), st.integers(0, 2**32))
def test_bitsliced_matches_single_state(n, count, seed):
    rng = random.Random(seed)
    c = Circuit(n)
    for _ in range(3):
        c.alloc_wire(WireRole.SCRATCH)
    for _ in range(count):
        arity = rng.randint(0, 2)
        wires = rng.sample(range(c.width), arity + 1)
        c.add_gate([not_gate, cnot, ccnot][arity](*wires))
    values, _ = simulate_all(c)
    for x in range(1 << n):
        state = run(c, x)
        assert all(((values[w] >> x) & 1) == ((state >> w) & 1) for w in range(c.width))


def test_predicate_mask():
    assert predicate_mask(2, lambda x: x == 3) == 0b1000


def _random_gates(rng, width, count):
    gates = []
    for _ in range(count):
        arity = rng.randint(0, min(2, width - 1))
        wires = rng.sample(range(width), arity + 1)
        gates.append([not_gate, cnot, ccnot][arity](*wires))
    return gates


@pytest.mark.parametrize("seed", range(5))
def test_full_state_map_is_a_permutation(seed):
    from revsynth.simulator import run_gates

    rng = random.Random(seed)
    width = rng.randint(2, 10)
    gates = _random_gates(rng, width, 30)
    images = {run_gates(s, gates) for s in range(1 << width)}
    assert len(images) == 1 << width


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_gates_then_inverse_is_identity(seed):
    from revsynth.circuit import inverse_sequence
    from revsynth.simulator import run_gates

    rng = random.Random(seed)
    gates = _random_gates(rng, 6, rng.randint(0, 40))
    for s in range(64):
        assert run_gates(s, gates + inverse_sequence(gates)) == s


def test_composition_of_in_place_circuits():
    a = Circuit(3).cx(0, 1).x(2)
    b = Circuit(3).ccx(1, 2, 0)
    ab = Circuit(3)
    ab.extend(a.gates + b.gates)
    ta, tb, tab = (extract_transformation(c) for c in (a, b, ab))
    assert all(tab(x) == tb(ta(x)) for x in range(8))
