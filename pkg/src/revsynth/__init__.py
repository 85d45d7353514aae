"""Reversible circuit synthesis with a bounded ancilla budget."""
from .bounds import BoundReport, all_bounds
from .circuit import Circuit, Gate, GateKind, WirePool, WireRole, ccnot, cnot, inverse_sequence, not_gate
from .estimator import ReversibleSynthesizer
from .exceptions import (
    BadDigit,
    BudgetInfeasible,
    DegenerateGate,
    DoubleRelease,
    IndexOutOfRange,
    ParseError,
    QBudgetTooSmall,
    RevSynthError,
    ScratchExhausted,
    TooLarge,
    UnknownGateArity,
    WidthMismatch,
    WrongLineCount,
)
from .io import parse_netlist, parse_truth_table, write_netlist, write_truth_table
from .metrics import Metrics, ancilla_count, depth, gate_count, measure
from .product_tree import ProductTreeProvider, ProviderMode, plan_tree, storage_split
from .simulator import extract_transformation, run, verify_against, wire_predicate_check
from .synthesis import (
    Strategy,
    SynthesisParams,
    SynthesisReport,
    check_invariants,
    minimal_budget,
    select_params,
    synthesize,
)
from .truth_table import TruthTable

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
