"""Compile a truth table into a NOT/CNOT/2-CNOT circuit under an ancilla budget.

Every output f_i is expanded over the last ``n - k`` variables,

    f_i(x) = XOR_a  [x_{k+1..n} = a]  &  f_i(x_1..x_k, a),

and each coefficient function of ``x_1..x_k`` is written as an XOR of
minterms.  The ``2**k`` minterms are split into ``p`` blocks of at most
``s``; inside a block a coefficient becomes a selector word ``g`` and its
value is one linear form of the block's minterms.

Circuit layout, in gate order:

1. negations: ``CNOT(x_i -> nx_i); NOT(nx_i)`` for every input,
2. stored levels of S1 (minterms of x_1..x_k, AND tree, budget q1) and of
   S2 (minterms of x_{k+1}..x_n, AND tree, budget q2),
3. per block: S1 puts the block's minterms on holder wires, a fresh S3
   (XOR tree over the holders, budget q3) serves the linear forms, each term
   lands on an output wire with one 2-CNOT(S2 value, S3 value), then S3 is
   torn down and S1 clears the holders by toggling the same minterms again.

Strategy 1 fetches each S2 minterm once per block and every needed linear
form under it; strategy 2 fetches each distinct linear form once per block
and every needed S2 minterm under it.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import IntEnum

from . import bounds
from .circuit import Circuit, WirePool, WireRole, ccnot, cnot, not_gate
from .exceptions import QBudgetTooSmall
from .metrics import depth
from .product_tree import ProductTreeProvider, ProviderMode, ProviderStats, plan_tree, storage_split
from .truth_table import TruthTable


class Strategy(IntEnum):
    MINIMIZE_T2 = 1
    MINIMIZE_T3 = 2


# -- decomposition ------------------------------------------------------------

def restrict(tt: TruthTable, i: int, a: int, k: int) -> tuple[int, ...]:
    """Truth vector of sigma -> f_i(sigma, a) over the first k variables.

    ``i`` is 0-based; ``a`` is the (n-k)-bit suffix word.
    """
    shift = tt.n - k
    return tuple(tt.bit((sigma << shift) | a, i) for sigma in range(1 << k))


@dataclass(frozen=True)
class GroupPlan:
    k: int
    s: int
    blocks: tuple[tuple[int, ...], ...]
    selectors: tuple[tuple[tuple[int, ...], ...], ...]  # [block][suffix a][output i]

    @property
    def p(self) -> int:
        return len(self.blocks)

    def selector(self, i: int, t: int, a: int) -> int:
        return self.selectors[t][a][i]


def plan_groups(tt: TruthTable, k: int, s: int) -> GroupPlan:
    """Split minterms 0..2^k-1 into consecutive blocks of at most ``s``.

    Within block ``t`` the selector for (i, a) has bit ``1 << (len-1-j)``
    set iff f_i(block[j], a) = 1, so its first minterm is the MSB.
    """
    if not 1 <= k <= tt.n or not 1 <= s <= (1 << k):
        raise ValueError(f"need 1 <= k <= n and 1 <= s <= 2^k, got k={k}, s={s}")
    n = tt.n
    minterms = range(1 << k)
    blocks = tuple(tuple(minterms[j:j + s]) for j in range(0, 1 << k, s))
    coeff = [[restrict(tt, i, a, k) for i in range(n)] for a in range(1 << (n - k))]
    selectors = []
    for block in blocks:
        m = len(block)
        per_a = []
        for a in range(1 << (n - k)):
            row = []
            for i in range(n):
                vec = coeff[a][i]
                g = 0
                for j, sigma in enumerate(block):
                    if vec[sigma]:
                        g |= 1 << (m - 1 - j)
                row.append(g)
            per_a.append(tuple(row))
        selectors.append(tuple(per_a))
    return GroupPlan(k, s, blocks, tuple(selectors))


# -- parameters ---------------------------------------------------------------

@dataclass(frozen=True)
class SynthesisParams:
    k: int
    s: int
    q1: int
    q2: int
    q3: int
    strategy: Strategy

    @property
    def p(self) -> int:
        return -(-(1 << self.k) // self.s)


def _s1_overhead(k: int, q1: int, s: int) -> tuple[int, int]:
    """(holder wires, S1 scratch wires) for the block minterm stage."""
    split = storage_split(plan_tree(range(k)), q1)
    root = plan_tree(range(k)).root
    if root.is_product and root.level not in split.stored_levels:
        return s, split.scratch - 1
    return 0, 0


def fixed_overhead(n: int, k: int, s: int, q1: int = 0) -> int:
    """Wires needed before any budget goes to S2/S3 storage."""
    holders, sc1 = _s1_overhead(k, q1, s)
    sc2 = max(n - k - 1, 0)
    sc3 = s - 1
    return 2 * n + q1 + holders + sc1 + sc2 + sc3


def minimal_budget(n: int, k: int | None = None, s: int | None = None, q1: int = 0) -> int:
    ks = [k] if k is not None else range(1, n)
    return min(fixed_overhead(n, kk, _group_size(n, kk, s), q1) for kk in ks)


def _group_size(n: int, k: int, s: int | None) -> int:
    return min(s if s is not None else n - k, 1 << k)


def predicted_gate_count(n: int, params: SynthesisParams) -> int:
    """Worst-case gate count for ``params`` using the exact storage splits."""
    k, s = params.k, params.s
    p = params.p
    rows = 1 << (n - k)
    plan1 = plan_tree(range(k))
    s1 = storage_split(plan1, params.q1)
    on_demand1 = plan1.root.is_product and plan1.root.level not in s1.stored_levels
    s1_gates = s1.stored_outputs + (1 << (k + 1)) * (2 * s1.scratch - 1 if on_demand1 else 0)

    s2 = storage_split(plan_tree(range(n - k)), params.q2)
    s3 = storage_split(plan_tree(range(s)), params.q3)
    forms = min(n, (1 << s) - 1)
    if params.strategy is Strategy.MINIMIZE_T2:
        t2 = p * rows
        t3 = rows * forms
    else:
        t3 = min((1 << s) - 1, n * rows)
        t2 = p * rows * forms
    s2_gates = s2.stored_outputs + t2 * 2 * s2.scratch
    s3_gates = p * (4 * s3.stored_outputs + t3 * 4 * s3.scratch)
    return 2 * n + s1_gates + s2_gates + s3_gates + p * n * rows


def select_params(
    n: int,
    q: int,
    strategy: Strategy = Strategy.MINIMIZE_T3,
    k: int | None = None,
    s: int | None = None,
    q1: int = 0,
) -> SynthesisParams:
    """Search k (and s = n - k unless given) for the cheapest feasible split.

    The budget left after negations, outputs, holders and worst-case scratch
    is split evenly between S2 and S3, the odd wire going to S2.
    """
    if n < 2:
        raise ValueError("synthesis needs n >= 2")
    strategy = Strategy(strategy)
    ks = [k] if k is not None else list(range(1, n))
    best = None
    for kk in ks:
        if not 1 <= kk <= n - 1:
            raise ValueError(f"k must be in [1, {n - 1}], got {kk}")
        ss = _group_size(n, kk, s)
        rest = q - fixed_overhead(n, kk, ss, q1)
        if rest < 0:
            continue
        params = SynthesisParams(kk, ss, q1, rest - rest // 2, rest // 2, strategy)
        cost = predicted_gate_count(n, params)
        if best is None or cost < best[0]:
            best = (cost, params)
    if best is None:
        raise QBudgetTooSmall(q, minimal_budget(n, k, s, q1))
    return best[1]


# -- report ---------------------------------------------------------------------

@dataclass
class SynthesisReport:
    n: int
    q: int
    params: SynthesisParams
    L: int = 0
    D: int = 0
    Q: int = 0
    t1: int = 0
    t2: int = 0
    t3: int = 0
    t3_total: int = 0
    stage_gates: dict[str, int] = field(default_factory=dict)
    ancilla_ledger: dict[str, int] = field(default_factory=dict)
    s1_stats: ProviderStats | None = None
    s2_stats: ProviderStats | None = None
    s3_stats: list[ProviderStats] = field(default_factory=list)
    provider_depths: dict[str, list[int]] = field(default_factory=dict)
    group_boundaries: list[int] = field(default_factory=list)
    holder_wires: list[int] = field(default_factory=list)
    s3_wires: list[int] = field(default_factory=list)
    bounds: dict[str, bounds.BoundReport] = field(default_factory=dict)

    @property
    def theorem_valid(self) -> bool:
        return self.q > 8 * self.n

    def to_dict(self) -> dict:
        p = self.params
        return {
            "n": self.n,
            "q": self.q,
            "L": self.L,
            "D": self.D,
            "Q": self.Q,
            "t1": self.t1,
            "t2": self.t2,
            "t3": self.t3,
            "t3_total": self.t3_total,
            "params": {
                "k": p.k,
                "s": p.s,
                "p": p.p,
                "q1": p.q1,
                "q2": p.q2,
                "q3": p.q3,
                "strategy": int(p.strategy),
            },
            "stage_gates": dict(self.stage_gates),
            "ancilla_ledger": dict(self.ancilla_ledger),
            "providers": {
                "s1": _stats_dict(self.s1_stats),
                "s2": _stats_dict(self.s2_stats),
                "s3": [_stats_dict(st) for st in self.s3_stats],
            },
            "bounds": {name: b.as_dict() for name, b in self.bounds.items()},
            "theorem_valid": self.theorem_valid,
        }


def _stats_dict(st: ProviderStats | None) -> dict | None:
    if st is None:
        return None
    d = asdict(st)
    d["mode"] = st.mode.value
    return d


# -- assembly -------------------------------------------------------------------

def synthesize(
    tt: TruthTable,
    q: int,
    strategy: Strategy = Strategy.MINIMIZE_T3,
    params: SynthesisParams | None = None,
) -> tuple[Circuit, SynthesisReport]:
    n = tt.n
    if params is None:
        params = select_params(n, q, strategy)
    else:
        need = fixed_overhead(n, params.k, params.s, params.q1) + params.q2 + params.q3
        if need > q:
            raise QBudgetTooSmall(q, fixed_overhead(n, params.k, params.s, params.q1))
    k, s = params.k, params.s
    rows = 1 << (n - k)
    groups = plan_groups(tt, k, s)
    report = SynthesisReport(n, q, params)

    circuit = Circuit(n)
    x = list(circuit.input_wires)
    nx = []
    for i in range(n):
        w = circuit.alloc_wire(WireRole.NEGATION)
        circuit.add_gate(cnot(x[i], w))
        circuit.add_gate(not_gate(w))
        nx.append(w)
    y = [circuit.alloc_wire(WireRole.OUTPUT) for _ in range(n)]
    circuit.output_wires = y
    literals = list(zip(x, nx))

    s1 = ProductTreeProvider(k, params.q1, ProviderMode.AND)
    s1.materialize(circuit, literals[:k])
    s2 = ProductTreeProvider(n - k, params.q2, ProviderMode.AND)
    s2.materialize(circuit, literals[k:])
    holders = [circuit.alloc_wire(WireRole.SCRATCH) for _ in range(s)] if s1.root_on_demand else []
    pool = WirePool(circuit)

    output_gates = 0
    s3_gates = 0
    t2_before = s2.t
    for t, block in enumerate(groups.blocks):
        m = len(block)
        block_wires = [s1.toggle(sigma, holders[j] if holders else None) for j, sigma in enumerate(block)]
        s3 = ProductTreeProvider(m, params.q3, ProviderMode.XOR, alloc=pool.take)
        s3.materialize(circuit, [(w, None) for w in block_wires])
        sel = groups.selectors[t]
        if params.strategy is Strategy.MINIMIZE_T2:
            for a in range(rows):
                wanted: dict[int, list[int]] = {}
                for i in range(n):
                    g = sel[a][i]
                    if g:
                        wanted.setdefault(g, []).append(i)
                if not wanted:
                    continue
                h2 = s2.request(a)
                for g, outs in wanted.items():
                    h3 = s3.request(g)
                    for i in outs:
                        circuit.add_gate(ccnot(h2.wire, h3.wire, y[i]))
                        output_gates += 1
                    s3.release(h3)
                s2.release(h2)
        else:
            by_form: dict[int, dict[int, list[int]]] = {}
            for a in range(rows):
                for i in range(n):
                    g = sel[a][i]
                    if g:
                        by_form.setdefault(g, {}).setdefault(a, []).append(i)
            for g in sorted(by_form):
                h3 = s3.request(g)
                for a, outs in by_form[g].items():
                    h2 = s2.request(a)
                    for i in outs:
                        circuit.add_gate(ccnot(h2.wire, h3.wire, y[i]))
                        output_gates += 1
                    s2.release(h2)
                s3.release(h3)
        s3.teardown()
        for j, sigma in enumerate(block):
            s1.toggle(sigma, holders[j] if holders else None)
        pool.recycle()
        st = s3.stats()
        report.s3_stats.append(st)
        report.provider_depths.setdefault("s3", []).append(depth(s3.gates[: st.emitted - st.teardown]))
        s3_gates += st.emitted
        report.group_boundaries.append(len(circuit.gates))

    report.s1_stats = s1.stats()
    report.s2_stats = s2.stats()
    report.provider_depths["s1"] = [depth(s1.gates)]
    report.provider_depths["s2"] = [depth(s2.gates)]
    report.holder_wires = holders
    report.s3_wires = list(pool.allocated)

    report.L = len(circuit.gates)
    report.D = depth(circuit)
    report.Q = circuit.width - n
    report.t1 = s1.t
    report.t2 = s2.t - t2_before
    report.t3 = max((st.t for st in report.s3_stats), default=0)
    report.t3_total = sum(st.t for st in report.s3_stats)
    report.stage_gates = {
        "negation": 2 * n,
        "s1": len(s1.gates),
        "s2": len(s2.gates),
        "s3": s3_gates,
        "output": output_gates,
    }
    s3_storage = sum(1 for w in pool.allocated if circuit.roles[w] is WireRole.STORAGE)
    report.ancilla_ledger = {
        "negation": n,
        "s1_storage": report.s1_stats.stored_wires,
        "s1_scratch": report.s1_stats.scratch_wires,
        "holders": len(holders),
        "s2_storage": report.s2_stats.stored_wires,
        "s2_scratch": report.s2_stats.scratch_wires,
        "s3_storage": s3_storage,
        "s3_scratch": len(pool.allocated) - s3_storage,
        "output": n,
    }
    report.bounds = {
        "l_shannon_upper": bounds.l_shannon_upper(n, q),
        "d_shannon_upper": bounds.d_shannon_upper(n, q),
    }
    return circuit, report


def ancilla_audit(report: SynthesisReport, q: int) -> bool:
    """Measured Q fits the budget and equals the sum of the allocation ledger."""
    return report.Q <= q and sum(report.ancilla_ledger.values()) == report.Q


def check_invariants(report: SynthesisReport) -> list[str]:
    """Every exact inequality the construction promises; returns violations."""
    n, p = report.n, report.params
    rows = 1 << (n - p.k)
    bad = []

    def expect(cond: bool, msg: str):
        if not cond:
            bad.append(msg)

    expect(report.t1 == 1 << (p.k + 1), f"t1={report.t1} != 2^(k+1)")
    for name, st in (("s1", report.s1_stats), ("s2", report.s2_stats)):
        expect(st.emitted <= st.on_demand_bound, f"{name} emitted {st.emitted} > {st.on_demand_bound}")
        expect(st.ancilla <= st.q_p + st.m - 1, f"{name} ancilla {st.ancilla} > q_p + m - 1")
        d = report.provider_depths[name][0]
        expect(d <= st.depth_bound, f"{name} depth {d} > {st.depth_bound}")
    for j, st in enumerate(report.s3_stats):
        body = st.emitted - st.teardown
        expect(body <= st.on_demand_bound, f"s3[{j}] emitted {body} > {st.on_demand_bound}")
        expect(st.teardown == st.materialized, f"s3[{j}] teardown does not mirror materialization")
        expect(st.ancilla <= st.q_p + st.m - 1, f"s3[{j}] ancilla {st.ancilla} > q_p + m - 1")
        d = report.provider_depths["s3"][j]
        expect(d <= st.depth_bound, f"s3[{j}] depth {d} > {st.depth_bound}")
    expect(report.Q <= report.q, f"Q={report.Q} > q={report.q}")
    expect(ancilla_audit(report, report.q), "ancilla ledger does not add up")
    expect(report.stage_gates["output"] <= p.p * n * rows, "output stage exceeds p*n*2^(n-k)")
    expect(sum(report.stage_gates.values()) == report.L, "stage gate counts do not sum to L")
    if p.strategy is Strategy.MINIMIZE_T2:
        expect(report.t2 <= p.p * rows, f"t2={report.t2} > p*2^(n-k)")
        expect(report.t3 <= n * rows, f"t3={report.t3} > n*2^(n-k)")
    else:
        expect(report.t2 <= p.p * n * rows, f"t2={report.t2} > p*n*2^(n-k)")
        expect(report.t3 <= 1 << p.s, f"t3={report.t3} > 2^s")
    return bad
