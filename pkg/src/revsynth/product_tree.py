"""Balanced product trees that serve minterms (AND mode) or linear forms
(XOR mode) of their variables under an ancilla budget.

The tree over ``m`` variables halves recursively: a node over a block of
``size`` variables has a first child over ``size // 2`` and a second child
over the rest.  Single variables are leaves and are served straight from the
literal wires.  Every node with two or more variables is a *product node*:
its output for the sub-selector ``(a_left, a_right)`` is

* AND mode: ``left[a_left] & right[a_right]`` (one 2-CNOT),
* XOR mode: ``left[a_left] ^ right[a_right]`` (two CNOTs).

Levels are numbered from the root (level 1) to ``K = ceil(log2 m)``.  The
budget buys storage for whole levels, deepest first; the remaining ``r``
levels next to the root are rebuilt on demand for every request on scratch
wires and cleaned by replaying the same gates in reverse.

Selectors follow the package bit convention: for a provider over variables
``v1..vm`` the selector bit of ``v1`` is the most significant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Sequence

from .circuit import Circuit, Gate, WireRole, ccnot, cnot
from .exceptions import BudgetInfeasible, DoubleRelease, ScratchExhausted


class ProviderMode(Enum):
    AND = "and"
    XOR = "xor"


@dataclass(eq=False)
class TreeNode:
    index: int
    variables: tuple
    lo: int
    hi: int
    level: int
    children: tuple["TreeNode", "TreeNode"] | None = None

    @property
    def size(self) -> int:
        return self.hi - self.lo

    @property
    def is_product(self) -> bool:
        return self.children is not None

    def __repr__(self):
        return f"TreeNode(level={self.level}, variables={self.variables})"


@dataclass
class TreePlan:
    variables: tuple
    root: TreeNode
    nodes: list[TreeNode]
    K: int
    levels: list[list[TreeNode]]

    @property
    def m(self) -> int:
        return len(self.variables)

    def product_nodes(self, level: int) -> list[TreeNode]:
        return [v for v in self.levels[level - 1] if v.is_product and v.level == level]

    def level_size(self, level: int) -> int:
        """Outputs a stored level occupies (2**size per product node)."""
        return sum(1 << v.size for v in self.product_nodes(level))

    @property
    def level_sizes(self) -> list[int]:
        return [self.level_size(k) for k in range(1, self.K + 1)]


def plan_tree(variables: Sequence[Hashable]) -> TreePlan:
    variables = tuple(variables)
    m = len(variables)
    if m == 0:
        raise ValueError("a product tree needs at least one variable")
    nodes: list[TreeNode] = []

    def build(lo: int, hi: int, level: int) -> TreeNode:
        node = TreeNode(len(nodes), variables[lo:hi], lo, hi, level)
        nodes.append(node)
        if hi - lo >= 2:
            mid = lo + (hi - lo) // 2
            node.children = (build(lo, mid, level + 1), build(mid, hi, level + 1))
        return node

    root = build(0, m, 1)
    K = max(1, math.ceil(math.log2(m))) if m > 1 else 1
    levels = [[root]]
    for _ in range(K - 1):
        nxt: list[TreeNode] = []
        for v in levels[-1]:
            nxt.extend(v.children if v.is_product else (v,))
        levels.append(nxt)
    return TreePlan(variables, root, nodes, K, levels)


@dataclass(frozen=True)
class StoragePlan:
    budget: int
    stored_levels: frozenset[int]
    r: int
    scratch: int
    stored_outputs: int

    @property
    def s(self) -> int:
        """Index of the highest stored level counted from the inputs (-1: none stored)."""
        return len(self.stored_levels) - 1


def storage_split(plan: TreePlan, budget: int) -> StoragePlan:
    """Store whole levels from K upward while their outputs fit in ``budget``.

    ``scratch`` is the number of product nodes in the ``r`` on-demand levels,
    i.e. the scratch wires one request path needs; it is not charged to the
    budget.
    """
    if budget < 0:
        raise BudgetInfeasible(f"negative budget {budget}")
    stored = 0
    stored_levels = []
    for k in range(plan.K, 0, -1):
        size = plan.level_size(k)
        if stored + size > budget:
            break
        stored += size
        stored_levels.append(k)
    r = plan.K - len(stored_levels)
    if plan.m == 1:
        r = 0
    scratch = sum(len(plan.product_nodes(k)) for k in range(1, r + 1))
    return StoragePlan(budget, frozenset(stored_levels), r, scratch, stored)


@dataclass(eq=False)
class Handle:
    wire: int
    trace: list[Gate] = field(default_factory=list)
    holds_scratch: bool = False
    released: bool = False
    owner: "ProductTreeProvider | None" = field(default=None, repr=False)


@dataclass(frozen=True)
class ProviderStats:
    mode: ProviderMode
    m: int
    q_p: int
    r: int
    t: int
    emitted: int
    materialized: int
    teardown: int
    stored_wires: int
    scratch_wires: int

    @property
    def ancilla(self) -> int:
        return self.stored_wires + self.scratch_wires

    @property
    def on_demand_bound(self) -> int:
        """Gate cap for everything but teardown: q + 2(2^r - 1)t, doubled in XOR mode."""
        base = self.q_p + 2 * ((1 << self.r) - 1) * self.t
        return 2 * base if self.mode is ProviderMode.XOR else base

    @property
    def depth_bound(self) -> int:
        base = self.q_p + 2 * self.t * self.r
        return 2 * base if self.mode is ProviderMode.XOR else base


Allocator = Callable[[WireRole], int]


class ProductTreeProvider:
    """Serves AND/XOR products of ``m`` literal pairs on a circuit.

    Usage: ``materialize`` once, then any number of ``request``/``release``
    pairs (one outstanding scratch-holding handle at a time) and ``toggle``
    calls.  ``teardown`` uncomputes the stored levels.
    """

    def __init__(
        self,
        variables: int | Sequence[Hashable],
        budget: int,
        mode: ProviderMode = ProviderMode.AND,
        alloc: Allocator | None = None,
    ):
        if isinstance(variables, int):
            variables = range(variables)
        self.plan = plan_tree(variables)
        self.storage = storage_split(self.plan, budget)
        self.mode = mode
        self._alloc = alloc
        self.circuit: Circuit | None = None
        self.gates: list[Gate] = []
        self.t = 0
        self.materialized = 0
        self.teardown_count = 0
        self._literals: list[tuple[int | None, int | None]] = []
        self._stored: dict[int, list[int | None]] = {}
        self._scratch: dict[int, int] = {}
        self._zero: int | None = None
        self._outstanding: Handle | None = None
        self._torn_down = False
        self.stored_wires: list[int] = []

    @property
    def m(self) -> int:
        return self.plan.m

    @property
    def r(self) -> int:
        return self.storage.r

    @property
    def root_on_demand(self) -> bool:
        root = self.plan.root
        return root.is_product and root.level not in self.storage.stored_levels

    @property
    def scratch_wires(self) -> list[int]:
        wires = list(self._scratch.values())
        if self._zero is not None:
            wires.append(self._zero)
        return wires

    def _new_wire(self, role: WireRole) -> int:
        if self._alloc is not None:
            return self._alloc(role)
        return self.circuit.alloc_wire(role)

    def _emit(self, gate: Gate, trace: list[Gate] | None = None):
        self.circuit.add_gate(gate)
        self.gates.append(gate)
        if trace is not None:
            trace.append(gate)

    def _is_direct(self, node: TreeNode) -> bool:
        return not node.is_product or node.level in self.storage.stored_levels

    def _direct_wire(self, node: TreeNode, sub: int) -> int | None:
        if not node.is_product:
            pos, neg = self._literals[node.lo]
            return pos if sub else neg
        return self._stored[node.index][sub]

    def _combine(self, left: int | None, right: int | None, target: int, trace) -> bool:
        """Emit the node gate(s) onto ``target``; False if nothing was emitted."""
        if self.mode is ProviderMode.AND:
            self._emit(ccnot(left, right, target), trace)
            return True
        emitted = False
        for w in (left, right):
            if w is not None:
                self._emit(cnot(w, target), trace)
                emitted = True
        return emitted

    @staticmethod
    def _split(node: TreeNode, sub: int) -> tuple[int, int]:
        right = node.children[1]
        return sub >> right.size, sub & ((1 << right.size) - 1)

    # -- construction ---------------------------------------------------------

    def materialize(self, circuit: Circuit, literal_wires: Sequence[tuple[int, int | None]]) -> None:
        """Bind to ``circuit`` and compute every stored level, deepest first.

        ``literal_wires[i]`` is ``(wire of v_i, wire of not v_i)``; in XOR mode
        the negation is unused and may be None.
        """
        if self.circuit is not None:
            raise RuntimeError("provider already materialized")
        if len(literal_wires) != self.m:
            raise ValueError(f"expected {self.m} literal pairs, got {len(literal_wires)}")
        self.circuit = circuit
        if self.mode is ProviderMode.AND:
            if any(neg is None for _, neg in literal_wires):
                raise ValueError("AND mode needs the negated literal wires")
            self._literals = [(pos, neg) for pos, neg in literal_wires]
        else:
            self._literals = [(pos, None) for pos, _ in literal_wires]
        for k in sorted(self.storage.stored_levels, reverse=True):
            for node in self.plan.product_nodes(k):
                left, right = node.children
                outputs: list[int | None] = []
                for sub in range(1 << node.size):
                    ls, rs = self._split(node, sub)
                    lw = self._direct_wire(left, ls)
                    rw = self._direct_wire(right, rs)
                    if self.mode is ProviderMode.XOR and lw is None and rw is None:
                        outputs.append(None)
                        continue
                    w = self._new_wire(WireRole.STORAGE)
                    self.stored_wires.append(w)
                    self._combine(lw, rw, w, None)
                    outputs.append(w)
                self._stored[node.index] = outputs
        self.materialized = len(self.gates)

    def stored_wire(self, node: TreeNode, sub: int) -> int | None:
        return self._stored[node.index][sub]

    def teardown(self) -> None:
        """Uncompute the stored levels; the provider is unusable afterwards."""
        if self._outstanding is not None:
            raise RuntimeError("cannot tear down with an outstanding handle")
        for g in self.gates[: self.materialized][::-1]:
            self._emit(g)
        self.teardown_count = self.materialized
        self._torn_down = True

    # -- requests -------------------------------------------------------------

    def _check(self, selector: int):
        if self.circuit is None:
            raise RuntimeError("provider not materialized")
        if self._torn_down:
            raise RuntimeError("provider was torn down")
        if not 0 <= selector < (1 << self.m):
            raise ValueError(f"selector {selector} is not an {self.m}-bit word")

    def _acquire(self):
        if self._outstanding is not None:
            raise ScratchExhausted("release the outstanding handle before the next on-demand request")

    def _scratch_for(self, node: TreeNode) -> int:
        w = self._scratch.get(node.index)
        if w is None:
            w = self._scratch[node.index] = self._new_wire(WireRole.SCRATCH)
        return w

    def _zero_wire(self) -> int:
        if self._zero is None:
            self._zero = self._new_wire(WireRole.SCRATCH)
        return self._zero

    def _compute(self, node: TreeNode, sub: int, trace: list[Gate], target: int | None = None) -> int | None:
        if self._is_direct(node):
            return self._direct_wire(node, sub)
        ls, rs = self._split(node, sub)
        left = self._compute(node.children[0], ls, trace)
        right = self._compute(node.children[1], rs, trace)
        if left is None and right is None:
            return None if target is None else target
        out = target if target is not None else self._scratch_for(node)
        self._combine(left, right, out, trace)
        return out

    def request(self, selector: int) -> Handle:
        """Return a handle on a wire carrying the product for ``selector``.

        Values that are literals or stored are returned without gates.  The
        all-zero XOR selector returns a wire that is constantly 0.
        """
        self._check(selector)
        self.t += 1
        root = self.plan.root
        if self._is_direct(root):
            w = self._direct_wire(root, selector)
            if w is None:
                w = self._zero_wire()
            return Handle(w, [], False, owner=self)
        self._acquire()
        trace: list[Gate] = []
        w = self._compute(root, selector, trace)
        if w is None:
            # zero linear form: the idle root scratch wire reads 0
            w = self._scratch_for(root)
        handle = Handle(w, trace, True, owner=self)
        self._outstanding = handle
        return handle

    def release(self, handle: Handle) -> None:
        if handle.owner is not self:
            raise ValueError("handle belongs to another provider")
        if handle.released:
            raise DoubleRelease("handle already released")
        for g in handle.trace[::-1]:
            self._emit(g)
        handle.released = True
        if handle.holds_scratch:
            self._outstanding = None

    def toggle(self, selector: int, target: int | None = None) -> int:
        """XOR the product for ``selector`` onto ``target`` and return ``target``.

        Inner scratch is cleaned before returning, so calling twice with the
        same arguments restores ``target``.  If the value already sits on a
        literal or stored wire, nothing is emitted and that wire is returned
        instead.  Each call counts as one request.
        """
        self._check(selector)
        self.t += 1
        root = self.plan.root
        if self._is_direct(root):
            w = self._direct_wire(root, selector)
            return self._zero_wire() if w is None else w
        if target is None:
            raise ValueError("an on-demand root needs a target wire")
        self._acquire()
        ls, rs = self._split(root, selector)
        inner: list[Gate] = []
        left = self._compute(root.children[0], ls, inner)
        right = self._compute(root.children[1], rs, inner)
        if left is not None or right is not None:
            self._combine(left, right, target, None)
        for g in inner[::-1]:
            self._emit(g)
        return target

    def stats(self) -> ProviderStats:
        return ProviderStats(
            mode=self.mode,
            m=self.m,
            q_p=self.storage.budget,
            r=self.r,
            t=self.t,
            emitted=len(self.gates),
            materialized=self.materialized,
            teardown=self.teardown_count,
            stored_wires=len(self.stored_wires),
            scratch_wires=len(self.scratch_wires),
        )

    def predicate(self, selector: int) -> Callable[[int], int]:
        """Reference value of ``selector`` as a function of the provider's
        variable values (packed MSB-first into an ``m``-bit word)."""
        m = self.m
        if self.mode is ProviderMode.AND:
            return lambda v: int(v == selector)
        return lambda v: bin(v & selector).count("1") & 1
