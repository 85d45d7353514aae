"""Grid sweeps over (n, q, strategy) on seeded random tables."""
from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .exceptions import QBudgetTooSmall
from .product_tree import plan_tree
from .simulator import verify_against
from .synthesis import Strategy, _group_size, fixed_overhead, synthesize
from .truth_table import TruthTable

log = logging.getLogger(__name__)

COLUMNS = ("n", "q", "strategy", "k", "s", "L", "D", "Q", "t1", "t2", "t3", "L_bound", "D_bound", "valid")


class VerificationFailed(RuntimeError):
    def __init__(self, n: int, q: int, strategy: int, mismatches: int):
        super().__init__(f"n={n} q={q} strategy={strategy}: {mismatches} mismatching inputs")
        self.mismatches = mismatches


@dataclass(frozen=True)
class BenchRow:
    n: int
    q: int
    strategy: int
    k: int
    s: int
    L: int
    D: int
    Q: int
    t1: int
    t2: int
    t3: int
    L_bound: float
    D_bound: float
    valid: bool

    def as_csv(self) -> list[str]:
        def fmt(v):
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return "" if math.isinf(v) else repr(v)
            return str(v)

        return [fmt(getattr(self, c)) for c in COLUMNS]


def full_storage_budget(n: int) -> int:
    """Smallest q at which every k can store all levels of both S2 and S3."""
    best = 0
    for k in range(1, n):
        s = _group_size(n, k, None)
        full2 = sum(plan_tree(range(n - k)).level_sizes)
        full3 = sum(plan_tree(range(s)).level_sizes)
        best = max(best, fixed_overhead(n, k, s) + 2 * max(full2, full3))
    return best


def run_point(n: int, q: int, strategy: int, seed: int | str) -> BenchRow:
    """Synthesize the seeded table for ``n`` at one grid point and verify it."""
    tt = TruthTable.random(n, seed)
    circuit, rep = synthesize(tt, q, Strategy(strategy))
    check = verify_against(circuit, tt)
    if not check.passed or rep.Q > q:
        raise VerificationFailed(n, q, strategy, len(check.mismatches))
    lb, db = rep.bounds["l_shannon_upper"], rep.bounds["d_shannon_upper"]
    return BenchRow(
        n, q, int(strategy), rep.params.k, rep.params.s, rep.L, rep.D, rep.Q,
        rep.t1, rep.t2, rep.t3, lb.value, db.value, lb.valid and db.valid,
    )


def _safe_point(args) -> BenchRow | None:
    try:
        return run_point(*args)
    except QBudgetTooSmall as exc:
        log.warning("skipping n=%d q=%d strategy=%d: %s", args[0], args[1], args[2], exc)
        return None


def run_bench(
    n_list: Iterable[int],
    q_grid: Iterable[int],
    strategies: Sequence[int] = (1, 2),
    seed: int | str = 0,
    jobs: int = 1,
) -> list[BenchRow]:
    """All feasible grid points, ordered by (n, q, strategy) whatever ``jobs`` is.

    Points whose budget is below the minimum are logged and left out.
    """
    points = sorted(set(product(n_list, q_grid, strategies)))
    tasks = [(n, q, s, seed) for n, q, s in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_safe_point, tasks))
    else:
        rows = [_safe_point(t) for t in tasks]
    return [r for r in rows if r is not None]


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())
    return buf.getvalue()
