"""Closed-form upper bounds on complexity, depth and ancilla count.

Evaluators are total: a non-positive logarithm argument or denominator
yields ``valid=False`` with an infinite value instead of raising.  Powers of
two take an exact integer path for every logarithm, so results on such
inputs are bit-exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf


@dataclass(frozen=True)
class BoundReport:
    value: float
    valid: bool
    formula: str

    def as_dict(self) -> dict:
        return {"value": None if math.isinf(self.value) else self.value, "valid": self.valid}


def _log2(x: float) -> float:
    if x <= 0:
        return -INF
    if isinstance(x, int) or float(x).is_integer():
        xi = int(x)
        if xi & (xi - 1) == 0:
            return float(xi.bit_length() - 1)
    return math.log2(x)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def _clean(value: float) -> float:
    if math.isfinite(value) and value == int(value):
        return float(int(value))
    return value


# -- q = 0 (everything on demand) ------------------------------------------

def l_conj0(n: int, t: int) -> int:
    return 2 * (n - 1) * t


def q_conj0(n: int) -> int:
    return n - 1


def d_conj0(n: int, t: int) -> int:
    return 2 * t * _ceil_log2(n)


# -- general budget ---------------------------------------------------------

def _lemma_denominator(n: int, q: float) -> float:
    return _log2(q) - _log2(n) - 1


def ondemand_factor(n: int, q: int) -> BoundReport:
    """Cap on 2**(r+1): 8n / (log2 q - log2 n - 1)."""
    den = _lemma_denominator(n, q)
    if not q > 2 * n or den <= 0:
        return BoundReport(INF, False, "ondemand_factor")
    return BoundReport(_clean(8 * n / den), True, "ondemand_factor")


def l_conj(n: int, q: int, t: int) -> BoundReport:
    den = _lemma_denominator(n, q)
    if not q > 2 * n or den <= 0:
        return BoundReport(INF, False, "l_conj")
    return BoundReport(_clean(q + 8 * n * t / den), True, "l_conj")


def q_conj(n: int, q: int) -> int:
    return q + n - 1


def _depth_log_term(n: int, q: float) -> float:
    return 2 + _log2(n) - _log2(_lemma_denominator(n, q))


def d_conj(n: int, q: int, t: int) -> BoundReport:
    den = _lemma_denominator(n, q)
    if not q > 2 * n or den <= 0:
        return BoundReport(INF, False, "d_conj")
    return BoundReport(_clean(q + 2 * t * _depth_log_term(n, q)), True, "d_conj")


def l_xor(n: int, q: int, t: int) -> BoundReport:
    den = _lemma_denominator(n, q)
    if not q > 2 * n or den <= 0:
        return BoundReport(INF, False, "l_xor")
    return BoundReport(_clean(2 * q + 16 * n * t / den), True, "l_xor")


def d_xor(n: int, q: int, t: int) -> BoundReport:
    inner = d_conj(n, q, t)
    return BoundReport(_clean(2 * inner.value), inner.valid, "d_xor")


def q_xor(n: int, q: int) -> int:
    return q + n - 1


# -- intermediate r-forms ------------------------------------------------------

def l_conj_r(q: int, r: int, t: int) -> int:
    """q + 2(2^r - 1)t: stored gates plus compute and cleanup per request."""
    return q + 2 * ((1 << r) - 1) * t


def d_conj_r(q: int, r: int, t: int) -> int:
    return q + 2 * t * r


# -- storage thresholds -------------------------------------------------------

def delta_threshold(n: int, s: int) -> float:
    """(3n / 2^s) * 2^(2^(s+1)): budget that covers the s+1 deepest levels."""
    return _clean(3 * n * 2.0 ** (2 ** (s + 1) - s))


def storage_levels_bound(n: int, q: int) -> int:
    """Largest s in [0, K-1] whose threshold fits in q, or -1."""
    best = -1
    for s in range(_ceil_log2(n)):
        if delta_threshold(n, s) <= q:
            best = s
        else:
            break
    return best


# -- theorem-level bounds -----------------------------------------------------

def _theorem_denominator(n: int, q: int) -> float:
    return _log2(q - 4 * n) - _log2(n) - 2


def l_shannon_upper(n: int, q: int) -> BoundReport:
    den = _theorem_denominator(n, q)
    if not q > 8 * n or den <= 0:
        return BoundReport(INF, False, "l_shannon_upper")
    return BoundReport(_clean(2 ** n + 8 * n * 2 ** n / den), True, "l_shannon_upper")


def d_shannon_upper(n: int, q: int) -> BoundReport:
    den = _theorem_denominator(n, q)
    if not q > 8 * n or den <= 0:
        return BoundReport(INF, False, "d_shannon_upper")
    value = 2 ** (n + 1) * (2.5 + _log2(n) - _log2(den))
    return BoundReport(_clean(value), True, "d_shannon_upper")


def all_bounds(n: int, q: int, t: int = 1) -> dict[str, BoundReport | int | float]:
    """Every evaluator at one point, in a stable order (used by the CLI)."""
    return {
        "l_conj0": l_conj0(n, t),
        "q_conj0": q_conj0(n),
        "d_conj0": d_conj0(n, t),
        "l_conj": l_conj(n, q, t),
        "q_conj": q_conj(n, q),
        "d_conj": d_conj(n, q, t),
        "l_xor": l_xor(n, q, t),
        "q_xor": q_xor(n, q),
        "d_xor": d_xor(n, q, t),
        "ondemand_factor": ondemand_factor(n, q),
        "storage_levels_bound": storage_levels_bound(n, q),
        "l_shannon_upper": l_shannon_upper(n, q),
        "d_shannon_upper": d_shannon_upper(n, q),
    }
