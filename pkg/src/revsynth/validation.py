"""Input checks shared by the estimator and the CLI."""
from __future__ import annotations

import numpy as np

from .exceptions import TooLarge, WidthMismatch
from .simulator import MAX_EXHAUSTIVE_N
from .truth_table import TruthTable


def _is_int_like(arr: np.ndarray) -> bool:
    return np.issubdtype(arr.dtype, np.integer) or np.issubdtype(arr.dtype, np.bool_)


def _n_from_rows(rows: int) -> int:
    if rows < 1 or rows & (rows - 1):
        raise ValueError(f"a truth table needs 2**n rows, got {rows}")
    return rows.bit_length() - 1


def check_truth_table(obj) -> TruthTable:
    """Coerce ``obj`` into a TruthTable.

    Accepted: a TruthTable, a 1-D sequence of ``2**n`` output words, or a
    ``(2**n, n)`` array of output bits with f1 in column 0.
    """
    if isinstance(obj, TruthTable):
        return obj
    arr = np.asarray(obj)
    if not _is_int_like(arr):
        raise TypeError(f"truth table entries must be integers, got dtype {arr.dtype}")
    if arr.ndim == 1:
        n = _n_from_rows(arr.shape[0])
        return TruthTable(n, tuple(int(v) for v in arr))
    if arr.ndim == 2:
        n = _n_from_rows(arr.shape[0])
        if arr.shape[1] != n:
            raise WidthMismatch(f"{arr.shape[0]} rows need {n} bit columns, got {arr.shape[1]}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("bit arrays may only contain 0 and 1")
        weights = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
        return TruthTable(n, tuple(int(v) for v in arr.astype(np.int64) @ weights))
    raise ValueError(f"expected a 1-D or 2-D table, got {arr.ndim} dimensions")


def check_input_words(X, n: int) -> tuple[np.ndarray, bool]:
    """Return ``(words, as_bits)`` for a batch of inputs.

    ``X`` is either a 1-D array of words in ``[0, 2**n)`` or a 2-D array of
    shape ``(samples, n)`` holding bits.  ``as_bits`` records which form was
    given so results can be returned in the same form.
    """
    arr = np.asarray(X)
    if not _is_int_like(arr):
        raise TypeError(f"inputs must be integers, got dtype {arr.dtype}")
    if arr.ndim == 1:
        words = arr.astype(np.int64)
        if words.size and (words.min() < 0 or words.max() >= 1 << n):
            raise WidthMismatch(f"input words must lie in [0, {1 << n})")
        return words, False
    if arr.ndim == 2:
        if arr.shape[1] != n:
            raise WidthMismatch(f"expected {n} bit columns, got {arr.shape[1]}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("bit arrays may only contain 0 and 1")
        weights = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
        return arr.astype(np.int64) @ weights, True
    raise ValueError(f"expected a 1-D or 2-D input batch, got {arr.ndim} dimensions")


def check_exhaustive(n: int) -> None:
    if n > MAX_EXHAUSTIVE_N:
        raise TooLarge(f"n={n} exceeds the exhaustive cap {MAX_EXHAUSTIVE_N}")


def words_to_bits(words: np.ndarray, n: int) -> np.ndarray:
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((np.asarray(words, dtype=np.int64)[:, None] >> shifts) & 1).astype(np.uint8)
