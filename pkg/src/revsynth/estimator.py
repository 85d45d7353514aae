"""scikit-learn style front end.

``ReversibleSynthesizer().fit(table)`` compiles a truth table into a circuit;
``predict`` evaluates that circuit, so it doubles as a check that the
compiled netlist really computes the table.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .metrics import Metrics, measure
from .simulator import extract_transformation
from .synthesis import Strategy, select_params, synthesize
from .validation import check_exhaustive, check_input_words, check_truth_table, words_to_bits


class ReversibleSynthesizer(BaseEstimator):
    """Compile a Boolean transformation into NOT/CNOT/2-CNOT gates.

    Parameters
    ----------
    q : int or None
        Ancilla budget.  ``None`` uses ``8n + 1``.
    strategy : {1, 2}
        1 minimises requests to the S2 provider, 2 those to the S3 provider.
    k : int or None
        Number of leading variables handled by the block minterm stage;
        chosen automatically when None.
    group_size : int or None
        Minterms per group; defaults to ``n - k``.

    Attributes
    ----------
    circuit_ : Circuit
    report_ : SynthesisReport
    n_inputs_ : int
    metrics_ : Metrics
    """

    def __init__(self, q=None, strategy=2, k=None, group_size=None):
        self.q = q
        self.strategy = strategy
        self.k = k
        self.group_size = group_size

    def fit(self, X, y=None):
        """``X`` is the table to compile (see ``check_truth_table``); ``y`` is ignored."""
        tt = check_truth_table(X)
        check_exhaustive(tt.n)
        q = 8 * tt.n + 1 if self.q is None else int(self.q)
        strategy = Strategy(int(self.strategy))
        params = None
        if self.k is not None or self.group_size is not None:
            params = select_params(tt.n, q, strategy, k=self.k, s=self.group_size)
        self.circuit_, self.report_ = synthesize(tt, q, strategy, params=params)
        self.n_inputs_ = tt.n
        self.metrics_: Metrics = measure(self.circuit_)
        self._table = np.asarray(extract_transformation(self.circuit_).entries, dtype=np.int64)
        return self

    def predict(self, X):
        """Outputs of the fitted circuit, in the same form (words or bits) as ``X``."""
        check_is_fitted(self, "circuit_")
        words, as_bits = check_input_words(X, self.n_inputs_)
        out = self._table[words]
        return words_to_bits(out, self.n_inputs_) if as_bits else out

    def score(self, X, y):
        """Fraction of rows where the circuit output equals ``y``."""
        pred = self.predict(X)
        y = np.asarray(y)
        if pred.ndim == 2:
            return float(np.mean(np.all(pred == y, axis=1)))
        return float(np.mean(pred == y))
