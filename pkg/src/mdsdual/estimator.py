"""scikit-learn style wrapper: fit on an evaluation set, transform messages
into codewords of the resulting self-dual MDS code."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import grs
from .families import canonical_field


class SelfDualGRSCode(TransformerMixin, BaseEstimator):
    """Self-dual (extended) GRS code over the canonical GF(q).

    Parameters
    ----------
    q : int
        Field order, an odd prime power.
    kind : {"grs", "egrs"} or None
        Code type; None picks grs for an even number of points and egrs
        for an odd number.

    Attributes
    ----------
    points_ : tuple of int
    weights_ : tuple of int
        Canonical column multipliers.
    generator_matrix_ : ndarray of shape (k, N)
    report_ : VerificationReport
    """

    def __init__(self, q: int = 9, kind: str | None = None):
        self.q = q
        self.kind = kind

    def fit(self, X, y=None):
        points = check_array(X, ensure_2d=False, dtype=np.int64).ravel()
        F = canonical_field(int(self.q))
        if self.kind not in (None, "grs", "egrs"):
            raise ValueError(f"kind must be 'grs', 'egrs' or None, got {self.kind!r}")
        art, report = grs.build_code(F, points.tolist(), self.kind)
        self.field_ = F
        self.kind_ = art.kind
        self.points_ = art.points
        self.weights_ = art.weights
        self.generator_matrix_ = np.asarray(art.matrix, dtype=np.int64)
        self.report_ = report
        self.n_components_ = art.length
        return self

    def transform(self, X):
        """Encode each row (k message symbols) as a length-N codeword."""
        check_is_fitted(self, "generator_matrix_")
        msgs = check_array(X, dtype=np.int64)
        k, N = self.generator_matrix_.shape
        if msgs.shape[1] != k:
            raise ValueError(f"messages must have {k} symbols, got {msgs.shape[1]}")
        if msgs.min(initial=0) < 0 or msgs.max(initial=0) >= self.field_.q:
            raise ValueError(f"message symbols must be field indices in [0, {self.field_.q})")
        F = self.field_
        out = np.zeros((msgs.shape[0], N), dtype=np.int64)
        for i in range(k):
            out = F.vadd(out, F.vmul(msgs[:, i, None], self.generator_matrix_[i][None, :]))
        return out

    def is_codeword(self, words) -> np.ndarray:
        """Membership test via the self-dual parity check (G is also a parity-check matrix)."""
        check_is_fitted(self, "generator_matrix_")
        W = check_array(words, dtype=np.int64)
        F = self.field_
        G = self.generator_matrix_
        syn = np.zeros((W.shape[0], G.shape[0]), dtype=np.int64)
        for j in range(G.shape[1]):
            syn = F.vadd(syn, F.vmul(W[:, j, None], G[:, j][None, :]))
        return (syn == 0).all(axis=1)
