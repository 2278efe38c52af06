"""scikit-learn style wrappers.

Samples are Grassmannian points: q(r) x dim S_r rational matrices or
:class:`~hilbeq.verify.RationalSubspace` objects.  Nothing is learned;
``fit`` builds the equations for the configured Hilbert polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import equations as eqs
from .hilbpoly import HilbertPolynomialContext, gotzmann_decompose, parse_polynomial
from .plucker import DeltaPolynomial
from .verify import RationalSubspace, block_ranks, delta_from_matrix, in_open_U, persistence_rank

FAMILIES = ("ik", "bayer", "blmr-t1", "blmr-t2", "blmr-full")


def check_context(p, n) -> HilbertPolynomialContext:
    if isinstance(p, HilbertPolynomialContext):
        return p
    if isinstance(p, str):
        coeffs = parse_polynomial(p)
    elif isinstance(p, (int, Fraction)):
        coeffs = [p]
    else:
        coeffs = list(p)
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return gotzmann_decompose(coeffs, int(n))


def check_points(X, ctx: HilbertPolynomialContext) -> list[RationalSubspace]:
    """Coerce a sample or a batch of samples to a list of RationalSubspace."""
    if isinstance(X, RationalSubspace):
        X = [X]
    elif _is_matrix(X):
        X = [X]
    out = []
    for M in X:
        if isinstance(M, RationalSubspace):
            if M.ctx != ctx:
                raise ValueError("point belongs to a different Hilbert polynomial")
            out.append(M)
        else:
            out.append(RationalSubspace(ctx, [list(row) for row in M]))
    if not out:
        raise ValueError("no samples given")
    return out


def _is_matrix(X) -> bool:
    if isinstance(X, np.ndarray):
        return X.ndim == 2
    try:
        first = X[0]
        return not isinstance(first, RationalSubspace) and not _is_nested(first[0])
    except (TypeError, IndexError, KeyError):
        return False


def _is_nested(x) -> bool:
    return isinstance(x, (list, tuple, np.ndarray))


class HilbertSchemeEquations(TransformerMixin, BaseEstimator):
    """Equations of one family; ``transform`` evaluates them at points.

    Parameters
    ----------
    p, n : Hilbert polynomial (text, number or coefficient list) and ambient dimension.
    family : one of ``ik``, ``bayer``, ``blmr-t1``, ``blmr-t2``, ``blmr-full``.
    polys : local equations for ``blmr-full`` (defaults to T' and T'').
    tuples : explicit Bayer tuples; full enumeration when None.
    budget : cap for streamed IK minors or enumerated Bayer tuples.
    dedup : collapse equal normalized polynomials.
    """

    def __init__(self, p="2", n=2, family="blmr-t1", polys=None, tuples=None, budget=None, dedup=True):
        self.p = p
        self.n = n
        self.family = family
        self.polys = polys
        self.tuples = tuples
        self.budget = budget
        self.dedup = dedup

    def fit(self, X=None, y=None):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        ctx = check_context(self.p, self.n)
        fam = self.family
        if fam == "ik":
            es = eqs.ik_equations(ctx, self.budget or 1000, dedup=self.dedup)
        elif fam == "bayer":
            es = eqs.bayer_equations(ctx, self.tuples or "all", budget=self.budget, dedup=self.dedup)
        elif fam == "blmr-t1":
            es = eqs.blmr_t1(ctx, dedup=self.dedup)
        elif fam == "blmr-t2":
            es = eqs.blmr_t2(ctx, dedup=self.dedup)
        else:
            polys = self.polys
            if polys is None:
                polys = eqs.blmr_t1(ctx).distinct() + eqs.blmr_t2(ctx).distinct()
            polys = [DeltaPolynomial.parse(P) if isinstance(P, str) else P for P in polys]
            es = eqs.blmr_full_many(ctx, polys, dedup=self.dedup)
        self.ctx_ = ctx
        self.equations_ = es
        self.n_equations_ = len(es)
        return self

    def transform(self, X) -> np.ndarray:
        """Exact values, shape (n_samples, n_equations), dtype object (Fractions)."""
        check_is_fitted(self, "equations_")
        pts = check_points(X, self.ctx_)
        out = np.empty((len(pts), self.n_equations_), dtype=object)
        for i, M in enumerate(pts):
            coords = delta_from_matrix(M)
            for j, E in enumerate(self.equations_):
                out[i, j] = Fraction(E.evaluate(coords))
        return out

    def predict(self, X) -> np.ndarray:
        """True where every equation vanishes."""
        vals = self.transform(X)
        return np.array([not any(row) for row in vals], dtype=bool)


class PersistenceClassifier(ClassifierMixin, BaseEstimator):
    """Hilbert-scheme membership by Gotzmann persistence.

    ``predict`` is the exact rank test, ``transform`` reports
    (persistence rank, rank D1, rank D, in U) per sample.
    """

    def __init__(self, p="2", n=2):
        self.p = p
        self.n = n

    def fit(self, X=None, y=None):
        ctx = check_context(self.p, self.n)
        self.ctx_ = ctx
        self.classes_ = np.array([False, True])
        return self

    def decision_function(self, X) -> np.ndarray:
        """q(r+1) minus the persistence rank: 0 on the Hilbert scheme, negative off it."""
        check_is_fitted(self, "ctx_")
        pts = check_points(X, self.ctx_)
        target = self.ctx_.q(self.ctx_.r + 1)
        return np.array([target - persistence_rank(M) for M in pts], dtype=int)

    def predict(self, X) -> np.ndarray:
        return self.decision_function(X) == 0

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "ctx_")
        pts = check_points(X, self.ctx_)
        rows = []
        for M in pts:
            d1, d = block_ranks(M)
            rows.append((persistence_rank(M), d1, d, int(in_open_U(M))))
        return np.array(rows, dtype=int)

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y).transform(X)


def points(ctx: HilbertPolynomialContext, matrices: Sequence) -> list[RationalSubspace]:
    return check_points(list(matrices), ctx)
