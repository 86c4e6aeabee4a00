"""Doubly stochastic matrices and their decomposition into permutation mixtures.

Includes the banded transfer matrix that maps the zero-padded k-photon
output spectrum of a beam splitter onto the (k+1)-photon spectrum, which is
the constructive witness for the photon-number majorization chain.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .vectors import TOL, ProbVector

#: Acceptance window for row/column sums, mirroring the vector
#: normalization policy: tolerate roundoff, reject real bugs.
SUM_TOL = 1e-9


class DoublyStochasticMatrix:
    """Square nonnegative matrix whose rows and columns each sum to one."""

    __slots__ = ("_entries",)

    def __init__(self, entries, *, tol: float = TOL, sum_tol: float = SUM_TOL):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
            raise ValueError("expected a non-empty square matrix")
        lowest = float(arr.min())
        if lowest < -tol:
            raise ValueError(f"negative entry beyond tolerance: {lowest}")
        np.clip(arr, 0.0, None, out=arr)
        row_err = float(np.max(np.abs(arr.sum(axis=1) - 1.0)))
        col_err = float(np.max(np.abs(arr.sum(axis=0) - 1.0)))
        if row_err > sum_tol or col_err > sum_tol:
            raise ValueError(
                f"row/column sums deviate from 1 by {max(row_err, col_err)!r}"
            )
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def d(self) -> int:
        return self._entries.shape[0]

    def __repr__(self) -> str:
        return f"DoublyStochasticMatrix(d={self.d})"

    def to_rows(self) -> list[list[float]]:
        """JSON-friendly array-of-rows form."""
        return [[float(x) for x in row] for row in self._entries]

    @classmethod
    def from_rows(cls, rows) -> "DoublyStochasticMatrix":
        return cls(rows)


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """Convex combination of permutation matrices.

    ``permutations[t][i]`` is the column carrying weight ``weights[t]`` in
    row ``i`` of the t-th permutation matrix.
    """

    permutations: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.weights)

    def reconstruct(self) -> np.ndarray:
        d = len(self.permutations[0])
        out = np.zeros((d, d))
        for perm, w in zip(self.permutations, self.weights):
            out[np.arange(d), list(perm)] += w
        return out

    def to_dict(self) -> dict:
        return {
            "weights": [float(w) for w in self.weights],
            "perms": [list(p) for p in self.permutations],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BirkhoffDecomposition":
        return cls(
            permutations=tuple(tuple(int(i) for i in p) for p in data["perms"]),
            weights=tuple(float(w) for w in data["weights"]),
        )


def bs_witness_matrix(k: int, theta: float) -> DoublyStochasticMatrix:
    """Banded transfer matrix between consecutive photon-number spectra.

    The (k+2)x(k+2) matrix carries sin^2(theta) on the diagonal and
    cos^2(theta) on the subdiagonal; the top-right corner entry cos^2(theta)
    completes the row/column sums and multiplies the padded zero, so it
    never contributes. Applying it to the zero-padded k-photon spectrum
    yields the (k+1)-photon spectrum at the same angle.
    """
    k = _check_photon_number(k)
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta!r}")
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    d = k + 2
    m = np.zeros((d, d))
    np.fill_diagonal(m, s2)
    m[np.arange(1, d), np.arange(d - 1)] = c2
    m[0, d - 1] = c2
    return DoublyStochasticMatrix(m)


def apply(D: DoublyStochasticMatrix, q: ProbVector) -> ProbVector:
    """Matrix-vector product; the result is again a probability vector."""
    if D.d != q.dim:
        raise ValueError(f"dimension mismatch: matrix is {D.d}, vector is {q.dim}")
    return ProbVector(D.entries @ q.components)


def birkhoff_decompose(
    D: DoublyStochasticMatrix, *, tol: float = TOL
) -> BirkhoffDecomposition:
    """Peel a doubly stochastic matrix into a convex sum of permutations.

    Greedy peeling: find a perfect matching on the support graph of entries
    above ``tol``, routed through the smallest remaining positive entry,
    subtract that entry times the matched permutation, and repeat until the
    residual is entrywise below ``tol``. Each step zeroes at least one
    support entry, which keeps the term count within (d-1)^2 + 1.
    """
    res = D.entries.copy()
    d = D.d
    max_terms = (d - 1) ** 2 + 1
    rows_idx = np.arange(d)
    perms: list[tuple[int, ...]] = []
    weights: list[float] = []

    while float(res.max()) > tol:
        support = res > tol
        # Cost 0 on support, 1 off support, and a strong pull on the
        # smallest positive entry so the matching is forced through it.
        # A full-support matching through the pivot scores -(d+1); any
        # matching that touches a non-support entry scores at least -d.
        cost = 1.0 - support.astype(float)
        masked = np.where(support, res, np.inf)
        pivot = np.unravel_index(int(np.argmin(masked)), res.shape)
        cost[pivot] = -(d + 1.0)
        rows, cols = linear_sum_assignment(cost)
        if float(cost[rows, cols].sum()) > -(d + 0.5):
            raise ValueError(
                "no perfect matching on the positive support; "
                "the matrix violates the doubly stochastic invariant"
            )
        weight = float(res[rows, cols].min())
        perms.append(tuple(int(c) for c in cols))
        weights.append(weight)
        res[rows, cols] -= weight
        res[res < 0] = 0.0
        if len(perms) > max_terms:
            raise ValueError(
                f"decomposition exceeded {max_terms} terms; "
                "the matrix violates the doubly stochastic invariant"
            )

    if not perms:  # numerically zero input cannot occur for a valid matrix
        perms.append(tuple(range(d)))
        weights.append(1.0)
    return BirkhoffDecomposition(tuple(perms), tuple(weights))


def _check_photon_number(k) -> int:
    try:
        k = operator.index(k)
    except TypeError:
        raise ValueError(f"photon number must be an integer, got {k!r}") from None
    if k < 0:
        raise ValueError(f"photon number must be nonnegative, got {k}")
    return k
