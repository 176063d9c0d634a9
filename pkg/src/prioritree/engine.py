"""Priority derivation and consistency diagnostics for comparison matrices.

The method of record is column normalization followed by row averaging; the
principal eigenvector (power iteration) is kept as an independent cross-check
and is never silently substituted. Everything here runs in double precision;
exact rationals stop at this boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import DecisionError, PairwiseMatrix

MatrixLike = Union[PairwiseMatrix, np.ndarray, list]

SUM_TOL = 1e-9
CR_THRESHOLD = 0.10

# Saaty's random consistency indices for dimensions 1..15.
RANDOM_INDEX = {
    1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41,
    9: 1.45, 10: 1.49, 11: 1.51, 12: 1.48, 13: 1.56, 14: 1.57, 15: 1.59,
}
MAX_CONSISTENCY_DIMENSION = max(RANDOM_INDEX)

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
UNDEFINED_FOR_DIMENSION = "undefined_for_dimension"


class NonConvergenceError(DecisionError):
    """Power iteration hit its iteration cap."""

    def __init__(self, message: str, last_iterate: tuple[float, ...], residual: float):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class ZeroWeightError(DecisionError):
    pass


class DimensionUnsupportedError(DecisionError):
    """Matrix is larger than the random-index table covers."""


@dataclass(frozen=True)
class PriorityVector:
    """Nonnegative weights over named elements, summing to 1."""

    ids: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.ids) != len(self.weights):
            raise ValueError("ids and weights must have the same length")
        if any(w < 0 for w in self.weights):
            raise ValueError(f"weights must be nonnegative, got {self.weights}")
        total = sum(self.weights)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {SUM_TOL}, got {total!r}")

    def weight_of(self, element_id: str) -> float:
        try:
            return self.weights[self.ids.index(element_id)]
        except ValueError:
            raise KeyError(element_id) from None

    def as_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)


@dataclass(frozen=True)
class ConsistencyReport:
    """Saaty consistency diagnostics for one comparison matrix.

    For dimensions beyond the random-index table, random_index and cr are
    None and the verdict is "undefined_for_dimension".
    """

    lambda_max: float
    ci: float
    cr: float | None
    random_index: float | None
    verdict: str

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


def _as_array(m: MatrixLike) -> tuple[tuple[str, ...], np.ndarray]:
    """Accept a PairwiseMatrix or a raw positive square grid of reals."""
    if isinstance(m, PairwiseMatrix):
        return m.ids, np.array(m.as_float_rows(), dtype=float)
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError("a comparison matrix needs at least 2 elements")
    if not np.all(arr > 0):
        raise ValueError("comparison matrices must be strictly positive")
    return tuple(str(i) for i in range(arr.shape[0])), arr


def column_sums(m: MatrixLike) -> np.ndarray:
    _, arr = _as_array(m)
    return arr.sum(axis=0)


def normalize_columns(m: MatrixLike) -> np.ndarray:
    """Divide every cell by its column total; each output column sums to 1."""
    _, arr = _as_array(m)
    return arr / arr.sum(axis=0)


def derive_priorities(m: MatrixLike) -> PriorityVector:
    """Column-normalize, then average each row over the n columns.

    The weights sum to 1 by construction; the PriorityVector constructor
    asserts it rather than renormalizing.
    """
    ids, arr = _as_array(m)
    weights = (arr / arr.sum(axis=0)).sum(axis=1) / arr.shape[0]
    return PriorityVector(ids=ids, weights=tuple(weights))


def eigen_priorities(
    m: MatrixLike, *, tolerance: float = 1e-12, max_iterations: int = 10_000
) -> PriorityVector:
    """Principal eigenvector by power iteration, normalized to sum 1.

    Iterates from the uniform vector until successive iterates differ by less
    than `tolerance` in max-norm. Positive matrices always converge; the cap
    exists as a safety net and trips NonConvergenceError.
    """
    ids, arr = _as_array(m)
    n = arr.shape[0]
    w = np.full(n, 1.0 / n)
    delta = np.inf
    for _ in range(max_iterations):
        nxt = arr @ w
        nxt /= nxt.sum()
        delta = float(np.max(np.abs(nxt - w)))
        w = nxt
        if delta < tolerance:
            return PriorityVector(ids=ids, weights=tuple(w))
    raise NonConvergenceError(
        f"power iteration did not converge in {max_iterations} iterations "
        f"(residual {delta:.3e})",
        last_iterate=tuple(w),
        residual=delta,
    )


def lambda_max(m: MatrixLike, w: PriorityVector | np.ndarray | list) -> float:
    """Principal-eigenvalue estimate: mean over i of (M w)_i / w_i."""
    _, arr = _as_array(m)
    wv = w.as_array() if isinstance(w, PriorityVector) else np.asarray(w, dtype=float)
    if wv.shape != (arr.shape[0],):
        raise ValueError(f"weight vector length {wv.shape} does not match matrix size {arr.shape[0]}")
    if np.min(wv) < 1e-12:
        raise ZeroWeightError(f"weights must be strictly positive, min is {np.min(wv)!r}")
    return float(np.mean((arr @ wv) / wv))


def consistency(m: MatrixLike, *, allow_oversize: bool = False) -> ConsistencyReport:
    """Consistency index and ratio against the random-index table.

    2x2 reciprocal matrices are always consistent (ci = cr = 0). Dimensions
    beyond the table raise DimensionUnsupportedError, or, with
    allow_oversize, return a report with verdict "undefined_for_dimension".
    """
    ids, arr = _as_array(m)
    n = arr.shape[0]
    if n > MAX_CONSISTENCY_DIMENSION and not allow_oversize:
        raise DimensionUnsupportedError(
            f"random-index table covers dimensions up to {MAX_CONSISTENCY_DIMENSION}, got {n}"
        )
    if n <= 2:
        lm = lambda_max(arr, derive_priorities(arr).as_array())
        return ConsistencyReport(lambda_max=lm, ci=0.0, cr=0.0, random_index=0.0, verdict=CONSISTENT)
    lm = lambda_max(arr, derive_priorities(arr).as_array())
    ci = (lm - n) / (n - 1)
    if n > MAX_CONSISTENCY_DIMENSION:
        return ConsistencyReport(
            lambda_max=lm, ci=ci, cr=None, random_index=None, verdict=UNDEFINED_FOR_DIMENSION
        )
    ri = RANDOM_INDEX[n]
    cr = ci / ri
    verdict = CONSISTENT if cr <= CR_THRESHOLD else INCONSISTENT
    return ConsistencyReport(lambda_max=lm, ci=ci, cr=cr, random_index=ri, verdict=verdict)
