"""Domain types and sparsity measures shared by the whole package.

The central quantity is the l1-sparsity level

    s(x) = ||x||_1^2 / ||x||_2^2,

a smooth surrogate for the support size: 1 <= s(x) <= ||x||_0 <= n, with
s(x) = k exactly when x has k nonzeros of equal magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SensingMatrix",
    "SparseSignal",
    "NoiseSpec",
    "l1_sparsity_level",
    "l0_sparsity",
    "normalize_columns",
    "as_sensing_matrix",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SensingMatrix:
    """A dense real m x n measurement matrix."""

    data: np.ndarray
    columns_normalized: bool = False

    def __post_init__(self):
        a = np.asarray(self.data, dtype=float)
        if a.ndim != 2:
            raise ValueError("sensing matrix must be 2-dimensional")
        m, n = a.shape
        if m < 1 or n < 1:
            raise ValueError("sensing matrix must have at least one row and one column")
        if not np.all(np.isfinite(a)):
            raise ValueError("sensing matrix entries must be finite")
        object.__setattr__(self, "data", _readonly(a))
        if self.columns_normalized:
            norms = np.linalg.norm(self.data, axis=0)
            if np.any(np.abs(norms - 1.0) > 1e-12):
                raise ValueError("columns_normalized set but some column norm is not 1")

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]


def as_sensing_matrix(A) -> SensingMatrix:
    """Wrap an array-like into a SensingMatrix; pass SensingMatrix through."""
    if isinstance(A, SensingMatrix):
        return A
    return SensingMatrix(np.asarray(A, dtype=float))


@dataclass(frozen=True)
class SparseSignal:
    """A signal together with its support; support must match the nonzeros."""

    values: np.ndarray
    support: frozenset = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("signal must be a vector")
        if not np.all(np.isfinite(v)):
            raise ValueError("signal entries must be finite")
        object.__setattr__(self, "values", _readonly(v))
        actual = frozenset(int(i) for i in np.nonzero(v)[0])
        if self.support is None:
            object.__setattr__(self, "support", actual)
        elif frozenset(int(i) for i in self.support) != actual:
            raise ValueError("declared support does not match nonzero entries")

    @property
    def k(self) -> int:
        return len(self.support)


_NOISE_KINDS = ("bounded-l2", "gaussian", "adversarial-given")


@dataclass(frozen=True)
class NoiseSpec:
    """Noise model for recovery experiments; exactly one kind is active.

    bounded-l2 uses epsilon, gaussian uses sigma (with lambda_n and optionally
    kappa for the DS/LASSO bounds), adversarial-given carries an explicit w.
    """

    kind: str
    epsilon: float = 0.0
    sigma: float = 0.0
    lambda_n: float = 0.0
    kappa: float = 0.5
    w: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in _NOISE_KINDS:
            raise ValueError(f"noise kind must be one of {_NOISE_KINDS}")
        if self.epsilon < 0 or self.sigma < 0 or self.lambda_n < 0:
            raise ValueError("noise scale parameters must be nonnegative")
        if not (0.0 < self.kappa < 1.0):
            raise ValueError("kappa must lie in (0, 1)")
        if self.kind == "adversarial-given":
            if self.w is None:
                raise ValueError("adversarial-given noise requires w")
            object.__setattr__(self, "w", _readonly(np.asarray(self.w, dtype=float)))
        elif self.w is not None:
            raise ValueError("w only belongs to adversarial-given noise")


def l1_sparsity_level(x) -> float:
    """l1-sparsity level s(x) = ||x||_1^2 / ||x||_2^2 of a nonzero vector.

    Lies in [1, n]; equals the support size exactly when all nonzero entries
    share one magnitude (Cauchy-Schwarz equality case). Invariant under
    scaling and permutation.
    """
    v = np.asarray(x, dtype=float).ravel()
    if not np.all(np.isfinite(v)):
        raise ValueError("entries must be finite")
    nrm2 = float(np.dot(v, v))
    if nrm2 == 0.0:
        raise ValueError("l1-sparsity level undefined for the zero vector")
    nrm1 = float(np.sum(np.abs(v)))
    return nrm1 * nrm1 / nrm2


def l0_sparsity(x, tol: float = 0.0) -> int:
    """Number of entries with |x_i| > tol.

    tol=0 counts exact nonzeros; pass a small tol (say 1e-12) for solver
    output whose zeros are only approximate.
    """
    v = np.asarray(x, dtype=float).ravel()
    if not np.all(np.isfinite(v)):
        raise ValueError("entries must be finite")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return int(np.count_nonzero(np.abs(v) > tol))


def normalize_columns(A) -> SensingMatrix:
    """Scale every column to unit Euclidean norm."""
    mat = as_sensing_matrix(A)
    norms = np.linalg.norm(mat.data, axis=0)
    zero = np.nonzero(norms == 0.0)[0]
    if zero.size:
        raise ValueError(f"cannot normalize zero column at index {int(zero[0])}")
    return SensingMatrix(mat.data / norms, columns_normalized=True)
