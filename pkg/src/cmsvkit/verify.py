"""Certified lower bounds on the critical sparsity of a sensing matrix.

Unique l1 recovery of every k-sparse vector is equivalent to the null space
condition: every nonzero kernel vector z puts strictly less than half of its
l1 mass on any k coordinates. The largest such k is written k*. Checking it
directly is combinatorial, so this module offers three routes:

* verify_linf: n linear programs maximizing 2 z_i over the kernel slice of
  the l1 ball. Their largest value v* gives tau = 1/v*, a lower bound on
  min ||z||_1 / (2 ||z||_inf) over the kernel, and every k < tau is safe.
* verify_l2: one semidefinite program bounding max 4 ||z||_2^2 over the same
  set through the lifted variable Z = z z'. Its optimum u* gives the bound
  k < 1/u*. Tighter than the l.p. route on some matrices, looser on others.
* nsp_oracle_exact: brute enumeration of supports and sign patterns, each
  checked by one LP. Exponential, hence gated to tiny sizes; the other two
  routes are tested against it.

Lower bounds are rounded down so that floating point noise can only cost one
unit of k, never fabricate one. LP values are aggregated through the dual
objective plus a stationarity correction, which upper-bounds the true LP
value, and the semidefinite value is shifted up by its certified gap before
taking reciprocals; both shifts push k_lower in the safe direction.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from ._util import parallel_map, resolve_threads
from .core import SensingMatrix, as_sensing_matrix
from .lp import LpProblem, solve_box_sum_lp, solve_lp
from .sdp import SdpProblem, solve_sdp

__all__ = [
    "VerificationResult",
    "verify_linf",
    "verify_l2",
    "nsp_oracle_exact",
    "critical_sparsity_exact",
]

# strict inequalities are rounded with this slack so exact rational ties
# (common for Bernoulli and Hadamard kernels) resolve deterministically
_ROUND_SLACK = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of one verification route.

    tau is the quantity whose integer part controls the bound: k_lower is
    the largest integer strictly below tau (with the rounding slack), and
    tau is +inf for a trivial kernel. per_index_values carries the n bank
    LP optima for the Linf route and is None otherwise.
    """

    k_lower: int
    method: str  # Linf | L2 | exact
    tau: float
    per_index_values: np.ndarray | None
    kernel_dim: int
    runtime: float

    def __post_init__(self):
        if self.method not in ("Linf", "L2", "exact"):
            raise ValueError("method must be 'Linf', 'L2' or 'exact'")
        if self.k_lower < 0:
            raise ValueError("k_lower must be nonnegative")
        if self.kernel_dim < 0:
            raise ValueError("kernel_dim must be nonnegative")
        if self.per_index_values is not None:
            object.__setattr__(self, "per_index_values", _readonly(self.per_index_values))


def kernel_basis(A: np.ndarray) -> np.ndarray:
    """Orthonormal basis of ker(A) as columns, rank-revealed by SVD."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    _, sv, Vt = np.linalg.svd(A, full_matrices=True)
    cutoff = np.finfo(float).eps * max(m, n) * (sv[0] if sv.size else 0.0)
    rank = int(np.sum(sv > cutoff))
    return Vt[rank:].T.copy()


def _k_from_tau(tau: float, n: int) -> int:
    if not np.isfinite(tau):
        return n
    k = int(np.ceil(tau - _ROUND_SLACK)) - 1
    return max(0, min(k, n))


def _kernel_slice_lp(A: np.ndarray, c: np.ndarray, tol: float, max_iter: int):
    """min c'u over the split-variable kernel slice u = (zp, zm) >= 0,
    A zp - A zm = 0, sum(u) <= 1, with a dense-backend retry.

    Kernel slices of sign-pattern matrices are full of exact rational ties,
    and on rare instances the structured solve stalls just short of its
    tolerance. The dense backend factors the full KKT system, which takes a
    different rounding path and resolves those cases.
    """
    m, n = A.shape
    d = 2 * n
    A_eq = np.concatenate([A, -A], axis=1)
    sol = solve_box_sum_lp(c, A_eq, np.zeros(m), sum_row=np.ones(d),
                           sum_rhs=1.0, tol=tol, max_iter=max_iter)
    if sol.status == "optimal":
        return sol
    prob = LpProblem(c=c, A_eq=A_eq, b_eq=np.zeros(m),
                     G=np.vstack([-np.eye(d), np.ones((1, d))]),
                     h=np.concatenate([np.zeros(d), [1.0]]))
    alt = solve_lp(prob, tol=tol, max_iter=max(max_iter, 500))
    return alt if alt.status == "optimal" else sol


def _bank_lp_value(A: np.ndarray, i: int, tol: float, max_iter: int) -> float:
    """Safe optimum of max 2 z_i s.t. Az = 0, ||z||_1 <= 1.

    z splits into z = zp - zm with zp, zm >= 0 and sum(zp) + sum(zm) <= 1,
    which is the structured box-plus-budget form of the LP solver. The
    returned value is the dual objective corrected by the stationarity
    residual; over the feasible set (||u||_1 <= 1) that is a true upper
    bound on the LP value for any nonnegative multipliers, so tau and
    k_lower can only shrink, even out of a solve that stalled.
    """
    m, n = A.shape
    c = np.zeros(2 * n)
    c[i] = -2.0  # maximize 2 z_i
    c[n + i] = 2.0
    sol = _kernel_slice_lp(A, c, tol, max_iter)
    lam = np.maximum(sol.dual_ineq, 0.0)
    lam_box, lam_budget = lam[: 2 * n], lam[2 * n]
    Atnu = A.T @ sol.dual_eq
    r = c - lam_box + lam_budget + np.concatenate([Atnu, -Atnu])
    return float(lam_budget + np.max(np.abs(r)))


def verify_linf(
    A: SensingMatrix | np.ndarray,
    tol: float = 1e-8,
    max_iter: int = 200,
    threads: int | None = None,
    indices=None,
) -> VerificationResult:
    """Lower-bound k* through the bank of n per-coordinate LPs.

    Runs LP_i: max 2 z_i over the kernel slice of the l1 ball for each i,
    takes v* = max_i value, tau = 1/v*, and returns the largest k strictly
    below tau. The bank is embarrassingly parallel; `threads` follows the
    CMSV_THREADS environment variable when left unset. A trivial kernel
    short-circuits to k_lower = n.

    `indices` restricts the bank to the given coordinates. The restricted
    maximum is exact only when every LP in the bank attains the same value,
    which holds whenever the kernel is invariant under a column-transitive
    group of permutations (partial Sylvester-Hadamard designs are the
    canonical case: any XOR translation of the columns only flips row
    signs). The caller asserts that symmetry; for a general matrix a
    restricted bank can only overestimate k_lower.
    """
    A = as_sensing_matrix(A)
    start = time.perf_counter()
    mat = A.data
    n = A.n
    r = n - np.linalg.matrix_rank(mat)
    if r == 0:
        return VerificationResult(k_lower=n, method="Linf", tau=float("inf"),
                                  per_index_values=None, kernel_dim=0,
                                  runtime=time.perf_counter() - start)
    if indices is None:
        indices = range(n)
    else:
        indices = [int(i) for i in indices]
        if not indices or any(i < 0 or i >= n for i in indices):
            raise ValueError("indices must be a nonempty subset of range(n)")
    nthreads = resolve_threads(threads)
    values = parallel_map(lambda i: _bank_lp_value(mat, i, tol, max_iter),
                          indices, threads=nthreads)
    v_star = float(np.max(values))
    tau = float("inf") if v_star <= tol else 1.0 / v_star
    return VerificationResult(k_lower=_k_from_tau(tau, n), method="Linf", tau=tau,
                              per_index_values=np.asarray(values), kernel_dim=int(r),
                              runtime=time.perf_counter() - start)


def verify_l2(
    A: SensingMatrix | np.ndarray,
    tol: float = 1e-6,
    max_iter: int = 2000,
) -> VerificationResult:
    """Lower-bound k* through one semidefinite relaxation.

    The program max 4 tr(Z) s.t. Z >= 0, tr(A Z A') = 0, ||Z||_1 <= 1
    upper-bounds max 4 ||z||_2^2 over the kernel slice of the l1 ball, so
    any k strictly below 1/u* is certified. The kernel equality is folded
    in exactly by writing Z = V W V' on an orthonormal kernel basis V,
    which shrinks the semidefinite variable to kernel_dim and leaves the
    l1 budget on the full-size product.
    """
    A = as_sensing_matrix(A)
    start = time.perf_counter()
    V = kernel_basis(A.data)
    n = A.n
    r = V.shape[1]
    if r == 0:
        return VerificationResult(k_lower=n, method="L2", tau=float("inf"),
                                  per_index_values=None, kernel_dim=0,
                                  runtime=time.perf_counter() - start)
    prob = SdpProblem(C=4.0 * np.eye(r), constraints=(), l1_budget=1.0,
                      sense="max", l1_factor=V)
    sol = solve_sdp(prob, tol=tol, max_iter=max_iter)
    if sol.status != "optimal":
        raise RuntimeError(f"semidefinite relaxation did not converge (status '{sol.status}')")
    u_safe = sol.objective + sol.gap  # certified upper bound on the optimum
    tau = float("inf") if u_safe <= tol else 1.0 / u_safe
    return VerificationResult(k_lower=_k_from_tau(tau, n), method="L2", tau=tau,
                              per_index_values=None, kernel_dim=int(r),
                              runtime=time.perf_counter() - start)


def _support_lp_value(A: np.ndarray, idx: tuple, signs: tuple, tol: float) -> float:
    """Optimum of max sum_{i in S} sigma_i z_i s.t. Az = 0, ||z||_1 <= 1."""
    m, n = A.shape
    c = np.zeros(2 * n)
    for j, sg in zip(idx, signs):
        c[j] = -sg
        c[n + j] = sg
    sol = _kernel_slice_lp(A, c, tol, max_iter=200)
    if sol.status != "optimal":
        raise RuntimeError(f"support LP on S={idx} finished with status '{sol.status}'")
    return -sol.objective


def nsp_oracle_exact(A: SensingMatrix | np.ndarray, k: int, tol: float = _ROUND_SLACK) -> bool:
    """Exact null space condition check at sparsity k by full enumeration.

    True iff for every support S of size k and every sign pattern on S the
    LP max sum_S sigma_i z_i over the kernel slice of the l1 ball stays
    strictly below 1/2 - tol. Opposite sign patterns share a value, so only
    half of them run. Exponential in k: guarded to n <= 14 and k <= 5.
    """
    A = as_sensing_matrix(A)
    n = A.n
    if n > 14:
        raise ValueError(f"exact oracle is limited to n <= 14, got n = {n}")
    if k > 5:
        raise ValueError(f"exact oracle is limited to k <= 5, got k = {k}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return True
    mat = A.data
    if n - np.linalg.matrix_rank(mat) == 0:
        return True
    for idx in itertools.combinations(range(n), k):
        # first sign fixed: patterns sigma and -sigma give the same optimum
        for rest in itertools.product((1.0, -1.0), repeat=k - 1):
            val = _support_lp_value(mat, idx, (1.0,) + rest, tol=1e-9)
            if val >= 0.5 - tol:
                return False
    return True


def critical_sparsity_exact(A: SensingMatrix | np.ndarray, k_max: int = 5) -> int:
    """Largest k <= k_max with the exact null space condition, by upward scan.

    The condition is monotone in k (a larger support can only capture more
    mass), so the first failure stops the scan. Subject to the same size
    guards as nsp_oracle_exact.
    """
    A = as_sensing_matrix(A)
    k_max = min(k_max, A.n)
    k_star = 0
    for k in range(1, k_max + 1):
        if not nsp_oracle_exact(A, k):
            break
        k_star = k
    return k_star
