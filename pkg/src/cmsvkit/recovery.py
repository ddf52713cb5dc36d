"""Sparse recovery solvers and their l2 error bounds.

Given measurements y = A x + w of a k-sparse signal, three convex estimators
are supported:

    BP:    min ||z||_1   s.t.  ||y - A z||_2 <= eps
    DS:    min ||z||_1   s.t.  ||A'(y - A z)||_inf <= lambda*sigma
    LASSO: min 1/2 ||y - A z||_2^2 + lambda*sigma ||z||_1

The error analysis rests on two facts. First, under the matching noise
premise the error vector h = x_hat - x of each estimator has a small
l1-sparsity level: s(h) <= 4k for BP and DS, and s(h) <= 4k/(1-kappa)^2 for
the LASSO when ||A'w||_inf <= kappa*lambda*sigma. Second, the l1-constrained
minimal singular value rho_s gives rho_s ||h||_2 <= ||A h||_2 for any such h,
and each estimator caps ||A h||_2 by its feasibility or optimality
conditions. Chaining the two turns residual control into the error bounds

    BP:    ||h||_2 <= 2 eps / rho_{4k}
    DS:    ||h||_2 <= 4 sqrt(k) lambda*sigma / rho_{4k}^2
    LASSO: ||h||_2 <= (1+kappa)/(1-kappa) * 2 sqrt(k) lambda*sigma / rho_s^2,
           s = 4k/(1-kappa)^2.

evaluate_bounds computes these (plus the classical restricted-isometry
comparison bounds when their premises hold), check_noise_event tests the
noise premise, and check_error_vector_sparsity tests the s(h) inequalities
on actual solver output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import as_sensing_matrix, l1_sparsity_level
from .lp import LpProblem, solve_box_sum_lp, solve_lp

__all__ = [
    "RecoveryResult",
    "BoundReport",
    "solve_bp",
    "solve_ds",
    "solve_lasso",
    "evaluate_bounds",
    "check_noise_event",
    "check_error_vector_sparsity",
    "default_lambda_n",
]

ALGORITHMS = ("BP", "DS", "LASSO")

# kappa splits the LASSO noise premise ||A'w||_inf <= kappa*lambda*sigma from
# the penalty level; any value in (0,1) works and 1/2 balances the two roles
DEFAULT_KAPPA = 0.5


def default_lambda_n(n: int) -> float:
    """Penalty multiplier sqrt(2 log n) that makes the Gaussian noise event
    ||A'w||_inf <= lambda_n*sigma hold with high probability for unit columns.
    """
    if n < 2:
        raise ValueError("lambda_n needs n >= 2")
    return math.sqrt(2.0 * math.log(n))


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class RecoveryResult:
    """Output of one recovery solve.

    dual_infeasibility carries the solver's own dual-side termination
    measure: the complementarity gap for the LP paths, the dual residual for
    the operator-splitting path, and the subgradient violation for the LASSO.
    converged means the stopping criterion was met and the solution passes
    the algorithm's feasibility or optimality check.
    """

    x_hat: np.ndarray
    algorithm: str
    objective: float
    residual_l2: float
    dual_infeasibility: float
    iterations: int
    converged: bool

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        x = np.atleast_1d(np.asarray(self.x_hat, dtype=float))
        if x.ndim != 1 or not np.all(np.isfinite(x)):
            raise ValueError("x_hat must be a finite vector")
        object.__setattr__(self, "x_hat", _readonly(x))
        for name in ("objective", "residual_l2", "dual_infeasibility"):
            if not math.isfinite(float(getattr(self, name))):
                raise ValueError(f"{name} must be finite")
        if self.residual_l2 < 0 or self.dual_infeasibility < 0:
            raise ValueError("residual measures must be nonnegative")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")


@dataclass(frozen=True)
class BoundReport:
    """Evaluated error bounds for one (k, noise, rho) configuration.

    Bounds driven by a certified rho lower bound (rho_source "SDR" or
    "oracle") are themselves certificates; bounds from the interior-point
    upper estimate ("IP") are estimates. premises_held records which bound
    premises were satisfied, flags explains any infinite bound.
    """

    k: int
    bound_bp: float
    bound_ds: float
    bound_lasso: float
    rho_source: str
    ric_bound_bp: float | None = None
    ric_bound_ds: float | None = None
    premises_held: tuple = ()
    flags: tuple = ()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.rho_source not in ("IP", "SDR", "oracle"):
            raise ValueError("rho_source must be IP, SDR, or oracle")
        for name in ("bound_bp", "bound_ds", "bound_lasso"):
            v = float(getattr(self, name))
            if math.isnan(v) or v < 0:
                raise ValueError(f"{name} must be nonnegative")
        for name in ("ric_bound_bp", "ric_bound_ds"):
            v = getattr(self, name)
            if v is not None and (math.isnan(float(v)) or float(v) < 0):
                raise ValueError(f"{name} must be nonnegative when present")


def _check_inputs(A, y):
    mat = as_sensing_matrix(A)
    yv = np.atleast_1d(np.asarray(y, dtype=float))
    if yv.shape != (mat.m,):
        raise ValueError(f"y must have shape ({mat.m},), got {yv.shape}")
    if not np.all(np.isfinite(yv)):
        raise ValueError("y must be finite")
    return mat.data, yv


def solve_bp(A, y, eps: float = 0.0, tol: float = 1e-7,
             max_iter: int = 100000) -> RecoveryResult:
    """Basis pursuit: min ||z||_1 subject to ||y - A z||_2 <= eps.

    eps=0 is solved exactly as the split-variable linear program
    min sum(z+ + z-) s.t. A(z+ - z-) = y, z+, z- >= 0. eps>0 runs a two-block
    operator-splitting scheme (alternating direction) on the conic form,
    stopping once primal and dual residuals fall below tol.

    Raises ValueError when eps is below the smallest achievable residual and
    RuntimeError when the iteration fails to converge.
    """
    Ad, yv = _check_inputs(A, y)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    m, n = Ad.shape

    # feasibility screen: nothing gets closer to y than the least-squares fit
    x_ls, *_ = np.linalg.lstsq(Ad, yv, rcond=None)
    min_res = float(np.linalg.norm(yv - Ad @ x_ls))
    if min_res > eps + 1e-8 * (1.0 + float(np.linalg.norm(yv))):
        raise ValueError(
            f"infeasible: minimum achievable residual {min_res:.3e} exceeds eps={eps:.3e}"
        )

    # x = 0 is feasible with objective 0, which no feasible point beats
    if float(np.linalg.norm(yv)) <= eps:
        return RecoveryResult(x_hat=np.zeros(n), algorithm="BP", objective=0.0,
                              residual_l2=float(np.linalg.norm(yv)),
                              dual_infeasibility=0.0, iterations=0,
                              converged=True)

    if eps == 0.0:
        sol = solve_box_sum_lp(
            c=np.ones(2 * n),
            A_eq=np.hstack([Ad, -Ad]),
            b_eq=yv,
        )
        if sol.status in ("infeasible", "unbounded"):
            raise RuntimeError(f"equality-constrained solve reported {sol.status}")
        x_hat = sol.u_star[:n] - sol.u_star[n:]
        resid = float(np.linalg.norm(yv - Ad @ x_hat))
        return RecoveryResult(
            x_hat=x_hat,
            algorithm="BP",
            objective=float(np.sum(np.abs(x_hat))),
            residual_l2=resid,
            dual_infeasibility=float(max(sol.gap, 0.0)),
            iterations=sol.iterations,
            converged=sol.status == "optimal" and resid <= 1e-6,
        )

    # split as min ||v||_1 + indicator(||r||_2 <= eps)
    #          s.t. z - v = 0 and A z + r = y,
    # so the z update is one linear solve with a cached factor of I + A'A,
    # the v update is a soft threshold, and the r update is a ball projection
    chol = scipy.linalg.cho_factor(np.eye(n) + Ad.T @ Ad, check_finite=False)
    z = np.zeros(n)
    v = np.zeros(n)
    nrm_y = float(np.linalg.norm(yv))
    r = yv * (min(1.0, eps / nrm_y) if nrm_y > 0 else 0.0)
    u1 = np.zeros(n)
    u2 = np.zeros(m)
    t = 1.0
    it = 0
    prim = dual = math.inf
    for it in range(1, max_iter + 1):
        z = scipy.linalg.cho_solve(chol, (v - u1) + Ad.T @ (yv - r - u2), check_finite=False)
        Az = Ad @ z
        v_old, r_old = v, r
        v = z + u1
        v = np.sign(v) * np.maximum(np.abs(v) - 1.0 / t, 0.0)
        r = yv - Az - u2
        nr = float(np.linalg.norm(r))
        if nr > eps:
            r = r * (eps / nr)
        u1 = u1 + z - v
        u2 = u2 + Az + r - yv
        prim = math.hypot(float(np.linalg.norm(z - v)), float(np.linalg.norm(Az + r - yv)))
        dual = t * float(np.linalg.norm(Ad.T @ (r - r_old) - (v - v_old)))
        if prim <= tol and dual <= tol:
            break
        # residual balancing; frozen after a warmup because each change
        # rescales the running duals, and perpetual flapping stalls the
        # iteration at coarse accuracy
        if it <= 100:
            if prim > 10.0 * dual and dual > 0:
                t *= 2.0
                u1 = u1 / 2.0
                u2 = u2 / 2.0
            elif dual > 10.0 * prim and prim > 0:
                t /= 2.0
                u1 = u1 * 2.0
                u2 = u2 * 2.0
    if prim > tol or dual > tol:
        raise RuntimeError(
            f"no convergence in {max_iter} iterations "
            f"(primal residual {prim:.3e}, dual residual {dual:.3e})"
        )
    resid = float(np.linalg.norm(yv - Ad @ v))
    return RecoveryResult(
        x_hat=v,
        algorithm="BP",
        objective=float(np.sum(np.abs(v))),
        residual_l2=resid,
        dual_infeasibility=float(dual),
        iterations=it,
        converged=resid <= eps + 1e-6,
    )


def solve_ds(A, y, lambda_sigma: float) -> RecoveryResult:
    """Dantzig selector: min ||z||_1 subject to ||A'(y - A z)||_inf <= lambda_sigma.

    One linear program: with z split into positive and negative parts the
    inf-norm constraint becomes 2n linear inequalities in the correlations
    A'A z. Always feasible (the least-squares residual has A'r = 0).
    """
    Ad, yv = _check_inputs(A, y)
    if lambda_sigma < 0:
        raise ValueError("lambda_sigma must be nonnegative")
    n = Ad.shape[1]
    B = Ad.T @ Ad
    c = Ad.T @ yv
    # lam-band on c - B(z+ - z-), plus nonnegativity of the split variables
    G = np.vstack([
        np.hstack([B, -B]),
        np.hstack([-B, B]),
        -np.eye(2 * n),
    ])
    h = np.concatenate([c + lambda_sigma, lambda_sigma - c, np.zeros(2 * n)])
    sol = solve_lp(LpProblem(c=np.ones(2 * n), G=G, h=h))
    if sol.status in ("infeasible", "unbounded"):
        raise RuntimeError(f"correlation-band solve reported {sol.status}")
    x_hat = sol.u_star[:n] - sol.u_star[n:]
    resid = yv - Ad @ x_hat
    corr = float(np.linalg.norm(Ad.T @ resid, np.inf))
    return RecoveryResult(
        x_hat=x_hat,
        algorithm="DS",
        objective=float(np.sum(np.abs(x_hat))),
        residual_l2=float(np.linalg.norm(resid)),
        dual_infeasibility=float(max(sol.gap, 0.0)),
        iterations=sol.iterations,
        converged=sol.status == "optimal" and corr <= lambda_sigma + 1e-6,
    )


def solve_lasso(A, y, lambda_sigma: float, max_sweeps: int = 100000) -> RecoveryResult:
    """LASSO: min 1/2 ||y - A z||_2^2 + lambda_sigma ||z||_1.

    Cyclic coordinate descent; each coordinate update is an exact
    one-dimensional soft threshold against the running residual. Sweeps stop
    when no coordinate moves by more than 1e-9. The returned solution
    satisfies the stationarity condition ||A'(y - A x_hat)||_inf <=
    lambda_sigma + 1e-7.
    """
    Ad, yv = _check_inputs(A, y)
    if lambda_sigma <= 0:
        raise ValueError("lambda_sigma must be positive")
    n = Ad.shape[1]
    col_sq = np.einsum("ij,ij->j", Ad, Ad)
    x = np.zeros(n)
    r = yv.copy()
    it = 0
    delta = math.inf
    for it in range(1, max_sweeps + 1):
        delta = 0.0
        for j in range(n):
            if col_sq[j] == 0.0:
                continue
            old = x[j]
            rho_j = float(Ad[:, j] @ r) + col_sq[j] * old
            new = math.copysign(max(abs(rho_j) - lambda_sigma, 0.0), rho_j) / col_sq[j]
            if new != old:
                r += Ad[:, j] * (old - new)
                x[j] = new
                delta = max(delta, abs(new - old))
        if delta <= 1e-9:
            break
    if delta > 1e-9:
        raise RuntimeError(f"no convergence in {max_sweeps} sweeps (last change {delta:.3e})")
    corr = Ad.T @ r
    # stationarity violation: band excess off the support, sign mismatch on it
    on = x != 0.0
    viol = float(np.max(np.maximum(np.abs(corr) - lambda_sigma, 0.0), initial=0.0))
    if np.any(on):
        viol = max(viol, float(np.max(np.abs(corr[on] - lambda_sigma * np.sign(x[on])))))
    obj = 0.5 * float(r @ r) + lambda_sigma * float(np.sum(np.abs(x)))
    return RecoveryResult(
        x_hat=x,
        algorithm="LASSO",
        objective=obj,
        residual_l2=float(np.linalg.norm(r)),
        dual_infeasibility=viol,
        iterations=it,
        converged=float(np.linalg.norm(corr, np.inf)) <= lambda_sigma + 1e-7,
    )


def evaluate_bounds(k: int, eps: float, lambda_sigma: float, kappa: float,
                    rho_4k: float, rho_lasso: float,
                    delta_2k: float | None = None,
                    delta_3k: float | None = None,
                    rho_source: str = "SDR") -> BoundReport:
    """Evaluate the l2 error bounds for a k-sparse truth.

    rho_4k is rho at level 4k (BP and DS bounds), rho_lasso is rho at level
    4k/(1-kappa)^2. A nonpositive rho makes the corresponding bound infinite
    and is recorded in flags. The restricted-isometry comparison bounds are
    emitted only when their premises hold: delta_2k < sqrt(2)-1 for BP,
    delta_2k + delta_3k < 1 for DS.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if eps < 0 or lambda_sigma < 0:
        raise ValueError("noise levels must be nonnegative")
    if not (0.0 < kappa < 1.0):
        raise ValueError("kappa must lie in (0, 1)")
    for name, v in (("rho_4k", rho_4k), ("rho_lasso", rho_lasso)):
        if not math.isfinite(float(v)):
            raise ValueError(f"{name} must be finite")

    premises = []
    flags = []
    if rho_4k > 0:
        premises.append("rho_4k > 0")
        bound_bp = 2.0 * eps / rho_4k
        bound_ds = 4.0 * math.sqrt(k) * lambda_sigma / rho_4k**2
    else:
        flags.append("rho_4k <= 0: BP and DS bounds are vacuous")
        bound_bp = bound_ds = math.inf
    if rho_lasso > 0:
        premises.append("rho_lasso > 0")
        bound_lasso = (1.0 + kappa) / (1.0 - kappa) * 2.0 * math.sqrt(k) * lambda_sigma / rho_lasso**2
    else:
        flags.append("rho_lasso <= 0: LASSO bound is vacuous")
        bound_lasso = math.inf

    ric_bp = None
    ric_ds = None
    if delta_2k is not None and delta_2k < math.sqrt(2.0) - 1.0:
        premises.append("delta_2k < sqrt(2)-1")
        ric_bp = 4.0 * math.sqrt(1.0 + delta_2k) / (1.0 - (1.0 + math.sqrt(2.0)) * delta_2k) * eps
    if delta_2k is not None and delta_3k is not None and delta_2k + delta_3k < 1.0:
        premises.append("delta_2k + delta_3k < 1")
        ric_ds = 4.0 * math.sqrt(k) / (1.0 - delta_2k - delta_3k) * lambda_sigma

    return BoundReport(
        k=int(k),
        bound_bp=float(bound_bp),
        bound_ds=float(bound_ds),
        bound_lasso=float(bound_lasso),
        rho_source=rho_source,
        ric_bound_bp=ric_bp,
        ric_bound_ds=ric_ds,
        premises_held=tuple(premises),
        flags=tuple(flags),
    )


def check_noise_event(A, w, lambda_n: float, sigma: float) -> dict:
    """Test the noise event ||A'w||_inf <= lambda_n * sigma.

    Returns {"E_holds": bool, "lhs": float} where lhs is the achieved max
    correlation. This is the premise of the DS bound; the LASSO premise is
    the same test against kappa * lambda_n * sigma.
    """
    mat = as_sensing_matrix(A)
    wv = np.atleast_1d(np.asarray(w, dtype=float))
    if wv.shape != (mat.m,):
        raise ValueError(f"w must have shape ({mat.m},), got {wv.shape}")
    lhs = float(np.linalg.norm(mat.data.T @ wv, np.inf))
    return {"E_holds": lhs <= lambda_n * sigma, "lhs": lhs}


def check_error_vector_sparsity(x_true, result: RecoveryResult,
                                kappa: float | None = None) -> dict:
    """Test the error-vector sparsity guarantee s(x_hat - x) <= limit.

    The limit is 4k for BP and DS and 4k/(1-kappa)^2 for the LASSO, with k
    the support size of x_true. The guarantee presumes the matching noise
    condition held; verifying that is the caller's job. A zero error vector
    holds vacuously (s_h reported as 0).
    """
    xv = np.atleast_1d(np.asarray(x_true, dtype=float))
    if xv.shape != result.x_hat.shape:
        raise ValueError("x_true and x_hat must have equal shapes")
    k = int(np.count_nonzero(xv))
    if result.algorithm == "LASSO":
        kap = DEFAULT_KAPPA if kappa is None else float(kappa)
        if not (0.0 < kap < 1.0):
            raise ValueError("kappa must lie in (0, 1)")
        limit = 4.0 * k / (1.0 - kap) ** 2
    else:
        limit = 4.0 * k
    h = result.x_hat - xv
    if not np.any(h):
        return {"s_h": 0.0, "limit": float(limit), "holds": True}
    s_h = l1_sparsity_level(h)
    return {"s_h": float(s_h), "limit": float(limit), "holds": bool(s_h <= limit)}
