"""The l1-constrained minimal singular value and its two computations.

rho_s(A) = min ||Ax||_2 over unit-l2 vectors whose l1-sparsity level
||x||_1^2 / ||x||_2^2 stays at or below s. It plays the role of a restricted
smallest singular value: recovery error bounds for BP, the Dantzig selector
and the LASSO are all inversely proportional to some rho_s(A).

The set {s(x) <= s, ||x||_2 = 1} is not convex, so two complementary
routes are provided:

* compute_cmsv_ip: multistart local minimization of the split program
  min (zp - zm)' A'A (zp - zm) over zp, zm >= 0, sum(zp) + sum(zm) <= sqrt(s),
  ||zp - zm||_2 = 1. Each start runs a log-barrier Newton method with a
  quadratic-penalty continuation on the sphere constraint. The smallest
  converged value is an upper estimate of rho_s (local minima permitting).
* cmsv_lower_sdr: the lifted convex relaxation min tr(A'A Z) with Z PSD,
  tr Z = 1, ||Z||_1 <= s. Dropping the rank-one constraint can only enlarge
  the feasible set, so the optimum (shifted down by the solver's certified
  gap) is a true lower bound on rho_s^2.

cmsv_oracle brackets both at toy sizes by dense sphere sampling with local
descent, and ric_exact computes the restricted isometry constant by direct
submatrix enumeration for comparison experiments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._util import parallel_map, rng_stream
from .core import SensingMatrix, as_sensing_matrix
from .sdp import SdpProblem, solve_sdp

__all__ = [
    "CmsvEstimate",
    "RicEstimate",
    "compute_cmsv_ip",
    "cmsv_lower_sdr",
    "cmsv_oracle",
    "ric_exact",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CmsvEstimate:
    """One-sided estimate of rho_s(A).

    rho_upper comes from the multistart interior-point run (an upper value
    up to local-minimum risk), rho_lower from the semidefinite relaxation
    (a certified lower bound up to solver tolerance); whichever route did
    not run is None. per_restart_values holds the objective z'A'Az of every
    restart, converged or not, and converged_flags marks which restarts met
    the KKT tolerance; both are None for the relaxation route. minimizer is
    the best converged unit vector, handy as a warm start for a nearby s.
    """

    s: float
    rho_upper: float | None
    rho_lower: float | None
    restarts: int
    per_restart_values: np.ndarray | None
    converged_flags: np.ndarray | None
    minimizer: np.ndarray | None = None

    def __post_init__(self):
        if self.s < 1.0:
            raise ValueError("s must be at least 1")
        if self.restarts < 0:
            raise ValueError("restarts must be nonnegative")
        for name in ("rho_upper", "rho_lower"):
            v = getattr(self, name)
            if v is not None and (not np.isfinite(v) or v < 0):
                raise ValueError(f"{name} must be finite and nonnegative")
        if self.per_restart_values is not None:
            object.__setattr__(self, "per_restart_values",
                               _readonly(np.asarray(self.per_restart_values, dtype=float)))
        if self.converged_flags is not None:
            object.__setattr__(self, "converged_flags",
                               _readonly(np.asarray(self.converged_flags, dtype=bool)))
        if self.minimizer is not None:
            object.__setattr__(self, "minimizer",
                               _readonly(np.asarray(self.minimizer, dtype=float)))


@dataclass(frozen=True)
class RicEstimate:
    k: int
    delta_k: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.delta_k < 0:
            raise ValueError("delta_k must be nonnegative")


def _min_column_norm(A: np.ndarray) -> float:
    return float(np.min(np.linalg.norm(A, axis=0)))


def _stationarity(M: np.ndarray, z: np.ndarray, root_s: float) -> float:
    """First-order optimality residual at unit z for min z'Mz over the
    sphere intersected with the l1 ball of radius root_s.

    Multipliers are fit by least squares (the sphere multiplier over all
    coordinates, the budget multiplier over the clearly nonzero ones, then
    clamped nonnegative); near-zero coordinates are charged only for the
    part of their gradient that the l1 subgradient interval cannot absorb.
    Unlike the raw penalty gradient this measure does not degrade with the
    penalty weight, which amplifies float64 rounding in ||z||^2 - 1 by 1e8.
    """
    g = 2.0 * (M @ z)
    lam = float(z @ g) / 2.0
    r = g - 2.0 * lam * z
    # the barrier parks converged iterates about w/mu inside the wall,
    # around 1e-7 at the final stage, so activity needs a loose band
    if float(np.sum(np.abs(z))) < root_s - 1e-5:
        return float(np.linalg.norm(r, np.inf))
    big = np.abs(z) > 1e-5
    # mu is minus the budget multiplier: descent blocked by the l1 wall
    # shows up as mu < 0, so dual feasibility is the sign constraint mu <= 0
    mu = 0.0
    if np.any(big):
        X = np.column_stack([2.0 * z[big], np.sign(z[big])])
        sol, *_ = np.linalg.lstsq(X, g[big], rcond=None)
        if sol[1] < 0.0:
            lam, mu = float(sol[0]), float(sol[1])
            r = g - 2.0 * lam * z
    res_big = np.abs(r[big] - mu * np.sign(z[big])) if np.any(big) else np.zeros(0)
    # a zero coordinate is stationary when its gradient fits inside the
    # subgradient interval [mu, -mu]
    res_small = np.maximum(np.abs(r[~big]) + mu, 0.0)
    return max(float(np.max(res_big, initial=0.0)), float(np.max(res_small, initial=0.0)))


def _ip_restart(M: np.ndarray, root_s: float, z0: np.ndarray, tol: float):
    """One barrier/penalty run of the split program from the start z0.

    Returns (objective at the unit-normalized point, stationarity residual,
    converged, z). The sphere constraint ||z||_2 = 1 enters through a
    quadratic penalty whose weight grows tenfold per stage while the
    barrier weight shrinks tenfold, so the iterate is driven onto the
    sphere and into complementarity simultaneously.
    """
    n = M.shape[0]
    d = 2 * n
    z0 = np.array(z0, dtype=float)
    z0 /= float(np.linalg.norm(z0))
    # enter the feasible set by soft-threshold retraction rather than by
    # shrinking the whole vector: shrinking keeps the spread direction and
    # parks the iterate at tiny norm against the budget wall, a basin the
    # penalty continuation cannot leave
    target = max(min(0.95 * root_s, root_s - 1e-9), 1.0)
    z0 = _l1_retract(z0[:, None], target)[:, 0]
    l1 = float(np.sum(np.abs(z0)))
    pad = 0.1 * (root_s - l1) / d
    v = np.concatenate([np.maximum(z0, 0.0), np.maximum(-z0, 0.0)]) + pad

    def phi(v, c_pen, w):
        z = v[:n] - v[n:]
        t = float(z @ z) - 1.0
        slack = root_s - float(np.sum(v))
        if slack <= 0.0 or np.any(v <= 0.0):
            return np.inf
        val = float(z @ (M @ z)) + 0.5 * c_pen * t * t
        return val - w * float(np.sum(np.log(v))) - w * math.log(slack)

    # a mild initial barrier: at 0.1 the log terms dominate the stage-0
    # landscape and its minimizer is the spread trap state itself
    c_pen, w = 10.0, 1e-3
    grad = np.zeros(d)
    for _ in range(8):
        for _ in range(80):
            z = v[:n] - v[n:]
            t = float(z @ z) - 1.0
            slack = root_s - float(np.sum(v))
            Mz = M @ z
            gz = 2.0 * Mz + 2.0 * c_pen * t * z
            grad = np.concatenate([gz, -gz]) - w / v + w / slack
            Hz = 2.0 * M + 2.0 * c_pen * (t * np.eye(n) + 2.0 * np.outer(z, z))
            H = np.empty((d, d))
            H[:n, :n] = Hz
            H[n:, n:] = Hz
            H[:n, n:] = -Hz
            H[n:, :n] = -Hz
            H[np.diag_indices(d)] += w / v**2
            H += (w / slack**2)
            # the penalty Hessian is indefinite away from the sphere, and pure
            # Newton converges to whatever stationary point is nearest, saddles
            # included; shift to positive definite for a descent direction and
            # keep the bottom eigenvector to escape along negative curvature
            curv = None
            try:
                cf = scipy.linalg.cho_factor(H + 1e-12 * np.eye(d), check_finite=False)
                step = scipy.linalg.cho_solve(cf, -grad, check_finite=False)
            except scipy.linalg.LinAlgError:
                try:
                    evals, evecs = scipy.linalg.eigh(H, check_finite=False)
                except scipy.linalg.LinAlgError:
                    break
                top = abs(float(evals[-1]))
                shift = max(0.0, -float(evals[0])) + 1e-8 * (1.0 + top)
                step = evecs @ ((evecs.T @ -grad) / (evals + shift))
                thresh = -1e-10 * (1.0 + top)
                # prefer sum-zero escape directions: the budget barrier's
                # rank-one curvature (w/slack^2) 11' vanishes there, so the
                # wall cannot clip the step to nothing
                best_c = thresh
                for i in range(min(6, d)):
                    if float(evals[i]) >= thresh:
                        break
                    cand = evecs[:, i] - float(np.mean(evecs[:, i]))
                    nc = float(np.linalg.norm(cand))
                    if nc < 1e-12:
                        continue
                    cand = cand / nc
                    c_val = float(cand @ (H @ cand))
                    if c_val < best_c:
                        best_c = c_val
                        curv = cand
                if curv is None and float(evals[0]) < thresh:
                    curv = evecs[:, 0]
            base = phi(v, c_pen, w)
            dec = float(-grad @ step)
            v_try = None
            phi_try = np.inf
            if dec > 1e-14 * (1.0 + abs(base)):
                alpha = 1.0
                for _ in range(60):
                    cand_phi = phi(v + alpha * step, c_pen, w)
                    if cand_phi <= base - 0.25 * alpha * dec:
                        v_try = v + alpha * step
                        phi_try = cand_phi
                        break
                    alpha *= 0.5
            # a damped Newton step can inch along while the iterate sits at a
            # saddle; let the curvature direction compete on actual decrease
            if curv is not None:
                alpha = 1.0 + float(np.linalg.norm(v))
                for _ in range(60):
                    p_pos = phi(v + alpha * curv, c_pen, w)
                    p_neg = phi(v - alpha * curv, c_pen, w)
                    lo = min(p_pos, p_neg)
                    if lo < base - 1e-12 * (1.0 + abs(base)):
                        if lo < phi_try:
                            v_try = v + (alpha if p_pos <= p_neg else -alpha) * curv
                            phi_try = lo
                        break
                    alpha *= 0.5
            if v_try is None:
                break
            v = v_try
        c_pen *= 10.0
        w *= 0.1

    z = v[:n] - v[n:]
    nz = float(np.linalg.norm(z))
    if nz <= 1e-12:
        return float("inf"), float("inf"), False, z
    sphere_err = abs(nz - 1.0)
    z = z / nz
    obj = float(z @ (M @ z))
    kkt = _stationarity(M, z, root_s)
    feasible = sphere_err <= 1e-6 and float(np.sum(np.abs(z))) <= root_s + 1e-6
    return obj, kkt, bool(feasible and kkt <= tol), z


def compute_cmsv_ip(
    A: SensingMatrix | np.ndarray,
    s: float,
    restarts: int = 50,
    seed: int = 0,
    tol: float = 1e-6,
    threads: int | None = None,
    initial_points=None,
) -> CmsvEstimate:
    """Upper estimate of rho_s(A) by multistart interior-point minimization.

    Starts are uniform on the unit sphere, one independent stream per
    restart index, so the reported minimum does not depend on execution
    order or thread count. Extra deterministic starts (for example the
    minimizer found at a smaller s) can be supplied via initial_points.
    The matrix is rescaled to unit maximal column norm internally, which
    makes the run exactly equivariant under A -> cA.

    s = 1 is solved in closed form: s(x) <= 1 forces a 1-sparse vector, so
    rho_1 is the smallest column norm.

    Raises RuntimeError when no restart converges; the message carries the
    per-restart KKT residuals.
    """
    A = as_sensing_matrix(A)
    n = A.n
    if not 1.0 <= s <= n:
        raise ValueError(f"s must lie in [1, n] = [1, {n}], got {s}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    scale = float(np.max(np.linalg.norm(A.data, axis=0)))
    if scale == 0.0:
        zeros = np.zeros(restarts)
        e0 = np.zeros(n)
        e0[0] = 1.0
        return CmsvEstimate(s=float(s), rho_upper=0.0, rho_lower=None, restarts=restarts,
                            per_restart_values=zeros, converged_flags=np.ones(restarts, bool),
                            minimizer=e0)
    if s == 1.0:
        norms = np.linalg.norm(A.data, axis=0)
        val = float(np.min(norms))
        ej = np.zeros(n)
        ej[int(np.argmin(norms))] = 1.0
        return CmsvEstimate(s=1.0, rho_upper=val, rho_lower=None, restarts=restarts,
                            per_restart_values=np.full(restarts, val * val),
                            converged_flags=np.ones(restarts, bool), minimizer=ej)

    B = A.data / scale
    M = B.T @ B
    root_s = math.sqrt(s)

    starts = []
    for j in range(restarts):
        g = rng_stream(seed, j)
        z0 = g.standard_normal(n)
        starts.append(z0 / float(np.linalg.norm(z0)))
    if initial_points is not None:
        for z0 in initial_points:
            z0 = np.asarray(z0, dtype=float)
            if z0.shape != (n,):
                raise ValueError("initial points must be length-n vectors")
            nz = float(np.linalg.norm(z0))
            if nz == 0.0:
                raise ValueError("initial points must be nonzero")
            starts.append(z0 / nz)

    results = parallel_map(lambda z0: _ip_restart(M, root_s, z0, tol), starts, threads)
    values = np.array([r[0] for r in results]) * scale * scale
    flags = np.array([r[2] for r in results], dtype=bool)
    if not np.any(flags):
        worst = ", ".join(f"{r[1]:.2e}" for r in results[:10])
        raise RuntimeError(
            f"no interior-point restart converged out of {len(results)} "
            f"(first KKT residuals: {worst})")
    masked = np.where(flags, values, np.inf)
    idx = int(np.argmin(masked))
    return CmsvEstimate(s=float(s), rho_upper=math.sqrt(max(float(values[idx]), 0.0)),
                        rho_lower=None, restarts=len(starts), per_restart_values=values,
                        converged_flags=flags, minimizer=results[idx][3])


def cmsv_lower_sdr(A: SensingMatrix | np.ndarray, s: float,
                   tol: float | None = None, max_iter: int = 600) -> CmsvEstimate:
    """Certified lower bound on rho_s(A) by semidefinite relaxation.

    Lifts Z = zz' and drops the rank constraint: min tr(A'A Z) over PSD Z
    with tr Z = 1 and ||Z||_1 <= s. Every unit z with s(z) <= s gives a
    feasible Z, so the optimum lower-bounds rho_s^2; the solver's certified
    gap is subtracted before the square root, keeping the bound true under
    floating point. A solve that stops short of the requested tolerance but
    still carries a finite certified gap is accepted for the same reason:
    the bound is merely looser, never wrong. At s = 1 the budget pins Z to
    a diagonal matrix and the bound is the smallest column norm, returned
    without solving.
    """
    A = as_sensing_matrix(A)
    n = A.n
    if not 1.0 <= s <= n:
        raise ValueError(f"s must lie in [1, n] = [1, {n}], got {s}")
    if s == 1.0:
        val = _min_column_norm(A.data)
        return CmsvEstimate(s=1.0, rho_upper=None, rho_lower=val, restarts=0,
                            per_restart_values=None, converged_flags=None)
    G = A.data.T @ A.data
    if tol is None:
        tol = 1e-7 * (1.0 + float(np.linalg.norm(G, 2)))
    prob = SdpProblem(C=G, constraints=((np.eye(n), 1.0),), l1_budget=float(s), sense="min")
    sol = solve_sdp(prob, tol=tol, max_iter=max_iter)
    if not math.isfinite(sol.gap):
        raise RuntimeError(f"semidefinite relaxation produced no certificate (status '{sol.status}')")
    lower = math.sqrt(max(sol.objective - sol.gap, 0.0))
    return CmsvEstimate(s=float(s), rho_upper=None, rho_lower=lower, restarts=0,
                        per_restart_values=None, converged_flags=None)


def _l1_retract(Z: np.ndarray, root_s: float) -> np.ndarray:
    """Pull each unit column of Z onto {||z||_1 <= root_s, ||z||_2 = 1}.

    Soft-thresholds with a per-column level found by bisection: as the
    level grows, the renormalized l1 norm falls continuously from its
    current value toward 1, so a level reaching root_s exists whenever
    root_s >= 1. Columns already inside the budget are left alone.
    """
    over = np.sum(np.abs(Z), axis=0) > root_s
    if not np.any(over):
        return Z
    W = Z[:, over]
    lo = np.zeros(W.shape[1])
    hi = np.max(np.abs(W), axis=0) * (1.0 - 1e-12)
    for _ in range(60):
        tau = 0.5 * (lo + hi)
        T = np.sign(W) * np.maximum(np.abs(W) - tau, 0.0)
        norms = np.linalg.norm(T, axis=0)
        l1 = np.sum(np.abs(T), axis=0) / np.maximum(norms, 1e-300)
        # the normalized l1 norm decreases in the threshold, so an over-budget
        # value means the threshold is still too small
        lo = np.where(l1 > root_s, tau, lo)
        hi = np.where(l1 > root_s, hi, tau)
    T = np.sign(W) * np.maximum(np.abs(W) - hi, 0.0)
    Z = Z.copy()
    Z[:, over] = T / np.linalg.norm(T, axis=0)
    return Z


def cmsv_oracle(A: SensingMatrix | np.ndarray, s: float,
                samples: int = 50000, seed: int = 0) -> float:
    """Near-exact rho_s(A) at toy sizes by sphere sampling plus descent.

    Draws `samples` uniform sphere points plus all signed coordinate
    vectors and refines every candidate by projected gradient descent on
    ||Az||_2^2 with a quadratic penalty continuation on the l1 overshoot
    (retraction back to the sphere after each move, per-column adaptive
    step sizes). Refined points are pulled exactly onto the feasible set
    before evaluation, so the returned minimum is always attained by a
    feasible point and never undershoots rho_s. Enlarging `samples`
    appends to the same Philox stream and the per-column refinement is
    independent across columns, so the value is nonincreasing in `samples`.
    """
    A = as_sensing_matrix(A)
    n = A.n
    if n > 8:
        raise ValueError(f"sampling oracle is limited to n <= 8, got n = {n}")
    if not 1.0 <= s <= n:
        raise ValueError(f"s must lie in [1, n] = [1, {n}], got {s}")
    if samples < 1:
        raise ValueError("samples must be positive")
    root_s = math.sqrt(s)
    g = rng_stream(seed, 0)
    Z = g.standard_normal((n, samples))
    Z /= np.linalg.norm(Z, axis=0)
    # 1-sparse vertices are always feasible and anchor the s = 1 end
    Z = np.concatenate([Z, np.eye(n), -np.eye(n)], axis=1)

    M = A.data.T @ A.data
    mscale = 1.0 + float(np.linalg.norm(M, 2))

    def penalized(Z, pen):
        over = np.maximum(np.sum(np.abs(Z), axis=0) - root_s, 0.0)
        return np.einsum("ij,ij->j", Z, M @ Z) + pen * over * over

    # iteration counts are fixed and every operation is columnwise, so each
    # candidate's trajectory is independent of its siblings; appending more
    # samples can only add candidates, which keeps the minimum monotone
    for pen in (1e2 * mscale, 1e4 * mscale, 1e6 * mscale):
        step = np.full(Z.shape[1], 0.1 / mscale)
        f = penalized(Z, pen)
        for _ in range(200):
            over = np.maximum(np.sum(np.abs(Z), axis=0) - root_s, 0.0)
            G = 2.0 * (M @ Z) + (2.0 * pen) * over * np.sign(Z)
            # project out the radial component; moves stay tangent, the
            # retraction handles the rest
            G -= np.einsum("ij,ij->j", G, Z) * Z
            W = Z - step * G
            W /= np.linalg.norm(W, axis=0)
            fw = penalized(W, pen)
            better = fw <= f
            Z = np.where(better, W, Z)
            f = np.where(better, fw, f)
            step = np.where(better, np.minimum(step * 1.2, 1.0 / mscale), step * 0.5)
    # feasible-side polish: step, retract exactly onto the budget, keep only
    # moves that lower the true objective
    Z = _l1_retract(Z, root_s)
    f = np.einsum("ij,ij->j", Z, M @ Z)
    step = np.full(Z.shape[1], 1e-2 / mscale)
    for _ in range(200):
        G = 2.0 * (M @ Z)
        G -= np.einsum("ij,ij->j", G, Z) * Z
        W = Z - step * G
        W /= np.linalg.norm(W, axis=0)
        W = _l1_retract(W, root_s)
        fw = np.einsum("ij,ij->j", W, M @ W)
        better = fw < f
        Z = np.where(better, W, Z)
        f = np.where(better, fw, f)
        step = np.where(better, np.minimum(step * 1.2, 1.0 / mscale), step * 0.5)
    feas = np.sum(np.abs(Z), axis=0) <= root_s + 1e-9
    vals = np.einsum("ij,ij->j", Z[:, feas], M @ Z[:, feas])
    return float(np.sqrt(max(float(np.min(vals)), 0.0)))


def ric_exact(A: SensingMatrix | np.ndarray, k: int) -> RicEstimate:
    """Restricted isometry constant by enumeration of all size-k supports.

    delta_k = max over |S| = k of max(lmax(A_S'A_S) - 1, 1 - lmin(A_S'A_S)).
    Cost grows as C(n, k); refused beyond 10^6 supports.
    """
    A = as_sensing_matrix(A)
    n = A.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, n] = [1, {n}], got {k}")
    if math.comb(n, k) > 10**6:
        raise ValueError(f"C({n}, {k}) supports exceed the enumeration cap of 1e6")
    G = A.data.T @ A.data
    delta = 0.0
    for S in itertools.combinations(range(n), k):
        idx = np.array(S)
        ev = np.linalg.eigvalsh(G[np.ix_(idx, idx)])
        delta = max(delta, float(ev[-1]) - 1.0, 1.0 - float(ev[0]))
    return RicEstimate(k=k, delta_k=max(delta, 0.0))
