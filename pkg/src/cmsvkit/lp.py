"""Primal-dual interior-point solver for dense linear programs.

Solves

    min c'u   s.t.  A_eq u = b_eq,  G u <= h

with an infeasible-start primal-dual method: explicit slacks s > 0 for the
inequalities, a predictor step that measures how much centering the iterate
still needs, a corrector step that applies it, and fraction-to-boundary
clipping at 0.99 keeping slacks and inequality duals strictly positive. The
adaptive centering is what keeps degenerate problems (exact ties between
vertices, routine for sign-pattern matrices) converging superlinearly instead
of crawling. The verification LP bank and the BP/DS reformulations all reduce
to this problem class.

Two linear-algebra backends share the same iteration loop. The dense backend
forms G' D G directly. The box+sum backend covers the common split-variable
shape (bounds u >= 0 plus at most one aggregate row w'u <= r), where
G' D G is diagonal plus rank one, and the Newton system collapses to a
Schur complement on the equality block. That structure is what makes the
n-program bank affordable at n = 256.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.optimize import nnls

__all__ = ["LpProblem", "LpSolution", "solve_lp", "dual_objective"]

_DIVERGE = 1e10


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class LpProblem:
    """min c'u subject to A_eq u = b_eq and G u <= h; blocks may be empty."""

    c: np.ndarray
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    G: np.ndarray | None = None
    h: np.ndarray | None = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        d = c.shape[0]
        object.__setattr__(self, "c", _readonly(c))
        if (self.A_eq is None) != (self.b_eq is None):
            raise ValueError("A_eq and b_eq must be given together")
        if (self.G is None) != (self.h is None):
            raise ValueError("G and h must be given together")
        if self.A_eq is not None:
            A = np.atleast_2d(np.asarray(self.A_eq, dtype=float))
            b = np.atleast_1d(np.asarray(self.b_eq, dtype=float))
            if A.shape != (b.shape[0], d):
                raise ValueError("equality block dimensions inconsistent")
            object.__setattr__(self, "A_eq", _readonly(A))
            object.__setattr__(self, "b_eq", _readonly(b))
        if self.G is not None:
            G = np.atleast_2d(np.asarray(self.G, dtype=float))
            h = np.atleast_1d(np.asarray(self.h, dtype=float))
            if G.shape != (h.shape[0], d):
                raise ValueError("inequality block dimensions inconsistent")
            object.__setattr__(self, "G", _readonly(G))
            object.__setattr__(self, "h", _readonly(h))
        for blk in (self.c, self.A_eq, self.b_eq, self.G, self.h):
            if blk is not None and not np.all(np.isfinite(blk)):
                raise ValueError("problem data must be finite")

    @property
    def d(self) -> int:
        return self.c.shape[0]

    @property
    def p(self) -> int:
        return 0 if self.A_eq is None else self.A_eq.shape[0]

    @property
    def q(self) -> int:
        return 0 if self.G is None else self.G.shape[0]


@dataclass(frozen=True)
class LpSolution:
    u_star: np.ndarray
    objective: float
    dual_eq: np.ndarray
    dual_ineq: np.ndarray
    gap: float
    iterations: int
    status: str  # optimal | infeasible | unbounded | max_iter

    def __post_init__(self):
        object.__setattr__(self, "u_star", _readonly(self.u_star))
        object.__setattr__(self, "dual_eq", _readonly(self.dual_eq))
        object.__setattr__(self, "dual_ineq", _readonly(self.dual_ineq))


def dual_objective(p: LpProblem, sol: LpSolution) -> float:
    """Lagrangian dual value -b'nu - h'lam at the solution's multipliers.

    For a minimization this is a lower bound on the optimum whenever the
    multipliers are dual feasible; the solver leaves them feasible up to its
    tolerance, which is what the verification rounding relies on.
    """
    val = 0.0
    if p.p:
        val -= float(p.b_eq @ sol.dual_eq)
    if p.q:
        val -= float(p.h @ sol.dual_ineq)
    return val


class _DenseBackend:
    """Forms G' D G explicitly; for arbitrary dense problems."""

    def __init__(self, p: LpProblem):
        self.d, self.pn, self.qn = p.d, p.p, p.q
        self.A = p.A_eq if p.p else np.zeros((0, p.d))
        self.G = p.G if p.q else np.zeros((0, p.d))

    def G_mv(self, u):
        return self.G @ u

    def GT_mv(self, w):
        return self.G.T @ w

    def A_mv(self, u):
        return self.A @ u

    def AT_mv(self, v):
        return self.A.T @ v

    def factor(self, D):
        """Factor the reduced KKT matrix once; predictor and corrector share it."""
        H = self.G.T @ (D[:, None] * self.G) + 1e-13 * np.eye(self.d)
        if self.pn == 0:
            try:
                cf = scipy.linalg.cho_factor(H, check_finite=False)
                return lambda rhs_u, rhs_eq: (
                    scipy.linalg.cho_solve(cf, rhs_u, check_finite=False), np.zeros(0))
            except scipy.linalg.LinAlgError:
                return lambda rhs_u, rhs_eq: (
                    np.linalg.lstsq(H, rhs_u, rcond=None)[0], np.zeros(0))
        K = np.zeros((self.d + self.pn, self.d + self.pn))
        K[: self.d, : self.d] = H
        K[: self.d, self.d :] = self.A.T
        K[self.d :, : self.d] = self.A
        K[self.d :, self.d :] = -1e-13 * np.eye(self.pn)

        def solve_lstsq(rhs_u, rhs_eq):
            sol = np.linalg.lstsq(K, np.concatenate([rhs_u, rhs_eq]), rcond=None)[0]
            return sol[: self.d], sol[self.d :]

        try:
            lu = scipy.linalg.lu_factor(K, check_finite=False)
        except scipy.linalg.LinAlgError:
            return solve_lstsq

        def solve(rhs_u, rhs_eq):
            sol = scipy.linalg.lu_solve(lu, np.concatenate([rhs_u, rhs_eq]), check_finite=False)
            if not np.all(np.isfinite(sol)):
                return solve_lstsq(rhs_u, rhs_eq)
            return sol[: self.d], sol[self.d :]

        return solve


class _BoxSumBackend:
    """Inequalities -u <= 0 plus optionally one row w'u <= r.

    G' D G is diag(D[:d]) (+ D[d] w w'), so the Newton solve reduces to a
    Sherman-Morrison apply and an equality-block Schur complement.
    """

    def __init__(self, d: int, A_eq: np.ndarray | None, sum_row: np.ndarray | None):
        self.d = d
        self.A = A_eq if A_eq is not None else np.zeros((0, d))
        self.pn = self.A.shape[0]
        self.w = sum_row
        self.qn = d + (1 if sum_row is not None else 0)

    def G_mv(self, u):
        if self.w is None:
            return -u
        return np.concatenate([-u, [self.w @ u]])

    def GT_mv(self, lam):
        out = -lam[: self.d]
        if self.w is not None:
            out = out + lam[self.d] * self.w
        return out

    def A_mv(self, u):
        return self.A @ u

    def AT_mv(self, v):
        return self.A.T @ v

    def factor(self, D):
        """Sherman-Morrison on the diag+rank-one block, Cholesky on the Schur."""
        dd = D[: self.d] + 1e-13

        def dinv(v):
            return v / dd if v.ndim == 1 else v / dd[:, None]

        if self.w is None:
            hinv = dinv
        else:
            cw = D[self.d]
            wd = self.w / dd
            denom = 1.0 + cw * float(self.w @ wd)

            def hinv(v):
                v1 = dinv(v)
                if v.ndim == 1:
                    return v1 - wd * (cw * float(self.w @ v1) / denom)
                return v1 - np.outer(wd, (cw / denom) * (self.w @ v1))

        if self.pn == 0:
            return lambda rhs_u, rhs_eq: (hinv(rhs_u), np.zeros(0))
        HiAT = hinv(self.A.T)
        S = self.A @ HiAT
        S[np.diag_indices_from(S)] += 1e-13
        try:
            cf = scipy.linalg.cho_factor(S, check_finite=False)

            def ssolve(r):
                return scipy.linalg.cho_solve(cf, r, check_finite=False)
        except scipy.linalg.LinAlgError:

            def ssolve(r):
                return np.linalg.lstsq(S, r, rcond=None)[0]

        def solve(rhs_u, rhs_eq):
            hr = hinv(rhs_u)
            dnu = ssolve(self.A @ hr - rhs_eq)
            return hr - HiAT @ dnu, dnu

        return solve


def _solve_equality_only(p: LpProblem, tol: float) -> LpSolution:
    # No inequalities: optimum exists iff c is orthogonal to ker(A_eq).
    if p.p == 0:
        if float(np.linalg.norm(p.c)) <= tol:
            return LpSolution(np.zeros(p.d), 0.0, np.zeros(0), np.zeros(0), 0.0, 0, "optimal")
        return LpSolution(np.zeros(p.d), -np.inf, np.zeros(0), np.zeros(0), np.inf, 0, "unbounded")
    u, res, rank, _ = np.linalg.lstsq(p.A_eq, p.b_eq, rcond=None)
    if float(np.linalg.norm(p.A_eq @ u - p.b_eq)) > max(tol, 1e-9):
        return LpSolution(u, np.nan, np.zeros(p.p), np.zeros(0), np.inf, 0, "infeasible")
    nu, *_ = np.linalg.lstsq(p.A_eq.T, -p.c, rcond=None)
    if float(np.linalg.norm(p.A_eq.T @ nu + p.c)) > max(tol, 1e-9):
        return LpSolution(u, -np.inf, nu, np.zeros(0), np.inf, 0, "unbounded")
    return LpSolution(u, float(p.c @ u), nu, np.zeros(0), 0.0, 0, "optimal")


def _has_unbounded_ray(p: LpProblem) -> bool:
    """Certify a descent ray: d with A_eq d = 0, G d <= 0, c'd < 0.

    Working in null-space coordinates, min_{lam>=0} ||G' lam + c|| > 0 is
    exactly such a certificate (the NNLS residual direction is the ray).
    """
    if p.p:
        _, sv, Vt = np.linalg.svd(p.A_eq)
        rank = int(np.sum(sv > max(p.A_eq.shape) * np.finfo(float).eps * (sv[0] if sv.size else 0.0)))
        N = Vt[rank:].T
    else:
        N = np.eye(p.d)
    if N.shape[1] == 0:
        return False
    Gn = p.G @ N
    cn = N.T @ p.c
    try:
        _, res = nnls(Gn.T, -cn)
    except Exception:
        return False
    return res > max(1e-8, 1e-6 * float(np.linalg.norm(cn)))


def _polish(p: LpProblem, u: np.ndarray, s: np.ndarray, lam: np.ndarray, tol: float):
    """Snap the interior iterate to the active-set vertex when that checks out.

    Solving the active constraints as a linear system removes the O(tol)
    centering bias from the reported optimum; rational-data ties then come out
    exact to machine precision, which the verification rounding needs.
    """
    if p.q == 0:
        return None
    scale = 1.0 + np.abs(p.h)
    mu = float(s @ lam) / max(1, s.size)
    # near the central path lam_i*s_i is uniformly tiny, so lam_i > s_i marks
    # the constraints that bind at the limit; the sqrt(mu) band also catches
    # actives whose multiplier has not separated from the slack yet
    thr = max(1e-7, min(1e-3, float(np.sqrt(max(mu, 0.0)))))
    active = (s < lam) | (s <= thr * scale)
    act = np.nonzero(active)[0]
    rows = []
    rhs = []
    if p.p:
        rows.append(p.A_eq)
        rhs.append(p.b_eq)
    if act.size:
        rows.append(p.G[act])
        rhs.append(p.h[act])
    if not rows:
        return None
    K = np.vstack(rows)
    r = np.concatenate(rhs)
    # least-change fit from the iterate, not the min-norm point: when the
    # optimum is a face rather than a vertex the active rows underdetermine
    # the point, and only a correction near the iterate stays feasible
    step, *_ = np.linalg.lstsq(K, r - K @ u, rcond=None)
    up = u + step
    # verify the snapped point: feasible, consistent with active rows, no worse
    if float(np.linalg.norm(K @ up - r, np.inf)) > 1e-8 * float(1.0 + np.abs(r).max(initial=0.0)):
        return None
    if p.p and float(np.linalg.norm(p.A_eq @ up - p.b_eq, np.inf)) > 1e-9 * (1.0 + np.abs(p.b_eq).max(initial=0.0)):
        return None
    slack = p.h - p.G @ up
    if float(slack.min(initial=0.0)) < -1e-9 * float(scale.max(initial=1.0)):
        return None
    if float(p.c @ up) > float(p.c @ u) + 1e-6 * (1.0 + abs(float(p.c @ u))):
        return None
    # polished multipliers: least-squares on the stationarity system, inactive at 0
    cols = []
    if p.p:
        cols.append(p.A_eq.T)
    if act.size:
        cols.append(p.G[act].T)
    Kt = np.hstack(cols)
    mult, *_ = np.linalg.lstsq(Kt, -p.c, rcond=None)
    nu_p = mult[: p.p] if p.p else np.zeros(0)
    lam_p = np.zeros(p.q)
    if act.size:
        lam_act = mult[p.p :]
        if float(lam_act.min(initial=0.0)) < -1e-7:
            # at a degenerate vertex the min-norm multipliers mix signs even
            # when a nonnegative set exists; re-fit with the sign constraint,
            # free equality duals split into positive and negative parts
            cols = [p.G[act].T]
            if p.p:
                cols = [p.A_eq.T, -p.A_eq.T] + cols
            try:
                mult_n, _ = nnls(np.hstack(cols), -p.c)
            except Exception:
                return None
            if p.p:
                nu_p = mult_n[: p.p] - mult_n[p.p : 2 * p.p]
                lam_act = mult_n[2 * p.p :]
            else:
                lam_act = mult_n
            if float(lam_act.min(initial=0.0)) < -1e-7:
                return None  # not dual-consistent; keep the interior iterate
        lam_p[act] = np.maximum(lam_act, 0.0)
    if float(np.linalg.norm(p.c + (p.A_eq.T @ nu_p if p.p else 0.0) + p.G.T @ lam_p, np.inf)) > 1e-7 * (
        1.0 + float(np.abs(p.c).max(initial=0.0))
    ):
        return None
    return up, nu_p, lam_p


def _ipm(p: LpProblem, backend, tol: float, max_iter: int, u0: np.ndarray | None, polish: bool):
    # overflow in a wandering tail is detected and rewound, not propagated;
    # silence the transit noise so callers can run with warnings raised
    with np.errstate(over="ignore", invalid="ignore", divide="ignore", under="ignore"):
        return _ipm_loop(p, backend, tol, max_iter, u0, polish)


def _ipm_loop(p: LpProblem, backend, tol: float, max_iter: int, u0: np.ndarray | None, polish: bool):
    d, pn, qn = p.d, p.p, p.q
    u = np.zeros(d) if u0 is None else np.array(u0, dtype=float)
    # slack init: feasible slack where comfortably positive, else shifted to 1
    s = np.maximum(p.h - backend.G_mv(u), 1.0)
    lam = np.ones(qn)
    nu = np.zeros(pn)
    b = p.b_eq if pn else np.zeros(0)
    h = p.h

    def residuals(u, s, lam, nu):
        rd = p.c + backend.GT_mv(lam) + (backend.AT_mv(nu) if pn else 0.0)
        rp_eq = (backend.A_mv(u) - b) if pn else np.zeros(0)
        rp_in = backend.G_mv(u) + s - h
        return rd, rp_eq, rp_in

    status = "max_iter"
    it = 0
    best = None
    best_phi = np.inf
    bad = 0
    for it in range(1, max_iter + 1):
        rd, rp_eq, rp_in = residuals(u, s, lam, nu)
        eta = float(s @ lam)
        nrd = float(np.linalg.norm(rd, np.inf))
        nrp = max(
            float(np.linalg.norm(rp_eq, np.inf)) if pn else 0.0,
            float(np.linalg.norm(rp_in, np.inf)),
        )
        # once lam/s spans the full float range the factored solves stop
        # returning Newton directions; remember the best iterate and stop
        # iterating instead of letting the tail wander away from it
        phi = max(nrd, nrp, eta)
        if not np.isfinite(phi):
            break
        if phi < best_phi:
            best_phi = phi
            best = (u.copy(), s.copy(), lam.copy(), nu.copy())
            bad = 0
        elif phi > 10.0 * best_phi:
            bad += 1
            if bad >= 8:
                break
        if nrd <= tol and nrp <= tol and eta <= tol:
            status = "optimal"
            break
        obj = float(p.c @ u)
        iter_scale = 1.0 + float(np.linalg.norm(u, np.inf)) + float(np.linalg.norm(s, np.inf))
        if nrp <= max(tol, 1e-7) * iter_scale and obj < -_DIVERGE:
            status = "unbounded"
            break
        dual_scale = max(float(np.linalg.norm(lam, np.inf)), float(np.linalg.norm(nu, np.inf)) if pn else 0.0)
        if dual_scale > _DIVERGE:
            # Farkas-style certificate check on the normalized multipliers
            ln, nn = lam / dual_scale, (nu / dual_scale if pn else nu)
            cert = backend.GT_mv(ln) + (backend.AT_mv(nn) if pn else 0.0)
            val = float(h @ ln) + (float(b @ nn) if pn else 0.0)
            if float(np.linalg.norm(cert, np.inf)) <= 1e-6 and val < -1e-9:
                status = "infeasible"
                break
        mu_bar = eta / qn
        Dvec = lam / s
        kkt_raw = backend.factor(Dvec)
        rhs_nu = -rp_eq if pn else np.zeros(0)

        def kkt(rhs_u, rhs_eq):
            # iterative refinement against the unregularized system recovers
            # the digits the factored solve loses when lam/s is badly spread
            du, dnu = kkt_raw(rhs_u, rhs_eq)
            sc = 1.0 + float(np.linalg.norm(rhs_u, np.inf)) + (
                float(np.linalg.norm(rhs_eq, np.inf)) if pn else 0.0
            )
            for _ in range(2):
                r1 = rhs_u - backend.GT_mv(Dvec * backend.G_mv(du))
                r2 = rhs_eq
                if pn:
                    r1 = r1 - backend.AT_mv(dnu)
                    r2 = rhs_eq - backend.A_mv(du)
                err = max(
                    float(np.linalg.norm(r1, np.inf)),
                    float(np.linalg.norm(r2, np.inf)) if pn else 0.0,
                )
                if not np.isfinite(err) or err <= 1e-13 * sc:
                    break
                e1, e2 = kkt_raw(r1, r2)
                du = du + e1
                dnu = dnu + e2
            return du, dnu

        def directions(r_c):
            rhs_u = -rd + backend.GT_mv((r_c - lam * rp_in) / s)
            du, dnu = kkt(rhs_u, rhs_nu)
            ds = -rp_in - backend.G_mv(du)
            dlam = -(r_c + lam * ds) / s
            return du, dnu, ds, dlam

        def max_step(v, dv):
            neg = dv < 0
            if not np.any(neg):
                return 1.0
            return min(1.0, float(np.min(-v[neg] / dv[neg])))

        # predictor: pure Newton on the complementarity products
        du_a, dnu_a, ds_a, dlam_a = directions(lam * s)
        ap = max_step(s, ds_a)
        ad = max_step(lam, dlam_a)
        eta_aff = float((s + ap * ds_a) @ (lam + ad * dlam_a))
        sigma = min(1.0, max((eta_aff / eta) ** 3, 1e-8))

        # corrector recenters and cancels the second-order product term
        r_c = lam * s + ds_a * dlam_a - sigma * mu_bar
        du, dnu, ds, dlam = directions(r_c)
        if not (np.all(np.isfinite(du)) and np.all(np.isfinite(ds)) and np.all(np.isfinite(dlam))):
            break
        ap = min(1.0, 0.99 * max_step(s, ds))
        ad = min(1.0, 0.99 * max_step(lam, dlam))
        # a corrupted solve can throw the iterate; halve away steps that
        # inflate complementarity by orders of magnitude
        for _ in range(12):
            eta_try = float((s + ap * ds) @ (lam + ad * dlam))
            if eta_try <= 1e4 * max(eta, 1.0):
                break
            ap *= 0.5
            ad *= 0.5
        u = u + ap * du
        s = np.maximum(s + ap * ds, 1e-300)
        lam = np.maximum(lam + ad * dlam, 1e-300)
        if pn:
            nu = nu + ad * dnu

    if status == "max_iter":
        # a Farkas certificate, if there is one, lives in the diverging tail;
        # check it before rewinding to the best iterate
        dual_scale = max(float(np.linalg.norm(lam, np.inf)), float(np.linalg.norm(nu, np.inf)) if pn else 0.0)
        if np.isfinite(dual_scale) and dual_scale > 1e6:
            ln, nn = lam / dual_scale, (nu / dual_scale if pn else nu)
            cert = backend.GT_mv(ln) + (backend.AT_mv(nn) if pn else 0.0)
            val = float(h @ ln) + (float(b @ nn) if pn else 0.0)
            if float(np.linalg.norm(cert, np.inf)) <= 1e-6 and val < -1e-9:
                status = "infeasible"

    if status == "max_iter" and best is not None:
        u, s, lam, nu = best

    if status == "max_iter":
        rd, rp_eq, rp_in = residuals(u, s, lam, nu)
        eta = float(s @ lam)
        nrd = float(np.linalg.norm(rd, np.inf))
        nrp = max(
            float(np.linalg.norm(rp_eq, np.inf)) if pn else 0.0,
            float(np.linalg.norm(rp_in, np.inf)),
        )
        iter_scale = 1.0 + float(np.linalg.norm(u, np.inf)) + float(np.linalg.norm(s, np.inf))
        if nrd <= tol and nrp <= tol and eta <= tol:
            status = "optimal"
        elif nrp <= 1e-6 * iter_scale and isinstance(p.G, np.ndarray) and _has_unbounded_ray(p):
            status = "unbounded"

    if polish and status in ("optimal", "max_iter") and isinstance(p.G, np.ndarray):
        snapped = _polish(p, u, s, lam, tol)
        if snapped is not None:
            up, nup, lamp = snapped
            gap_p = abs(float(p.c @ up) - (-(float(b @ nup)) if pn else 0.0) - (-(float(h @ lamp))))
            u, nu, lam = up, nup, lamp
            s = np.maximum(p.h - p.G @ u, 0.0)
            if gap_p <= max(tol, 1e-9) * (1.0 + abs(float(p.c @ u))):
                status = "optimal"
    eta = float(s @ lam)
    return LpSolution(
        u_star=u,
        objective=float(p.c @ u),
        dual_eq=nu,
        dual_ineq=np.maximum(lam, -1e-12),
        gap=eta,
        iterations=it,
        status=status,
    )


def solve_lp(p: LpProblem, tol: float = 1e-8, max_iter: int = 200, polish: bool = True) -> LpSolution:
    """Solve an LpProblem; statuses are reported, never raised.

    On status "optimal" the primal and dual residuals and the surrogate gap
    are at most tol. Infeasible and unbounded problems are detected from
    diverging certificates; hitting max_iter returns the best iterate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.q == 0:
        return _solve_equality_only(p, tol)
    return _ipm(p, _DenseBackend(p), tol, max_iter, None, polish)


def solve_box_sum_lp(
    c: np.ndarray,
    A_eq: np.ndarray | None,
    b_eq: np.ndarray | None,
    sum_row: np.ndarray | None = None,
    sum_rhs: float = 0.0,
    tol: float = 1e-8,
    max_iter: int = 200,
    polish: bool = True,
) -> LpSolution:
    """Structured fast path: min c'u s.t. A_eq u = b_eq, u >= 0 [, w'u <= r].

    Same iteration as solve_lp with the diag+rank-one Newton solve; used by
    the verification LP bank where thousands of these are solved per matrix.
    """
    d = int(np.asarray(c).shape[0])
    G_rows = [-np.eye(d)]
    h_parts = [np.zeros(d)]
    w = None
    if sum_row is not None:
        w = np.asarray(sum_row, dtype=float)
        G_rows.append(w[None, :])
        h_parts.append(np.array([float(sum_rhs)]))
    prob = LpProblem(
        c=np.asarray(c, dtype=float),
        A_eq=A_eq,
        b_eq=b_eq,
        G=np.vstack(G_rows),
        h=np.concatenate(h_parts),
    )
    backend = _BoxSumBackend(d, prob.A_eq, w)
    return _ipm(prob, backend, tol, max_iter, None, polish)
