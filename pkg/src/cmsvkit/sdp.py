"""Dense semidefinite-program solver via a log-barrier path-following method.

Problem class:

    min/max  tr(C X)
    s.t.     X >= 0 (symmetric k x k)
             tr(A_i X) = b_i
             ||V X V'||_1 <= s        (optional elementwise-l1 budget)

The budget is rewritten with an auxiliary symmetric matrix U:
-U <= V X V' <= U elementwise and sum(U) <= s. The barrier is
-log det X plus logs of the pair constraints and the budget row. Inside each
Newton step the U block is diagonal plus rank one, so it is eliminated
analytically and the factored system stays at vech(X) size. That elimination
is what keeps the n^4 memory of the naive reformulation out of the picture.

The linear factor V covers the verification program reduced onto a kernel
basis (X lives in the small space, the budget applies to the full-size
V X V'); V = None means the budget applies to X itself.

Barrier parameter nu = k + 2 * #pairs + 1; the reported gap nu/t plus a
Newton-decrement margin is a certified bound on the distance to the optimum,
so callers can round in the safe direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

__all__ = ["SdpProblem", "SdpSolution", "solve_sdp"]

_SIZE_CAP = 100

# squared Newton decrement under which a stage counts as centered (lambda 0.05)
_LAM2_CENTERED = 2.5e-3


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _check_sym(M: np.ndarray, name: str):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} must be finite")
    if np.max(np.abs(M - M.T), initial=0.0) > 1e-10 * (1.0 + np.max(np.abs(M), initial=0.0)):
        raise ValueError(f"{name} must be symmetric")


@dataclass(frozen=True)
class SdpProblem:
    """Dense SDP with optional elementwise-l1 budget on V X V'."""

    C: np.ndarray
    constraints: tuple = ()  # sequence of (A_i, b_i), A_i symmetric
    l1_budget: float | None = None
    sense: str = "min"
    l1_factor: np.ndarray | None = None  # budget applies to (V X V'); None = X itself

    def __post_init__(self):
        C = np.asarray(self.C, dtype=float)
        _check_sym(C, "cost matrix")
        object.__setattr__(self, "C", _readonly(C))
        cons = []
        for Ai, bi in self.constraints:
            Ai = np.asarray(Ai, dtype=float)
            _check_sym(Ai, "constraint matrix")
            if Ai.shape != C.shape:
                raise ValueError("constraint matrix size mismatch")
            cons.append((_readonly(Ai), float(bi)))
        object.__setattr__(self, "constraints", tuple(cons))
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        if self.l1_budget is not None and self.l1_budget <= 0:
            raise ValueError("l1 budget must be positive")
        if self.l1_factor is not None:
            V = np.asarray(self.l1_factor, dtype=float)
            if V.ndim != 2 or V.shape[1] != C.shape[0]:
                raise ValueError("l1_factor must map the variable space")
            if self.l1_budget is None:
                raise ValueError("l1_factor requires an l1 budget")
            object.__setattr__(self, "l1_factor", _readonly(V))

    @property
    def k(self) -> int:
        return self.C.shape[0]


@dataclass(frozen=True)
class SdpSolution:
    Z_star: np.ndarray
    objective: float
    gap: float
    iterations: int
    status: str  # optimal | max_iter

    def __post_init__(self):
        object.__setattr__(self, "Z_star", _readonly(self.Z_star))


def _pairs(k: int):
    iu = np.triu_indices(k)
    mu = np.where(iu[0] == iu[1], 1.0, 2.0)
    return iu, mu


def _mat(x: np.ndarray, k: int, iu) -> np.ndarray:
    X = np.zeros((k, k))
    X[iu] = x
    X.T[iu] = x
    return X


def _logdet_grad_hess(X: np.ndarray, iu, mu):
    # gradient and Hessian of -log det X in upper-triangle coordinates
    S = np.linalg.inv(X)
    a, b = iu
    g = -mu * S[a, b]
    Saa = S[np.ix_(a, a)]
    Sbb = S[np.ix_(b, b)]
    Sab = S[np.ix_(a, b)]
    Sba = S[np.ix_(b, a)]
    H = 0.5 * np.outer(mu, mu) * (Saa * Sbb + Sab * Sba)
    return g, H


def _psd_solve(H: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve H X = B for symmetric positive definite H.

    The barrier Hessian goes badly conditioned as the path parameter grows;
    a Cholesky solve stays quiet about that and a small diagonal shift is
    retried when the factorization fails outright.
    """
    base = float(np.mean(np.abs(np.diag(H)))) + 1.0
    shift = 0.0
    for _ in range(6):
        try:
            Hs = H if shift == 0.0 else H + shift * np.eye(H.shape[0])
            cfac = scipy.linalg.cho_factor(Hs, check_finite=False)
            return scipy.linalg.cho_solve(cfac, B, check_finite=False)
        except scipy.linalg.LinAlgError:
            shift = max(10.0 * shift, 1e-14 * base)
    return np.linalg.lstsq(H, B, rcond=None)[0]


class _SizeCapError(ValueError):
    pass


def solve_sdp(
    p: SdpProblem,
    tol: float = 1e-8,
    max_iter: int = 400,
    init: np.ndarray | None = None,
    size_cap: int = _SIZE_CAP,
) -> SdpSolution:
    """Path-following barrier solve; returns the PSD variable of the problem.

    `init` may supply a strictly feasible starting matrix (PD, equalities met,
    strict budget slack); by default one is constructed from the equality
    system. tol bounds the certified duality gap.
    """
    k = p.k
    if k > size_cap:
        raise _SizeCapError(f"matrix size {k} exceeds the size cap {size_cap}")
    V = p.l1_factor
    nz = V.shape[0] if V is not None else k
    if p.l1_budget is not None and nz > size_cap:
        raise _SizeCapError(f"budget dimension {nz} exceeds the size cap {size_cap}")
    if tol <= 0:
        raise ValueError("tol must be positive")

    sign = 1.0 if p.sense == "min" else -1.0
    iu, mu = _pairs(k)
    pX = mu.shape[0]

    # equality rows in vech coordinates, scaled to unit norm for conditioning
    n_eq = len(p.constraints)
    E = np.zeros((n_eq, pX))
    b_eq = np.zeros(n_eq)
    for i, (Ai, bi) in enumerate(p.constraints):
        row = mu * Ai[iu]
        nrm = float(np.linalg.norm(row))
        if nrm == 0.0:
            if abs(bi) > 1e-12:
                raise ValueError("inconsistent zero equality constraint")
            nrm = 1.0
        E[i] = row / nrm
        b_eq[i] = bi / nrm
    c_vec = sign * (mu * p.C[iu])

    budget = p.l1_budget
    if budget is not None:
        iuZ, muZ = _pairs(nz)
        pZ = muZ.shape[0]
        if V is not None:
            a, b = iu
            Iz, Jz = iuZ
            # J[(ij),(ab)] = V_ia V_jb + [a != b] V_ib V_ja
            J = V[Iz][:, a] * V[Jz][:, b] + (a != b) * (V[Iz][:, b] * V[Jz][:, a])
        else:
            J = None  # identity map, pZ == pX

    def z_of(x):
        if budget is None:
            return None
        if J is None:
            return x
        return J @ x

    # ---- initial point ----
    X0 = None
    if init is not None:
        X0 = np.array(init, dtype=float)
    elif n_eq:
        x_ln, *_ = np.linalg.lstsq(E, b_eq, rcond=None)
        X0 = _mat(x_ln, k, iu)
        wmin = float(np.linalg.eigvalsh(X0).min()) if k else 0.0
        if wmin <= 1e-10:
            # push toward PD inside the affine set if identity direction allows
            tr_row = mu * np.eye(k)[iu]
            resid = E @ tr_row
            if float(np.linalg.norm(resid)) <= 1e-12:
                X0 = X0 + (abs(wmin) + 1e-3) * np.eye(k)
            else:
                X0 = None
    else:
        X0 = np.eye(k)
    if X0 is None or float(np.linalg.eigvalsh(X0).min()) <= 0:
        raise ValueError("could not construct a strictly feasible start; pass init")
    if budget is not None:
        scaleZ = V @ X0 @ V.T if V is not None else X0
        tot = float(np.sum(np.abs(scaleZ)))
        if tot >= 0.9 * budget:
            if n_eq:
                raise ValueError("initial point violates the l1 budget; pass init")
            X0 = X0 * (0.5 * budget / tot)

    x = X0[iu].copy()
    if budget is not None:
        zv = z_of(x)
        # weighted slack so the budget row starts strictly inside
        used = float(muZ @ np.abs(zv))
        if used >= budget:
            raise ValueError("initial point violates the l1 budget; pass init")
        delta = 0.5 * (budget - used) / float(muZ.sum())
        uv = np.abs(zv) + delta
        nu_bar = k + 2.0 * pZ + 1.0
    else:
        uv = None
        nu_bar = float(k)

    def barrier_state(x, uv):
        """Return (ok, pieces) where pieces feed gradients and Hessians."""
        X = _mat(x, k, iu)
        try:
            L = np.linalg.cholesky(X)
        except np.linalg.LinAlgError:
            return False, None
        logdet = 2.0 * float(np.sum(np.log(np.diag(L))))
        if budget is None:
            return True, (X, logdet, None, None, None)
        zv = z_of(x)
        d1 = uv - zv
        d2 = uv + zv
        slack = budget - float(muZ @ uv)
        if np.any(d1 <= 0) or np.any(d2 <= 0) or slack <= 0:
            return False, None
        return True, (X, logdet, d1, d2, slack)

    def phi_val(pieces):
        X, logdet, d1, d2, slack = pieces
        val = -logdet
        if budget is not None:
            val -= float(np.sum(np.log(d1)) + np.sum(np.log(d2)) + np.log(slack))
        return val

    t = 1.0
    total_newton = 0
    lam_dec = np.inf
    nu_last = np.zeros(n_eq)
    cert = None  # (x, uv, t, lambda, eq multipliers) at the last centered stage
    n_outer = int(np.ceil(np.log(nu_bar / (tol * t)) / np.log(10.0))) + 1

    def padded_gap(xv, tv, lamv, nuv):
        # distance-to-optimum bound from the decrement at a centered stage,
        # padded for equality drift scaled by the stage multipliers
        lam_c = min(max(lamv, 0.05), 0.99)
        g = (nu_bar + np.sqrt(nu_bar) * lam_c / (1.0 - lam_c)) / tv
        g += 1e-12 * (1.0 + abs(float(c_vec @ xv)))
        if n_eq:
            eqres = float(np.linalg.norm(E @ xv - b_eq))
            g += 2.0 * (float(np.linalg.norm(nuv)) / tv + 1e-6) * eqres
        return g

    for _outer in range(max(n_outer, 1)):
        # center at current t
        prev_lam2 = np.inf
        stall = 0
        for _inner in range(200):
            if total_newton >= max_iter:
                break
            ok, pieces = barrier_state(x, uv)
            if not ok:
                raise RuntimeError("barrier iterate left the domain")
            X, _, d1, d2, slack = pieces
            g_ld, H_ld = _logdet_grad_hess(X, iu, mu)
            g_x = t * c_vec + g_ld
            H = H_ld.copy()
            if budget is not None:
                inv1 = 1.0 / d1
                inv2 = 1.0 / d2
                gz = inv1 - inv2     # d/dZ of pair barrier
                gu = -inv1 - inv2 + muZ / slack
                dzz = inv1**2 + inv2**2
                dzu = -(inv1**2) + inv2**2
                beta = 1.0 / slack**2
                duu = dzz
                # eliminate U: Huu = diag(duu) + beta w w', w = muZ
                wD = muZ / duu
                denom = 1.0 + beta * float(muZ @ wD)
                dd = dzz - dzu**2 / duu
                avec = dzu * muZ / duu
                if J is None:
                    H[np.diag_indices_from(H)] += dd
                    Ja = avec
                    JtDg = dzu * (gu / duu - wD * (beta * float(muZ @ (gu / duu)) / denom))
                    g_x = g_x + gz
                else:
                    H += (J * dd[:, None]).T @ J
                    Ja = J.T @ avec
                    Hug = gu / duu - wD * (beta * float(muZ @ (gu / duu)) / denom)
                    JtDg = J.T @ (dzu * Hug)
                    g_x = g_x + J.T @ gz
                H += (beta / denom) * np.outer(Ja, Ja)
                rhs_x = -(g_x) + JtDg
            else:
                rhs_x = -g_x

            # KKT with equalities, solved through the Schur complement on
            # the multipliers so the equality residual is honored exactly
            if n_eq:
                sol = _psd_solve(H, np.concatenate([rhs_x[:, None], E.T], axis=1))
                HiR = sol[:, 0]
                HiEt = sol[:, 1:]
                S = E @ HiEt
                r_e = b_eq - E @ x
                try:
                    dnu = np.linalg.solve(S, E @ HiR - r_e)
                except np.linalg.LinAlgError:
                    dnu = np.linalg.lstsq(S, E @ HiR - r_e, rcond=None)[0]
                dx = HiR - HiEt @ dnu
                nu_last = dnu
            else:
                dx = _psd_solve(H, rhs_x)

            if budget is not None:
                dz = dx if J is None else J @ dx
                # du from the eliminated block
                rhs_u = -gu - dzu * dz
                du = rhs_u / duu - wD * (beta * float(muZ @ (rhs_u / duu)) / denom)
                lam2 = -(float(g_x @ dx) + float(gu @ du))
            else:
                du = None
                lam2 = -float(g_x @ dx)
            total_newton += 1
            if lam2 <= 1e-12:
                lam_dec = max(lam2, 0.0) ** 0.5
                break
            lam = lam2**0.5

            # analytic cap keeping the linear constraints strictly slack
            cap = 1.0
            if budget is not None:
                dd1 = du - dz
                dd2 = du + dz
                for num, den in ((d1, dd1), (d2, dd2)):
                    negm = den < 0
                    if np.any(negm):
                        cap = min(cap, 0.99 * float(np.min(-num[negm] / den[negm])))
                dslack = -float(muZ @ du)
                if dslack < 0:
                    cap = min(cap, 0.99 * slack / (-dslack))

            def try_step(alpha):
                # halve into the barrier domain without a merit comparison
                for _ in range(50):
                    xn = x + alpha * dx
                    un = uv + alpha * du if budget is not None else None
                    ok, pn = barrier_state(xn, un)
                    if ok:
                        return xn, un
                    alpha *= 0.5
                return None

            if lam2 <= 0.0625:
                # quadratic convergence region; once t is large the merit
                # differences drown in rounding noise, so no line search here
                got = try_step(cap)
            else:
                f0 = t * float(c_vec @ x) + phi_val(pieces)
                slope = float(g_x @ dx) + (float(gu @ du) if budget is not None else 0.0)
                got = None
                alpha = cap
                for _bt in range(40):
                    xn = x + alpha * dx
                    un = uv + alpha * du if budget is not None else None
                    ok, pn = barrier_state(xn, un)
                    if ok and t * float(c_vec @ xn) + phi_val(pn) <= f0 + 0.25 * alpha * slope:
                        got = (xn, un)
                        break
                    alpha *= 0.5
                if got is None:
                    # damped step with a guaranteed decrease in exact arithmetic
                    got = try_step(min(cap, 1.0 / (1.0 + lam)))
            if got is None:
                lam_dec = lam
                break
            x, un = got
            if budget is not None:
                uv = un
            lam_dec = lam
            # in the quadratic region a real Newton step contracts the
            # decrement fast; a plateau there means the rounding floor
            if lam2 <= 0.0625 and lam2 >= 0.5 * prev_lam2:
                stall += 1
                if stall >= 3:
                    break
            else:
                stall = 0
            prev_lam2 = lam2
        if total_newton >= max_iter:
            break
        if lam_dec**2 > _LAM2_CENTERED:
            # stage failed to center: the precision wall, pushing t on only
            # makes the conditioning worse, keep the last good certificate
            break
        # claimed lambda is floored because its computation is itself
        # conditioning-limited near the center
        cert = (x.copy(), None if uv is None else uv.copy(), t,
                max(lam_dec, 0.05), nu_last.copy())
        if padded_gap(cert[0], t, cert[3], cert[4]) <= tol:
            break
        t *= 10.0

    if cert is not None:
        x, uv, t_cert, lam_c, nu_c = cert
        gap = padded_gap(x, t_cert, lam_c, nu_c)
        eq_ok = True
        if n_eq:
            eq_ok = float(np.linalg.norm(E @ x - b_eq)) <= 1e-6 * (1.0 + float(np.linalg.norm(b_eq)))
        status = "optimal" if (gap <= tol and eq_ok) else "max_iter"
    else:
        gap = float("inf")
        status = "max_iter"
    X = _mat(x, k, iu)
    obj = float(np.sum(p.C * X))
    return SdpSolution(Z_star=X, objective=obj, gap=gap, iterations=total_newton, status=status)
