"""Command-line front end.

Five subcommands: ``generate`` writes ensemble matrices, ``verify`` runs the
relaxation-based recovery certificates, ``cmsv`` estimates the l1-constrained
minimal singular value, ``recover`` solves BP / DS / LASSO and optionally
attaches the error-bound report, and ``reproduce`` regenerates the benchmark
tables and figure data as CSV.

Reports go to stdout (or --out) as JSON with 17-significant-digit floats.
Exit codes: 0 success, 2 input error, 3 solver failure, 4 size-guard refusal.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import math
import os
import sys
import time

import numpy as np

from . import __version__, fileio
from .cmsv import cmsv_lower_sdr, compute_cmsv_ip
from .core import normalize_columns
from .ensembles import KINDS, EnsembleSpec, generate
from .recovery import evaluate_bounds, solve_bp, solve_ds, solve_lasso
from .verify import critical_sparsity_exact, kernel_basis, verify_l2, verify_linf

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_GUARD = 4

# enumeration / relaxation sizes past which a command refuses to start
# without --allow-large
EXACT_SUPPORT_LIMIT = 1_000_000
SDR_DIM_LIMIT = 120
IP_DIM_LIMIT = 4000
LINF_DIM_LIMIT = 4096


class SizeGuard(Exception):
    """Raised when a command would exceed its enumeration or dimension guard."""


def _build_id() -> str:
    """Content hash of the installed package sources, 12 hex digits."""
    root = os.path.dirname(os.path.abspath(__file__))
    h = hashlib.sha256()
    for name in sorted(os.listdir(root)):
        if name.endswith(".py"):
            h.update(name.encode())
            with open(os.path.join(root, name), "rb") as fh:
                h.update(fh.read())
    return h.hexdigest()[:12]


def _child_seed(seed: int, *key: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])


def _emit(args, payload) -> None:
    text = fileio.dumps_json(payload)
    out = getattr(args, "out", None)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config_dict(args, skip=("func", "command", "out", "out_dir")) -> dict:
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and not callable(v)}


def _envelope(args, command: str, result, runtime_s: float, **extra) -> dict:
    payload = {
        "command": command,
        "version": __version__,
        "build": _build_id(),
        "config": _config_dict(args),
        "runtime_s": runtime_s,
        "result": fileio.to_jsonable(result),
    }
    payload.update(extra)
    return payload


# ---------------------------------------------------------------- generate

def _cmd_generate(args) -> int:
    spec = EnsembleSpec(kind=args.kind, m=args.m, n=args.n,
                        seed=args.seed, normalize=args.normalize)
    A = generate(spec).data
    comments = [
        f"cmsvkit {__version__} generate kind={args.kind} m={args.m} "
        f"n={args.n} seed={args.seed} normalize={args.normalize}",
    ]
    if args.out in (None, "-"):
        sys.stdout.write(fileio.matrix_to_text(A, comments))
    else:
        fileio.write_matrix(args.out, A, comments=comments)
    return EXIT_OK


# ------------------------------------------------------------------ verify

def _cmd_verify(args) -> int:
    A = fileio.read_matrix(args.matrix)
    m, n = A.shape
    t0 = time.perf_counter()
    if args.method == "exact":
        k_cap = args.k if args.k is not None else 5
        if k_cap < 1:
            raise ValueError("--k must be at least 1 for method=exact")
        supports = sum(math.comb(n, k) for k in range(1, min(k_cap, n) + 1))
        if supports > EXACT_SUPPORT_LIMIT and not args.allow_large:
            raise SizeGuard(
                f"method=exact would enumerate {supports} supports "
                f"(limit {EXACT_SUPPORT_LIMIT}); pass --allow-large to proceed")
        k_star = critical_sparsity_exact(A, k_max=k_cap)
        result = {
            "k_lower": k_star,
            "method": "exact",
            "tau": None,
            "per_index_values": None,
            "kernel_dim": kernel_basis(A).shape[1],
            "runtime": time.perf_counter() - t0,
            "search_cap": k_cap,
        }
    elif args.method == "linf":
        if n > LINF_DIM_LIMIT and not args.allow_large:
            raise SizeGuard(f"linf bank has {n} programs (limit {LINF_DIM_LIMIT}); "
                            "pass --allow-large to proceed")
        kw = {"threads": args.threads}
        if args.tol is not None:
            kw["tol"] = args.tol
        if args.max_iter is not None:
            kw["max_iter"] = args.max_iter
        result = verify_linf(A, **kw)
    else:
        kw = {}
        if args.tol is not None:
            kw["tol"] = args.tol
        if args.max_iter is not None:
            kw["max_iter"] = args.max_iter
        result = verify_l2(A, **kw)
    runtime = time.perf_counter() - t0
    _emit(args, _envelope(args, "verify", result, runtime, shape=[m, n]))
    return EXIT_OK


# -------------------------------------------------------------------- cmsv

def _cmd_cmsv(args) -> int:
    A = fileio.read_matrix(args.matrix)
    m, n = A.shape
    if args.s < 1.0 or args.s > n:
        raise ValueError(f"--s must lie in [1, {n}] for an m x {n} matrix")
    run_ip = args.method in ("ip", "both")
    run_sdr = args.method in ("sdr", "both")
    if run_sdr and n > SDR_DIM_LIMIT and not args.allow_large:
        raise SizeGuard(f"semidefinite relaxation at n={n} exceeds limit "
                        f"{SDR_DIM_LIMIT}; pass --allow-large to proceed")
    if run_ip and n > IP_DIM_LIMIT and not args.allow_large:
        raise SizeGuard(f"interior-point search at n={n} exceeds limit "
                        f"{IP_DIM_LIMIT}; pass --allow-large to proceed")

    t0 = time.perf_counter()
    result: dict = {"s": args.s, "rho_upper": None, "rho_lower": None}
    extra: dict = {}
    if run_ip:
        ip = compute_cmsv_ip(A, args.s, restarts=args.restarts, seed=args.seed,
                             tol=args.tol, threads=args.threads)
        result.update(fileio.to_jsonable(ip))
        extra["objective_min"] = float(ip.rho_upper) ** 2
    if run_sdr:
        sdr = cmsv_lower_sdr(A, args.s, max_iter=args.max_iter)
        result["rho_lower"] = sdr.rho_lower
    if run_ip and run_sdr:
        result["bracket"] = [result["rho_lower"], result["rho_upper"]]
        result["bracket_consistent"] = bool(
            result["rho_lower"] <= result["rho_upper"] + 1e-6)
    runtime = time.perf_counter() - t0
    _emit(args, _envelope(args, "cmsv", result, runtime, shape=[m, n], **extra))
    return EXIT_OK


# ----------------------------------------------------------------- recover

_SOLVERS = {"bp": "BP", "ds": "DS", "lasso": "LASSO"}


def _cmd_recover(args) -> int:
    A = fileio.read_matrix(args.matrix)
    y = fileio.read_vector(args.y)
    if args.algorithm in ("ds", "lasso") and args.lambda_sigma is None:
        raise ValueError("--lambda-sigma is required for ds and lasso")
    t0 = time.perf_counter()
    if args.algorithm == "bp":
        result = solve_bp(A, y, eps=args.eps, tol=args.tol)
    elif args.algorithm == "ds":
        result = solve_ds(A, y, args.lambda_sigma)
    else:
        result = solve_lasso(A, y, args.lambda_sigma)

    extra: dict = {}
    if args.k is not None:
        if args.k < 1:
            raise ValueError("--k must be at least 1")
        kappa = args.kappa
        if args.algorithm == "lasso":
            s_val = 4.0 * args.k / (1.0 - kappa) ** 2
        else:
            s_val = 4.0 * args.k
        n = A.shape[1]
        if s_val > n:
            raise ValueError(
                f"bound needs rho at sparsity level {s_val:.6g}, beyond n={n}; "
                "reduce --k")
        if args.rho_method == "sdr":
            if n > SDR_DIM_LIMIT and not args.allow_large:
                raise SizeGuard(
                    f"semidefinite relaxation at n={n} exceeds limit "
                    f"{SDR_DIM_LIMIT}; pass --allow-large or --rho-method ip")
            rho = cmsv_lower_sdr(A, s_val).rho_lower
            source = "SDR"
        else:
            rho = compute_cmsv_ip(A, s_val, restarts=args.restarts,
                                  seed=args.seed, threads=args.threads).rho_upper
            source = "IP"
        lam = args.lambda_sigma if args.lambda_sigma is not None else 0.0
        report = evaluate_bounds(
            k=args.k, eps=args.eps, lambda_sigma=lam, kappa=kappa,
            rho_4k=rho if args.algorithm != "lasso" else 0.0,
            rho_lasso=rho if args.algorithm == "lasso" else 0.0,
            rho_source=source)
        bound = {"bp": report.bound_bp, "ds": report.bound_ds,
                 "lasso": report.bound_lasso}[args.algorithm]
        extra["bound"] = bound
        extra["bound_report"] = fileio.to_jsonable(report)
        extra["rho"] = rho
        extra["s_used"] = s_val
    runtime = time.perf_counter() - t0
    _emit(args, _envelope(args, "recover", result, runtime,
                          shape=list(A.shape), **extra))
    return EXIT_OK


# --------------------------------------------------------------- reproduce

TABLE_I_M = (20, 24, 28, 32)
TABLE_I_REF_LINF = {20: 1, 24: 2, 28: 3, 32: 3}
TABLE_I_REF_L2 = {20: 1, 24: 1, 28: 2, 32: 2}

TABLE_II_M = (25, 51, 76, 102, 128, 153, 179, 204, 230)
TABLE_II_REF = {25: 1, 51: 2, 76: 3, 102: 4, 128: 5, 153: 7, 179: 9,
                204: 12, 230: 19}
TABLE_III_REF = {25: 1, 51: 2, 76: 3, 102: 4, 128: 4, 153: 6, 179: 7,
                 204: 10, 230: 13}

TABLE_IV_M = (102, 204, 307, 409, 512, 614, 716, 819, 921)
TABLE_IV_REF_H = {102: 3, 204: 4, 307: 6, 409: 8, 512: 11, 614: 14,
                  716: 18, 819: 24, 921: 37}
TABLE_IV_REF_G = {102: 2, 204: 4, 307: 6, 409: 7, 512: 10, 614: 12,
                  716: 15, 819: 20, 921: 29}


def _fmt_cell(v):
    if isinstance(v, float):
        return fileio.format_float(v)
    return v


def _write_csv(path: str, comments, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt_cell(v) for v in row])


def _provenance(args, label: str) -> list:
    cfg = " ".join(f"{k}={v}" for k, v in _config_dict(args).items())
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return [
        f"cmsvkit {__version__} reproduce {label}",
        f"config {cfg}",
        f"build {_build_id()} generated {stamp}",
    ]


def _reproduce_table1(args, out_dir: str) -> int:
    failures = 0
    details = []
    summary = []
    for m in TABLE_I_M:
        k_linf_vals, k_l2_vals = [], []
        for t in range(args.trials):
            seed = _child_seed(args.seed, m, t)
            A = generate(EnsembleSpec("bernoulli", m, 40, seed=seed)).data
            status = "ok"
            k_inf = k_l2 = ""
            try:
                k_inf = verify_linf(A, threads=args.threads).k_lower
                k_l2 = verify_l2(A).k_lower
                k_linf_vals.append(k_inf)
                k_l2_vals.append(k_l2)
            except RuntimeError as e:
                status = f"error: {e}"
                failures += 1
            details.append([m, t, seed, k_inf, k_l2, status])
        if k_linf_vals:
            med_inf = float(np.median(k_linf_vals))
            med_l2 = float(np.median(k_l2_vals))
            summary.append([m, med_inf, TABLE_I_REF_LINF[m],
                            int(abs(med_inf - TABLE_I_REF_LINF[m]) <= 1),
                            med_l2, TABLE_I_REF_L2[m],
                            int(abs(med_l2 - TABLE_I_REF_L2[m]) <= 1),
                            len(k_linf_vals), "ok"])
        else:
            summary.append([m, "", TABLE_I_REF_LINF[m], "", "",
                            TABLE_I_REF_L2[m], "", 0, "error: no trials"])
            failures += 1
    prov = _provenance(args, "table I")
    _write_csv(os.path.join(out_dir, "table_I_details.csv"), prov,
               ["m", "trial", "seed", "k_linf", "k_l2", "status"], details)
    _write_csv(os.path.join(out_dir, "table_I_summary.csv"), prov,
               ["m", "median_linf", "reference_linf", "within_one_linf",
                "median_l2", "reference_l2", "within_one_l2",
                "trials_ok", "status"], summary)
    return failures


def _reproduce_table2(args, out_dir: str) -> int:
    # the partial Hadamard kernel is invariant under the xor translations
    # of the column index, so one bank program per matrix is exact
    failures = 0
    rows = []
    for mi, m in enumerate(TABLE_II_M):
        t0 = time.perf_counter()
        status = "ok"
        k_first = band_lo = band_hi = covers = ""
        try:
            A = generate(EnsembleSpec("hadamard-first-rows", m, 256)).data
            k_first = verify_linf(A, threads=args.threads, indices=[0]).k_lower
            band = []
            for t in range(args.subsets):
                seed = _child_seed(args.seed, mi, t)
                B = generate(EnsembleSpec("hadamard-random-rows", m, 256,
                                          seed=seed)).data
                band.append(verify_linf(B, threads=args.threads,
                                        indices=[0]).k_lower)
            band_lo, band_hi = int(min(band)), int(max(band))
            covers = int(band_lo <= TABLE_II_REF[m] <= band_hi)
        except RuntimeError as e:
            status = f"error: {e}"
            failures += 1
        rows.append([m, k_first, TABLE_II_REF[m],
                     int(k_first == TABLE_II_REF[m]) if k_first != "" else "",
                     band_lo, band_hi, covers, args.subsets,
                     time.perf_counter() - t0, status])
    _write_csv(os.path.join(out_dir, "table_II.csv"),
               _provenance(args, "table II"),
               ["m", "k_first_rows", "reference", "exact_match", "band_lo",
                "band_hi", "band_covers_reference", "subsets", "time_s",
                "status"], rows)
    return failures


def _reproduce_table3(args, out_dir: str) -> int:
    failures = 0
    rows = []
    A_full = generate(EnsembleSpec("gaussian", max(TABLE_II_M), 256,
                                   seed=args.seed)).data
    for m in TABLE_II_M:
        t0 = time.perf_counter()
        status = "ok"
        k = ""
        try:
            k = verify_linf(A_full[:m], threads=args.threads).k_lower
        except RuntimeError as e:
            status = f"error: {e}"
            failures += 1
        rows.append([m, k, TABLE_III_REF[m], time.perf_counter() - t0, status])
    _write_csv(os.path.join(out_dir, "table_III.csv"),
               _provenance(args, "table III"),
               ["m", "k_linf", "reference", "time_s", "status"], rows)
    return failures


def _reproduce_table4(args, out_dir: str) -> int:
    failures = 0
    rows = []
    for mi, m in enumerate(TABLE_IV_M):
        t0 = time.perf_counter()
        status = "ok"
        k = ""
        try:
            A = generate(EnsembleSpec("hadamard-first-rows", m, 1024)).data
            k = verify_linf(A, threads=args.threads, indices=[0]).k_lower
        except RuntimeError as e:
            status = f"error: {e}"
            failures += 1
        rows.append(["hadamard-first-rows", m, k, TABLE_IV_REF_H[m],
                     time.perf_counter() - t0, status])
        t0 = time.perf_counter()
        status = "ok"
        k = ""
        try:
            seed = _child_seed(args.seed, mi)
            B = generate(EnsembleSpec("hadamard-random-rows", m, 1024,
                                      seed=seed)).data
            k = verify_linf(B, threads=args.threads, indices=[0]).k_lower
        except RuntimeError as e:
            status = f"error: {e}"
            failures += 1
        rows.append(["hadamard-random-rows", m, k, TABLE_IV_REF_H[m],
                     time.perf_counter() - t0, status])
    if args.include_gaussian:
        A_full = generate(EnsembleSpec("gaussian", max(TABLE_IV_M), 1024,
                                       seed=args.seed)).data
        for m in TABLE_IV_M:
            t0 = time.perf_counter()
            status = "ok"
            k = ""
            try:
                k = verify_linf(A_full[:m], threads=args.threads).k_lower
            except RuntimeError as e:
                status = f"error: {e}"
                failures += 1
            rows.append(["gaussian", m, k, TABLE_IV_REF_G[m],
                         time.perf_counter() - t0, status])
    _write_csv(os.path.join(out_dir, "table_IV.csv"),
               _provenance(args, "table IV"),
               ["ensemble", "m", "k_linf", "reference", "time_s", "status"],
               rows)
    return failures


def _reproduce_table5(args, out_dir: str) -> int:
    failures = 0
    rows = []
    A = generate(EnsembleSpec("gaussian", 20, 60, seed=args.seed)).data
    t0 = time.perf_counter()
    try:
        ip = compute_cmsv_ip(A, 5.0, restarts=args.restarts, seed=args.seed,
                             threads=args.threads)
        ip_time = (time.perf_counter() - t0) / max(ip.restarts, 1)
        obj = np.asarray(ip.per_restart_values, dtype=float)
        rho = np.sqrt(np.maximum(obj, 0.0))
        rows.append(["ip", "objective", float(obj.min()), float(obj.mean()),
                     float(obj.std(ddof=1)), ip_time, "ok"])
        rows.append(["ip", "norm", float(rho.min()), float(rho.mean()),
                     float(rho.std(ddof=1)), ip_time, "ok"])
    except RuntimeError as e:
        rows.append(["ip", "objective", "", "", "", "", f"error: {e}"])
        failures += 1
    t0 = time.perf_counter()
    try:
        sdr = cmsv_lower_sdr(A, 5.0)
        sdr_time = time.perf_counter() - t0
        val = float(sdr.rho_lower)
        rows.append(["sdr", "objective", val * val, val * val, "", sdr_time,
                     "ok"])
        rows.append(["sdr", "norm", val, val, "", sdr_time, "ok"])
    except RuntimeError as e:
        rows.append(["sdr", "objective", "", "", "", "", f"error: {e}"])
        failures += 1
    _write_csv(os.path.join(out_dir, "table_V.csv"),
               _provenance(args, "table V"),
               ["method", "reading", "min", "mean", "std", "mean_time_s",
                "status"], rows)
    return failures


FIG1_M = (10, 20, 40)
FIG1_S = (1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 14.0, 20.0)
FIG2_S = (5.0, 10.0, 20.0)


def _fig_point(args, A, s: float, seed: int):
    rho_ip = rho_sdr = ""
    status = "ok"
    try:
        if args.method in ("ip", "both"):
            rho_ip = float(compute_cmsv_ip(A, s, restarts=30, seed=seed,
                                           threads=args.threads).rho_upper)
        if args.method in ("sdr", "both"):
            # the certified-gap subtraction keeps a truncated run a valid
            # lower bound, so the sweep caps barrier iterations for speed
            rho_sdr = float(cmsv_lower_sdr(A, s, max_iter=80).rho_lower)
    except RuntimeError as e:
        status = f"error: {e}"
    return rho_ip, rho_sdr, status


def _reproduce_fig1(args, out_dir: str) -> int:
    failures = 0
    rows = []
    B = generate(EnsembleSpec("bernoulli", 40, 60, seed=args.seed)).data
    for mi, m in enumerate(FIG1_M):
        A = normalize_columns(B[:m])
        for si, s in enumerate(FIG1_S):
            rho_ip, rho_sdr, status = _fig_point(
                args, A, s, _child_seed(args.seed, mi, si))
            if status != "ok":
                failures += 1
            rows.append([m, s, rho_ip, rho_sdr, status])
    _write_csv(os.path.join(out_dir, "fig1.csv"),
               _provenance(args, "fig1"),
               ["m", "s", "rho_ip", "rho_sdr", "status"], rows)
    return failures


def _reproduce_fig2(args, out_dir: str) -> int:
    failures = 0
    rows = []
    B = generate(EnsembleSpec("bernoulli", 60, 60, seed=args.seed)).data
    for si, s in enumerate(FIG2_S):
        m_grid = range(int(2 * s), 61, 5)
        for mi, m in enumerate(m_grid):
            A = normalize_columns(B[:m])
            rho_ip, rho_sdr, status = _fig_point(
                args, A, s, _child_seed(args.seed, si, mi))
            if status != "ok":
                failures += 1
            rows.append([s, m, rho_ip, rho_sdr, status])
    _write_csv(os.path.join(out_dir, "fig2.csv"),
               _provenance(args, "fig2"),
               ["s", "m", "rho_ip", "rho_sdr", "status"], rows)
    return failures


_REPRODUCERS = {
    "I": _reproduce_table1,
    "II": _reproduce_table2,
    "III": _reproduce_table3,
    "IV": _reproduce_table4,
    "V": _reproduce_table5,
    "fig1": _reproduce_fig1,
    "fig2": _reproduce_fig2,
}


def _cmd_reproduce(args) -> int:
    if args.table in ("III", "IV") and not args.allow_large:
        raise SizeGuard(
            f"table {args.table} runs full-size verification banks "
            "(tens of minutes or more); pass --allow-large to proceed")
    os.makedirs(args.out_dir, exist_ok=True)
    failures = _REPRODUCERS[args.table](args, args.out_dir)
    if failures:
        print(f"reproduce {args.table}: {failures} row(s) failed, "
              "see status column", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _add_common(p, out=True) -> None:
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: CMSV_THREADS or 1)")
    if out:
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cmsvkit",
        description="Sparse-recovery certificates and the l1-constrained "
                    "minimal singular value.")
    ap.add_argument("--version", action="version",
                    version=f"cmsvkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    g = sub.add_parser("generate", help="write an ensemble matrix to a file")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--normalize", action="store_true",
                   help="scale every column to unit l2 norm")
    g.add_argument("--out", default=None, metavar="PATH",
                   help="matrix file (.csv for comma format); default stdout")
    g.set_defaults(func=_cmd_generate)

    v = sub.add_parser("verify", help="certify a lower bound on the critical "
                       "sparsity of unique l1 recovery")
    v.add_argument("matrix", help="matrix file")
    v.add_argument("--method", choices=("linf", "l2", "exact"),
                   default="linf")
    v.add_argument("--tol", type=float, default=None,
                   help="solver tolerance (method-specific default)")
    v.add_argument("--max-iter", type=int, default=None)
    v.add_argument("--k", type=int, default=None,
                   help="search depth cap for method=exact (default 5)")
    v.add_argument("--allow-large", action="store_true",
                   help="override the size guards")
    _add_common(v)
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("cmsv", help="estimate the l1-constrained minimal "
                       "singular value rho_s")
    c.add_argument("matrix", help="matrix file")
    c.add_argument("--s", type=float, required=True,
                   help="l1-sparsity level, in [1, n]")
    c.add_argument("--method", choices=("ip", "sdr", "both"), default="both")
    c.add_argument("--restarts", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=1e-6)
    c.add_argument("--max-iter", type=int, default=600,
                   help="iteration cap for the semidefinite relaxation")
    c.add_argument("--allow-large", action="store_true",
                   help="override the size guards")
    _add_common(c)
    c.set_defaults(func=_cmd_cmsv)

    r = sub.add_parser("recover", help="solve BP, the Dantzig selector, or "
                       "the LASSO, optionally with an error bound")
    r.add_argument("matrix", help="matrix file")
    r.add_argument("y", help="measurement vector file, one value per line")
    r.add_argument("--algorithm", choices=("bp", "ds", "lasso"),
                   required=True)
    r.add_argument("--eps", type=float, default=0.0,
                   help="l2 noise budget for bp")
    r.add_argument("--lambda-sigma", type=float, default=None,
                   help="penalty level for ds and lasso")
    r.add_argument("--kappa", type=float, default=0.5,
                   help="lasso penalty split parameter in (0, 1)")
    r.add_argument("--k", type=int, default=None,
                   help="assumed true sparsity; attaches the error bound")
    r.add_argument("--rho-method", choices=("ip", "sdr"), default="sdr",
                   help="how to estimate rho for the bound (sdr certifies)")
    r.add_argument("--restarts", type=int, default=50)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tol", type=float, default=1e-7)
    r.add_argument("--allow-large", action="store_true",
                   help="override the size guards")
    _add_common(r)
    r.set_defaults(func=_cmd_recover)

    rp = sub.add_parser("reproduce", help="regenerate a benchmark table or "
                        "figure dataset as CSV")
    rp.add_argument("table", choices=sorted(_REPRODUCERS),
                    help="which artifact to regenerate")
    rp.add_argument("--out-dir", default=".", metavar="DIR")
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--trials", type=int, default=20,
                    help="matrices per grid point (table I)")
    rp.add_argument("--subsets", type=int, default=20,
                    help="random row subsets per grid point (table II)")
    rp.add_argument("--restarts", type=int, default=50)
    rp.add_argument("--method", choices=("ip", "sdr", "both"), default="both",
                    help="which estimators to run for fig1/fig2")
    rp.add_argument("--allow-large", action="store_true",
                    help="allow tables III and IV (long full-size runs)")
    rp.add_argument("--include-gaussian", action="store_true",
                    help="also run the Gaussian rows of table IV (very slow)")
    _add_common(rp, out=False)
    rp.set_defaults(func=_cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeGuard as e:
        print(f"cmsvkit: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as e:
        print(f"cmsvkit: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as e:
        print(f"cmsvkit: solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
