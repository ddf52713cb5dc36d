"""Sensing-matrix ensembles and concentration experiments.

Generators for the standard random ensembles (Gaussian, symmetric Bernoulli)
and deterministic partial Hadamard matrices, all reproducible bit-for-bit
from an integer seed through the package's counter-based RNG streams.

concentration_study measures how fast rho_s(A / sqrt(m)) concentrates around
1 as the number of rows m grows: for isotropic subgaussian ensembles the
expected deviation E|1 - rho_s| decays once m exceeds a constant multiple of
s log(n/s), so the mean deviation should trend downward along an m grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import parallel_map, rng_stream
from .cmsv import compute_cmsv_ip
from .core import SensingMatrix, normalize_columns

__all__ = [
    "EnsembleSpec",
    "ConcentrationRow",
    "ConcentrationTable",
    "sylvester_hadamard",
    "generate",
    "concentration_study",
]

KINDS = ("gaussian", "bernoulli", "hadamard-first-rows", "hadamard-random-rows")


@dataclass(frozen=True)
class EnsembleSpec:
    """Recipe for one matrix draw; equal specs generate equal matrices."""

    kind: str
    m: int
    n: int
    seed: int = 0
    normalize: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.kind.startswith("hadamard"):
            if self.n & (self.n - 1) != 0:
                raise ValueError("hadamard kinds require n to be a power of 2")
            if self.m > self.n:
                raise ValueError("hadamard kinds require m <= n")


def sylvester_hadamard(n: int) -> np.ndarray:
    """The n x n Sylvester Hadamard matrix as an integer array.

    H_1 = [1] and H_{2k} = [[H_k, H_k], [H_k, -H_k]]; rows are mutually
    orthogonal with H H' = n I exactly. n must be a power of 2.
    """
    if n < 1 or n & (n - 1) != 0:
        raise ValueError("n must be a power of 2")
    H = np.ones((1, 1), dtype=np.int64)
    while H.shape[0] < n:
        H = np.block([[H, H], [H, -H]])
    return H


def generate(spec: EnsembleSpec) -> SensingMatrix:
    """Draw the matrix described by spec.

    gaussian has i.i.d. standard normal entries, bernoulli i.i.d. entries
    uniform on {+1, -1}; the hadamard kinds take m rows of the n x n
    Sylvester matrix, either the first m or a seeded sample without
    replacement. normalize rescales every column to unit l2 norm.
    """
    rng = rng_stream(spec.seed)
    if spec.kind == "gaussian":
        data = rng.normal(size=(spec.m, spec.n))
    elif spec.kind == "bernoulli":
        data = 2.0 * rng.integers(0, 2, size=(spec.m, spec.n)) - 1.0
    else:
        H = sylvester_hadamard(spec.n)
        if spec.kind == "hadamard-first-rows":
            data = H[: spec.m].astype(float)
        else:
            rows = rng.choice(spec.n, size=spec.m, replace=False)
            data = H[rows].astype(float)
    if spec.normalize:
        return normalize_columns(data)
    return SensingMatrix(data)


@dataclass(frozen=True)
class ConcentrationRow:
    """Deviation statistics of rho_s(A / sqrt(m)) at one row count.

    mean_dev averages |1 - rho_s| over the successful trials, se_dev is the
    standard error of that mean, and tail_freq is the fraction of successful
    trials falling outside the empirical band [1 - mean_dev, 1 + mean_dev].
    """

    m: int
    mean_dev: float
    se_dev: float
    tail_freq: float
    trials_ok: int
    failures: int


@dataclass(frozen=True)
class ConcentrationTable:
    kind: str
    n: int
    s: float
    seed: int
    restarts: int
    rows: tuple

    def monotone_trend_ok(self) -> bool:
        """True when mean deviation is nonincreasing in m up to twice the
        combined standard error of each consecutive pair."""
        usable = [r for r in self.rows if r.trials_ok > 0]
        for a, b in zip(usable, usable[1:]):
            slack = 2.0 * math.hypot(a.se_dev, b.se_dev)
            if b.mean_dev > a.mean_dev + slack:
                return False
        return True


def _trial_seed(seed: int, mi: int, t: int) -> int:
    # a child seed per (grid position, trial); spawn keys keep the streams
    # independent of grid ordering and trial count
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(mi), int(t)))
    return int(ss.generate_state(1, np.uint64)[0])


def concentration_study(kind: str, n: int, s: float, m_grid, trials: int,
                        seed: int = 0, restarts: int = 10,
                        threads: int | None = None) -> ConcentrationTable:
    """Estimate the concentration of rho_s(A / sqrt(m)) over an m grid.

    For each m, `trials` fresh matrices are drawn and rho_s is estimated by
    the multistart interior-point solver with `restarts` starts. Solver
    failures (no restart converged) are counted per row and excluded from
    the statistics rather than aborting the study. Output is a pure function
    of the arguments; trials may run in parallel.
    """
    m_list = [int(m) for m in m_grid]
    if not m_list:
        raise ValueError("m_grid must be nonempty")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(mi, m, t) for mi, m in enumerate(m_list) for t in range(trials)]

    def one(job):
        mi, m, t = job
        child = _trial_seed(seed, mi, t)
        spec = EnsembleSpec(kind=kind, m=m, n=n, seed=child)
        A = generate(spec).data / math.sqrt(m)
        try:
            est = compute_cmsv_ip(A, s, restarts=restarts, seed=child)
        except RuntimeError:
            return None
        return est.rho_upper

    results = parallel_map(one, jobs, threads=threads)
    rows = []
    for mi, m in enumerate(m_list):
        vals = [r for (ji, _, _), r in zip(jobs, results) if ji == mi and r is not None]
        failures = trials - len(vals)
        if not vals:
            rows.append(ConcentrationRow(m=m, mean_dev=math.nan, se_dev=math.nan,
                                         tail_freq=math.nan, trials_ok=0,
                                         failures=failures))
            continue
        devs = np.abs(1.0 - np.asarray(vals))
        mean_dev = float(np.mean(devs))
        se = float(np.std(devs, ddof=1) / math.sqrt(len(devs))) if len(devs) > 1 else 0.0
        tail = float(np.mean(devs > mean_dev)) if len(devs) else math.nan
        rows.append(ConcentrationRow(m=m, mean_dev=mean_dev, se_dev=se,
                                     tail_freq=tail, trials_ok=len(vals),
                                     failures=failures))
    return ConcentrationTable(kind=kind, n=int(n), s=float(s), seed=int(seed),
                              restarts=int(restarts), rows=tuple(rows))
