"""Monte-Carlo estimates of how often random count matrices violate CHSH.

Entries of a 4x4 matrix are drawn i.i.d. from a distribution over
{1, ..., B} (bounded Zipfian, homogeneous, or truncated Poisson) via
inverse-CDF sampling, and the fraction of matrices admitting a violating
partition is estimated. All randomness flows through numpy Generators
seeded explicitly, so every estimate is reproducible bit for bit.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import stats

from .chsh import SubMatrix, VIOLATION_BOUND, chsh_max_abs_batch

__all__ = [
    "DistributionSpec",
    "ViolationEstimate",
    "CurveSet",
    "distribution_pmf",
    "sample_submatrix",
    "estimate_violation_probability",
    "parameter_sweep",
    "curves_to_csv",
]

_SAMPLE_CHUNK = 8192


@dataclass(frozen=True)
class DistributionSpec:
    """A sampling model for co-occurrence values on {1, ..., B}."""

    kind: str  # "zipf" | "homogeneous" | "poisson"
    support_bound: int  # B
    exponent: float | None = None  # zipf decay exponent
    poisson_mean: float | None = None  # mean of the untruncated Poisson

    def __post_init__(self):
        if self.kind not in ("zipf", "homogeneous", "poisson"):
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.support_bound < 1:
            raise ValueError(f"support bound must be >= 1, got {self.support_bound}")
        if self.kind == "zipf":
            if self.exponent is None or self.exponent < 0:
                raise ValueError("zipf requires a non-negative exponent")
            if self.exponent == 0:
                warnings.warn(
                    "zipf exponent 0 degenerates to the homogeneous distribution",
                    stacklevel=2,
                )
        if self.kind == "poisson" and (self.poisson_mean is None or self.poisson_mean <= 0):
            raise ValueError("poisson requires a positive mean")

    @classmethod
    def zipf(cls, exponent: float, support_bound: int) -> "DistributionSpec":
        return cls(kind="zipf", support_bound=support_bound, exponent=exponent)

    @classmethod
    def homogeneous(cls, support_bound: int) -> "DistributionSpec":
        return cls(kind="homogeneous", support_bound=support_bound)

    @classmethod
    def poisson(cls, mean: float, support_bound: int) -> "DistributionSpec":
        return cls(kind="poisson", support_bound=support_bound, poisson_mean=mean)

    @property
    def parameter(self) -> float | None:
        """The swept parameter: exponent for zipf, mean for poisson."""
        if self.kind == "zipf":
            return self.exponent
        if self.kind == "poisson":
            return self.poisson_mean
        return None


@dataclass(frozen=True)
class ViolationEstimate:
    spec: DistributionSpec
    n_samples: int
    p_hat: float
    std_err: float
    seed: int


@dataclass(frozen=True)
class CurveSet:
    """Estimates over a (parameter, B) grid, one estimate per point."""

    kind: str
    grid: tuple[tuple[float | None, int], ...]
    estimates: tuple[ViolationEstimate, ...]

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(tuple(p) for p in self.grid))
        object.__setattr__(self, "estimates", tuple(self.estimates))
        if len(self.grid) != len(self.estimates):
            raise ValueError("one estimate is required per grid point")


def distribution_pmf(spec: DistributionSpec) -> np.ndarray:
    """Probability of each value 1..B under ``spec``, normalized to 1."""
    b = spec.support_bound
    values = np.arange(1, b + 1, dtype=np.float64)
    if spec.kind == "zipf":
        weights = values ** (-spec.exponent)
    elif spec.kind == "homogeneous":
        weights = np.ones(b)
    else:
        # log-space keeps far-off-center truncations from underflowing to 0/0
        log_w = stats.poisson.logpmf(values, spec.poisson_mean)
        weights = np.exp(log_w - log_w.max())
    return weights / weights.sum()


def _inverse_cdf_draw(cdf: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    values = np.searchsorted(cdf, uniforms, side="right") + 1
    return np.minimum(values, len(cdf)).astype(np.int64)


def sample_submatrix(spec: DistributionSpec, rng: np.random.Generator) -> SubMatrix:
    """Draw one 4x4 matrix with i.i.d. entries via inverse-CDF sampling."""
    cdf = np.cumsum(distribution_pmf(spec))
    counts = _inverse_cdf_draw(cdf, rng.random((4, 4)))
    return SubMatrix(
        rows=("r1", "r2", "r3", "r4"),
        cols=("c1", "c2", "c3", "c4"),
        counts=counts,
    )


def estimate_violation_probability(
    spec: DistributionSpec, n_samples: int, seed: int
) -> ViolationEstimate:
    """Fraction of sampled matrices admitting a CHSH-violating partition.

    Fully determined by (spec, n_samples, seed); sampling is chunked but the
    uniform stream, and hence the estimate, is independent of chunk size.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(distribution_pmf(spec))
    n_violations = 0
    remaining = n_samples
    while remaining > 0:
        take = min(remaining, _SAMPLE_CHUNK)
        draws = _inverse_cdf_draw(cdf, rng.random((take, 4, 4)))
        max_abs, _, _ = chsh_max_abs_batch(draws)
        n_violations += int((max_abs > VIOLATION_BOUND).sum())
        remaining -= take
    p_hat = n_violations / n_samples
    return ViolationEstimate(
        spec=spec,
        n_samples=n_samples,
        p_hat=p_hat,
        std_err=math.sqrt(p_hat * (1.0 - p_hat) / n_samples),
        seed=seed,
    )


def _point_seed(root_seed: int, index: int) -> int:
    """Deterministic per-grid-point seed derived from (root seed, index)."""
    return int(np.random.SeedSequence(entropy=(root_seed, index)).generate_state(1)[0])


def _spec_for(kind: str, parameter: float | None, bound: int) -> DistributionSpec:
    if kind == "zipf":
        return DistributionSpec.zipf(parameter, bound)
    if kind == "poisson":
        return DistributionSpec.poisson(parameter, bound)
    return DistributionSpec.homogeneous(bound)


def parameter_sweep(
    kind: str,
    parameters: Sequence[float] | None,
    bounds: Sequence[int],
    n_samples: int = 10_000,
    seed: int = 42,
) -> CurveSet:
    """One estimate per (parameter, B) grid point.

    Points are grouped by B, parameters in the given order. ``parameters``
    is ignored for the homogeneous kind and defaults to B / 10 for the
    truncated Poisson when omitted. Per-point seeds derive from
    (seed, point index), so the sweep is reproducible as a whole.
    """
    bounds = list(bounds)
    if not bounds:
        raise ValueError("at least one support bound is required")
    if kind == "homogeneous":
        grid = [(None, b) for b in bounds]
    elif parameters is None and kind == "poisson":
        grid = [(b / 10.0, b) for b in bounds]
    else:
        parameters = list(parameters or [])
        if not parameters:
            raise ValueError(f"a parameter grid is required for kind {kind!r}")
        grid = [(p, b) for b in bounds for p in parameters]

    estimates = []
    for index, (parameter, bound) in enumerate(grid):
        spec = _spec_for(kind, parameter, bound)
        estimates.append(
            estimate_violation_probability(spec, n_samples, _point_seed(seed, index))
        )
    return CurveSet(kind=kind, grid=tuple(grid), estimates=tuple(estimates))


def curves_to_csv(curves: CurveSet, path: str | Path) -> None:
    """Write one row per grid point; empty cells for inapplicable parameters."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["kind", "lambda", "mu", "B", "n_samples", "p_hat", "std_err", "seed"]
        )
        for est in curves.estimates:
            spec = est.spec
            writer.writerow(
                [
                    spec.kind,
                    repr(spec.exponent) if spec.kind == "zipf" else "",
                    repr(spec.poisson_mean) if spec.kind == "poisson" else "",
                    spec.support_bound,
                    est.n_samples,
                    repr(est.p_hat),
                    repr(est.std_err),
                    est.seed,
                ]
            )
