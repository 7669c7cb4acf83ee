"""Built-in verification suite runnable from the CLI.

Four checks with embedded, independently coded oracles: exact-rational
block expectations, the alternating large/small matrix whose best
partition reaches 4 * 198/202, equivalence of the canonical 144-partition
scan with the full 24 x 24 row/column ordering scan, and sampling-pmf
normalization. The partition table used by the canonical side is
injectable so a corrupted table is detectable (negative control in the
test suite).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .chsh import SubMatrix, canonical_partitions, chsh_statistic, enumerate_partitions
from .simulation import DistributionSpec, distribution_pmf

__all__ = ["CheckResult", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _expectation_fraction(f11, f12, f21, f22):
    total = f11 + f12 + f21 + f22
    if total == 0:
        return None
    return Fraction(f11 + f22 - f12 - f21, total)


def _check_expectations(rng) -> CheckResult:
    from .chsh import expected_value

    quads = rng.integers(0, 200, size=(50, 4)).tolist()
    worst = 0.0
    for f11, f12, f21, f22 in quads:
        got = expected_value(f11, f12, f21, f22)
        want = _expectation_fraction(f11, f12, f21, f22)
        if (got is None) != (want is None):
            return CheckResult("block expectations", False, "definedness mismatch")
        if got is not None:
            worst = max(worst, abs(got - float(want)))
    if expected_value(0, 0, 0, 0) is not None:
        return CheckResult("block expectations", False, "(0,0,0,0) must be undefined")
    passed = worst <= 1e-12
    return CheckResult("block expectations", passed, f"max |error| = {worst:.2e}")


def _large_small_matrix(large=100, small=1):
    return np.array(
        [
            [large, small, large, small],
            [small, large, small, large],
            [large, small, small, large],
            [small, large, large, small],
        ]
    )


def _check_large_small(partition_pairs) -> CheckResult:
    target = float(4 * Fraction(198, 202))
    matrix = SubMatrix(
        rows=("r1", "r2", "r3", "r4"), cols=("c1", "c2", "c3", "c4"),
        counts=_large_small_matrix(),
    )
    best = 0.0
    for row_p, col_p in partition_pairs:
        s = chsh_statistic(matrix, row_p, col_p)
        if s is not None:
            best = max(best, abs(s))
    swapped = SubMatrix(
        rows=matrix.rows, cols=matrix.cols,
        counts=matrix.counts[:, [1, 0, 3, 2]],
    )
    natural = (canonical_partitions("rows")[0], canonical_partitions("cols")[0])
    s_swapped = chsh_statistic(swapped, *natural)
    ok = (
        abs(best - target) <= 1e-9
        and best > 2.0
        and s_swapped is not None
        and s_swapped < 0
        and abs(abs(s_swapped) - target) <= 1e-9
    )
    return CheckResult(
        "large/small pattern",
        ok,
        f"max |S| = {best:.10f} (target {target:.10f}), swapped S = {s_swapped:.6f}",
    )


def _check_ordering_equivalence(partition_pairs, rng, n_matrices) -> CheckResult:
    orderings = list(permutations(range(4)))
    for k in range(n_matrices):
        counts = rng.integers(0, 21, size=(4, 4))
        matrix = SubMatrix(
            rows=("r1", "r2", "r3", "r4"), cols=("c1", "c2", "c3", "c4"), counts=counts
        )
        canonical_abs = []
        canonical_skipped = 0
        for row_p, col_p in partition_pairs:
            s = chsh_statistic(matrix, row_p, col_p)
            if s is None:
                canonical_skipped += 1
            else:
                canonical_abs.append(abs(s))

        full_abs = []
        full_skipped = 0
        f = counts
        for rp in orderings:
            for cp in orderings:
                blocks = []
                for rr in ((rp[0], rp[1]), (rp[2], rp[3])):
                    for cc in ((cp[0], cp[1]), (cp[2], cp[3])):
                        f11 = f[rr[0], cc[0]]
                        f12 = f[rr[0], cc[1]]
                        f21 = f[rr[1], cc[0]]
                        f22 = f[rr[1], cc[1]]
                        total = f11 + f12 + f21 + f22
                        blocks.append(
                            None if total == 0 else (f11 + f22 - f12 - f21) / total
                        )
                e_ab, e_abp, e_apb, e_apbp = blocks[0], blocks[1], blocks[2], blocks[3]
                if None in blocks:
                    full_skipped += 1
                else:
                    full_abs.append(abs(e_ab + e_apb + e_abp - e_apbp))

        if full_skipped != 4 * canonical_skipped:
            return CheckResult(
                "ordering equivalence", False, f"skip counts diverge on matrix {k}"
            )
        if (any(a > 2 for a in canonical_abs)) != (any(a > 2 for a in full_abs)):
            return CheckResult(
                "ordering equivalence", False, f"violation decision diverges on matrix {k}"
            )
        want = np.repeat(np.sort(canonical_abs), 4)
        got = np.sort(full_abs)
        if want.shape != got.shape or not np.allclose(want, got, atol=1e-12, rtol=0.0):
            return CheckResult(
                "ordering equivalence", False, f"|S| multisets diverge on matrix {k}"
            )
    return CheckResult(
        "ordering equivalence", True, f"{n_matrices} matrices, 576 vs 144 orderings"
    )


def _check_pmf_normalization() -> CheckResult:
    specs = [
        DistributionSpec.zipf(0.7, 100),
        DistributionSpec.zipf(2.0, 500),
        DistributionSpec.homogeneous(64),
        DistributionSpec.poisson(10.0, 100),
        DistributionSpec.poisson(1.0, 5),
    ]
    worst = 0.0
    for spec in specs:
        pmf = distribution_pmf(spec)
        if (pmf < 0).any():
            return CheckResult("pmf normalization", False, f"negative mass for {spec.kind}")
        worst = max(worst, abs(float(pmf.sum()) - 1.0))
    b1 = distribution_pmf(DistributionSpec.homogeneous(1))
    if b1.shape != (1,) or b1[0] != 1.0:
        return CheckResult("pmf normalization", False, "B=1 must be a point mass")
    return CheckResult("pmf normalization", worst <= 1e-12, f"max |sum - 1| = {worst:.2e}")


def run_selftest(
    partition_pairs=None, n_matrices: int = 50, seed: int = 7, stream=None
) -> list[CheckResult]:
    """Run every embedded check and print one line per check.

    ``partition_pairs`` overrides the canonical 144-pair table (test hook:
    a corrupted table must fail the ordering-equivalence check).
    """
    stream = stream if stream is not None else sys.stdout
    if partition_pairs is None:
        partition_pairs = enumerate_partitions()
    rng = np.random.default_rng(seed)
    results = [
        _check_expectations(rng),
        _check_large_small(partition_pairs),
        _check_ordering_equivalence(partition_pairs, rng, n_matrices),
        _check_pmf_normalization(),
    ]
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}", file=stream)
    return results
