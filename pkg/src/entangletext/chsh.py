"""CHSH statistics over 4x4 co-occurrence submatrices.

A partition splits four row terms into two ordered pairs: an unprimed
measurement X = (X1, X2) and a primed one X' = (X'1, X'2), with outcome
+1 for the first element of a pair and -1 for the second; columns are
partitioned the same way. Each (row pair, column pair) block of counts
yields the empirical expectation

    E = (f11 + f22 - f12 - f21) / (f11 + f22 + f12 + f21),

undefined when the block holds no observations, and the CHSH combination

    S = E(AB) + E(A'B) + E(AB') - E(A'B')

is classical only inside [-2, 2]. Flipping both outcome labels on one
side negates S, so enumeration keeps one representative per flip class:
the unprimed pair in ascending index order, 12 partitions per side, 144
partition pairs per submatrix. A partition pair whose S is undefined is
skipped; it cannot witness a violation.

The full-matrix scan memoizes block expectations per ordered (row pair,
column pair) of the complete matrix (90 x 90 for a 10 x 10 matrix), so
each of the 210 x 210 x 144 statistics costs four table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .cooccurrence import CoocMatrix

__all__ = [
    "Partition",
    "SubMatrix",
    "ChshEvaluation",
    "PairDetail",
    "ProportionReport",
    "expected_value",
    "chsh_statistic",
    "canonical_partitions",
    "enumerate_partitions",
    "max_abs_chsh",
    "chsh_max_abs_batch",
    "entanglement_proportion",
    "submatrix_of",
]

VIOLATION_BOUND = 2.0

# Statistics this close to the classical bound are re-decided in exact
# rational arithmetic: four correctly-rounded block expectations can land a
# float sum on the wrong side of 2 by up to ~5e-16 (e.g. when the exact
# value is 2), and the decision must match exact arithmetic. Float error
# is orders of magnitude below this band, so the band cannot misroute a
# clear case.
_BOUNDARY_BAND = 1e-9

# Canonical per-side index configurations (a1, a2, a3, a4): unprimed pair
# (a1, a2) with a1 < a2, primed pair (a3, a4) in either order. Exactly the
# 4!/2 = 12 orderings that survive the global outcome-flip symmetry.
_CONFIGS = tuple(p for p in permutations(range(4)) if p[0] < p[1])

# Ordered index pairs (i, j), i != j, shared by rows and columns.
_ORDERED_PAIRS_4 = tuple((i, j) for i in range(4) for j in range(4) if i != j)
_PAIR_IDX_4 = {pair: idx for idx, pair in enumerate(_ORDERED_PAIRS_4)}

_P1 = np.array([p[0] for p in _ORDERED_PAIRS_4])
_P2 = np.array([p[1] for p in _ORDERED_PAIRS_4])
# per config: index of the unprimed / primed ordered pair in the pair table
_UNPRIMED = np.array([_PAIR_IDX_4[(c[0], c[1])] for c in _CONFIGS])
_PRIMED = np.array([_PAIR_IDX_4[(c[2], c[3])] for c in _CONFIGS])

N_PARTITIONS_PER_SIDE = len(_CONFIGS)
N_PARTITION_PAIRS = N_PARTITIONS_PER_SIDE**2


@dataclass(frozen=True)
class Partition:
    """Assignment of four indices to two ordered two-outcome measurements."""

    side: str  # "rows" | "cols"
    unprimed: tuple[int, int]  # X = (X1, X2): X1 -> +1, X2 -> -1
    primed: tuple[int, int]  # X' = (X'1, X'2)

    def __post_init__(self):
        if self.side not in ("rows", "cols"):
            raise ValueError(f"side must be 'rows' or 'cols', got {self.side!r}")
        object.__setattr__(self, "unprimed", tuple(self.unprimed))
        object.__setattr__(self, "primed", tuple(self.primed))
        if sorted(self.unprimed + self.primed) != [0, 1, 2, 3]:
            raise ValueError(
                f"partition must use indices 0..3 exactly once: {self.unprimed} {self.primed}"
            )

    @property
    def is_canonical(self) -> bool:
        """True for the flip-class representative kept by enumeration."""
        return self.unprimed[0] < self.unprimed[1]

    def flipped(self) -> "Partition":
        """Swap both outcome labels; the CHSH statistic negates."""
        return Partition(
            side=self.side,
            unprimed=(self.unprimed[1], self.unprimed[0]),
            primed=(self.primed[1], self.primed[0]),
        )


@dataclass(frozen=True)
class SubMatrix:
    """A 4x4 block of co-occurrence counts with its term labels."""

    rows: tuple[str, str, str, str]
    cols: tuple[str, str, str, str]
    counts: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        counts = np.ascontiguousarray(np.asarray(self.counts, dtype=np.int64))
        if len(self.rows) != 4 or len(self.cols) != 4 or counts.shape != (4, 4):
            raise ValueError("submatrix must be 4x4 with four labels per side")
        if counts.min() < 0:
            raise ValueError("co-occurrence counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True)
class ChshEvaluation:
    """Outcome of the 144-partition scan of one submatrix."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    max_abs_s: float
    argmax: tuple[Partition, Partition] | None  # None when every pair is skipped
    violated: bool
    skipped_partitions: int


@dataclass(frozen=True)
class PairDetail:
    """One subset pair's best partition, kept for reporting."""

    row_terms: tuple[str, ...]
    col_terms: tuple[str, ...]
    s: float  # signed statistic at the argmax partition
    row_partition: Partition
    col_partition: Partition


@dataclass(frozen=True)
class ProportionReport:
    """Fraction of 4-term subset pairs admitting a violating partition."""

    topic_id: str
    window_size: int
    method: str
    p: float
    n_pairs_total: int
    n_pairs_entangled: int
    details: tuple[PairDetail, ...] | None = None


def expected_value(f11: int, f12: int, f21: int, f22: int) -> float | None:
    """Empirical expectation of one 2x2 block; None when the block is empty."""
    if min(f11, f12, f21, f22) < 0:
        raise ValueError("block counts must be non-negative")
    total = f11 + f12 + f21 + f22
    if total == 0:
        return None
    return (f11 + f22 - f12 - f21) / total


@lru_cache(maxsize=None)
def canonical_partitions(side: str) -> tuple[Partition, ...]:
    """The 12 canonical partitions of one side, in deterministic order."""
    return tuple(
        Partition(side=side, unprimed=(c[0], c[1]), primed=(c[2], c[3]))
        for c in _CONFIGS
    )


def enumerate_partitions() -> tuple[tuple[Partition, Partition], ...]:
    """All 144 (row partition, column partition) pairs, row-major."""
    rows = canonical_partitions("rows")
    cols = canonical_partitions("cols")
    return tuple((r, c) for r in rows for c in cols)


def chsh_statistic(
    matrix: SubMatrix, row_partition: Partition, col_partition: Partition
) -> float | None:
    """S for one partition pair; None if any block expectation is undefined."""
    f = matrix.counts

    def block(rp: tuple[int, int], cp: tuple[int, int]) -> float | None:
        r1, r2 = rp
        c1, c2 = cp
        return expected_value(f[r1, c1], f[r1, c2], f[r2, c1], f[r2, c2])

    e_ab = block(row_partition.unprimed, col_partition.unprimed)
    e_apb = block(row_partition.primed, col_partition.unprimed)
    e_abp = block(row_partition.unprimed, col_partition.primed)
    e_apbp = block(row_partition.primed, col_partition.primed)
    if e_ab is None or e_apb is None or e_abp is None or e_apbp is None:
        return None
    return e_ab + e_apb + e_abp - e_apbp


def _expectation_table(matrices: np.ndarray) -> np.ndarray:
    """Block expectations for every ordered (row pair, col pair).

    matrices: (n, 4, 4) floats. Returns (n, 12, 12) with NaN for empty blocks.
    """
    f11 = matrices[:, _P1[:, None], _P1[None, :]]
    f22 = matrices[:, _P2[:, None], _P2[None, :]]
    f12 = matrices[:, _P1[:, None], _P2[None, :]]
    f21 = matrices[:, _P2[:, None], _P1[None, :]]
    numer = f11 + f22 - f12 - f21
    denom = f11 + f22 + f12 + f21
    with np.errstate(invalid="ignore", divide="ignore"):
        e = numer / denom
    e[denom == 0.0] = np.nan
    return e


def _statistics_from_expectations(e: np.ndarray) -> np.ndarray:
    """S over the 144 canonical partition pairs: (n, 12, 12) -> (n, 144)."""
    s = (
        e[:, _UNPRIMED[:, None], _UNPRIMED[None, :]]
        + e[:, _PRIMED[:, None], _UNPRIMED[None, :]]
        + e[:, _UNPRIMED[:, None], _PRIMED[None, :]]
        - e[:, _PRIMED[:, None], _PRIMED[None, :]]
    )
    return s.reshape(e.shape[0], N_PARTITION_PAIRS)


def _exact_max_abs(counts) -> Fraction:
    """Exact max |S| over the canonical partition pairs of one 4x4 block.

    Skipped (empty-block) partitions are ignored; 0 when all are skipped.
    Used only inside the boundary band, so Fraction cost stays negligible.
    """
    table: list[Fraction | None] = []
    for r1, r2 in _ORDERED_PAIRS_4:
        for c1, c2 in _ORDERED_PAIRS_4:
            f11 = int(counts[r1][c1])
            f12 = int(counts[r1][c2])
            f21 = int(counts[r2][c1])
            f22 = int(counts[r2][c2])
            total = f11 + f12 + f21 + f22
            table.append(
                None if total == 0 else Fraction(f11 + f22 - f12 - f21, total)
            )
    n = len(_ORDERED_PAIRS_4)
    best = Fraction(0)
    for u, v in zip(_UNPRIMED, _PRIMED):
        for w, x in zip(_UNPRIMED, _PRIMED):
            e_ab = table[u * n + w]
            e_apb = table[v * n + w]
            e_abp = table[u * n + x]
            e_apbp = table[v * n + x]
            if e_ab is None or e_apb is None or e_abp is None or e_apbp is None:
                continue
            s = e_ab + e_apb + e_abp - e_apbp
            if -s > best:
                best = -s
            elif s > best:
                best = s
    return best


def _exactify_boundary(max_abs: np.ndarray, fetch_counts) -> np.ndarray:
    """Replace near-bound maxima with the correctly-rounded exact value.

    ``max_abs`` may have any shape; ``fetch_counts(flat_index)`` must return
    the 4x4 integer block for that entry. The returned array decides
    ``> VIOLATION_BOUND`` exactly as rational arithmetic would.
    """
    flat = max_abs.reshape(-1)
    band = np.flatnonzero(
        (flat > VIOLATION_BOUND - _BOUNDARY_BAND)
        & (flat <= VIOLATION_BOUND + _BOUNDARY_BAND)
    )
    for idx in band.tolist():
        flat[idx] = float(_exact_max_abs(fetch_counts(idx)))
    return max_abs


def _reduce_statistics(s: np.ndarray):
    """Per matrix: (max |S|, signed S at argmax, argmax index, skipped count).

    Skipped (NaN) partitions are ignored; when every partition is skipped
    the maximum is 0 and the argmax index is 0 by convention.
    """
    abs_s = np.abs(s)
    nan_mask = np.isnan(abs_s)
    n_skipped = nan_mask.sum(axis=-1)
    filled = np.where(nan_mask, -1.0, abs_s)
    argmax = filled.argmax(axis=-1)
    take = np.take_along_axis(filled, argmax[..., None], axis=-1)[..., 0]
    max_abs = np.where(take < 0.0, 0.0, take)
    signed = np.take_along_axis(np.where(nan_mask, 0.0, s), argmax[..., None], axis=-1)[..., 0]
    return max_abs, signed, argmax, n_skipped


def chsh_max_abs_batch(matrices) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Scan a batch of 4x4 count matrices over all 144 partition pairs.

    Returns (max_abs, argmax, n_skipped) arrays of length n; argmax indexes
    enumerate_partitions(). Maxima inside the boundary band around 2 are
    exact-rational values correctly rounded, so ``max_abs > 2`` is the
    exact violation decision.
    """
    m = np.asarray(matrices, dtype=np.float64)
    if m.ndim == 2:
        m = m[None]
    if m.ndim != 3 or m.shape[1:] != (4, 4):
        raise ValueError(f"expected (n, 4, 4) matrices, got shape {m.shape}")
    if m.size and m.min() < 0:
        raise ValueError("co-occurrence counts must be non-negative")
    s = _statistics_from_expectations(_expectation_table(m))
    max_abs, _, argmax, n_skipped = _reduce_statistics(s)
    max_abs = _exactify_boundary(max_abs, lambda idx: m[idx])
    return max_abs, argmax, n_skipped


def max_abs_chsh(matrix: SubMatrix) -> ChshEvaluation:
    """Exhaustive 144-partition evaluation of one submatrix."""
    max_abs, argmax, n_skipped = chsh_max_abs_batch(matrix.counts[None])
    skipped = int(n_skipped[0])
    if skipped == N_PARTITION_PAIRS:
        best = None
        value = 0.0
    else:
        idx = int(argmax[0])
        best = (
            canonical_partitions("rows")[idx // N_PARTITIONS_PER_SIDE],
            canonical_partitions("cols")[idx % N_PARTITIONS_PER_SIDE],
        )
        value = float(max_abs[0])
    return ChshEvaluation(
        rows=matrix.rows,
        cols=matrix.cols,
        max_abs_s=value,
        argmax=best,
        violated=value > VIOLATION_BOUND,
        skipped_partitions=skipped,
    )


def submatrix_of(
    matrix: CoocMatrix, row_indices: Sequence[int], col_indices: Sequence[int]
) -> SubMatrix:
    """Extract the labeled 4x4 block at the given concept-term indices."""
    rows = tuple(matrix.concept_pair.c1[i] for i in row_indices)
    cols = tuple(matrix.concept_pair.c2[j] for j in col_indices)
    block = matrix.counts[np.ix_(list(row_indices), list(col_indices))]
    return SubMatrix(rows=rows, cols=cols, counts=block)


def _full_expectation_table(counts: np.ndarray) -> np.ndarray:
    """Memoized expectations over every ordered pair of a full matrix.

    table[p, q] is the expectation of the block with ordered row pair p and
    ordered column pair q (NaN when empty); 90 x 90 for a 10 x 10 matrix.
    """
    f = counts.astype(np.float64)
    n_rows, n_cols = f.shape
    row_pairs = np.array([(i, j) for i in range(n_rows) for j in range(n_rows) if i != j])
    col_pairs = np.array([(i, j) for i in range(n_cols) for j in range(n_cols) if i != j])
    r1, r2 = row_pairs[:, 0], row_pairs[:, 1]
    c1, c2 = col_pairs[:, 0], col_pairs[:, 1]
    f11 = f[np.ix_(r1, c1)]
    f22 = f[np.ix_(r2, c2)]
    f12 = f[np.ix_(r1, c2)]
    f21 = f[np.ix_(r2, c1)]
    numer = f11 + f22 - f12 - f21
    denom = f11 + f22 + f12 + f21
    with np.errstate(invalid="ignore", divide="ignore"):
        table = numer / denom
    table[denom == 0.0] = np.nan
    return table


def _subset_config_pairs(n: int, subsets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map (subset, config) to ordered-pair indices of the full-matrix table."""
    pair_idx = np.full((n, n), -1, dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                pair_idx[i, j] = k
                k += 1
    configs = np.array(_CONFIGS)
    unprimed = pair_idx[subsets[:, configs[:, 0]], subsets[:, configs[:, 1]]]
    primed = pair_idx[subsets[:, configs[:, 2]], subsets[:, configs[:, 3]]]
    return unprimed, primed


def entanglement_proportion(
    matrix: CoocMatrix,
    top_details: int = 0,
    _chunk_rows: int = 32,
) -> ProportionReport:
    """Scan every pair of 4-term subsets of the concept terms.

    A subset pair is entangled when some partition pair yields |S| > 2.
    With 10-term concepts this is 210 x 210 = 44,100 subset pairs, each
    scanned over 144 partitions via the memoized expectation table. When
    ``top_details`` > 0, the strongest violating pairs are attached to the
    report (ordered by |S| descending, then subset indices).
    """
    n_rows, n_cols = matrix.counts.shape
    if n_rows < 4 or n_cols < 4:
        raise ValueError("the co-occurrence matrix needs at least 4 terms per side")

    table = _full_expectation_table(matrix.counts)
    row_subsets = np.array(list(combinations(range(n_rows), 4)))
    col_subsets = np.array(list(combinations(range(n_cols), 4)))
    ru, rv = _subset_config_pairs(n_rows, row_subsets)  # (n_row_subsets, 12)
    cu, cv = _subset_config_pairs(n_cols, col_subsets)  # (n_col_subsets, 12)

    n_rs, n_cs = len(row_subsets), len(col_subsets)
    cw = cu.reshape(-1)
    cx = cv.reshape(-1)

    max_abs = np.empty((n_rs, n_cs))
    signed = np.empty((n_rs, n_cs))
    argmax = np.empty((n_rs, n_cs), dtype=np.int64)
    skipped = np.empty((n_rs, n_cs), dtype=np.int64)

    for start in range(0, n_rs, _chunk_rows):
        stop = min(start + _chunk_rows, n_rs)
        ru_flat = ru[start:stop].reshape(-1)
        rv_flat = rv[start:stop].reshape(-1)
        s = (
            table[np.ix_(ru_flat, cw)]
            + table[np.ix_(rv_flat, cw)]
            + table[np.ix_(ru_flat, cx)]
            - table[np.ix_(rv_flat, cx)]
        )
        s = (
            s.reshape(stop - start, N_PARTITIONS_PER_SIDE, n_cs, N_PARTITIONS_PER_SIDE)
            .transpose(0, 2, 1, 3)
            .reshape(stop - start, n_cs, N_PARTITION_PAIRS)
        )
        chunk_max, chunk_signed, chunk_arg, chunk_skip = _reduce_statistics(s)
        max_abs[start:stop] = chunk_max
        signed[start:stop] = chunk_signed
        argmax[start:stop] = chunk_arg
        skipped[start:stop] = chunk_skip

    counts = matrix.counts

    def fetch(flat_idx):
        rs, cs = divmod(flat_idx, n_cs)
        return counts[np.ix_(row_subsets[rs], col_subsets[cs])]

    max_abs = _exactify_boundary(max_abs, fetch)
    violated = max_abs > VIOLATION_BOUND
    n_entangled = int(violated.sum())
    n_total = n_rs * n_cs

    details: tuple[PairDetail, ...] | None = None
    if top_details > 0:
        flat_idx = np.flatnonzero(violated.ravel())
        order = np.lexsort((flat_idx, -max_abs.ravel()[flat_idx]))
        chosen = flat_idx[order][:top_details]
        row_parts = canonical_partitions("rows")
        col_parts = canonical_partitions("cols")
        pair = matrix.concept_pair
        built = []
        for idx in chosen.tolist():
            rs_idx, cs_idx = divmod(idx, n_cs)
            cfg = int(argmax[rs_idx, cs_idx])
            built.append(
                PairDetail(
                    row_terms=tuple(pair.c1[i] for i in row_subsets[rs_idx]),
                    col_terms=tuple(pair.c2[j] for j in col_subsets[cs_idx]),
                    s=float(signed[rs_idx, cs_idx]),
                    row_partition=row_parts[cfg // N_PARTITIONS_PER_SIDE],
                    col_partition=col_parts[cfg % N_PARTITIONS_PER_SIDE],
                )
            )
        details = tuple(built)

    return ProportionReport(
        topic_id=matrix.concept_pair.topic_id,
        window_size=matrix.window_size,
        method=matrix.concept_pair.method,
        p=n_entangled / n_total,
        n_pairs_total=n_total,
        n_pairs_entangled=n_entangled,
        details=details,
    )
