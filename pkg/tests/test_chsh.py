"""CHSH statistics: expectations, partitions, scans, and their invariants."""

from dataclasses import replace
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest

from entangletext import (
    ConceptPair,
    CoocMatrix,
    Partition,
    SubMatrix,
    canonical_partitions,
    chsh_max_abs_batch,
    chsh_statistic,
    count_cooccurrences,
    entanglement_proportion,
    enumerate_partitions,
    expected_value,
    max_abs_chsh,
    submatrix_of,
)

from oracles import (
    chsh_all_orderings,
    expectation_fraction,
    max_abs_all_orderings,
    violates_all_orderings,
)

LABELS4 = ("w", "x", "y", "z")


def _sub(counts):
    return SubMatrix(rows=LABELS4, cols=LABELS4, counts=np.asarray(counts))


def large_small_matrix(large=100, small=1):
    return np.array(
        [
            [large, small, large, small],
            [small, large, small, large],
            [large, small, small, large],
            [small, large, large, small],
        ]
    )


class TestExpectedValue:
    def test_direct_arithmetic(self):
        assert expected_value(100, 1, 1, 100) == pytest.approx(198 / 202, abs=1e-15)

    def test_symmetric_cancellation(self):
        assert expected_value(5, 5, 5, 5) == 0.0

    def test_perfect_correlation(self):
        assert expected_value(3, 0, 0, 0) == 1.0

    def test_zero_denominator_undefined(self):
        assert expected_value(0, 0, 0, 0) is None

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            expected_value(1, -1, 0, 0)

    def test_against_fraction_reference(self):
        rng = np.random.default_rng(5)
        for f11, f12, f21, f22 in rng.integers(0, 300, size=(200, 4)).tolist():
            got = expected_value(f11, f12, f21, f22)
            want = expectation_fraction(f11, f12, f21, f22)
            if want is None:
                assert got is None
            else:
                assert got == pytest.approx(float(want), abs=1e-15)
                assert -1.0 <= got <= 1.0


class TestPartitions:
    def test_twelve_per_side_144_pairs(self):
        rows = canonical_partitions("rows")
        cols = canonical_partitions("cols")
        assert len(rows) == len(cols) == 12
        assert len(enumerate_partitions()) == 144
        assert len(set(rows)) == 12

    def test_each_index_used_exactly_once(self):
        for partition in canonical_partitions("rows"):
            assert sorted(partition.unprimed + partition.primed) == [0, 1, 2, 3]

    def test_canonical_form(self):
        for partition in canonical_partitions("rows"):
            assert partition.is_canonical
            assert not partition.flipped().is_canonical

    def test_canonical_set_covers_all_orderings_up_to_flip(self):
        # every one of the 24 orderings is a canonical partition or its flip
        seen = set()
        for p in permutations(range(4)):
            partition = Partition(side="rows", unprimed=(p[0], p[1]), primed=(p[2], p[3]))
            canonical = partition if partition.is_canonical else partition.flipped()
            seen.add((canonical.unprimed, canonical.primed))
        assert len(seen) == 12
        assert seen == {
            (p.unprimed, p.primed) for p in canonical_partitions("rows")
        }

    def test_invalid_partition_rejected(self):
        with pytest.raises(ValueError):
            Partition(side="rows", unprimed=(0, 0), primed=(2, 3))
        with pytest.raises(ValueError):
            Partition(side="middle", unprimed=(0, 1), primed=(2, 3))


class TestChshStatistic:
    def test_uniform_matrix_zero_everywhere(self):
        matrix = _sub(np.full((4, 4), 7))
        for row_p, col_p in enumerate_partitions():
            assert chsh_statistic(matrix, row_p, col_p) == 0.0

    def test_block_perfect_correlation_is_exactly_two(self):
        counts = np.array(
            [[9, 0, 9, 0], [0, 9, 0, 9], [9, 0, 9, 0], [0, 9, 0, 9]]
        )
        natural = (canonical_partitions("rows")[0], canonical_partitions("cols")[0])
        assert chsh_statistic(_sub(counts), *natural) == 2.0

    def test_large_small_pattern_value(self):
        matrix = _sub(large_small_matrix())
        natural = (canonical_partitions("rows")[0], canonical_partitions("cols")[0])
        s = chsh_statistic(matrix, *natural)
        assert s == pytest.approx(float(4 * Fraction(198, 202)), abs=1e-12)

    def test_undefined_when_any_block_empty(self):
        counts = np.zeros((4, 4), dtype=int)
        counts[0, 0] = 5  # only the AB block has data
        natural = (canonical_partitions("rows")[0], canonical_partitions("cols")[0])
        assert chsh_statistic(_sub(counts), *natural) is None

    def test_outcome_flip_negates(self):
        rng = np.random.default_rng(11)
        matrix = _sub(rng.integers(0, 15, size=(4, 4)))
        for row_p, col_p in enumerate_partitions():
            s = chsh_statistic(matrix, row_p, col_p)
            flipped_rows = chsh_statistic(matrix, row_p.flipped(), col_p)
            if s is None:
                assert flipped_rows is None
            else:
                assert flipped_rows == -s

    def test_against_fraction_reference(self):
        rng = np.random.default_rng(313)
        rows = canonical_partitions("rows")
        cols = canonical_partitions("cols")
        for counts in rng.integers(0, 12, size=(25, 4, 4)):
            matrix = _sub(counts)
            reference = {}
            for rp in permutations(range(4)):
                for cp in permutations(range(4)):
                    reference[(rp, cp)] = None
            values = chsh_all_orderings(counts.tolist())
            keys = [
                (rp, cp)
                for rp in permutations(range(4))
                for cp in permutations(range(4))
            ]
            reference = dict(zip(keys, values))
            for row_p in rows:
                for col_p in cols:
                    got = chsh_statistic(matrix, row_p, col_p)
                    want = reference[
                        (row_p.unprimed + row_p.primed, col_p.unprimed + col_p.primed)
                    ]
                    if want is None:
                        assert got is None
                    else:
                        assert got == pytest.approx(float(want), abs=1e-12)


class TestMaxAbsChsh:
    def test_large_small_pattern(self):
        evaluation = max_abs_chsh(_sub(large_small_matrix()))
        assert evaluation.max_abs_s == pytest.approx(
            float(4 * Fraction(198, 202)), abs=1e-12
        )
        assert evaluation.violated
        assert evaluation.skipped_partitions == 0
        assert evaluation.argmax is not None

    def test_column_swapped_negative_sign(self):
        swapped = large_small_matrix()[:, [1, 0, 3, 2]]
        evaluation = max_abs_chsh(_sub(swapped))
        assert evaluation.max_abs_s == pytest.approx(
            float(4 * Fraction(198, 202)), abs=1e-12
        )
        natural = (canonical_partitions("rows")[0], canonical_partitions("cols")[0])
        s = chsh_statistic(_sub(swapped), *natural)
        assert s < 0
        assert abs(s) == pytest.approx(evaluation.max_abs_s, abs=1e-12)

    def test_uniform_matrix(self):
        evaluation = max_abs_chsh(_sub(np.full((4, 4), 7)))
        assert evaluation.max_abs_s == 0.0
        assert not evaluation.violated

    def test_all_zero_matrix_all_skipped(self):
        evaluation = max_abs_chsh(_sub(np.zeros((4, 4), dtype=int)))
        assert evaluation.skipped_partitions == 144
        assert evaluation.max_abs_s == 0.0
        assert not evaluation.violated
        assert evaluation.argmax is None

    def test_block_perfect_correlation_boundary(self):
        counts = np.array(
            [[9, 0, 9, 0], [0, 9, 0, 9], [9, 0, 9, 0], [0, 9, 0, 9]]
        )
        evaluation = max_abs_chsh(_sub(counts))
        assert evaluation.max_abs_s == pytest.approx(2.0, abs=1e-12)
        assert not evaluation.violated

    def test_range_bound(self):
        rng = np.random.default_rng(99)
        for counts in rng.integers(0, 30, size=(50, 4, 4)):
            assert 0.0 <= max_abs_chsh(_sub(counts)).max_abs_s <= 4.0

    def test_transpose_symmetry(self):
        rng = np.random.default_rng(123)
        for counts in rng.integers(0, 20, size=(40, 4, 4)):
            a = max_abs_chsh(_sub(counts)).max_abs_s
            b = max_abs_chsh(_sub(counts.T)).max_abs_s
            assert a == pytest.approx(b, abs=1e-12)

    def test_scale_invariance_exact(self):
        rng = np.random.default_rng(321)
        for counts in rng.integers(0, 20, size=(30, 4, 4)):
            base = max_abs_chsh(_sub(counts)).max_abs_s
            scaled = max_abs_chsh(_sub(counts * 17)).max_abs_s
            assert base == scaled

    def test_permutation_closure(self):
        rng = np.random.default_rng(77)
        counts = rng.integers(0, 25, size=(4, 4))
        base = max_abs_chsh(_sub(counts)).max_abs_s
        for _ in range(10):
            perm_r = rng.permutation(4)
            perm_c = rng.permutation(4)
            shuffled = counts[np.ix_(perm_r, perm_c)]
            assert max_abs_chsh(_sub(shuffled)).max_abs_s == pytest.approx(
                base, abs=1e-12
            )

    def test_exact_oracle_on_random_matrices(self):
        rng = np.random.default_rng(2718)
        for counts in rng.integers(0, 10, size=(30, 4, 4)):
            evaluation = max_abs_chsh(_sub(counts))
            exact = max_abs_all_orderings(counts.tolist())
            assert evaluation.max_abs_s == pytest.approx(float(exact), abs=1e-12)
            assert evaluation.violated == violates_all_orderings(counts.tolist())

    def test_boundary_exactness(self):
        # four blocks whose expectations are 1/3, 1/3, 1/3, -1: float sums
        # can stray above 2 but the exact statistic is exactly 2
        third = np.array([[2, 1], [1, 2]])  # E = 1/3
        anti = np.array([[0, 5], [5, 0]])  # E = -1
        counts = np.block([[third, third], [third, anti]])
        evaluation = max_abs_chsh(_sub(counts))
        exact = max_abs_all_orderings(counts.tolist())
        assert Fraction(evaluation.max_abs_s).limit_denominator(10**9) == exact
        assert evaluation.violated == violates_all_orderings(counts.tolist())


class TestBatchKernel:
    def test_matches_scalar_path(self):
        rng = np.random.default_rng(4242)
        matrices = rng.integers(0, 18, size=(60, 4, 4))
        max_abs, argmax, skipped = chsh_max_abs_batch(matrices)
        pairs = enumerate_partitions()
        for k in range(60):
            evaluation = max_abs_chsh(_sub(matrices[k]))
            assert max_abs[k] == evaluation.max_abs_s
            assert skipped[k] == evaluation.skipped_partitions
            if evaluation.argmax is not None:
                assert pairs[argmax[k]] == evaluation.argmax

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            chsh_max_abs_batch(np.zeros((3, 5)))
        with pytest.raises(ValueError):
            chsh_max_abs_batch(np.full((2, 4, 4), -1))


def _cooc_from_counts(counts, method="frequency"):
    n1, n2 = counts.shape
    pair = ConceptPair(
        c1=tuple(f"a{i}" for i in range(n1)),
        c2=tuple(f"b{j}" for j in range(n2)),
        method=method,
        topic_id="t",
    )
    return CoocMatrix(
        concept_pair=pair,
        window_size=5,
        counts=counts,
        n_windows=int(counts.max(initial=0)) + 1,
    )


class TestEntanglementProportion:
    def test_uniform_matrix_no_violations(self):
        matrix = _cooc_from_counts(np.full((10, 10), 4, dtype=np.int64))
        report = entanglement_proportion(matrix)
        assert report.p == 0.0
        assert report.n_pairs_total == 44100
        assert report.n_pairs_entangled == 0

    def test_planted_block_in_flat_background(self):
        # top-left 4x4 holds the alternating pattern, everything else large
        counts = np.full((10, 10), 100, dtype=np.int64)
        counts[:4, :4] = large_small_matrix()
        matrix = _cooc_from_counts(counts)
        report = entanglement_proportion(matrix, top_details=5)
        # the pure pattern block must violate
        block = submatrix_of(matrix, (0, 1, 2, 3), (0, 1, 2, 3))
        assert max_abs_chsh(block).violated
        assert report.n_pairs_entangled >= 1
        assert report.details
        assert abs(report.details[0].s) > 2.0

    def test_exhaustive_oracle_on_reduced_concepts(self):
        # 6x6 matrix: 15 x 15 subset pairs, oracle-checkable exhaustively
        rng = np.random.default_rng(808)
        counts = rng.integers(0, 7, size=(6, 6)).astype(np.int64)
        matrix = _cooc_from_counts(counts)
        report = entanglement_proportion(matrix)
        expected = 0
        for rows in combinations(range(6), 4):
            for cols in combinations(range(6), 4):
                block = counts[np.ix_(rows, cols)]
                if violates_all_orderings(block.tolist()):
                    expected += 1
        assert report.n_pairs_total == 225
        assert report.n_pairs_entangled == expected
        assert report.p == expected / 225

    def test_exhaustive_oracle_on_planted_block_in_large_background(self):
        # alternating pattern in the top-left corner, large counts elsewhere
        counts = np.full((6, 6), 100, dtype=np.int64)
        counts[:4, :4] = large_small_matrix()
        report = entanglement_proportion(_cooc_from_counts(counts))
        expected = sum(
            violates_all_orderings(counts[np.ix_(rows, cols)].tolist())
            for rows in combinations(range(6), 4)
            for cols in combinations(range(6), 4)
        )
        assert expected >= 1  # the planted block itself violates
        assert report.n_pairs_entangled == expected
        assert report.p == expected / 225

    def test_agrees_with_max_abs_chsh_on_sampled_subsets(self, bundled_by_id):
        topic = replace(bundled_by_id["storm"], window_size=5)
        from entangletext import build_concept_pair, rank_by_frequency

        pair = build_concept_pair(rank_by_frequency(topic))
        matrix = count_cooccurrences(pair, topic.windows(), 5)
        report = entanglement_proportion(matrix, top_details=20)
        for detail in report.details:
            rows = tuple(pair.c1.index(t) for t in detail.row_terms)
            cols = tuple(pair.c2.index(t) for t in detail.col_terms)
            evaluation = max_abs_chsh(submatrix_of(matrix, rows, cols))
            assert evaluation.violated
            assert abs(detail.s) == pytest.approx(evaluation.max_abs_s, abs=1e-12)
            s_at_argmax = chsh_statistic(
                submatrix_of(matrix, rows, cols),
                detail.row_partition,
                detail.col_partition,
            )
            assert s_at_argmax == pytest.approx(detail.s, abs=1e-12)

    def test_too_small_matrix_rejected(self):
        with pytest.raises(ValueError):
            entanglement_proportion(_cooc_from_counts(np.zeros((3, 5), dtype=np.int64)))

    def test_details_sorted_by_strength(self, bundled_by_id):
        topic = replace(bundled_by_id["storm"], window_size=5)
        from entangletext import build_concept_pair, rank_by_frequency

        pair = build_concept_pair(rank_by_frequency(topic))
        matrix = count_cooccurrences(pair, topic.windows(), 5)
        report = entanglement_proportion(matrix, top_details=50)
        strengths = [abs(d.s) for d in report.details]
        assert strengths == sorted(strengths, reverse=True)
        assert len(report.details) == min(50, report.n_pairs_entangled)
