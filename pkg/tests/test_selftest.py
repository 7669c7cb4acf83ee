"""The embedded verification suite, including its negative control."""

import io

from entangletext import enumerate_partitions, run_selftest


def test_pristine_build_passes():
    stream = io.StringIO()
    results = run_selftest(stream=stream)
    assert [r.passed for r in results] == [True] * 4
    lines = stream.getvalue().strip().splitlines()
    assert len(lines) == 4
    assert all(line.startswith("PASS") for line in lines)


def test_corrupted_partition_table_fails_equivalence():
    # replace pair 1 with a duplicate of pair 0; note that dropping a pair's
    # swap-both-sides-and-flip partner instead (e.g. 0 and 143) would leave
    # the |S| multiset invariant and must not be used as the control
    pairs = list(enumerate_partitions())
    corrupted = [pairs[0], pairs[0]] + pairs[2:]
    stream = io.StringIO()
    results = run_selftest(partition_pairs=tuple(corrupted), stream=stream)
    by_name = {r.name: r for r in results}
    assert not by_name["ordering equivalence"].passed
    assert "FAIL" in stream.getvalue()


def test_truncated_partition_table_fails():
    pairs = enumerate_partitions()[:100]
    results = run_selftest(partition_pairs=pairs, stream=io.StringIO())
    assert not all(r.passed for r in results)
