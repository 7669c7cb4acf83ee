"""Freeze the independent oracle's results for the bundled corpus.

Runs the complete reference chain with NO imports from the package code:
raw text -> reference normalization (tests/oracles.py stemmer) -> tiling ->
reference rankings -> reference indicator counting -> exhaustive CHSH scan
over all 24 x 24 row/column orderings of every 4-term subset pair.

Float evaluation is used for speed with an exact integer-arithmetic audit
wherever any |S| comes within 1e-9 of the decision boundary 2, so the
frozen decisions are provably identical to exact rational arithmetic.
Results land in tests/data/planted_expected.json.

Usage: python3 scripts/freeze_planted_expected.py  (takes a while)
"""

import json
import sys
import time
from itertools import combinations
from pathlib import Path

sys.path[:0] = ["tests"]

from oracles import (
    cooccurrence_reference,
    frequency_ranking_reference,
    histogram_reference,
    normalize_reference,
    tfidf_ranking_reference,
    tile_reference,
)

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "src" / "entangletext" / "data" / "corpus"
OUT = ROOT / "tests" / "data" / "planted_expected.json"

WINDOW_SIZES = (20, 10, 5)
BOUNDARY_EPS = 1e-9

# the 24 orderings of 4 indices: rows (a1, a2 | a3, a4)
_ORDERINGS = []


def _build_orderings():
    from itertools import permutations

    for p in permutations(range(4)):
        _ORDERINGS.append(p)


_build_orderings()


def _pair_tables(matrix):
    """Float and exact (numer, denom) expectation tables per ordered pair."""
    n_rows = len(matrix)
    n_cols = len(matrix[0])
    row_pairs = [(i, j) for i in range(n_rows) for j in range(n_rows) if i != j]
    col_pairs = [(i, j) for i in range(n_cols) for j in range(n_cols) if i != j]
    flt = []
    exact = []
    for r1, r2 in row_pairs:
        flt_row = []
        exact_row = []
        m1, m2 = matrix[r1], matrix[r2]
        for c1, c2 in col_pairs:
            f11, f12, f21, f22 = m1[c1], m1[c2], m2[c1], m2[c2]
            den = f11 + f12 + f21 + f22
            num = f11 + f22 - f12 - f21
            flt_row.append(None if den == 0 else num / den)
            exact_row.append((num, den))
        flt.append(flt_row)
        exact.append(exact_row)
    index = {}
    for k, pair in enumerate(row_pairs):
        index[pair] = k
    col_index = {pair: k for k, pair in enumerate(col_pairs)}
    return flt, exact, index, col_index


def _exact_violates(exact, row_pair_idx, col_pair_idx):
    """Exact integer decision for one submatrix (all 576 orderings)."""
    for rp in _ORDERINGS:
        u = row_pair_idx[(rp[0], rp[1])]
        v = row_pair_idx[(rp[2], rp[3])]
        for cp in _ORDERINGS:
            w = col_pair_idx[(cp[0], cp[1])]
            x = col_pair_idx[(cp[2], cp[3])]
            n1, d1 = exact[u][w]
            n2, d2 = exact[v][w]
            n3, d3 = exact[u][x]
            n4, d4 = exact[v][x]
            if d1 == 0 or d2 == 0 or d3 == 0 or d4 == 0:
                continue
            numer = (
                n1 * d2 * d3 * d4
                + n2 * d1 * d3 * d4
                + n3 * d1 * d2 * d4
                - n4 * d1 * d2 * d3
            )
            if abs(numer) > 2 * d1 * d2 * d3 * d4:
                return True
    return False


def subset_scan(matrix):
    """(n_entangled, n_total, n_boundary_audits) over all 4-subset pairs."""
    n_rows, n_cols = len(matrix), len(matrix[0])
    flt, exact, row_index, col_index = _pair_tables(matrix)

    # per subset and ordering: global ordered-pair table indices
    row_subsets = list(combinations(range(n_rows), 4))
    col_subsets = list(combinations(range(n_cols), 4))

    def subset_tables(subsets, index):
        tables = []
        for sub in subsets:
            per_ordering = []
            for p in _ORDERINGS:
                per_ordering.append(
                    (index[(sub[p[0]], sub[p[1]])], index[(sub[p[2]], sub[p[3]])])
                )
            tables.append(per_ordering)
        return tables

    row_tables = subset_tables(row_subsets, row_index)
    col_tables = subset_tables(col_subsets, col_index)

    hi = 2.0 + BOUNDARY_EPS
    lo = 2.0 - BOUNDARY_EPS
    n_entangled = 0
    n_audits = 0
    for r_idx, r_table in enumerate(row_tables):
        row_sub = row_subsets[r_idx]
        for c_idx, c_table in enumerate(col_tables):
            decided = None
            near_boundary = False
            for u, v in r_table:
                row_u, row_v = flt[u], flt[v]
                for w, x in c_table:
                    e1 = row_u[w]
                    e2 = row_v[w]
                    e3 = row_u[x]
                    e4 = row_v[x]
                    if e1 is None or e2 is None or e3 is None or e4 is None:
                        continue
                    s = e1 + e2 + e3 - e4
                    a = s if s >= 0 else -s
                    if a > hi:
                        decided = True
                        break
                    if a > lo:
                        near_boundary = True
                if decided:
                    break
            if decided is None:
                if near_boundary:
                    n_audits += 1
                    decided = _exact_violates(
                        exact,
                        {
                            (i, j): row_index[(row_sub[i], row_sub[j])]
                            for i in range(4)
                            for j in range(4)
                            if i != j
                        },
                        {
                            (i, j): col_index[(col_subsets[c_idx][i], col_subsets[c_idx][j])]
                            for i in range(4)
                            for j in range(4)
                            if i != j
                        },
                    )
                else:
                    decided = False
            n_entangled += 1 if decided else 0
    return n_entangled, len(row_subsets) * len(col_subsets), n_audits


def main():
    stoplist = frozenset(
        (ROOT / "src" / "entangletext" / "data" / "stopwords_english.txt")
        .read_text(encoding="utf-8")
        .split()
    )
    manifest = json.loads((CORPUS / "manifest.json").read_text(encoding="utf-8"))

    # reference normalization of every document
    topics = {}
    for topic in manifest["topics"]:
        docs = {}
        for doc in topic["documents"]:
            text = (CORPUS / doc["path"]).read_text(encoding="utf-8")
            docs[doc["doc_id"]] = normalize_reference(text, stoplist)
        topics[topic["topic_id"]] = docs

    all_doc_lists = [terms for docs in topics.values() for terms in docs.values()]

    frozen = {"topics": {}}
    for topic_id, docs in topics.items():
        doc_lists = list(docs.values())
        rankings = {
            "frequency": frequency_ranking_reference(doc_lists),
            "tfidf": tfidf_ranking_reference(doc_lists, all_doc_lists),
        }
        entry = {
            "n_documents": len(docs),
            "n_terms_per_doc": {d: len(t) for d, t in docs.items()},
            "methods": {},
        }
        for method, ranking in rankings.items():
            c1 = [t for t, _ in ranking[:10]]
            c2 = [t for t, _ in ranking[10:20]]
            cells = {}
            for width in WINDOW_SIZES:
                t0 = time.time()
                counts, n_windows = cooccurrence_reference(doc_lists, width, c1, c2)
                n_ent, n_total, n_audits = subset_scan(counts)
                cells[str(width)] = {
                    "matrix": counts,
                    "n_windows": n_windows,
                    "n_entangled": n_ent,
                    "n_pairs": n_total,
                    "p": n_ent / n_total,
                    "histogram": {
                        str(k): v for k, v in sorted(histogram_reference(counts).items())
                    },
                    "boundary_audits": n_audits,
                }
                print(
                    f"{topic_id}/{method}/W={width}: p={n_ent / n_total:.4f} "
                    f"({n_ent}/{n_total}), windows={n_windows}, "
                    f"audits={n_audits}, {time.time() - t0:.1f}s",
                    flush=True,
                )
            entry["methods"][method] = {"c1": c1, "c2": c2, "cells": cells}
        frozen["topics"][topic_id] = entry

    OUT.write_text(json.dumps(frozen, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
