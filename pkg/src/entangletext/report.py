"""End-to-end orchestration: corpus analysis runs and simulation runs.

A run walks every (topic, window size, relevance method) cell: builds the
concept pair, counts the co-occurrence matrix, scans all 4-term subset
pairs for CHSH violations, and emits plot-ready CSV/JSON artifacts. Cells
are independent jobs executed on a thread pool capped by ENTANGLE_THREADS;
all files are written serially in a deterministic order and carry no
timestamps, so identical configurations produce bitwise-identical output.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from . import __version__
from .chsh import ProportionReport, entanglement_proportion
from .cooccurrence import (
    CoocMatrix,
    Histogram,
    cooccurrence_histogram,
    count_cooccurrences,
    matrix_to_csv,
)
from .corpus import (
    PipelineConfig,
    default_stoplist,
    load_stoplist,
    load_topic_corpus,
)
from .relevance import (
    build_concept_pair,
    document_frequencies,
    rank_by_frequency,
    rank_by_tfidf,
    ranking_to_csv,
)
from .simulation import CurveSet, curves_to_csv, parameter_sweep

__all__ = ["RunConfig", "TopicReport", "run_analyze", "run_simulate", "max_workers"]

DEFAULT_WINDOW_SIZES = (20, 10, 5)
DEFAULT_METHODS = ("frequency", "tfidf")


@dataclass(frozen=True)
class RunConfig:
    """Everything an analysis run depends on."""

    manifest: Path
    out_dir: Path
    window_sizes: tuple[int, ...] = DEFAULT_WINDOW_SIZES
    methods: tuple[str, ...] = DEFAULT_METHODS
    concept_size: int = 10
    seed: int = 0
    stoplist_path: Path | None = None
    stemming: bool = True
    top_violations: int = 10

    def __post_init__(self):
        object.__setattr__(self, "manifest", Path(self.manifest))
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        object.__setattr__(self, "window_sizes", tuple(self.window_sizes))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.window_sizes or len(set(self.window_sizes)) != len(self.window_sizes):
            raise ValueError("window sizes must be non-empty and distinct")
        if any(w < 1 for w in self.window_sizes):
            raise ValueError("window sizes must be positive")
        unknown = [m for m in self.methods if m not in DEFAULT_METHODS]
        if unknown or not self.methods:
            raise ValueError(f"unknown relevance methods: {unknown}")


@dataclass
class TopicReport:
    """Per-topic results over every configured (window size, method) cell."""

    topic_id: str
    cells: dict = field(default_factory=dict)  # (W, method) -> (report, histogram, matrix)

    def proportion(self, window_size: int, method: str) -> ProportionReport:
        return self.cells[(window_size, method)][0]

    def histogram(self, window_size: int, method: str) -> Histogram:
        return self.cells[(window_size, method)][1]

    def matrix(self, window_size: int, method: str) -> CoocMatrix:
        return self.cells[(window_size, method)][2]

    def monotone_in_window(self, method: str, window_sizes: Sequence[int]) -> bool:
        """True when p strictly decreases as the window size grows."""
        ordered = sorted(window_sizes)
        ps = [self.proportion(w, method).p for w in ordered]
        return all(a > b for a, b in zip(ps, ps[1:]))


def max_workers(n_jobs: int) -> int:
    """Thread-pool size: min(jobs, cpu count), capped by ENTANGLE_THREADS."""
    limit = os.cpu_count() or 1
    env = os.environ.get("ENTANGLE_THREADS")
    if env:
        try:
            limit = min(limit, max(1, int(env)))
        except ValueError:
            raise ValueError(f"ENTANGLE_THREADS must be an integer, got {env!r}")
    return max(1, min(n_jobs, limit))


def _pipeline_config(config: RunConfig) -> PipelineConfig:
    stoplist = (
        load_stoplist(config.stoplist_path)
        if config.stoplist_path is not None
        else default_stoplist()
    )
    return PipelineConfig(stoplist=stoplist, stemming_enabled=config.stemming)


def run_analyze(config: RunConfig) -> list[TopicReport]:
    """Execute the full analysis and write all artifacts under out_dir.

    Returns the per-topic reports in the emitted order (descending p at the
    smallest window size for the first configured method, ties by topic_id).
    """
    pipeline = _pipeline_config(config)
    base_topics = load_topic_corpus(config.manifest, pipeline, config.window_sizes[0])
    df = document_frequencies(base_topics)

    # rankings and concept pairs are window-independent
    pairs = {}
    for topic in base_topics:
        for method in config.methods:
            ranked = (
                rank_by_frequency(topic)
                if method == "frequency"
                else rank_by_tfidf(topic, base_topics, df=df)
            )
            pairs[(topic.topic_id, method)] = (
                ranked,
                build_concept_pair(ranked, config.concept_size),
            )

    windows = {
        (topic.topic_id, w): replace(topic, window_size=w).windows()
        for topic in base_topics
        for w in config.window_sizes
    }

    def run_cell(job):
        topic_id, window_size, method = job
        pair = pairs[(topic_id, method)][1]
        matrix = count_cooccurrences(pair, windows[(topic_id, window_size)], window_size)
        report = entanglement_proportion(matrix, top_details=config.top_violations)
        return job, (report, cooccurrence_histogram(matrix, "unit"), matrix)

    jobs = [
        (topic.topic_id, w, m)
        for topic in base_topics
        for w in config.window_sizes
        for m in config.methods
    ]
    results = {}
    with ThreadPoolExecutor(max_workers=max_workers(len(jobs))) as pool:
        for job, cell in pool.map(run_cell, jobs):
            results[job] = cell

    reports = {topic.topic_id: TopicReport(topic_id=topic.topic_id) for topic in base_topics}
    for (topic_id, w, m), cell in results.items():
        reports[topic_id].cells[(w, m)] = cell

    ordered = _sorted_reports(reports.values(), config)
    _write_outputs(ordered, pairs, config)
    return ordered


def _sorted_reports(reports, config: RunConfig) -> list[TopicReport]:
    smallest = min(config.window_sizes)
    method = config.methods[0]
    return sorted(
        reports,
        key=lambda r: (-r.proportion(smallest, method).p, r.topic_id),
    )


def _partition_json(partition) -> dict:
    return {"unprimed": list(partition.unprimed), "primed": list(partition.primed)}


def _write_outputs(ordered, pairs, config: RunConfig) -> None:
    out = config.out_dir
    for sub in ("rankings", "matrices", "results"):
        (out / sub).mkdir(parents=True, exist_ok=True)

    smallest = min(config.window_sizes)
    for method in config.methods:
        with open(out / f"summary_{method}.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["topic_id", "method", "W", "p", "n_entangled", "n_pairs", "monotone_in_W"]
            )
            by_method = sorted(
                ordered,
                key=lambda r: (-r.proportion(smallest, method).p, r.topic_id),
            )
            for report in by_method:
                monotone = report.monotone_in_window(method, config.window_sizes)
                for w in config.window_sizes:
                    prop = report.proportion(w, method)
                    writer.writerow(
                        [
                            report.topic_id,
                            method,
                            w,
                            repr(prop.p),
                            prop.n_pairs_entangled,
                            prop.n_pairs_total,
                            str(monotone).lower(),
                        ]
                    )

    with open(out / "histograms.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["topic_id", "method", "W", "n", "count"])
        for method in config.methods:
            for report in ordered:
                for w in config.window_sizes:
                    hist = report.histogram(w, method)
                    for value, count in hist.bins.items():
                        writer.writerow([report.topic_id, method, w, value, count])

    for report in ordered:
        for method in config.methods:
            ranked, pair = pairs[(report.topic_id, method)]
            ranking_to_csv(ranked, out / "rankings" / f"{report.topic_id}__{method}.csv")
            for w in config.window_sizes:
                cell_name = f"{report.topic_id}__{method}__W{w}"
                matrix_to_csv(report.matrix(w, method), out / "matrices" / f"{cell_name}.csv")
                prop = report.proportion(w, method)
                payload = {
                    "topic_id": report.topic_id,
                    "W": w,
                    "method": method,
                    "p": prop.p,
                    "n_entangled": prop.n_pairs_entangled,
                    "top_violations": [
                        {
                            "c1": list(d.row_terms),
                            "c2": list(d.col_terms),
                            "partition": {
                                "rows": _partition_json(d.row_partition),
                                "cols": _partition_json(d.col_partition),
                            },
                            "S": d.s,
                        }
                        for d in (prop.details or ())
                    ],
                }
                with open(out / "results" / f"{cell_name}.json", "w", encoding="utf-8") as fh:
                    json.dump(payload, fh, indent=1)
                    fh.write("\n")

    metadata = {
        "tool": "entangletext",
        "version": __version__,
        "manifest": str(config.manifest),
        "window_sizes": list(config.window_sizes),
        "methods": list(config.methods),
        "concept_size": config.concept_size,
        "seed": config.seed,
        "stoplist": str(config.stoplist_path) if config.stoplist_path else "bundled",
        "stemming": config.stemming,
    }
    with open(out / "run_metadata.json", "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=1)
        fh.write("\n")


def run_simulate(
    kind: str,
    parameters: Sequence[float] | None,
    bounds: Sequence[int],
    n_samples: int,
    seed: int,
    out_path: str | Path,
) -> CurveSet:
    """Run a parameter sweep and write the curve CSV plus a metadata sidecar."""
    curves = parameter_sweep(kind, parameters, bounds, n_samples=n_samples, seed=seed)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    curves_to_csv(curves, out_path)
    sidecar = {
        "tool": "entangletext",
        "version": __version__,
        "kind": kind,
        "grid": [[p, b] for p, b in curves.grid],
        "n_samples": n_samples,
        "seed": seed,
    }
    meta_path = out_path.with_suffix(out_path.suffix + ".meta.json")
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=1)
        fh.write("\n")
    return curves
