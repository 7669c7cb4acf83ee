"""Conceptual-entanglement analysis of term co-occurrence statistics.

Builds concept pairs from the most relevant terms of a topic corpus,
counts windowed co-occurrences between them, and scans 4-term subset
pairs for CHSH-inequality violations; a Monte-Carlo module estimates how
often such violations arise under bounded-Zipfian, homogeneous, and
truncated-Poisson co-occurrence statistics.
"""

__version__ = "0.1.0"

from .chsh import (
    ChshEvaluation,
    PairDetail,
    Partition,
    ProportionReport,
    SubMatrix,
    canonical_partitions,
    chsh_max_abs_batch,
    chsh_statistic,
    entanglement_proportion,
    enumerate_partitions,
    expected_value,
    max_abs_chsh,
    submatrix_of,
)
from .cooccurrence import (
    CoocMatrix,
    Histogram,
    cooccurrence_histogram,
    count_cooccurrences,
    histogram_to_csv,
    matrix_to_csv,
)
from .corpus import (
    CorpusError,
    PipelineConfig,
    RawDocument,
    TermSequence,
    TopicCorpus,
    Window,
    bundled_corpus_path,
    default_stoplist,
    load_stoplist,
    load_topic_corpus,
    segment_windows,
    tokenize_and_normalize,
)
from .porter import stem
from .relevance import (
    ConceptPair,
    RankedTerms,
    TermStats,
    term_statistics,
    build_concept_pair,
    document_frequencies,
    rank_by_frequency,
    rank_by_tfidf,
    ranking_to_csv,
)
from .report import RunConfig, TopicReport, run_analyze, run_simulate
from .selftest import CheckResult, run_selftest
from .simulation import (
    CurveSet,
    DistributionSpec,
    ViolationEstimate,
    curves_to_csv,
    distribution_pmf,
    estimate_violation_probability,
    parameter_sweep,
    sample_submatrix,
)

__all__ = [
    "__version__",
    "stem",
    # corpus
    "CorpusError",
    "PipelineConfig",
    "RawDocument",
    "TermSequence",
    "Window",
    "TopicCorpus",
    "default_stoplist",
    "load_stoplist",
    "tokenize_and_normalize",
    "segment_windows",
    "load_topic_corpus",
    "bundled_corpus_path",
    # relevance
    "TermStats",
    "RankedTerms",
    "ConceptPair",
    "document_frequencies",
    "term_statistics",
    "rank_by_frequency",
    "rank_by_tfidf",
    "build_concept_pair",
    "ranking_to_csv",
    # cooccurrence
    "CoocMatrix",
    "Histogram",
    "count_cooccurrences",
    "cooccurrence_histogram",
    "matrix_to_csv",
    "histogram_to_csv",
    # chsh
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
    # simulation
    "DistributionSpec",
    "ViolationEstimate",
    "CurveSet",
    "distribution_pmf",
    "sample_submatrix",
    "estimate_violation_probability",
    "parameter_sweep",
    "curves_to_csv",
    # report / selftest
    "RunConfig",
    "TopicReport",
    "run_analyze",
    "run_simulate",
    "CheckResult",
    "run_selftest",
]
