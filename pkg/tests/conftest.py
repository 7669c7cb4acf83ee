import json
from pathlib import Path

import pytest

from entangletext import (
    PipelineConfig,
    bundled_corpus_path,
    load_topic_corpus,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def planted_facts():
    return json.loads((DATA / "planted_facts.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def planted_expected():
    return json.loads((DATA / "planted_expected.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def pipeline_config():
    return PipelineConfig()


@pytest.fixture(scope="session")
def bundled_topics(pipeline_config):
    """Bundled corpus at window size 20 (windows are re-derived per test)."""
    return load_topic_corpus(bundled_corpus_path(), pipeline_config, 20)


@pytest.fixture(scope="session")
def bundled_by_id(bundled_topics):
    return {t.topic_id: t for t in bundled_topics}
