from __future__ import annotations

import pytest

from minidojo.assets import ambiguity_corpus_root, bundled_corpus_root
from minidojo.corpus import Corpus, corpus_from_sources, load_corpus
from minidojo.forge import ForgeSpec, forge_corpus
from minidojo.retrieval import RetrievalDataset

# One line per acceptance criterion, replayed at the end of the run so the
# verdicts stay visible even when pytest captures test output.
_criterion_lines: list[str] = []


@pytest.fixture(scope="session")
def criterion_lines() -> list[str]:
    return _criterion_lines


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bundled_corpus() -> Corpus:
    return load_corpus(bundled_corpus_root())


@pytest.fixture(scope="session")
def ambiguity_corpus() -> Corpus:
    return load_corpus(ambiguity_corpus_root())


@pytest.fixture(scope="session")
def forged_corpus() -> Corpus:
    return corpus_from_sources(forge_corpus(ForgeSpec()))


@pytest.fixture(scope="session")
def bundled_dataset(bundled_corpus: Corpus) -> RetrievalDataset:
    return RetrievalDataset.from_corpus(bundled_corpus)


@pytest.fixture(scope="session")
def forged_dataset(forged_corpus: Corpus) -> RetrievalDataset:
    return RetrievalDataset.from_corpus(forged_corpus)
