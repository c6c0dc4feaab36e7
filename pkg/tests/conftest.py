import json
from pathlib import Path

import pytest

from metricide.corpus import load_corpus, load_embeddings, load_synonyms

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_corpus(FIXTURES / "corpus.csv")


@pytest.fixture(scope="session")
def fixture_embeddings():
    return load_embeddings(FIXTURES / "embeddings.txt")


@pytest.fixture(scope="session")
def fixture_synonyms():
    return load_synonyms(FIXTURES / "synonyms.txt")


@pytest.fixture(scope="session")
def micro_oracle():
    with open(FIXTURES / "micro_oracle.json", encoding="utf-8") as fh:
        return json.load(fh)
