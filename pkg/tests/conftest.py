import importlib.resources
from pathlib import Path

import pytest

import focusref as fr

DATA = Path(importlib.resources.files("focusref") / "data")

FIXTURE_NAMES = ("aircraft", "twa", "writ", "brothers")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def ontology():
    return fr.load_ontology(DATA / "ontology.txt")


@pytest.fixture(scope="session")
def fixture_docs():
    docs = {}
    for name in FIXTURE_NAMES:
        corpus = fr.load_corpus(DATA / f"{name}.ee")
        (docs[name],) = corpus.documents
    return docs


@pytest.fixture(scope="session")
def fixture_keys():
    keys = {}
    for name in FIXTURE_NAMES:
        (keys[name],) = fr.load_coref_markup(DATA / f"{name}.key.sgml")
    return keys


@pytest.fixture
def aircraft(fixture_docs):
    return fixture_docs["aircraft"]


@pytest.fixture
def twa(fixture_docs):
    return fixture_docs["twa"]


@pytest.fixture
def writ(fixture_docs):
    return fixture_docs["writ"]


@pytest.fixture
def brothers(fixture_docs):
    return fixture_docs["brothers"]
