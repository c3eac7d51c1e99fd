import pytest

from kicaumine.corpus import SentimentLabel
from kicaumine.model import train
from kicaumine.preprocess import Document

NEG = SentimentLabel.NEGATIVE
POS = SentimentLabel.POSITIVE
NEU = SentimentLabel.NEUTRAL


def make_doc(doc_id, tokens, label=None):
    return Document(source_id=doc_id, tokens=tuple(tokens), label=label)


@pytest.fixture
def toy_docs():
    """Two positive documents and one negative one; the shared hand fixture.

    Hand-counted facts used throughout: 3 documents, priors 2/3 and 1/3,
    vocabulary {calon, bagus, mantap, buruk}, class token totals 4 and 2.
    """
    return [
        make_doc("p1", ["calon", "bagus"], POS),
        make_doc("p2", ["bagus", "mantap"], POS),
        make_doc("n1", ["calon", "buruk"], NEG),
    ]


@pytest.fixture
def toy_model(toy_docs):
    return train(toy_docs)
