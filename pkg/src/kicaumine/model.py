"""Multinomial Naive Bayes with add-one smoothing.

Training counts documents and token occurrences per class; classification
picks the class maximizing prior times the product of per-token
likelihoods ``(count + 1) / (class_tokens + vocabulary_size)``. Scoring
runs in log space, which preserves the argmax while avoiding underflow on
long documents, and the normalizing document probability is dropped
because it is constant across classes. The token loop is delegated to the
compiled kernel when available.
"""

import json
import logging
import math
from array import array
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from . import _kernels
from .corpus import SentimentLabel
from .exceptions import (
    DegenerateTrainingError,
    ModelFormatError,
    TrainingError,
    UnknownLabelError,
)
from .preprocess import Document

logger = logging.getLogger(__name__)

MODEL_SCHEMA_VERSION = 1

OOV_SMOOTH = "smooth"  # unseen tokens scored with count 0 under smoothing
OOV_SKIP = "skip"  # unseen tokens contribute nothing
_OOV_MODES = (OOV_SMOOTH, OOV_SKIP)


@dataclass(frozen=True)
class Prediction:
    """Classification outcome: winning label plus normalized posteriors."""

    label: SentimentLabel
    posteriors: Mapping[SentimentLabel, float]
    oov_tokens: int


class _ScoreTable:
    """Log-space arrays derived from a model, laid out for the kernels."""

    __slots__ = ("index", "log_priors", "log_lik", "oov_log_lik", "n_classes")

    def __init__(self, model):
        vocab = sorted(model.vocabulary)
        self.index = {token: i for i, token in enumerate(vocab)}
        self.n_classes = len(model.labels)
        self.log_priors = array(
            "d",
            (math.log(model.docs_per_class[lab] / model.total_docs) for lab in model.labels),
        )
        log_lik = array("d", bytes(8 * self.n_classes * len(vocab)))
        oov = array("d", bytes(8 * self.n_classes))
        for j, lab in enumerate(model.labels):
            counts = model.token_counts[lab]
            denom = model.tokens_per_class[lab] + len(vocab)
            base = j * len(vocab)
            for i, token in enumerate(vocab):
                log_lik[base + i] = math.log((counts.get(token, 0) + 1) / denom)
            oov[j] = math.log(1 / denom)
        self.log_lik = log_lik
        self.oov_log_lik = oov


@dataclass(frozen=True)
class NbModel:
    """Trained classifier state: per-class document and token counts.

    ``labels`` is ordered (negative, positive, neutral restricted to the
    trained subset) and that order breaks exact score ties. The smoothing
    constant is fixed at one and kept as a field only so that model files
    are self-describing. Derived views (``total_docs``,
    ``tokens_per_class``, ``vocabulary``) are computed at construction;
    instances are immutable and safe to share across threads.
    """

    labels: tuple[SentimentLabel, ...]
    docs_per_class: Mapping[SentimentLabel, int]
    token_counts: Mapping[SentimentLabel, Mapping[str, int]]
    alpha: int = 1

    def __post_init__(self):
        if self.alpha != 1:
            raise ValueError("smoothing constant is fixed at 1")
        if len(self.labels) < 2:
            raise ValueError("a model needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        if set(self.docs_per_class) != set(self.labels):
            raise ValueError("docs_per_class must cover exactly the model labels")
        if set(self.token_counts) != set(self.labels):
            raise ValueError("token_counts must cover exactly the model labels")
        for lab in self.labels:
            if self.docs_per_class[lab] < 1:
                raise ValueError(f"label {lab} has no documents")
            for token, count in self.token_counts[lab].items():
                if not token or count < 1:
                    raise ValueError(f"bad count for token {token!r} in class {lab}")
        object.__setattr__(self, "total_docs", sum(self.docs_per_class.values()))
        object.__setattr__(
            self,
            "tokens_per_class",
            {lab: sum(self.token_counts[lab].values()) for lab in self.labels},
        )
        vocabulary = frozenset().union(*(self.token_counts[lab] for lab in self.labels))
        if not vocabulary:
            raise ValueError("empty vocabulary")
        object.__setattr__(self, "vocabulary", vocabulary)
        object.__setattr__(self, "_table", None)

    def _score_table(self) -> _ScoreTable:
        # Benign race: concurrent first calls build identical tables.
        table = self._table
        if table is None:
            table = _ScoreTable(self)
            object.__setattr__(self, "_table", table)
        return table


def _canonical_label_order(labels: Iterable[SentimentLabel]) -> tuple[SentimentLabel, ...]:
    wanted = set(labels)
    return tuple(lab for lab in SentimentLabel if lab in wanted)


def train(docs: list[Document], labels: Iterable[SentimentLabel] | None = None) -> NbModel:
    """Count a labeled document collection into an immutable model.

    Every document must carry a label from ``labels`` (default: the labels
    observed in the documents) and a non-empty token list; violations
    raise TrainingError naming the document. Labels that end up with no
    documents are dropped with a warning. Fewer than two surviving classes
    is a degenerate problem and raises.
    """
    if not docs:
        raise TrainingError("no documents to train on")
    label_set = set(labels) if labels is not None else {d.label for d in docs} - {None}
    if not label_set:
        raise TrainingError("no labels to train on")
    docs_per_class: Counter = Counter()
    token_counts: dict[SentimentLabel, Counter] = {lab: Counter() for lab in label_set}
    for doc in docs:
        if doc.label is None:
            raise TrainingError(f"document {doc.source_id!r} is unlabeled")
        if doc.label not in label_set:
            raise TrainingError(
                f"document {doc.source_id!r} labeled {doc.label} outside the label set"
            )
        if doc.empty:
            raise TrainingError(f"document {doc.source_id!r} has no tokens")
        docs_per_class[doc.label] += 1
        token_counts[doc.label].update(doc.tokens)
    for lab in sorted(label_set, key=lambda l: l.value):
        if docs_per_class[lab] == 0:
            logger.warning("label %s has no training documents; dropping it", lab)
            del token_counts[lab]
    effective = _canonical_label_order(token_counts)
    if len(effective) < 2:
        raise DegenerateTrainingError(
            f"training needs at least two classes, got {[str(l) for l in effective]}"
        )
    return NbModel(
        labels=effective,
        docs_per_class={lab: docs_per_class[lab] for lab in effective},
        token_counts={lab: dict(token_counts[lab]) for lab in effective},
    )


def _require_label(model: NbModel, label: SentimentLabel) -> None:
    if label not in model.labels:
        raise UnknownLabelError(f"label {label} not in model labels {model.labels}")


def class_prior(model: NbModel, label: SentimentLabel) -> float:
    """Fraction of training documents in ``label``'s class."""
    _require_label(model, label)
    return model.docs_per_class[label] / model.total_docs


def token_likelihood(model: NbModel, token: str, label: SentimentLabel) -> float:
    """Smoothed probability of ``token`` given the class.

    ``(count + 1) / (class token total + vocabulary size)``; tokens unseen
    in the class (or anywhere) use count zero, so the result is never 0.
    """
    _require_label(model, label)
    count = model.token_counts[label].get(token, 0)
    return (count + 1) / (model.tokens_per_class[label] + len(model.vocabulary))


def _doc_scores(model: NbModel, tokens: Iterable[str], oov_mode: str) -> tuple[list[float], int]:
    if oov_mode not in _OOV_MODES:
        raise ValueError(f"oov_mode must be one of {_OOV_MODES}, got {oov_mode!r}")
    table = model._score_table()
    ids: list[int] = []
    counts: list[float] = []
    oov = 0
    for token, count in Counter(tokens).items():
        idx = table.index.get(token)
        if idx is None:
            oov += count
        else:
            ids.append(idx)
            counts.append(float(count))
    out = array("d", bytes(8 * table.n_classes))
    _kernels.score_document(
        table.log_priors,
        table.log_lik,
        table.oov_log_lik,
        array("q", ids),
        array("d", counts),
        float(oov),
        oov_mode == OOV_SKIP,
        out,
    )
    return list(out), oov


def log_score(model: NbModel, doc: Document, label: SentimentLabel, oov_mode: str = OOV_SMOOTH) -> float:
    """Log prior plus summed log token likelihoods for one class."""
    _require_label(model, label)
    scores, _ = _doc_scores(model, doc.tokens, oov_mode)
    return scores[model.labels.index(label)]


def classify(model: NbModel, doc: Document, oov_mode: str = OOV_SMOOTH) -> Prediction:
    """Pick the maximum-score class and normalize scores into posteriors.

    Posteriors are ``exp(score - max score)`` renormalized to sum to one.
    Exact ties resolve to the earliest label in the model's order. An
    empty document degrades to the class priors.
    """
    scores, oov = _doc_scores(model, doc.tokens, oov_mode)
    best = max(range(len(scores)), key=scores.__getitem__)
    top = scores[best]
    weights = [math.exp(s - top) for s in scores]
    total = sum(weights)
    posteriors = {lab: w / total for lab, w in zip(model.labels, weights)}
    return Prediction(label=model.labels[best], posteriors=posteriors, oov_tokens=oov)


def save_model(model: NbModel, sink) -> None:
    """Serialize the model as a single JSON document (integer counts only)."""
    payload = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "alpha": model.alpha,
        "labels": [lab.value for lab in model.labels],
        "docs_per_class": {lab.value: model.docs_per_class[lab] for lab in model.labels},
        "tokens_per_class": {lab.value: model.tokens_per_class[lab] for lab in model.labels},
        "token_counts": {
            lab.value: dict(sorted(model.token_counts[lab].items())) for lab in model.labels
        },
    }
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sink.write(text)


def load_model(source) -> NbModel:
    """Rebuild a model saved by :func:`save_model`, verifying its counts.

    Raises ModelFormatError on malformed JSON, an unsupported schema
    version, or internally inconsistent counts (e.g. a stored class total
    that does not match its token map).
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = source.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError("model file must hold a JSON object")
    version = payload.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise ModelFormatError(
            f"unsupported model schema version {version!r} (expected {MODEL_SCHEMA_VERSION})"
        )
    try:
        labels = tuple(SentimentLabel(name) for name in payload["labels"])
        docs_per_class = {
            SentimentLabel(name): int(count)
            for name, count in payload["docs_per_class"].items()
        }
        token_counts = {
            SentimentLabel(name): {str(tok): int(cnt) for tok, cnt in table.items()}
            for name, table in payload["token_counts"].items()
        }
        stored_totals = {
            SentimentLabel(name): int(count)
            for name, count in payload["tokens_per_class"].items()
        }
        alpha = int(payload.get("alpha", 1))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ModelFormatError(f"model file is malformed: {exc}") from exc
    try:
        model = NbModel(
            labels=labels,
            docs_per_class=docs_per_class,
            token_counts=token_counts,
            alpha=alpha,
        )
    except ValueError as exc:
        raise ModelFormatError(f"model file is inconsistent: {exc}") from exc
    if stored_totals != dict(model.tokens_per_class):
        raise ModelFormatError("stored per-class token totals do not match token counts")
    return model
