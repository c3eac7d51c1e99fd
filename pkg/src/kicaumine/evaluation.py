"""Splitting, metrics against manual gold labels, and sentiment rollups.

Shuffles are driven by ``random.Random(seed)`` (Mersenne Twister) over
documents first sorted by id, so identical (documents, seed) pairs give
identical splits regardless of input order or platform.
"""

import json
import random
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .corpus import SentimentLabel, Tweet
from .exceptions import EvaluationError, SplitError, UnknownLabelError
from .model import NbModel, OOV_SMOOTH, Prediction, classify
from .preprocess import Document

ALL_GROUP = "all"


class ClassMetrics(NamedTuple):
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalMetrics:
    """Confusion matrix (gold row, predicted column) and derived scores.

    Precision, recall, and F1 fall back to 0.0 when their denominator is
    zero, keeping the metrics total for classes the model never predicts
    (or gold never contains).
    """

    confusion: Mapping[SentimentLabel, Mapping[SentimentLabel, int]]
    accuracy: float
    per_class: Mapping[SentimentLabel, ClassMetrics]
    n_test: int

    def as_dict(self) -> dict:
        return {
            "n_test": self.n_test,
            "accuracy": self.accuracy,
            "confusion": {
                gold.value: {pred.value: count for pred, count in row.items()}
                for gold, row in self.confusion.items()
            },
            "per_class": {
                lab.value: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
                for lab, m in self.per_class.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


@dataclass(frozen=True)
class SentimentReport:
    """Label counts and shares for one tweet group (hashtag or 'all')."""

    group_key: str
    counts: Mapping[SentimentLabel, int]
    percentages: Mapping[SentimentLabel, float]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _shuffled(docs: list[Document], seed: int) -> list[Document]:
    ordered = sorted(docs, key=lambda d: d.source_id)
    random.Random(seed).shuffle(ordered)
    return ordered


def split(
    docs: list[Document], train_fraction: float, seed: int
) -> tuple[list[Document], list[Document]]:
    """Deterministic shuffle-then-cut split into training and test parts.

    The cut point is ``round(train_fraction * len(docs))``; both sides
    must come out non-empty or SplitError is raised.
    """
    if len(docs) < 2:
        raise SplitError(f"need at least 2 documents to split, got {len(docs)}")
    if not 0.0 < train_fraction < 1.0:
        raise SplitError(f"train_fraction must be in (0, 1), got {train_fraction}")
    ordered = _shuffled(docs, seed)
    cut = round(train_fraction * len(ordered))
    if cut < 1 or cut >= len(ordered):
        raise SplitError(
            f"train_fraction {train_fraction} leaves an empty side for {len(docs)} documents"
        )
    return ordered[:cut], ordered[cut:]


def k_fold(
    docs: list[Document], k: int, seed: int
) -> list[tuple[list[Document], list[Document]]]:
    """Partition into k folds; each document tests exactly once.

    Fold sizes differ by at most one. k must be between 2 and the number
    of documents (k equal to the count gives leave-one-out).
    """
    if k < 2:
        raise SplitError(f"k must be at least 2, got {k}")
    if k > len(docs):
        raise SplitError(f"k={k} exceeds the {len(docs)} available documents")
    ordered = _shuffled(docs, seed)
    base, extra = divmod(len(ordered), k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        test = ordered[start : start + size]
        train_part = ordered[:start] + ordered[start + size :]
        folds.append((train_part, test))
        start += size
    return folds


def evaluate(model: NbModel, gold: list[Document], oov_mode: str = OOV_SMOOTH) -> EvalMetrics:
    """Classify gold documents and tabulate the confusion matrix.

    Every gold document must carry a label known to the model.
    """
    if not gold:
        raise EvaluationError("no gold documents to evaluate")
    for doc in gold:
        if doc.label is None:
            raise EvaluationError(f"gold document {doc.source_id!r} is unlabeled")
        if doc.label not in model.labels:
            raise UnknownLabelError(
                f"gold document {doc.source_id!r} labeled {doc.label} outside model labels"
            )
    confusion = {g: {p: 0 for p in model.labels} for g in model.labels}
    for doc in gold:
        prediction = classify(model, doc, oov_mode=oov_mode)
        confusion[doc.label][prediction.label] += 1
    n_test = len(gold)
    correct = sum(confusion[lab][lab] for lab in model.labels)
    per_class = {}
    for lab in model.labels:
        tp = confusion[lab][lab]
        predicted = sum(confusion[g][lab] for g in model.labels)
        actual = sum(confusion[lab].values())
        precision = tp / predicted if predicted else 0.0
        recall = tp / actual if actual else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[lab] = ClassMetrics(precision, recall, f1)
    return EvalMetrics(
        confusion=confusion,
        accuracy=correct / n_test,
        per_class=per_class,
        n_test=n_test,
    )


def sentiment_report(
    predictions: list[tuple[Tweet, Prediction]], group_by: frozenset[str] | set[str]
) -> list[SentimentReport]:
    """Aggregate predicted labels per tracked hashtag plus an 'all' group.

    A tweet counts toward every tracked hashtag its text contains
    (case-insensitive) and always toward 'all'. Shares are emitted only
    for non-empty groups and sum to one within each. With no predictions
    at all, only the empty 'all' group is reported.
    """
    tags = sorted(tag.lstrip("#").lower() for tag in group_by)
    group_counts: dict[str, dict[SentimentLabel, int]] = {
        ALL_GROUP: {lab: 0 for lab in SentimentLabel}
    }
    if predictions:
        for tag in tags:
            group_counts[tag] = {lab: 0 for lab in SentimentLabel}
    for tweet, prediction in predictions:
        group_counts[ALL_GROUP][prediction.label] += 1
        lowered = tweet.text.lower()
        for tag in tags:
            if f"#{tag}" in lowered:
                group_counts[tag][prediction.label] += 1
    reports = []
    for key in [ALL_GROUP] + (tags if predictions else []):
        counts = group_counts[key]
        total = sum(counts.values())
        percentages = (
            {lab: counts[lab] / total for lab in SentimentLabel} if total else {}
        )
        reports.append(SentimentReport(group_key=key, counts=counts, percentages=percentages))
    return reports
