import pytest

from conftest import NEG, NEU, POS, make_doc
from kicaumine.corpus import Tweet
from kicaumine.evaluation import evaluate, k_fold, sentiment_report, split
from kicaumine.exceptions import EvaluationError, SplitError, UnknownLabelError
from kicaumine.model import Prediction, train


def numbered_docs(n, label=POS):
    return [make_doc(f"d{i:02d}", ["tok"], label) for i in range(n)]


@pytest.fixture
def three_class_model():
    """Each class has one telltale token; hand-verified prediction table:

    [jelek] -> negative (2/5 * 4/6 beats 2/5 * 1/6 and 1/5 * 1/4)
    [bagus] -> positive (symmetric)
    [biasa] -> neutral  (1/5 * 1/2 beats 2/5 * 1/6)
    """
    docs = [
        make_doc("n1", ["jelek", "jelek"], NEG),
        make_doc("n2", ["jelek"], NEG),
        make_doc("p1", ["bagus", "bagus"], POS),
        make_doc("p2", ["bagus"], POS),
        make_doc("u1", ["biasa"], NEU),
    ]
    return train(docs)


class TestSplit:
    def test_eighty_twenty(self):
        docs = numbered_docs(10)
        train_part, test_part = split(docs, 0.8, seed=42)
        assert len(train_part) == 8 and len(test_part) == 2
        train_ids = {d.source_id for d in train_part}
        test_ids = {d.source_id for d in test_part}
        assert train_ids.isdisjoint(test_ids)
        assert train_ids | test_ids == {d.source_id for d in docs}

    def test_deterministic(self):
        docs = numbered_docs(10)
        assert split(docs, 0.8, seed=42) == split(docs, 0.8, seed=42)

    def test_permutation_stable(self):
        docs = numbered_docs(9)
        forward = split(docs, 0.7, seed=5)
        backward = split(list(reversed(docs)), 0.7, seed=5)
        assert forward == backward

    def test_different_seeds_differ(self):
        docs = numbered_docs(30)
        assert split(docs, 0.5, seed=1) != split(docs, 0.5, seed=2)

    def test_single_document_rejected(self):
        with pytest.raises(SplitError):
            split(numbered_docs(1), 0.8, seed=1)

    def test_bad_fraction_rejected(self):
        for fraction in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(SplitError):
                split(numbered_docs(10), fraction, seed=1)

    def test_fraction_leaving_empty_side_rejected(self):
        with pytest.raises(SplitError):
            split(numbered_docs(2), 0.05, seed=1)


class TestKFold:
    def test_five_folds_of_ten(self):
        docs = numbered_docs(10)
        folds = k_fold(docs, 5, seed=42)
        assert len(folds) == 5
        seen = []
        for train_part, test_part in folds:
            assert len(test_part) == 2
            assert len(train_part) == 8
            assert {d.source_id for d in train_part}.isdisjoint(
                {d.source_id for d in test_part}
            )
            seen.extend(d.source_id for d in test_part)
        assert sorted(seen) == sorted(d.source_id for d in docs)

    def test_leave_one_out_boundary(self):
        docs = numbered_docs(4)
        folds = k_fold(docs, 4, seed=0)
        assert all(len(test) == 1 for _, test in folds)

    def test_uneven_sizes_differ_by_at_most_one(self):
        folds = k_fold(numbered_docs(7), 3, seed=0)
        sizes = [len(test) for _, test in folds]
        assert sorted(sizes) == [2, 2, 3]

    def test_k_below_two_rejected(self):
        with pytest.raises(SplitError):
            k_fold(numbered_docs(5), 1, seed=0)

    def test_k_exceeding_docs_rejected(self):
        with pytest.raises(SplitError):
            k_fold(numbered_docs(3), 4, seed=0)

    def test_deterministic(self):
        docs = numbered_docs(12)
        assert k_fold(docs, 3, seed=9) == k_fold(docs, 3, seed=9)


class TestEvaluate:
    def test_hand_filled_confusion_matrix(self, three_class_model):
        # 10 documents: 7 land on the diagonal, neutral is never predicted
        gold = (
            [make_doc(f"a{i}", ["jelek"], NEG) for i in range(3)]
            + [make_doc("a3", ["bagus"], NEG)]
            + [make_doc(f"b{i}", ["bagus"], POS) for i in range(4)]
            + [make_doc("c0", ["jelek"], NEU), make_doc("c1", ["bagus"], NEU)]
        )
        metrics = evaluate(three_class_model, gold)
        assert metrics.n_test == 10
        assert metrics.accuracy == pytest.approx(0.7)
        assert metrics.confusion[NEG] == {NEG: 3, POS: 1, NEU: 0}
        assert metrics.confusion[POS] == {NEG: 0, POS: 4, NEU: 0}
        assert metrics.confusion[NEU] == {NEG: 1, POS: 1, NEU: 0}
        assert metrics.per_class[NEG].precision == pytest.approx(3 / 4)
        assert metrics.per_class[NEG].recall == pytest.approx(3 / 4)
        assert metrics.per_class[NEG].f1 == pytest.approx(3 / 4)
        assert metrics.per_class[POS].precision == pytest.approx(2 / 3)
        assert metrics.per_class[POS].recall == pytest.approx(1.0)
        assert metrics.per_class[POS].f1 == pytest.approx(0.8)
        # the model never predicts neutral: zero-denominator convention
        assert metrics.per_class[NEU] == (0.0, 0.0, 0.0)

    def test_perfect_single_document(self, three_class_model):
        metrics = evaluate(three_class_model, [make_doc("x", ["jelek"], NEG)])
        assert metrics.accuracy == 1.0

    def test_mass_conservation(self, three_class_model):
        gold = [make_doc(f"g{i}", ["jelek" if i % 2 else "bagus"], NEG) for i in range(7)]
        metrics = evaluate(three_class_model, gold)
        cells = sum(sum(row.values()) for row in metrics.confusion.values())
        assert cells == metrics.n_test == 7

    def test_accuracy_equals_micro_recall(self, three_class_model):
        gold = (
            [make_doc(f"g{i}", ["jelek"], NEG) for i in range(4)]
            + [make_doc(f"h{i}", ["bagus"], POS) for i in range(3)]
            + [make_doc("u", ["biasa"], NEU)]
        )
        metrics = evaluate(three_class_model, gold)
        micro_recall = sum(metrics.confusion[lab][lab] for lab in three_class_model.labels) / sum(
            sum(row.values()) for row in metrics.confusion.values()
        )
        assert metrics.accuracy == pytest.approx(micro_recall)

    def test_empty_gold_rejected(self, three_class_model):
        with pytest.raises(EvaluationError):
            evaluate(three_class_model, [])

    def test_unlabeled_gold_rejected(self, three_class_model):
        with pytest.raises(EvaluationError):
            evaluate(three_class_model, [make_doc("x", ["jelek"])])

    def test_label_outside_model_rejected(self, toy_model):
        with pytest.raises(UnknownLabelError):
            evaluate(toy_model, [make_doc("x", ["bagus"], NEU)])


class TestSentimentReport:
    def predictions(self, rows):
        """rows: list of (text, label) -> (Tweet, Prediction) pairs."""
        pairs = []
        for i, (text, label) in enumerate(rows):
            prediction = Prediction(label=label, posteriors={label: 1.0}, oov_tokens=0)
            pairs.append((Tweet(str(i), text), prediction))
        return pairs

    def test_group_percentages(self):
        pairs = self.predictions(
            [("a #ridwankamil", POS)] * 3 + [("b #ridwankamil", NEG)]
        )
        reports = {r.group_key: r for r in sentiment_report(pairs, {"ridwankamil"})}
        group = reports["ridwankamil"]
        assert group.counts[POS] == 3 and group.counts[NEG] == 1
        assert group.percentages[POS] == pytest.approx(0.75)
        assert group.percentages[NEG] == pytest.approx(0.25)

    def test_empty_predictions_only_all_group(self):
        reports = sentiment_report([], {"ridwankamil"})
        assert [r.group_key for r in reports] == ["all"]
        assert reports[0].total == 0
        assert reports[0].percentages == {}

    def test_tweet_with_two_tracked_hashtags_counts_in_both(self):
        pairs = self.predictions([("x #a #b", POS)])
        reports = {r.group_key: r for r in sentiment_report(pairs, {"a", "b"})}
        assert reports["a"].counts[POS] == 1
        assert reports["b"].counts[POS] == 1
        assert reports["all"].counts[POS] == 1

    def test_case_insensitive_membership(self):
        pairs = self.predictions([("coblos #PilgubJabar", POS)])
        reports = {r.group_key: r for r in sentiment_report(pairs, {"pilgubjabar"})}
        assert reports["pilgubjabar"].total == 1

    def test_percentages_sum_to_one_for_nonempty_groups(self):
        pairs = self.predictions(
            [("x #a", POS), ("y #a", NEG), ("z #a", NEU), ("w #b", POS), ("v", NEG)]
        )
        for report in sentiment_report(pairs, {"a", "b"}):
            if report.total:
                assert sum(report.percentages.values()) == pytest.approx(1.0, abs=1e-9)

    def test_all_group_first_then_sorted_tags(self):
        pairs = self.predictions([("x #b #a", POS)])
        keys = [r.group_key for r in sentiment_report(pairs, {"b", "a"})]
        assert keys == ["all", "a", "b"]
