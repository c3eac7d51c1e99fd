"""kicaumine: emoticon-supervised Indonesian tweet sentiment mining.

Pipeline: ingest tweet exports, filter by hashtag and language, label by
emoticon, preprocess (cleanse, case fold, tokenize, stopwords, POS,
stem), train a multinomial Naive Bayes classifier with add-one
smoothing, and evaluate against manual gold labels.
"""

from .corpus import (
    CorpusStats,
    LabeledTweet,
    LabelSource,
    SentimentLabel,
    Tweet,
    distant_label,
    filter_hashtags,
    filter_language,
    ingest_jsonl,
)
from .evaluation import EvalMetrics, SentimentReport, evaluate, k_fold, sentiment_report, split
from .model import (
    NbModel,
    Prediction,
    class_prior,
    classify,
    load_model,
    log_score,
    save_model,
    token_likelihood,
    train,
)
from .preprocess import (
    Document,
    PipelineConfig,
    PosTag,
    case_fold,
    cleanse,
    extract_unigrams,
    pos_tag,
    remove_stopwords,
    run_pipeline,
    tokenize,
)
from .resources import default_pipeline_config
from .stemming import ConfixStemmer

__version__ = "0.1.0"

__all__ = [
    "ConfixStemmer",
    "CorpusStats",
    "Document",
    "EvalMetrics",
    "LabelSource",
    "LabeledTweet",
    "NbModel",
    "PipelineConfig",
    "PosTag",
    "Prediction",
    "SentimentReport",
    "SentimentLabel",
    "Tweet",
    "case_fold",
    "class_prior",
    "classify",
    "cleanse",
    "default_pipeline_config",
    "distant_label",
    "evaluate",
    "extract_unigrams",
    "filter_hashtags",
    "filter_language",
    "ingest_jsonl",
    "k_fold",
    "load_model",
    "log_score",
    "pos_tag",
    "remove_stopwords",
    "run_pipeline",
    "save_model",
    "sentiment_report",
    "split",
    "token_likelihood",
    "tokenize",
    "train",
]
