"""Tweet text normalization: from raw post to a clean token Document.

Stage order is fixed: cleanse -> case fold -> tokenize -> stopword
removal -> POS tag filter -> stem. The first two stages are idempotent;
every stage after tokenization can only keep or drop tokens (stemming
maps one to one), so token counts never grow along the chain.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, NamedTuple

from . import _kernels
from .corpus import LabeledTweet, SentimentLabel, Tweet
from .exceptions import ContractError
from .stemming import stemmer_for

logger = logging.getLogger(__name__)

_URL_RE = re.compile(r"(?:https?://|www\.)\S*")
_MENTION_RE = re.compile(r"@\S+")
_WHITESPACE_RE = re.compile(r"\s+")


class PosTag(Enum):
    """Coarse word classes assigned by lexicon lookup."""

    NOUN = "noun"
    VERB = "verb"
    ADJ = "adj"
    ADV = "adv"
    FUNC = "func"  # closed-class function words
    OTHER = "other"  # not in the lexicon

    def __str__(self):
        return self.value


class PosTaggedToken(NamedTuple):
    token: str
    tag: PosTag


@dataclass(frozen=True)
class Document:
    """Preprocessed, ordered token sequence with an optional label.

    Tokens must be non-empty lowercase letter strings, which the pipeline
    guarantees and construction enforces. An empty token tuple is legal
    (the tweet was consumed entirely by preprocessing) but such documents
    are flagged via ``empty`` and excluded from training.
    """

    source_id: str
    tokens: tuple[str, ...]
    label: SentimentLabel | None = None

    def __post_init__(self):
        for token in self.tokens:
            if not token or not token.isalpha() or token != token.lower():
                raise ValueError(f"invalid document token {token!r}")

    @property
    def empty(self) -> bool:
        return not self.tokens


# Tag filter applied when the POS stage is enabled: content classes plus
# unknown words; only lexicon-known function words and adverbs drop out.
DEFAULT_POS_KEEP_TAGS = frozenset({PosTag.NOUN, PosTag.VERB, PosTag.ADJ, PosTag.OTHER})


@dataclass(frozen=True)
class PipelineConfig:
    """Switches and word resources for the preprocessing chain.

    The POS stage defaults to off so that the baseline feature set is
    plain unigrams; when enabled it keeps only ``pos_keep_tags``. Word
    resources default to empty; use :func:`default_pipeline_config` for a
    configuration backed by the bundled data files.
    """

    stopword_list: frozenset[str] = frozenset()
    enable_stopwords: bool = True
    enable_pos: bool = False
    pos_keep_tags: frozenset[PosTag] = DEFAULT_POS_KEEP_TAGS
    enable_stemming: bool = True
    pos_lexicon: Mapping[str, PosTag] = field(default_factory=dict)
    root_words: frozenset[str] = frozenset()


def cleanse(text: str) -> str:
    """Strip tweet noise: URLs, mentions, a leading RT, '#', emoticons.

    The removal rules run in that order, then whitespace runs collapse to
    single spaces and the ends are trimmed. The whole pass repeats until
    the text stops changing, because one removal can expose another match
    (e.g. ``::))`` leaves ``:)`` behind); iterating to the fixed point
    makes cleansing idempotent on every input.
    """
    previous = None
    while text != previous:
        previous = text
        text = _cleanse_once(text)
    return text


def _cleanse_once(text: str) -> str:
    text = _URL_RE.sub("", text)
    text = _MENTION_RE.sub("", text)
    lead = text.lstrip()
    if lead.startswith("RT") and (len(lead) == 2 or lead[2].isspace()):
        text = lead[2:]
    text = text.replace("#", "")
    text = text.replace(":)", "").replace(":(", "")
    return _WHITESPACE_RE.sub(" ", text).strip()


def case_fold(text: str) -> str:
    """Lowercase the text and reduce it to letters separated by single spaces.

    Every non-letter acts as a delimiter: it becomes a space, runs of
    spaces collapse, and the result is trimmed. Idempotent.
    """
    return _kernels.strip_non_letters(text.lower())


def tokenize(text: str) -> list[str]:
    """Split case-folded text on spaces.

    The input must already be case-folded (letters and spaces only);
    anything else is a contract violation reported with the offending
    character.
    """
    for ch in set(text):
        if ch != " " and not ch.isalpha():
            offender = next(c for c in text if c != " " and not c.isalpha())
            raise ContractError(
                f"tokenize expects case-folded text; found non-letter {offender!r}"
            )
    return text.split()


def remove_stopwords(tokens: list[str], stopwords: frozenset[str] | set[str]) -> list[str]:
    """Drop tokens present in the stopword set, preserving order."""
    return [t for t in tokens if t not in stopwords]


def pos_tag(tokens: list[str], lexicon: Mapping[str, PosTag]) -> list[PosTaggedToken]:
    """Tag each token by exact lexicon lookup; unknown words get OTHER."""
    return [PosTaggedToken(t, lexicon.get(t, PosTag.OTHER)) for t in tokens]


def run_pipeline(item: Tweet | LabeledTweet, config: PipelineConfig) -> Document:
    """Run the full preprocessing chain on one tweet.

    Accepts a raw or labeled tweet; the label, when present, is carried
    through untouched. Stages run in the fixed order with the optional
    ones gated by ``config``.
    """
    if isinstance(item, LabeledTweet):
        tweet, label = item.tweet, item.label
    else:
        tweet, label = item, None
    tokens = tokenize(case_fold(cleanse(tweet.text)))
    if config.enable_stopwords:
        tokens = remove_stopwords(tokens, config.stopword_list)
    if config.enable_pos:
        tagged = pos_tag(tokens, config.pos_lexicon)
        tokens = [entry.token for entry in tagged if entry.tag in config.pos_keep_tags]
    if config.enable_stemming:
        stemmer = stemmer_for(config.root_words)
        tokens = [stemmer.stem(t) for t in tokens]
    return Document(source_id=tweet.id, tokens=tuple(tokens), label=label)


def extract_unigrams(doc: Document) -> Counter:
    """Token -> occurrence count multiset of the document."""
    return Counter(doc.tokens)
