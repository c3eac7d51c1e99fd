"""Word-file parsing and access to the bundled data files.

All word resources share one line format: UTF-8 text, one entry per
line, lines starting with '#' are comments, trailing whitespace is
trimmed. The package bundles an Indonesian stopword list, root-word
dictionary, POS lexicon, language-detection wordlist, and a six-tweet
demo corpus so the whole pipeline runs offline out of the box.
"""

from functools import lru_cache
from importlib.resources import files

from .exceptions import ConfigError
from .preprocess import PipelineConfig, PosTag

_DATA = files("kicaumine.data")

STOPWORDS_FILE = "stopwords_id.txt"
ROOT_WORDS_FILE = "root_words_id.txt"
POS_LEXICON_FILE = "pos_lexicon_id.tsv"
WORDLIST_FILE = "wordlist_id.txt"
DEMO_CORPUS_FILE = "demo_tweets.jsonl"


def parse_word_lines(lines) -> list[str]:
    """Entries from word-file lines: comments and blanks skipped."""
    entries = []
    for raw in lines:
        line = raw.rstrip()
        if not line or line.startswith("#"):
            continue
        entries.append(line)
    return entries


def load_word_file(path) -> list[str]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_word_lines(handle)


def _bundled_lines(name: str) -> list[str]:
    return parse_word_lines(_DATA.joinpath(name).read_text(encoding="utf-8").splitlines())


def demo_corpus_path() -> str:
    """Filesystem path of the bundled six-tweet demo corpus."""
    return str(_DATA.joinpath(DEMO_CORPUS_FILE))


def load_stopwords(path=None) -> frozenset[str]:
    entries = load_word_file(path) if path else _bundled_lines(STOPWORDS_FILE)
    return frozenset(entries)


def load_wordlist(path=None) -> frozenset[str]:
    entries = load_word_file(path) if path else _bundled_lines(WORDLIST_FILE)
    return frozenset(entries)


def load_root_words(path=None) -> frozenset[str]:
    """Stemmer root dictionary; entries must be lowercase letters only."""
    entries = load_word_file(path) if path else _bundled_lines(ROOT_WORDS_FILE)
    for entry in entries:
        if not entry.isalpha() or entry != entry.lower():
            raise ConfigError(f"root word {entry!r} is not lowercase letters")
    return frozenset(entries)


def load_hashtags(path) -> frozenset[str]:
    """Hashtag set file: one tag per line, stored without the '#' prefix."""
    return frozenset(tag.lower() for tag in load_word_file(path))


def load_pos_lexicon(path=None) -> dict[str, PosTag]:
    """POS lexicon: `word<TAB>TAG` per line, TAG one of the PosTag names."""
    entries = load_word_file(path) if path else _bundled_lines(POS_LEXICON_FILE)
    lexicon: dict[str, PosTag] = {}
    for entry in entries:
        word, sep, tag_name = entry.partition("\t")
        if not sep or not word or not tag_name:
            raise ConfigError(f"malformed POS lexicon entry {entry!r}")
        try:
            tag = PosTag[tag_name.strip().upper()]
        except KeyError:
            raise ConfigError(f"unknown POS tag {tag_name!r} for word {word!r}") from None
        lexicon[word] = tag
    return lexicon


@lru_cache(maxsize=1)
def _bundled_resources():
    return (
        load_stopwords(),
        load_pos_lexicon(),
        load_root_words(),
    )


def default_pipeline_config(
    enable_stopwords: bool = True,
    enable_pos: bool = False,
    enable_stemming: bool = True,
) -> PipelineConfig:
    """Pipeline configuration backed by the bundled word resources."""
    stopwords, lexicon, roots = _bundled_resources()
    return PipelineConfig(
        stopword_list=stopwords,
        enable_stopwords=enable_stopwords,
        enable_pos=enable_pos,
        enable_stemming=enable_stemming,
        pos_lexicon=lexicon,
        root_words=roots,
    )
