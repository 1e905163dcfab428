"""Keyword-based outcome detection and last-N-words explanation extraction.

The outcome detector scans the whole judgment text for lexicon phrases at
word boundaries, case-insensitively, and decides accepted (1) or rejected (0)
from the hits. The explanation extractor returns the exact character range of
the document's last N whitespace-delimited words, on the premise that the
operative reasoning sits at the end of a judgment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .corpus import ParseError, Source, ValidationError, _read_source
from .normalize import normalize_text

FAVORABLE = "favorable"
UNFAVORABLE = "unfavorable"

DEFAULT_FAVORABLE = (
    "dispose of",
    "disposed of",
    "accept",
    "allow",
    "allowed",
    "accepted",
    "upheld",
)

DEFAULT_UNFAVORABLE = (
    "dismiss",
    "dismissed",
    "discard",
    "discarded",
    "reject",
    "rejected",
)

POLICIES = ("latest_match", "count_majority")

#: Span lengths (in words) routinely swept when tuning explanation extraction.
SWEEP_WORD_COUNTS = (250, 300, 350, 400, 450, 500, 512, 520, 550)

_WORD_RE = re.compile(r"\S+")
_SENTENCE_SPLIT = re.compile(r"[.!?]+")


@dataclass(frozen=True)
class KeywordLexicon:
    """Phrase lists signalling an outcome for or against the appellant.

    Phrases must be lowercase and non-empty, and no phrase may appear in both
    lists. Multi-word phrases use single spaces.
    """

    favorable: tuple[str, ...] = DEFAULT_FAVORABLE
    unfavorable: tuple[str, ...] = DEFAULT_UNFAVORABLE

    def __post_init__(self) -> None:
        object.__setattr__(self, "favorable", tuple(self.favorable))
        object.__setattr__(self, "unfavorable", tuple(self.unfavorable))
        for phrase in self.favorable + self.unfavorable:
            if not phrase:
                raise ValidationError("lexicon phrases must be non-empty")
            if phrase != phrase.lower():
                raise ValidationError(f"lexicon phrase {phrase!r} must be lowercase")
        clash = set(self.favorable) & set(self.unfavorable)
        if clash:
            raise ValidationError(
                f"phrases in both favorable and unfavorable lists: {sorted(clash)}"
            )


DEFAULT_LEXICON = KeywordLexicon()


@dataclass(frozen=True)
class KeywordMatch:
    """One lexicon hit: the phrase, its polarity, and where it starts."""

    phrase: str
    polarity: str
    position: int


@dataclass(frozen=True)
class DecisionResult:
    """Binary outcome plus the keyword evidence that produced it.

    ``evidence_found`` is False exactly when no lexicon phrase matched; the
    label is then the default (rejected).
    """

    label: int
    matches: tuple[KeywordMatch, ...]
    evidence_found: bool

    def __post_init__(self) -> None:
        if self.evidence_found != bool(self.matches):
            raise ValidationError("evidence_found must mirror whether matches exist")


@dataclass(frozen=True)
class ExplanationResult:
    """The extracted tail span: exact character range and verbatim text."""

    n_words: int
    word_count_total: int
    char_range: tuple[int, int]
    text: str


@dataclass(frozen=True)
class WordStats:
    """Means of the per-document word and sentence counts."""

    mean_words: float
    mean_sentences: float


def _is_boundary_match(text: str, start: int, end: int) -> bool:
    before_ok = start == 0 or not text[start - 1].isalnum()
    after_ok = end == len(text) or not text[end].isalnum()
    return before_ok and after_ok


def find_keyword_matches(text: str, lexicon: KeywordLexicon = DEFAULT_LEXICON) -> list[KeywordMatch]:
    """All word-boundary lexicon hits in the text, in reading order.

    The search runs over whitespace-normalized text so multi-word phrases
    match across newlines and extra spaces; reported positions are mapped
    back to the original text. Matching is case-insensitive, and a boundary
    is any transition between alphanumeric and non-alphanumeric characters,
    so "disallowed" never matches "allow".
    """
    norm = normalize_text(text)
    haystack = norm.normalized_text
    origin: dict[int, int] = {}
    for original_pos, norm_pos in enumerate(norm.char_map):
        if norm_pos is not None and norm_pos not in origin:
            origin[norm_pos] = original_pos
    matches: list[KeywordMatch] = []
    for polarity, phrases in ((FAVORABLE, lexicon.favorable), (UNFAVORABLE, lexicon.unfavorable)):
        for phrase in phrases:
            pattern = re.compile(re.escape(phrase), re.IGNORECASE)
            for m in pattern.finditer(haystack):
                if _is_boundary_match(haystack, m.start(), m.end()):
                    matches.append(KeywordMatch(phrase, polarity, origin[m.start()]))
    matches.sort(key=lambda m: (m.position, len(m.phrase), m.phrase))
    return matches


def detect_decision(
    text: str,
    lexicon: KeywordLexicon = DEFAULT_LEXICON,
    policy: str = "latest_match",
) -> DecisionResult:
    """Decide accepted (1) or rejected (0) from lexicon hits over the text.

    ``latest_match`` takes the polarity of the hit closest to the end of the
    document; ``count_majority`` takes the more frequent polarity and breaks
    ties by the latest hit. With no hits the label defaults to rejected and
    ``evidence_found`` is False.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    matches = find_keyword_matches(text, lexicon)
    if not matches:
        return DecisionResult(label=0, matches=(), evidence_found=False)
    if policy == "count_majority":
        favorable = sum(1 for m in matches if m.polarity == FAVORABLE)
        unfavorable = len(matches) - favorable
        if favorable != unfavorable:
            label = 1 if favorable > unfavorable else 0
            return DecisionResult(label, tuple(matches), True)
    latest = matches[-1]
    label = 1 if latest.polarity == FAVORABLE else 0
    return DecisionResult(label, tuple(matches), True)


def extract_explanation(text: str, n_words: int) -> ExplanationResult:
    """Return the document's last n_words words as one verbatim text span.

    Words are maximal non-whitespace runs. The span runs from the start of
    the first selected word to the end of the last word, so internal spacing
    is preserved and trailing whitespace is excluded. Larger n gives a
    superstring span.
    """
    if n_words < 1:
        raise ValueError(f"n_words must be >= 1, got {n_words}")
    words = list(_WORD_RE.finditer(text))
    if not words:
        return ExplanationResult(n_words, 0, (0, 0), "")
    first = words[max(0, len(words) - n_words)]
    start, end = first.start(), words[-1].end()
    return ExplanationResult(n_words, len(words), (start, end), text[start:end])


def coverage_percentage(docs: Sequence[str], n_words: int) -> float:
    """Mean percentage of each document's words covered by its last-n span.

    A document with W words contributes 100 * min(n_words, W) / W; an empty
    document counts as fully covered.
    """
    if not docs:
        raise ValueError("coverage_percentage needs at least one document")
    if n_words < 1:
        raise ValueError(f"n_words must be >= 1, got {n_words}")
    total = 0.0
    for text in docs:
        count = len(_WORD_RE.findall(text))
        total += 100.0 if count == 0 else 100.0 * min(n_words, count) / count
    return total / len(docs)


def dataset_word_stats(docs: Sequence[str]) -> WordStats:
    """Mean word and sentence counts over the documents.

    A sentence is a segment with visible content ending at a run of
    '.', '!' or '?' characters, or at the end of the text. This is a
    reporting heuristic, not a linguistic segmenter.
    """
    if not docs:
        raise ValueError("dataset_word_stats needs at least one document")
    words = [len(_WORD_RE.findall(text)) for text in docs]
    sentences = [
        sum(1 for segment in _SENTENCE_SPLIT.split(text) if segment.strip())
        for text in docs
    ]
    return WordStats(
        mean_words=sum(words) / len(docs),
        mean_sentences=sum(sentences) / len(docs),
    )


def read_lexicon(source: Source) -> KeywordLexicon:
    """Load a lexicon from a plain-text file.

    Phrases appear one per line under ``[favorable]`` and ``[unfavorable]``
    headers; blank lines and ``#`` comments are skipped, and phrases are
    lowercased on load.
    """
    sections: dict[str, list[str]] = {FAVORABLE: [], UNFAVORABLE: []}
    current: list[str] | None = None
    for lineno, raw in enumerate(_read_source(source).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name not in sections:
                raise ParseError(
                    f"line {lineno}: unknown section {name!r}; expected"
                    f" [{FAVORABLE}] or [{UNFAVORABLE}]"
                )
            current = sections[name]
            continue
        if current is None:
            raise ParseError(
                f"line {lineno}: phrase before any [{FAVORABLE}]/[{UNFAVORABLE}] header"
            )
        current.append(line.lower())
    return KeywordLexicon(tuple(sections[FAVORABLE]), tuple(sections[UNFAVORABLE]))
