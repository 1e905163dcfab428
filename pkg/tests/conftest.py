"""Shared randomized-corpus builders. Every generator takes a seeded Random."""

from __future__ import annotations

import random

from legalpipe.corpus import AnnotatedDocument, EntitySpan, JUDGMENT, JUDGMENT_LABELS

WORDS = (
    "the", "appeal", "court", "order", "section", "act", "judge", "petitioner",
    "respondent", "filed", "against", "under", "state", "case", "dated", "high",
    "supreme", "civil", "criminal", "record", "evidence", "witness", "trial",
)

PUNCT_RUNS = (".", ",", ";", "--", "...", "!!", ")",)

WHITESPACE_RUNS = (" ", "  ", "   ", "\n", "\n\n", "\t", " \t ", "\r\n")

LABELS = tuple(sorted(JUDGMENT_LABELS))


def make_token_aligned_doc(rng: random.Random, doc_id: str) -> AnnotatedDocument:
    """A document of space-separated words with spans on word boundaries."""
    n_words = rng.randint(1, 40)
    words = [rng.choice(WORDS) for _ in range(n_words)]
    text = " ".join(words)
    offsets = []
    pos = 0
    for word in words:
        offsets.append((pos, pos + len(word)))
        pos += len(word) + 1
    spans = []
    i = 0
    while i < n_words:
        if rng.random() < 0.3:
            j = min(n_words, i + rng.randint(1, 4))
            spans.append(EntitySpan(offsets[i][0], offsets[j - 1][1], rng.choice(LABELS)))
            i = j
        else:
            i += 1
    return AnnotatedDocument(doc_id, text, JUDGMENT, tuple(spans))


def make_messy_doc(rng: random.Random, doc_id: str) -> AnnotatedDocument:
    """A document with injected whitespace/symbol runs and word-aligned spans.

    Spans start at a word start and end at a word end, so each contains at
    least one alphanumeric character.
    """
    n_words = rng.randint(1, 30)
    parts: list[str] = []
    word_offsets: list[tuple[int, int]] = []
    pos = 0
    if rng.random() < 0.3:
        lead = rng.choice(WHITESPACE_RUNS)
        parts.append(lead)
        pos += len(lead)
    for i in range(n_words):
        word = rng.choice(WORDS)
        parts.append(word)
        word_offsets.append((pos, pos + len(word)))
        pos += len(word)
        if i < n_words - 1 or rng.random() < 0.3:
            filler = rng.choice(WHITESPACE_RUNS)
            if rng.random() < 0.4:
                filler = rng.choice(PUNCT_RUNS) + rng.choice(WHITESPACE_RUNS)
            parts.append(filler)
            pos += len(filler)
    text = "".join(parts)
    spans = []
    i = 0
    while i < n_words:
        if rng.random() < 0.35:
            j = min(n_words, i + rng.randint(1, 3))
            spans.append(
                EntitySpan(word_offsets[i][0], word_offsets[j - 1][1], rng.choice(LABELS))
            )
            i = j
        else:
            i += 1
    return AnnotatedDocument(doc_id, text, JUDGMENT, tuple(spans))


def make_span_set(
    rng: random.Random,
    max_spans: int = 6,
    text_len: int = 30,
    labels: tuple[str, ...] = ("ORG", "DATE", "COURT", "GPE"),
) -> list[EntitySpan]:
    """Random spans with no same-label overlaps, as one model's output."""
    spans: list[EntitySpan] = []
    for _ in range(rng.randint(0, max_spans)):
        start = rng.randint(0, text_len - 2)
        end = rng.randint(start + 1, min(text_len, start + 8))
        label = rng.choice(labels)
        if any(s.label == label and s.start < end and start < s.end for s in spans):
            continue
        spans.append(EntitySpan(start, end, label))
    return spans
