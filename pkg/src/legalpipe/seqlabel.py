"""Offset-carrying tokenization, BIO tag conversion, and the CoNLL codec.

Spans and BIO tag sequences are two views of the same annotation. Conversion
keeps exact character offsets so a round trip through tags reproduces every
token-aligned span.

Part-of-speech tags are consumed as ready-made (word, tag) pairs; this module
only aligns them to subword positions and maps them to integer ids. No tagger
and no subword tokenizer is run here.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import EntitySpan, ParseError, Source, ValidationError, _read_source, _write_sink

TOKENIZE_MODES = ("whitespace", "punct_split")

_WORD_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    """A token with its half-open character range in the source text."""

    text: str
    start: int
    end: int


@dataclass(frozen=True)
class BioDocument:
    """Parallel token and tag sequences; tags are O, B-<label> or I-<label>."""

    tokens: tuple[Token, ...]
    tags: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "tags", tuple(self.tags))
        if len(self.tokens) != len(self.tags):
            raise ValidationError(
                f"{len(self.tokens)} tokens but {len(self.tags)} tags"
            )


@dataclass(frozen=True)
class PosVocabulary:
    """Injective mapping from POS tag to integer id; id 0 is reserved.

    Id 0 stands for unknown tags and special (non-word) positions and is
    never assigned to a real tag.
    """

    tag_to_id: dict[str, int]

    def __post_init__(self) -> None:
        ids = list(self.tag_to_id.values())
        if len(set(ids)) != len(ids):
            raise ValidationError("vocabulary ids must be unique")
        for tag, tag_id in self.tag_to_id.items():
            if not tag:
                raise ValidationError("vocabulary tags must be non-empty")
            if tag_id < 1:
                raise ValidationError(
                    f"tag {tag!r}: id {tag_id} invalid, ids start at 1 (0 is reserved)"
                )

    @classmethod
    def build(cls, tags: Iterable[str]) -> "PosVocabulary":
        """Assign ids 1..K to tags in first-seen order."""
        mapping: dict[str, int] = {}
        for tag in tags:
            if tag not in mapping:
                mapping[tag] = len(mapping) + 1
        return cls(mapping)

    def id_for(self, tag: str) -> int:
        """Return the tag's id, or 0 with a warning for unseen tags."""
        tag_id = self.tag_to_id.get(tag)
        if tag_id is None:
            warnings.warn(f"POS tag {tag!r} not in vocabulary; using id 0")
            return 0
        return tag_id

    @property
    def size(self) -> int:
        """Embedding-table size: number of real tags plus the reserved id 0."""
        return max(self.tag_to_id.values(), default=0) + 1


def tokenize(text: str, mode: str = "punct_split") -> list[Token]:
    """Split text into offset-exact tokens.

    ``whitespace`` keeps maximal non-whitespace runs; ``punct_split``
    additionally detaches leading and trailing non-alphanumeric characters
    as single-character tokens ("allowed." -> "allowed", ".").
    """
    if mode not in TOKENIZE_MODES:
        raise ValueError(f"unknown tokenize mode {mode!r}; expected one of {TOKENIZE_MODES}")
    tokens: list[Token] = []
    for m in _WORD_RE.finditer(text):
        if mode == "whitespace":
            tokens.append(Token(m.group(), m.start(), m.end()))
        else:
            _split_punct(text, m.start(), m.end(), tokens)
    return tokens


def _split_punct(text: str, start: int, end: int, out: list[Token]) -> None:
    s, e = start, end
    while s < e and not text[s].isalnum():
        out.append(Token(text[s], s, s + 1))
        s += 1
    trailing: list[Token] = []
    while e > s and not text[e - 1].isalnum():
        trailing.append(Token(text[e - 1], e - 1, e))
        e -= 1
    if s < e:
        out.append(Token(text[s:e], s, e))
    out.extend(reversed(trailing))


def _check_tokens(tokens: Sequence[Token]) -> None:
    pos = 0
    for tok in tokens:
        if tok.start < pos or tok.end <= tok.start:
            raise ValidationError(
                f"tokens must be ordered and non-overlapping; offending token"
                f" {tok.text!r} at ({tok.start}, {tok.end})"
            )
        pos = tok.end


def _intersects(tok: Token, span: EntitySpan) -> bool:
    return tok.start < span.end and span.start < tok.end


def spans_to_bio(
    tokens: Sequence[Token],
    spans: Iterable[EntitySpan],
    strict: bool = False,
) -> BioDocument:
    """Convert character spans over the tokens' source text to BIO tags.

    The first token intersecting a span gets B-<label>, later intersecting
    tokens I-<label>, everything else O. By default a span whose boundaries
    cut through a token is expanded to whole tokens; with ``strict=True``
    misaligned boundaries raise instead. Input spans must not overlap each
    other (any label).
    """
    _check_tokens(tokens)
    ordered = sorted(spans, key=lambda s: (s.start, s.end, s.label))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.start < prev.end:
            raise ValidationError(
                f"overlapping input spans ({prev.start}, {prev.end}, {prev.label})"
                f" and ({cur.start}, {cur.end}, {cur.label})"
            )
    tags = ["O"] * len(tokens)
    for span in ordered:
        hit = [i for i, tok in enumerate(tokens) if _intersects(tok, span)]
        if strict:
            if not hit or tokens[hit[0]].start != span.start or tokens[hit[-1]].end != span.end:
                raise ValidationError(
                    f"span ({span.start}, {span.end}, {span.label}) is not aligned"
                    " to token boundaries"
                )
        free = [i for i in hit if tags[i] == "O"]
        if not free:
            continue  # non-strict: span swallowed by an earlier span's expansion
        tags[free[0]] = f"B-{span.label}"
        for i in free[1:]:
            tags[i] = f"I-{span.label}"
    return BioDocument(tuple(tokens), tuple(tags))


def _tag_label(tag: str) -> str | None:
    """Label of a B-/I- tag, None for O; raises on anything else."""
    if tag == "O":
        return None
    if len(tag) > 2 and tag[1] == "-" and tag[0] in "BI":
        return tag[2:]
    raise ValidationError(f"unknown tag {tag!r}")


def bio_to_spans(doc: BioDocument, source_text: str) -> list[EntitySpan]:
    """Extract entity spans from a BIO-tagged document.

    Each maximal B-L (I-L)* run becomes one span from the run's first token
    start to its last token end. A stray I-L with no live L run to its left
    is repaired to B-L before extraction.
    """
    for tok in doc.tokens:
        if tok.end > len(source_text) or source_text[tok.start:tok.end] != tok.text:
            raise ValidationError(
                f"token {tok.text!r} at ({tok.start}, {tok.end}) does not match"
                " the source text"
            )
    spans: list[EntitySpan] = []
    run_label: str | None = None
    run_start = run_end = 0
    for tok, tag in zip(doc.tokens, doc.tags):
        label = _tag_label(tag)
        continues = tag.startswith("I-") and label == run_label
        if continues:
            run_end = tok.end
            continue
        if run_label is not None:
            spans.append(EntitySpan(run_start, run_end, run_label))
        run_label = label
        run_start, run_end = tok.start, tok.end
    if run_label is not None:
        spans.append(EntitySpan(run_start, run_end, run_label))
    return spans


def align_pos_to_subwords(
    word_pos: Sequence[str],
    subword_word_ids: Sequence[int | None],
    vocab: PosVocabulary,
) -> list[int]:
    """Map word-level POS tags onto a subword sequence as integer ids.

    Each subword takes the id of its word's tag; None word indexes (special
    tokens) take the reserved id 0, as do unknown tags.
    """
    ids: list[int] = []
    for word_id in subword_word_ids:
        if word_id is None:
            ids.append(0)
            continue
        if not 0 <= word_id < len(word_pos):
            raise IndexError(
                f"word index {word_id} out of range for {len(word_pos)} words"
            )
        ids.append(vocab.id_for(word_pos[word_id]))
    return ids


def detokenize(tokens: Sequence[Token]) -> str:
    """Rebuild a text in which the tokens sit at their recorded offsets.

    Gaps between tokens are filled with spaces; exact for any text whose
    inter-token material is single spaces (e.g. normalized text tokenized in
    whitespace mode).
    """
    parts: list[str] = []
    pos = 0
    for tok in tokens:
        parts.append(" " * (tok.start - pos))
        parts.append(tok.text)
        pos = tok.end
    return "".join(parts)


def write_conll(docs: Iterable[BioDocument], sink: Source) -> None:
    """Write sentences as ``token<TAB>tag`` lines with blank-line separators.

    The codec keeps only token text and tag; character offsets are not
    representable and are synthesized on read.
    """
    blocks: list[str] = []
    for i, doc in enumerate(docs):
        if not doc.tokens:
            raise ValidationError(f"sentence {i}: cannot write an empty sentence")
        lines = []
        for tok, tag in zip(doc.tokens, doc.tags):
            if "\t" in tok.text or "\n" in tok.text or "\t" in tag or "\n" in tag:
                raise ValidationError(
                    f"sentence {i}: token or tag contains a tab or newline"
                )
            lines.append(f"{tok.text}\t{tag}")
        blocks.append("\n".join(lines))
    _write_sink(sink, "\n\n".join(blocks) + "\n")


def read_conll(source: Source) -> list[BioDocument]:
    """Read ``token<TAB>tag`` sentences separated by blank lines.

    Token offsets are synthesized by joining the sentence's tokens with
    single spaces.
    """
    text = _read_source(source)
    docs: list[BioDocument] = []
    tokens: list[Token] = []
    tags: list[str] = []
    pos = 0

    def flush() -> None:
        nonlocal tokens, tags, pos
        if tokens:
            docs.append(BioDocument(tuple(tokens), tuple(tags)))
        tokens, tags, pos = [], [], 0

    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            flush()
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise ParseError(
                f"line {lineno}: expected 2 tab-separated columns, got {len(columns)}"
            )
        word, tag = columns
        if not word or not tag:
            raise ParseError(f"line {lineno}: empty token or tag")
        tokens.append(Token(word, pos, pos + len(word)))
        tags.append(tag)
        pos += len(word) + 1
    flush()
    return docs


def write_pos_vocabulary(vocab: PosVocabulary, sink: Source) -> None:
    """Persist a vocabulary as ``tag<TAB>id`` lines, sorted by id."""
    lines = [
        f"{tag}\t{tag_id}"
        for tag, tag_id in sorted(vocab.tag_to_id.items(), key=lambda kv: kv[1])
    ]
    _write_sink(sink, "\n".join(lines) + ("\n" if lines else ""))


def read_pos_vocabulary(source: Source) -> PosVocabulary:
    """Load a ``tag<TAB>id`` vocabulary file."""
    mapping: dict[str, int] = {}
    for lineno, line in enumerate(_read_source(source).splitlines(), start=1):
        if not line.strip():
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise ParseError(
                f"line {lineno}: expected 2 tab-separated columns, got {len(columns)}"
            )
        tag, raw_id = columns
        try:
            tag_id = int(raw_id)
        except ValueError:
            raise ParseError(f"line {lineno}: id {raw_id!r} is not an integer") from None
        if tag in mapping:
            raise ParseError(f"line {lineno}: duplicate tag {tag!r}")
        mapping[tag] = tag_id
    return PosVocabulary(mapping)
