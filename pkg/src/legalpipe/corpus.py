"""Annotated-corpus types, label taxonomies, JSON codecs, and dataset statistics.

All character offsets in this package are Unicode code-point indexes, i.e.
plain Python string indexes. They are never byte offsets. Corpus files whose
offsets count UTF-8 bytes or UTF-16 units must be converted before loading,
otherwise every span over a non-ASCII document will be silently wrong.

Corpus file schema (one file per document section)::

    [
      {
        "id": "doc-1",
        "data": {"text": "..."},
        "annotations": [{"start": 0, "end": 5, "label": "COURT"}, ...]
      },
      ...
    ]

Prediction files use the identical schema; the annotations are then the
predicted spans. Decision corpora are arrays of
``{"id": ..., "text": ..., "label": 0|1|null}``.

Unknown fields in input records are ignored, never an error.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Union

Source = Union[str, Path, IO[str], IO[bytes]]

PREAMBLE = "preamble"
JUDGMENT = "judgment"
SECTIONS = (PREAMBLE, JUDGMENT)

PREAMBLE_LABELS = frozenset({
    "COURT", "PETITIONER", "LAWYER", "RESPONDENT", "JUDGE",
})

JUDGMENT_LABELS = frozenset({
    "STATUTE", "PRECEDENT", "JUDGE", "GPE", "OTHER_PERSON", "DATE",
    "PROVISION", "CASE_NUMBER", "COURT", "ORG", "PETITIONER", "WITNESS",
    "RESPONDENT",
})


class ParseError(ValueError):
    """A file or record is structurally malformed."""


class ValidationError(ValueError):
    """Well-formed input violates a semantic invariant."""


def labels_for_section(section: str) -> frozenset[str]:
    """Return the label taxonomy of a document section."""
    if section == PREAMBLE:
        return PREAMBLE_LABELS
    if section == JUDGMENT:
        return JUDGMENT_LABELS
    raise ValidationError(f"unknown section {section!r}; expected one of {SECTIONS}")


@dataclass(frozen=True, order=True)
class EntitySpan:
    """Half-open character interval [start, end) carrying an entity label."""

    start: int
    end: int
    label: str

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValidationError(
                f"span ({self.start}, {self.end}) must satisfy 0 <= start < end"
            )
        if not self.label:
            raise ValidationError("span label must be non-empty")


@dataclass(frozen=True)
class AnnotatedDocument:
    """A document with labeled entity spans over its text.

    ``section`` selects the label taxonomy. It may be None for span sets that
    are not taxonomy-checked, e.g. raw model predictions.
    """

    id: str
    text: str
    section: str | None = None
    spans: tuple[EntitySpan, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "spans", tuple(self.spans))


@dataclass(frozen=True)
class DecisionDocument:
    """A judgment text with an optional binary outcome (1 accepted, 0 rejected)."""

    id: str
    text: str
    label: int | None = None

    def __post_init__(self) -> None:
        if self.label is not None and self.label not in (0, 1):
            raise ValidationError(
                f"document {self.id!r}: label must be 0, 1 or null, got {self.label!r}"
            )


@dataclass(frozen=True)
class CorpusStats:
    """Document/span counts and the per-label span distribution."""

    documents: int
    spans: int
    label_counts: dict[str, int]

    def __post_init__(self) -> None:
        if self.spans != sum(self.label_counts.values()):
            raise ValidationError("span total must equal the sum of per-label counts")
        if self.documents < 0 or any(c < 0 for c in self.label_counts.values()):
            raise ValidationError("counts must be nonnegative")


def validate_document(doc: AnnotatedDocument) -> None:
    """Check span bounds, taxonomy membership, and duplicate annotations.

    Duplicate (start, end, label) triples are rejected: annotations are a
    set, and duplicates indicate corrupt input.
    """
    if doc.section is not None:
        taxonomy = labels_for_section(doc.section)
    else:
        taxonomy = None
    seen: set[EntitySpan] = set()
    for span in doc.spans:
        if span.end > len(doc.text):
            raise ValidationError(
                f"document {doc.id!r}: span ({span.start}, {span.end}, {span.label})"
                f" out of bounds for text of length {len(doc.text)}"
            )
        if taxonomy is not None and span.label not in taxonomy:
            raise ValidationError(
                f"document {doc.id!r}: label {span.label!r} is not in the"
                f" {doc.section} taxonomy"
            )
        if span in seen:
            raise ValidationError(
                f"document {doc.id!r}: duplicate span"
                f" ({span.start}, {span.end}, {span.label})"
            )
        seen.add(span)


def _read_source(source: Source) -> str:
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = Path(source).read_bytes()
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return data


def _write_sink(sink: Source, payload: str) -> None:
    if hasattr(sink, "write"):
        try:
            sink.write(payload)
        except TypeError:
            sink.write(payload.encode("utf-8"))
    else:
        Path(sink).write_text(payload, encoding="utf-8")


def _parse_json_array(source: Source, what: str) -> list:
    text = _read_source(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(data, list):
        raise ParseError(f"{what}: top level must be an array of records")
    return data


def load_ner_corpus(
    source: Source, section: str | None = None
) -> list[AnnotatedDocument]:
    """Load an annotated corpus (or prediction file) from JSON.

    When ``section`` is given, every label is checked against that section's
    taxonomy; with ``section=None`` only structural and bounds validation is
    performed. Record order is preserved.
    """
    if section is not None and section not in SECTIONS:
        raise ValidationError(f"unknown section {section!r}; expected one of {SECTIONS}")
    data = _parse_json_array(source, "corpus")
    docs: list[AnnotatedDocument] = []
    seen_ids: set[str] = set()
    for i, record in enumerate(data):
        where = f"record {i}"
        if not isinstance(record, dict):
            raise ParseError(f"{where}: expected an object, got {type(record).__name__}")
        doc_id = record.get("id")
        if not isinstance(doc_id, str) or not doc_id:
            raise ParseError(f"{where}: 'id' must be a non-empty string")
        where = f"record {i} (id={doc_id!r})"
        payload = record.get("data")
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            raise ParseError(f"{where}: 'data.text' must be a string")
        annotations = record.get("annotations", [])
        if not isinstance(annotations, list):
            raise ParseError(f"{where}: 'annotations' must be an array")
        spans = []
        for j, ann in enumerate(annotations):
            if not isinstance(ann, dict):
                raise ParseError(f"{where}: annotation {j} must be an object")
            start, end, label = ann.get("start"), ann.get("end"), ann.get("label")
            if not isinstance(start, int) or isinstance(start, bool):
                raise ParseError(f"{where}: annotation {j}: 'start' must be an integer")
            if not isinstance(end, int) or isinstance(end, bool):
                raise ParseError(f"{where}: annotation {j}: 'end' must be an integer")
            if not isinstance(label, str):
                raise ParseError(f"{where}: annotation {j}: 'label' must be a string")
            spans.append(EntitySpan(start, end, label))
        if doc_id in seen_ids:
            raise ValidationError(f"duplicate document id {doc_id!r}")
        seen_ids.add(doc_id)
        doc = AnnotatedDocument(doc_id, payload["text"], section, tuple(spans))
        validate_document(doc)
        docs.append(doc)
    return docs


def write_ner_corpus(docs: Iterable[AnnotatedDocument], sink: Source) -> None:
    """Write documents in the corpus JSON schema (loadable by load_ner_corpus).

    The file format does not carry the section, so a single file must not mix
    sections; loading restores the section passed to :func:`load_ner_corpus`.
    """
    docs = list(docs)
    sections = {doc.section for doc in docs}
    if len(sections) > 1:
        raise ValidationError(
            f"cannot write documents of mixed sections {sorted(map(str, sections))}"
            " to one corpus file"
        )
    records = [
        {
            "id": doc.id,
            "data": {"text": doc.text},
            "annotations": [
                {"start": s.start, "end": s.end, "label": s.label} for s in doc.spans
            ],
        }
        for doc in docs
    ]
    _write_sink(sink, json.dumps(records, ensure_ascii=False, indent=2) + "\n")


def load_decision_corpus(source: Source) -> list[DecisionDocument]:
    """Load a decision corpus: an array of {"id", "text", "label": 0|1|null}."""
    data = _parse_json_array(source, "decision corpus")
    docs: list[DecisionDocument] = []
    seen_ids: set[str] = set()
    for i, record in enumerate(data):
        if not isinstance(record, dict):
            raise ParseError(f"record {i}: expected an object, got {type(record).__name__}")
        doc_id = record.get("id")
        if not isinstance(doc_id, str) or not doc_id:
            raise ParseError(f"record {i}: 'id' must be a non-empty string")
        text = record.get("text")
        if not isinstance(text, str):
            raise ParseError(f"record {i} (id={doc_id!r}): 'text' must be a string")
        label = record.get("label")
        if label is not None and (not isinstance(label, int) or isinstance(label, bool)):
            raise ParseError(f"record {i} (id={doc_id!r}): 'label' must be 0, 1 or null")
        if doc_id in seen_ids:
            raise ValidationError(f"duplicate document id {doc_id!r}")
        seen_ids.add(doc_id)
        docs.append(DecisionDocument(doc_id, text, label))
    return docs


def write_decision_corpus(docs: Iterable[DecisionDocument], sink: Source) -> None:
    """Write decision documents as a JSON array."""
    records = [{"id": d.id, "text": d.text, "label": d.label} for d in docs]
    _write_sink(sink, json.dumps(records, ensure_ascii=False, indent=2) + "\n")


def corpus_stats(docs: Iterable[AnnotatedDocument]) -> CorpusStats:
    """Count documents and spans per label. Permutation-invariant."""
    docs = list(docs)
    counts: Counter[str] = Counter()
    for doc in docs:
        counts.update(span.label for span in doc.spans)
    label_counts = dict(sorted(counts.items()))
    return CorpusStats(
        documents=len(docs),
        spans=sum(label_counts.values()),
        label_counts=label_counts,
    )
