"""Combine the entity-span predictions of two models into one span set.

Spans from the two models that overlap and carry the same label are replaced
by their interval union; the union is transitive, so a chain of overlapping
same-label spans collapses into one. Spans that overlap with different labels
are resolved by priority: the priority model's span is kept, the other
dropped. Everything else passes through. Touching half-open intervals
(end == start) do not overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .corpus import AnnotatedDocument, EntitySpan, ValidationError

PRIORITY_CHOICES = ("first", "second")


@dataclass(frozen=True)
class FusionConfig:
    """Which input wins when overlapping spans disagree on the label."""

    priority: str = "first"

    def __post_init__(self) -> None:
        if self.priority not in PRIORITY_CHOICES:
            raise ValueError(
                f"priority must be one of {PRIORITY_CHOICES}, got {self.priority!r}"
            )


@dataclass(frozen=True)
class PredictionSet:
    """One model's predicted spans, keyed by document id."""

    model_id: str
    spans_by_doc: dict[str, tuple[EntitySpan, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "spans_by_doc",
            {doc_id: tuple(spans) for doc_id, spans in self.spans_by_doc.items()},
        )
        for doc_id, spans in self.spans_by_doc.items():
            _check_same_label_disjoint(spans, f"model {self.model_id!r}, document {doc_id!r}")

    @classmethod
    def from_documents(
        cls, model_id: str, docs: Iterable[AnnotatedDocument]
    ) -> "PredictionSet":
        return cls(model_id, {doc.id: doc.spans for doc in docs})


def _overlaps(a: EntitySpan, b: EntitySpan) -> bool:
    return a.start < b.end and b.start < a.end


def _check_same_label_disjoint(spans: Iterable[EntitySpan], where: str) -> None:
    by_label: dict[str, list[EntitySpan]] = {}
    for span in spans:
        by_label.setdefault(span.label, []).append(span)
    for label, group in by_label.items():
        group.sort(key=lambda s: (s.start, s.end))
        for prev, cur in zip(group, group[1:]):
            if cur.start < prev.end:
                raise ValidationError(
                    f"{where}: same-label spans ({prev.start}, {prev.end}) and"
                    f" ({cur.start}, {cur.end}) with label {label!r} overlap"
                )


def fuse_spans(
    a: Iterable[EntitySpan],
    b: Iterable[EntitySpan],
    config: FusionConfig | None = None,
) -> list[EntitySpan]:
    """Fuse two models' spans for one document.

    Same-label overlaps merge into their transitive interval union;
    different-label overlaps keep only the priority model's span. The result
    is sorted by position and has no same-label overlaps. A model's output
    is not supposed to contain same-label overlaps of its own (PredictionSet
    enforces that), but any that reach this function are simply absorbed into
    the union.
    """
    config = config or FusionConfig()
    a, b = list(a), list(b)
    priority, other = (a, b) if config.priority == "first" else (b, a)
    survivors = [
        span
        for span in other
        if not any(_overlaps(span, p) and span.label != p.label for p in priority)
    ]
    pool = priority + survivors
    fused: list[EntitySpan] = []
    for label in {span.label for span in pool}:
        intervals = sorted(
            (span.start, span.end) for span in pool if span.label == label
        )
        start, end = intervals[0]
        for nxt_start, nxt_end in intervals[1:]:
            if nxt_start < end:  # strict: touching intervals stay separate
                end = max(end, nxt_end)
            else:
                fused.append(EntitySpan(start, end, label))
                start, end = nxt_start, nxt_end
        fused.append(EntitySpan(start, end, label))
    fused.sort(key=lambda s: (s.start, s.end, s.label))
    return fused


def fuse_prediction_sets(
    a: PredictionSet,
    b: PredictionSet,
    config: FusionConfig | None = None,
) -> PredictionSet:
    """Fuse two prediction sets document by document.

    A document missing from one set is treated as having no predictions
    there, so the other set's spans pass through.
    """
    doc_ids = sorted(set(a.spans_by_doc) | set(b.spans_by_doc))
    fused: Mapping[str, tuple[EntitySpan, ...]] = {
        doc_id: tuple(
            fuse_spans(
                a.spans_by_doc.get(doc_id, ()),
                b.spans_by_doc.get(doc_id, ()),
                config,
            )
        )
        for doc_id in doc_ids
    }
    return PredictionSet(f"fused({a.model_id}+{b.model_id})", dict(fused))
