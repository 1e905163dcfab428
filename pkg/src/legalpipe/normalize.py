"""Text cleanup with an exact character map for span re-indexing.

Three rules, applied over maximal runs of the original text:

a. every run of whitespace (space, tab, newline, carriage return) becomes a
   single space;
b. every run of two or more copies of one non-alphanumeric character keeps
   only its first character ("302----IPC" -> "302-IPC"); mixed runs such as
   "-*-*" are left alone;
c. leading and trailing whitespace is dropped.

Every original position is either mapped to its position in the cleaned text
or marked deleted, so entity spans can be re-indexed without guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import AnnotatedDocument, EntitySpan, ValidationError

_WHITESPACE = frozenset(" \t\n\r")


class RemapError(ValidationError):
    """A span's content was entirely deleted by normalization."""


@dataclass(frozen=True)
class NormalizationResult:
    """Cleaned text plus the fate of every original character position.

    ``char_map[i]`` is the index in ``normalized_text`` that original
    position ``i`` maps to, or None if the character was deleted. The map is
    strictly increasing over surviving positions, and every normalized
    position is the image of exactly one original position.
    """

    normalized_text: str
    char_map: tuple[int | None, ...]


def normalize_text(text: str) -> NormalizationResult:
    """Apply the cleanup rules and record the character map.

    Within each collapsed run the first character survives (mapped to the
    single output character); the rest are deleted. Leading and trailing
    whitespace runs are deleted entirely. Idempotent: normalizing already
    normalized text is the identity.
    """
    out: list[str] = []
    char_map: list[int | None] = [None] * len(text)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in _WHITESPACE:
            j = i + 1
            while j < n and text[j] in _WHITESPACE:
                j += 1
            if out and j < n:  # interior run; leading/trailing are dropped
                char_map[i] = len(out)
                out.append(" ")
            i = j
        elif not ch.isalnum():
            j = i + 1
            while j < n and text[j] == ch:
                j += 1
            char_map[i] = len(out)
            out.append(ch)
            i = j
        else:
            char_map[i] = len(out)
            out.append(ch)
            i += 1
    return NormalizationResult("".join(out), tuple(char_map))


def remap_span(span: EntitySpan, result: NormalizationResult) -> EntitySpan:
    """Re-index a span from the original text into the normalized text.

    Boundaries landing on deleted positions snap inward: the start snaps
    forward to the next surviving position, the end backward to the last
    surviving one, so no surviving span content is lost. Snapping never
    crosses an alphanumeric character because only collapsed whitespace and
    repeated symbols are ever deleted.
    """
    if span.end > len(result.char_map):
        raise ValidationError(
            f"span ({span.start}, {span.end}) out of bounds for original text"
            f" of length {len(result.char_map)}"
        )
    mapped = [
        result.char_map[p]
        for p in range(span.start, span.end)
        if result.char_map[p] is not None
    ]
    if not mapped:
        raise RemapError(
            f"span ({span.start}, {span.end}, {span.label}) was deleted entirely"
            " by normalization"
        )
    return EntitySpan(mapped[0], mapped[-1] + 1, span.label)


def remap_document(doc: AnnotatedDocument) -> AnnotatedDocument:
    """Normalize a document's text and re-index all of its spans.

    The span count is preserved; if any single span cannot be remapped the
    whole document fails, so spans are never silently dropped.
    """
    result = normalize_text(doc.text)
    spans = []
    for span in doc.spans:
        try:
            spans.append(remap_span(span, result))
        except RemapError as exc:
            raise RemapError(f"document {doc.id!r}: {exc}") from None
    return AnnotatedDocument(doc.id, result.normalized_text, doc.section, tuple(spans))
