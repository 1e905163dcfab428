"""Normalization rules, char-map exactness, and span re-indexing."""

from __future__ import annotations

import random

import pytest

from legalpipe.corpus import AnnotatedDocument, EntitySpan, JUDGMENT, ValidationError
from legalpipe.normalize import RemapError, normalize_text, remap_document, remap_span
from conftest import make_messy_doc


def alnum_chars(text: str) -> str:
    return "".join(ch for ch in text if ch.isalnum())


class TestNormalizeText:
    def test_whitespace_runs_collapse(self):
        assert normalize_text("A  B\n\nC").normalized_text == "A B C"

    def test_clean_text_is_fixed_point(self):
        result = normalize_text("clean text")
        assert result.normalized_text == "clean text"
        assert result.char_map == tuple(range(len("clean text")))

    def test_repeated_symbol_run_collapses(self):
        assert normalize_text("s. 302----IPC").normalized_text == "s. 302-IPC"

    def test_mixed_symbol_runs_kept(self):
        assert normalize_text("-*-*").normalized_text == "-*-*"

    def test_leading_trailing_whitespace_dropped(self):
        assert normalize_text(" \t abc \n").normalized_text == "abc"

    def test_empty_input(self):
        result = normalize_text("")
        assert result.normalized_text == ""
        assert result.char_map == ()

    def test_whitespace_only_input(self):
        assert normalize_text(" \n\t ").normalized_text == ""

    def test_tabs_and_crlf_become_space(self):
        assert normalize_text("a\t\tb\r\nc").normalized_text == "a b c"

    def test_char_map_survivor_is_first_of_run(self):
        result = normalize_text("A  B")
        assert result.char_map == (0, 1, None, 2)

    def test_length_never_grows(self):
        rng = random.Random(99)
        for i in range(200):
            text = make_messy_doc(rng, f"d{i}").text
            assert len(normalize_text(text).normalized_text) <= len(text)

    def test_idempotent_on_generated_texts(self):
        rng = random.Random(42)
        for i in range(300):
            text = make_messy_doc(rng, f"d{i}").text
            once = normalize_text(text).normalized_text
            assert normalize_text(once).normalized_text == once

    def test_map_is_strictly_increasing_and_onto(self):
        rng = random.Random(5)
        for i in range(200):
            text = make_messy_doc(rng, f"d{i}").text
            result = normalize_text(text)
            survivors = [p for p in result.char_map if p is not None]
            assert survivors == sorted(set(survivors))
            assert set(survivors) == set(range(len(result.normalized_text)))


class TestRemapSpan:
    def test_position_shift_under_collapse(self):
        result = normalize_text("A  B")
        assert remap_span(EntitySpan(3, 4, "ORG"), result) == EntitySpan(2, 3, "ORG")

    def test_identity_on_clean_text(self):
        result = normalize_text("clean text")
        span = EntitySpan(0, 5, "ORG")
        assert remap_span(span, result) == span

    def test_span_over_collapsed_run_keeps_survivor(self):
        # positions 1-2 are the double space; position 1 survives as the space
        result = normalize_text("A  B")
        assert remap_span(EntitySpan(1, 3, "ORG"), result) == EntitySpan(1, 2, "ORG")

    def test_fully_deleted_span_errors(self):
        result = normalize_text("a----b")  # survivors: a, first -, b
        with pytest.raises(RemapError):
            remap_span(EntitySpan(2, 5, "ORG"), result)

    def test_out_of_bounds_span(self):
        with pytest.raises(ValidationError):
            remap_span(EntitySpan(0, 10, "ORG"), normalize_text("abc"))

    def test_whitespace_only_span_maps_to_single_space(self):
        text = "word1 \n\n word2"
        result = normalize_text(text)
        span = EntitySpan(5, 9, "ORG")  # covers the whitespace run only
        remapped = remap_span(span, result)
        assert result.normalized_text[remapped.start:remapped.end] == " "


class TestRemapDocument:
    def test_clean_document_unchanged(self):
        doc = AnnotatedDocument("d1", "clean text", JUDGMENT, (EntitySpan(0, 5, "ORG"),))
        assert remap_document(doc) == doc

    def test_remaps_spans_and_text(self):
        doc = AnnotatedDocument("d1", "A  B", JUDGMENT, (EntitySpan(3, 4, "ORG"),))
        out = remap_document(doc)
        assert out.text == "A B"
        assert out.spans == (EntitySpan(2, 3, "ORG"),)

    def test_error_names_document(self):
        doc = AnnotatedDocument("doc-7", "a---b", JUDGMENT, (EntitySpan(2, 4, "ORG"),))
        with pytest.raises(RemapError, match="doc-7"):
            remap_document(doc)

    def test_span_count_preserved(self):
        rng = random.Random(202)
        for i in range(200):
            doc = make_messy_doc(rng, f"d{i}")
            assert len(remap_document(doc).spans) == len(doc.spans)

    def test_alnum_content_preserved_for_word_aligned_spans(self):
        rng = random.Random(303)
        for i in range(300):
            doc = make_messy_doc(rng, f"d{i}")
            out = remap_document(doc)
            for old, new in zip(doc.spans, out.spans):
                assert alnum_chars(out.text[new.start:new.end]) == alnum_chars(
                    doc.text[old.start:old.end]
                )

    def test_any_span_with_alnum_content_remaps_cleanly(self):
        rng = random.Random(777)
        for i in range(200):
            text = make_messy_doc(rng, f"d{i}").text
            result = normalize_text(text)
            for _ in range(5):
                start = rng.randrange(0, len(text))
                end = rng.randint(start + 1, len(text))
                original = text[start:end]
                if not any(c.isalnum() for c in original):
                    continue
                remapped = remap_span(EntitySpan(start, end, "ORG"), result)
                new_slice = result.normalized_text[remapped.start:remapped.end]
                assert alnum_chars(new_slice) == alnum_chars(original)
