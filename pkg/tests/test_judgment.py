"""Keyword decisions, explanation spans, coverage, and word statistics."""

from __future__ import annotations

import io
import random

import pytest

from legalpipe.corpus import ParseError, ValidationError
from legalpipe.judgment import (
    DEFAULT_FAVORABLE,
    DEFAULT_UNFAVORABLE,
    KeywordLexicon,
    SWEEP_WORD_COUNTS,
    coverage_percentage,
    dataset_word_stats,
    detect_decision,
    extract_explanation,
    find_keyword_matches,
    read_lexicon,
)

WORDS = ("court", "order", "appeal", "therefore", "section", "record", "held")


def make_wordy_text(rng: random.Random, max_words: int = 620) -> str:
    n = rng.randint(1, max_words)
    pieces = []
    for i in range(n):
        pieces.append(rng.choice(WORDS))
        if i < n - 1:
            pieces.append(rng.choice((" ", "  ", "\n", " \n ")))
    return "".join(pieces)


class TestDetectDecision:
    def test_favorable_keyword(self):
        result = detect_decision("The appeal is allowed.")
        assert result.label == 1
        assert result.evidence_found
        assert result.matches[0].phrase == "allowed"
        assert result.matches[0].polarity == "favorable"

    def test_unfavorable_keyword(self):
        result = detect_decision("The petition is dismissed.")
        assert result.label == 0
        assert result.evidence_found

    def test_latest_match_wins(self):
        text = "The claim was earlier allowed. Finally the appeal is dismissed."
        assert detect_decision(text, policy="latest_match").label == 0

    def test_no_evidence_defaults_to_rejected(self):
        result = detect_decision("")
        assert result.label == 0
        assert not result.evidence_found
        assert result.matches == ()

    def test_case_insensitive(self):
        assert detect_decision("APPEAL ALLOWED").label == 1
        assert detect_decision("Appeal Allowed").label == 1

    def test_word_boundaries_block_substrings(self):
        assert not detect_decision("The motion was disallowed").evidence_found
        assert not detect_decision("the dismissal order").evidence_found
        assert not detect_decision("unacceptable arguments").evidence_found

    def test_multiword_phrase_across_whitespace_run(self):
        text = "We hereby dispose   of the petition."
        result = detect_decision(text)
        assert result.label == 1
        assert result.matches[0].phrase == "dispose of"
        assert result.matches[0].position == text.index("dispose")

    def test_match_positions_are_original_offsets(self):
        text = "The  petition is\n\ndismissed."
        result = detect_decision(text)
        assert result.matches[0].position == text.index("dismissed")

    def test_count_majority(self):
        text = "allowed yet dismissed and again dismissed"
        assert detect_decision(text, policy="count_majority").label == 0
        assert detect_decision(text, policy="latest_match").label == 0

    def test_count_majority_tie_falls_back_to_latest(self):
        text = "dismissed but finally allowed"
        assert detect_decision(text, policy="count_majority").label == 1

    def test_unknown_policy(self):
        with pytest.raises(ValueError, match="policy"):
            detect_decision("x", policy="first_match")

    def test_every_default_phrase_detected(self):
        for phrase in DEFAULT_FAVORABLE:
            result = detect_decision(f"The court will {phrase} the appeal.")
            assert result.label == 1, phrase
        for phrase in DEFAULT_UNFAVORABLE:
            result = detect_decision(f"The court will {phrase} the appeal.")
            assert result.label == 0, phrase

    def test_matches_sorted_by_position(self):
        text = "allowed then dismissed then upheld"
        positions = [m.position for m in find_keyword_matches(text)]
        assert positions == sorted(positions)

    def test_decision_invariant_under_case_change(self):
        samples = [
            "The appeal is ALLOWED and costs follow.",
            "petition Dismissed with costs",
            "nothing decisive here",
        ]
        for text in samples:
            for variant in (text.lower(), text.upper()):
                assert detect_decision(variant).label == detect_decision(text).label


class TestLexicon:
    def test_default_lists(self):
        assert len(DEFAULT_FAVORABLE) == 7
        assert len(DEFAULT_UNFAVORABLE) == 6
        assert "upheld" in DEFAULT_FAVORABLE
        assert "rejected" in DEFAULT_UNFAVORABLE

    def test_uppercase_phrase_rejected(self):
        with pytest.raises(ValidationError, match="lowercase"):
            KeywordLexicon(("Allowed",), ("dismissed",))

    def test_overlapping_lists_rejected(self):
        with pytest.raises(ValidationError, match="both"):
            KeywordLexicon(("allowed",), ("allowed",))

    def test_empty_phrase_rejected(self):
        with pytest.raises(ValidationError, match="non-empty"):
            KeywordLexicon(("",), ())

    def test_read_lexicon_file(self):
        content = "# comment\n[favorable]\ngranted\n\n[unfavorable]\nQuashed\n"
        lexicon = read_lexicon(io.StringIO(content))
        assert lexicon.favorable == ("granted",)
        assert lexicon.unfavorable == ("quashed",)
        assert detect_decision("The writ is granted.", lexicon).label == 1

    def test_read_lexicon_unknown_header(self):
        with pytest.raises(ParseError, match="line 1"):
            read_lexicon(io.StringIO("[neutral]\nmeh\n"))

    def test_read_lexicon_phrase_before_header(self):
        with pytest.raises(ParseError, match="header"):
            read_lexicon(io.StringIO("granted\n"))


class TestExtractExplanation:
    def test_last_three_of_five_words(self):
        text = "one two three four five"
        result = extract_explanation(text, 3)
        assert result.text == "three four five"
        assert result.char_range == (8, 23)
        assert result.word_count_total == 5

    def test_n_at_least_word_count_gives_whole_trimmed_text(self):
        text = "  one two  "
        result = extract_explanation(text, 99)
        assert result.text == "one two"
        assert result.char_range == (2, 9)

    def test_empty_text(self):
        result = extract_explanation("", 10)
        assert result.text == ""
        assert result.char_range == (0, 0)
        assert result.word_count_total == 0

    def test_internal_whitespace_preserved(self):
        text = "a  b\n\nc d"
        result = extract_explanation(text, 3)
        assert result.text == "b\n\nc d"

    def test_span_is_verbatim_slice(self):
        text = "alpha\tbeta  gamma"
        result = extract_explanation(text, 2)
        assert text[result.char_range[0]:result.char_range[1]] == result.text

    def test_bad_n(self):
        with pytest.raises(ValueError):
            extract_explanation("x", 0)

    def test_monotone_superstring_and_word_counts(self):
        rng = random.Random(88)
        for _ in range(150):
            text = make_wordy_text(rng)
            total = len(text.split())
            previous = None
            for n in SWEEP_WORD_COUNTS:
                result = extract_explanation(text, n)
                assert len(result.text.split()) == min(n, total)
                if previous is not None:
                    assert result.text.endswith(previous.text)
                    assert result.char_range[1] == previous.char_range[1]
                    assert result.char_range[0] <= previous.char_range[0]
                previous = result


class TestCoveragePercentage:
    def test_half_coverage(self):
        doc = " ".join(["w"] * 600)
        assert coverage_percentage([doc], 300) == pytest.approx(50.0)

    def test_full_coverage_when_n_exceeds_all(self):
        docs = [" ".join(["w"] * 10), " ".join(["w"] * 3), ""]
        assert coverage_percentage(docs, 512) == pytest.approx(100.0)

    def test_mean_over_documents(self):
        docs = [" ".join(["w"] * 600), " ".join(["w"] * 300)]
        assert coverage_percentage(docs, 300) == pytest.approx((50.0 + 100.0) / 2)

    def test_empty_document_list(self):
        with pytest.raises(ValueError):
            coverage_percentage([], 300)


class TestDatasetWordStats:
    def test_mean_words(self):
        stats = dataset_word_stats(["a b", "c d e f"])
        assert stats.mean_words == pytest.approx(3.0)

    def test_single_empty_doc(self):
        stats = dataset_word_stats([""])
        assert stats.mean_words == 0.0
        assert stats.mean_sentences == 0.0

    def test_sentence_heuristic(self):
        stats = dataset_word_stats(["It is so. Appeal allowed! Costs? None..."])
        assert stats.mean_sentences == 4.0

    def test_unterminated_tail_counts(self):
        assert dataset_word_stats(["a b. c d"]).mean_sentences == 2.0

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            dataset_word_stats([])
