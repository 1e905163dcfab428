"""Span-exact processing and evaluation toolkit for court-judgment corpora.

Functional core modules:

- :mod:`legalpipe.corpus` -- domain types, label taxonomies, JSON codecs
- :mod:`legalpipe.normalize` -- text cleanup with exact span re-indexing
- :mod:`legalpipe.seqlabel` -- tokenization, BIO conversion, CoNLL codec
- :mod:`legalpipe.fusion` -- two-model span fusion
- :mod:`legalpipe.chunking` -- truncation, sliding windows, tail extraction
- :mod:`legalpipe.judgment` -- keyword decisions and explanation spans
- :mod:`legalpipe.metrics` -- strict entity F1, macro-F1, ROUGE-2

:mod:`legalpipe.estimators` wraps the per-document stages in scikit-learn
compatible transformers/classifiers, and :mod:`legalpipe.cli` drives
everything from the command line.

All character offsets are Unicode code points (Python string indexes).
"""

from .chunking import Chunk, chunk_tokens, tail_tokens, truncate_tokens
from .corpus import (
    AnnotatedDocument,
    CorpusStats,
    DecisionDocument,
    EntitySpan,
    JUDGMENT,
    JUDGMENT_LABELS,
    ParseError,
    PREAMBLE,
    PREAMBLE_LABELS,
    ValidationError,
    corpus_stats,
    load_decision_corpus,
    load_ner_corpus,
    write_decision_corpus,
    write_ner_corpus,
)
from .fusion import FusionConfig, PredictionSet, fuse_prediction_sets, fuse_spans
from .judgment import (
    DecisionResult,
    ExplanationResult,
    KeywordLexicon,
    coverage_percentage,
    dataset_word_stats,
    detect_decision,
    extract_explanation,
)
from .metrics import NerEvalReport, RougeScore, macro_f1, ner_evaluate, rouge2, rouge2_corpus
from .normalize import NormalizationResult, RemapError, normalize_text, remap_document, remap_span
from .seqlabel import (
    BioDocument,
    PosVocabulary,
    Token,
    align_pos_to_subwords,
    bio_to_spans,
    read_conll,
    spans_to_bio,
    tokenize,
    write_conll,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedDocument",
    "BioDocument",
    "Chunk",
    "CorpusStats",
    "DecisionDocument",
    "DecisionResult",
    "EntitySpan",
    "ExplanationResult",
    "FusionConfig",
    "JUDGMENT",
    "JUDGMENT_LABELS",
    "KeywordLexicon",
    "NerEvalReport",
    "NormalizationResult",
    "ParseError",
    "PosVocabulary",
    "PREAMBLE",
    "PREAMBLE_LABELS",
    "PredictionSet",
    "RemapError",
    "RougeScore",
    "Token",
    "ValidationError",
    "align_pos_to_subwords",
    "bio_to_spans",
    "chunk_tokens",
    "corpus_stats",
    "coverage_percentage",
    "dataset_word_stats",
    "detect_decision",
    "extract_explanation",
    "fuse_prediction_sets",
    "fuse_spans",
    "load_decision_corpus",
    "load_ner_corpus",
    "macro_f1",
    "ner_evaluate",
    "normalize_text",
    "read_conll",
    "remap_document",
    "remap_span",
    "rouge2",
    "rouge2_corpus",
    "spans_to_bio",
    "tail_tokens",
    "tokenize",
    "truncate_tokens",
    "write_conll",
    "write_decision_corpus",
    "write_ner_corpus",
]
