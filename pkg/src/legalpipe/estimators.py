"""Scikit-learn style wrappers around the pipeline stages.

Every class here is stateless apart from its constructor parameters: fit only
validates parameters, so the estimators clone cleanly, work inside
``sklearn.pipeline.Pipeline``, and expose get_params/set_params for grid
search. X is always an iterable of per-document items (texts, documents, or
token sequences), and outputs preserve input order.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin

from .chunking import (
    DEFAULT_CHUNK_LEN,
    DEFAULT_MAX_TOKENS,
    DEFAULT_OVERLAP,
    DEFAULT_TAIL,
    chunk_tokens,
    tail_tokens,
    truncate_tokens,
)
from .corpus import AnnotatedDocument
from .judgment import (
    DEFAULT_LEXICON,
    POLICIES,
    KeywordLexicon,
    detect_decision,
    extract_explanation,
)
from .normalize import normalize_text, remap_document


class TextNormalizer(BaseEstimator, TransformerMixin):
    """Whitespace/symbol-run cleanup as a transformer.

    Accepts raw strings (returns cleaned strings) or annotated documents
    (returns documents with re-indexed spans).
    """

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        out = []
        for item in X:
            if isinstance(item, AnnotatedDocument):
                out.append(remap_document(item))
            else:
                out.append(normalize_text(item).normalized_text)
        return out


class TokenTruncator(BaseEstimator, TransformerMixin):
    """Keep each sample's first max_len tokens."""

    def __init__(self, max_len: int = DEFAULT_MAX_TOKENS):
        self.max_len = max_len

    def fit(self, X, y=None):
        truncate_tokens((), self.max_len)
        return self

    def transform(self, X):
        return [truncate_tokens(tokens, self.max_len) for tokens in X]


class TokenChunker(BaseEstimator, TransformerMixin):
    """Sliding-window chunking; each sample maps to its list of windows."""

    def __init__(self, chunk_len: int = DEFAULT_CHUNK_LEN, overlap: int = DEFAULT_OVERLAP):
        self.chunk_len = chunk_len
        self.overlap = overlap

    def fit(self, X, y=None):
        chunk_tokens((), self.chunk_len, self.overlap)
        return self

    def transform(self, X):
        return [chunk_tokens(tokens, self.chunk_len, self.overlap) for tokens in X]


class TailSelector(BaseEstimator, TransformerMixin):
    """Keep each sample's last n tokens."""

    def __init__(self, n: int = DEFAULT_TAIL):
        self.n = n

    def fit(self, X, y=None):
        tail_tokens((), self.n)
        return self

    def transform(self, X):
        return [tail_tokens(tokens, self.n) for tokens in X]


class KeywordJudgmentClassifier(BaseEstimator, ClassifierMixin):
    """Rule-based outcome classifier over judgment texts.

    Predicts 1 (accepted) or 0 (rejected) from lexicon keyword hits; there is
    nothing to learn, so fit only records the class layout.
    """

    def __init__(self, lexicon: KeywordLexicon | None = None, policy: str = "latest_match"):
        self.lexicon = lexicon
        self.policy = policy

    def fit(self, X, y=None):
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}; expected one of {POLICIES}")
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        lexicon = self.lexicon or DEFAULT_LEXICON
        return np.array(
            [detect_decision(text, lexicon, self.policy).label for text in X]
        )

    def decide(self, X):
        """Full decision results including the keyword evidence."""
        lexicon = self.lexicon or DEFAULT_LEXICON
        return [detect_decision(text, lexicon, self.policy) for text in X]


class LastWordsExplainer(BaseEstimator, TransformerMixin):
    """Extract each text's last n_words words as the explanation span."""

    def __init__(self, n_words: int = 300):
        self.n_words = n_words

    def fit(self, X, y=None):
        if self.n_words < 1:
            raise ValueError(f"n_words must be >= 1, got {self.n_words}")
        return self

    def transform(self, X):
        return [extract_explanation(text, self.n_words).text for text in X]
