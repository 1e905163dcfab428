"""Evaluation: strict-match entity F1, binary macro-F1, and ROUGE-2.

Entity scoring uses strict matching: a predicted span is correct only when an
unmatched gold span with identical start, end, and label exists in the same
document, paired one-to-one. Scores are kept as fractions in [0, 1]; the
table formatter multiplies by 100 for display.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import AnnotatedDocument
from .fusion import PredictionSet


@dataclass(frozen=True)
class LabelScore:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class NerEvalReport:
    """Per-label precision/recall/F1 plus the support-weighted average F1."""

    per_label: dict[str, LabelScore]
    weighted_average_f1: float

    def to_records(self) -> list[dict]:
        """Machine-readable rows, one per label, sorted by label."""
        return [
            {
                "label": label,
                "precision": score.precision,
                "recall": score.recall,
                "f1": score.f1,
                "support": score.support,
            }
            for label, score in sorted(self.per_label.items())
        ]

    def format_table(self) -> str:
        """Human-readable table with scores scaled to 0..100."""
        width = max([len("weighted average")] + [len(label) for label in self.per_label])
        lines = [f"{'label':<{width}}  precision  recall     f1         support"]
        for label, s in sorted(self.per_label.items()):
            lines.append(
                f"{label:<{width}}  {100 * s.precision:>9.2f}  {100 * s.recall:>9.2f}"
                f"  {100 * s.f1:>9.2f}  {s.support:>7d}"
            )
        lines.append(
            f"{'weighted average':<{width}}  {'':>9}  {'':>9}"
            f"  {100 * self.weighted_average_f1:>9.2f}  {sum(s.support for s in self.per_label.values()):>7d}"
        )
        return "\n".join(lines)


@dataclass(frozen=True)
class RougeScore:
    """Bigram-overlap precision, recall, and F1."""

    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def ner_evaluate(
    gold: Iterable[AnnotatedDocument], pred: PredictionSet
) -> NerEvalReport:
    """Score predicted spans against gold documents with strict matching.

    Documents missing from the prediction set count as empty predictions;
    prediction entries for unknown document ids are ignored. Support is the
    gold span count per label, and the weighted average is
    sum(f1 * support) / sum(support).
    """
    tp: Counter[str] = Counter()
    fp: Counter[str] = Counter()
    fn: Counter[str] = Counter()
    for doc in gold:
        gold_counts = Counter(doc.spans)
        pred_counts = Counter(pred.spans_by_doc.get(doc.id, ()))
        for span, count in gold_counts.items():
            matched = min(count, pred_counts[span])
            tp[span.label] += matched
            fn[span.label] += count - matched
        for span, count in pred_counts.items():
            fp[span.label] += count - min(count, gold_counts[span])
    report: dict[str, LabelScore] = {}
    for label in sorted(set(tp) | set(fp) | set(fn)):
        predicted = tp[label] + fp[label]
        support = tp[label] + fn[label]
        precision = tp[label] / predicted if predicted else 0.0
        recall = tp[label] / support if support else 0.0
        report[label] = LabelScore(precision, recall, _f1(precision, recall), support)
    total_support = sum(s.support for s in report.values())
    weighted = (
        sum(s.f1 * s.support for s in report.values()) / total_support
        if total_support
        else 0.0
    )
    return NerEvalReport(report, weighted)


def macro_f1(gold: Sequence[int], pred: Sequence[int]) -> float:
    """Unweighted mean of the per-class F1 scores over classes {0, 1}.

    A class absent from both gold and pred contributes F1 = 0 with a warning.
    """
    if len(gold) != len(pred):
        raise ValueError(f"length mismatch: {len(gold)} gold vs {len(pred)} pred")
    if not gold:
        raise ValueError("macro_f1 needs at least one example")
    scores = []
    for cls in (0, 1):
        tp = sum(1 for g, p in zip(gold, pred) if g == cls and p == cls)
        fp = sum(1 for g, p in zip(gold, pred) if g != cls and p == cls)
        fn = sum(1 for g, p in zip(gold, pred) if g == cls and p != cls)
        if tp + fp + fn == 0:
            warnings.warn(f"class {cls} absent from both gold and pred; its F1 is 0")
            scores.append(0.0)
        else:
            scores.append(2 * tp / (2 * tp + fp + fn))
    return sum(scores) / len(scores)


def _bigram_counts(text: str) -> Counter[tuple[str, str]]:
    tokens = text.lower().split()
    return Counter(zip(tokens, tokens[1:]))


def rouge2(candidate: str, reference: str) -> RougeScore:
    """Bigram-overlap score between a candidate and a reference text.

    Texts are lowercased and whitespace-split; no stemming or stopword
    removal. Bigram counts are clipped (multiset intersection). A side with
    fewer than two tokens has no bigrams and scores 0 on its axis.
    """
    cand = _bigram_counts(candidate)
    ref = _bigram_counts(reference)
    overlap = sum((cand & ref).values())
    precision = overlap / sum(cand.values()) if cand else 0.0
    recall = overlap / sum(ref.values()) if ref else 0.0
    return RougeScore(precision, recall, _f1(precision, recall))


def rouge2_corpus(pairs: Sequence[tuple[str, str]]) -> RougeScore:
    """Arithmetic mean of per-pair ROUGE-2 precision, recall, and F1."""
    if not pairs:
        raise ValueError("rouge2_corpus needs at least one (candidate, reference) pair")
    scores = [rouge2(candidate, reference) for candidate, reference in pairs]
    n = len(scores)
    return RougeScore(
        precision=sum(s.precision for s in scores) / n,
        recall=sum(s.recall for s in scores) / n,
        f1=sum(s.f1 for s in scores) / n,
    )
