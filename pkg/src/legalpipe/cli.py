"""Command-line driver: every pipeline stage as a file-in/file-out subcommand.

All commands are deterministic: identical inputs and flags produce
byte-identical outputs, regardless of the parallelism degree. ``-`` stands
for stdin/stdout so stages compose in shell pipes. Exit codes: 0 on success,
1 for input parse/validation failures, 2 for usage errors.

Per-document stages accept ``--jobs N`` (default from LEGALPIPE_JOBS, else 1)
and fan out over a process pool; results are reassembled in input order.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Sequence

from . import chunking, corpus, fusion, judgment, metrics, normalize, seqlabel

JOBS_ENV_VAR = "LEGALPIPE_JOBS"


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV_VAR, "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (jobs * 4))))


def _open_source(path: str):
    return sys.stdin if path == "-" else path


def _write_output(path: str, payload: str) -> None:
    if path == "-":
        sys.stdout.write(payload)
    else:
        corpus._write_sink(path, payload)


def _dump_json(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def _chunk_records(doc: corpus.DecisionDocument, mode: str, chunk_len: int,
                   overlap: int, max_tokens: int) -> list[dict]:
    tokens = seqlabel.tokenize(doc.text, mode)
    if max_tokens:
        tokens = chunking.truncate_tokens(tokens, max_tokens)
    records = []
    for chunk in chunking.chunk_tokens(tokens, chunk_len, overlap):
        piece = tokens[chunk.first:chunk.last]
        text = doc.text[piece[0].start:piece[-1].end] if piece else ""
        records.append(
            {
                "doc_id": doc.id,
                "chunk_index": chunk.index,
                "first": chunk.first,
                "last": chunk.last,
                "text": text,
            }
        )
    return records


def _tail_record(doc: corpus.DecisionDocument, mode: str, n: int) -> dict:
    tokens = seqlabel.tokenize(doc.text, mode)
    kept = chunking.tail_tokens(tokens, n)
    first = len(tokens) - len(kept)
    text = doc.text[kept[0].start:kept[-1].end] if kept else ""
    return {"doc_id": doc.id, "first": first, "last": len(tokens), "text": text}


def _decide_record(doc: corpus.DecisionDocument, lexicon: judgment.KeywordLexicon,
                   policy: str) -> dict:
    result = judgment.detect_decision(doc.text, lexicon, policy)
    return {
        "id": doc.id,
        "label": result.label,
        "evidence_found": result.evidence_found,
        "matches": [
            {"phrase": m.phrase, "polarity": m.polarity, "position": m.position}
            for m in result.matches
        ],
    }


def _explain_records(doc: corpus.DecisionDocument, lengths: tuple[int, ...]) -> list[dict]:
    records = []
    for n in lengths:
        result = judgment.extract_explanation(doc.text, n)
        records.append(
            {
                "id": doc.id,
                "n_words": n,
                "word_count": result.word_count_total,
                "start": result.char_range[0],
                "end": result.char_range[1],
                "text": result.text,
            }
        )
    return records


def _render(writer: Callable, payload) -> str:
    buffer = io.StringIO()
    writer(payload, buffer)
    return buffer.getvalue()


def _cmd_normalize(args: argparse.Namespace) -> int:
    docs = corpus.load_ner_corpus(_open_source(args.input), args.section)
    normalized = _pmap(normalize.remap_document, docs, args.jobs)
    _write_output(args.output, _render(corpus.write_ner_corpus, normalized))
    return 0


def _cmd_bio_encode(args: argparse.Namespace) -> int:
    docs = corpus.load_ner_corpus(_open_source(args.input), args.section)
    sentences = []
    for doc in docs:
        tokens = seqlabel.tokenize(doc.text, args.mode)
        try:
            sentences.append(seqlabel.spans_to_bio(tokens, doc.spans, strict=args.strict))
        except corpus.ValidationError as exc:
            raise corpus.ValidationError(f"document {doc.id!r}: {exc}") from None
    _write_output(args.output, _render(seqlabel.write_conll, sentences))
    return 0


def _cmd_bio_decode(args: argparse.Namespace) -> int:
    sentences = seqlabel.read_conll(_open_source(args.input))
    docs = []
    for i, sentence in enumerate(sentences):
        text = seqlabel.detokenize(sentence.tokens)
        spans = seqlabel.bio_to_spans(sentence, text)
        doc = corpus.AnnotatedDocument(f"sent-{i}", text, args.section, tuple(spans))
        corpus.validate_document(doc)
        docs.append(doc)
    _write_output(args.output, _render(corpus.write_ner_corpus, docs))
    return 0


def _cmd_fuse(args: argparse.Namespace) -> int:
    docs_a = corpus.load_ner_corpus(_open_source(args.first), args.section)
    docs_b = corpus.load_ner_corpus(_open_source(args.second), args.section)
    texts: dict[str, str] = {doc.id: doc.text for doc in docs_a}
    for doc in docs_b:
        if doc.id in texts and texts[doc.id] != doc.text:
            raise corpus.ValidationError(
                f"document {doc.id!r}: the two prediction files disagree on the text"
            )
        texts.setdefault(doc.id, doc.text)
    fused = fusion.fuse_prediction_sets(
        fusion.PredictionSet.from_documents("first", docs_a),
        fusion.PredictionSet.from_documents("second", docs_b),
        fusion.FusionConfig(priority=args.priority),
    )
    out_docs = [
        corpus.AnnotatedDocument(doc_id, texts[doc_id], args.section, spans)
        for doc_id, spans in fused.spans_by_doc.items()
    ]
    _write_output(args.output, _render(corpus.write_ner_corpus, out_docs))
    return 0


def _cmd_chunk(args: argparse.Namespace) -> int:
    docs = corpus.load_decision_corpus(_open_source(args.input))
    worker = partial(
        _chunk_records,
        mode=args.mode,
        chunk_len=args.chunk_len,
        overlap=args.overlap,
        max_tokens=args.max_tokens,
    )
    records = [record for per_doc in _pmap(worker, docs, args.jobs) for record in per_doc]
    _write_output(args.output, _dump_json(records))
    return 0


def _cmd_tail(args: argparse.Namespace) -> int:
    docs = corpus.load_decision_corpus(_open_source(args.input))
    worker = partial(_tail_record, mode=args.mode, n=args.n)
    _write_output(args.output, _dump_json(_pmap(worker, docs, args.jobs)))
    return 0


def _cmd_decide(args: argparse.Namespace) -> int:
    docs = corpus.load_decision_corpus(_open_source(args.input))
    lexicon = (
        judgment.read_lexicon(args.lexicon) if args.lexicon else judgment.DEFAULT_LEXICON
    )
    worker = partial(_decide_record, lexicon=lexicon, policy=args.policy)
    _write_output(args.output, _dump_json(_pmap(worker, docs, args.jobs)))
    return 0


def _cmd_explain(args: argparse.Namespace) -> int:
    docs = corpus.load_decision_corpus(_open_source(args.input))
    lengths = judgment.SWEEP_WORD_COUNTS if args.sweep else (args.n_words,)
    worker = partial(_explain_records, lengths=lengths)
    records = [record for per_doc in _pmap(worker, docs, args.jobs) for record in per_doc]
    _write_output(args.output, _dump_json(records))
    return 0


def _cmd_eval_ner(args: argparse.Namespace) -> int:
    gold = corpus.load_ner_corpus(_open_source(args.gold), args.section)
    pred_docs = corpus.load_ner_corpus(_open_source(args.pred), args.section)
    pred = fusion.PredictionSet.from_documents("pred", pred_docs)
    report = metrics.ner_evaluate(gold, pred)
    print(report.format_table())
    if args.output:
        payload = {
            "labels": report.to_records(),
            "weighted_average_f1": report.weighted_average_f1,
        }
        _write_output(args.output, _dump_json(payload))
    return 0


def _cmd_eval_clf(args: argparse.Namespace) -> int:
    gold_docs = corpus.load_decision_corpus(_open_source(args.gold))
    pred_docs = corpus.load_decision_corpus(_open_source(args.pred))
    pred_by_id = {doc.id: doc for doc in pred_docs}
    gold_labels, pred_labels = [], []
    for doc in gold_docs:
        if doc.label is None:
            raise corpus.ValidationError(f"gold document {doc.id!r} has no label")
        if doc.id not in pred_by_id:
            raise corpus.ValidationError(f"document {doc.id!r} missing from predictions")
        if pred_by_id[doc.id].label is None:
            raise corpus.ValidationError(f"predicted document {doc.id!r} has no label")
        gold_labels.append(doc.label)
        pred_labels.append(pred_by_id[doc.id].label)
    score = metrics.macro_f1(gold_labels, pred_labels)
    print(f"macro F1: {score:.4f}")
    if args.output:
        _write_output(args.output, _dump_json({"macro_f1": score, "examples": len(gold_labels)}))
    return 0


def _cmd_eval_rouge(args: argparse.Namespace) -> int:
    candidates = corpus.load_decision_corpus(_open_source(args.candidate))
    references = corpus.load_decision_corpus(_open_source(args.reference))
    cand_by_id = {doc.id: doc.text for doc in candidates}
    missing = [doc.id for doc in references if doc.id not in cand_by_id]
    if missing:
        raise corpus.ValidationError(f"candidates missing for ids: {missing[:5]}")
    pairs = [(cand_by_id[doc.id], doc.text) for doc in references]
    score = metrics.rouge2_corpus(pairs)
    print(
        f"ROUGE-2 precision: {score.precision:.4f}  recall: {score.recall:.4f}"
        f"  f1: {score.f1:.4f}"
    )
    if args.output:
        _write_output(
            args.output,
            _dump_json(
                {
                    "precision": score.precision,
                    "recall": score.recall,
                    "f1": score.f1,
                    "pairs": len(pairs),
                }
            ),
        )
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    if args.kind == "ner":
        docs = corpus.load_ner_corpus(_open_source(args.input), args.section)
        stats = corpus.corpus_stats(docs)
        labels = [
            {"label": label, "count": count}
            for label, count in sorted(
                stats.label_counts.items(), key=lambda kv: (-kv[1], kv[0])
            )
        ]
        payload = {"documents": stats.documents, "spans": stats.spans, "labels": labels}
    else:
        docs = corpus.load_decision_corpus(_open_source(args.input))
        if docs:
            word_stats = judgment.dataset_word_stats([doc.text for doc in docs])
            means = {
                "mean_words": word_stats.mean_words,
                "mean_sentences": word_stats.mean_sentences,
            }
        else:
            means = {"mean_words": 0.0, "mean_sentences": 0.0}
        label_counts = {"0": 0, "1": 0, "null": 0}
        for doc in docs:
            label_counts["null" if doc.label is None else str(doc.label)] += 1
        payload = {"documents": len(docs), **means, "label_counts": label_counts}
    rendered = _dump_json(payload)
    if args.output:
        _write_output(args.output, rendered)
    else:
        sys.stdout.write(rendered)
    return 0


def _add_jobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--jobs",
        type=int,
        default=_default_jobs(),
        help=f"worker processes (default: ${JOBS_ENV_VAR} or 1)",
    )


def _add_section(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--section",
        choices=corpus.SECTIONS,
        default=None,
        help="validate labels against this section's taxonomy",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legalpipe",
        description="Span-exact processing and evaluation for court-judgment corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="clean text and re-index entity spans")
    p.add_argument("input")
    p.add_argument("output")
    _add_section(p)
    _add_jobs(p)
    p.set_defaults(func=_cmd_normalize)

    bio = sub.add_parser("bio", help="convert between span JSON and CoNLL tags")
    bio_sub = bio.add_subparsers(dest="bio_command", required=True)
    p = bio_sub.add_parser("encode", help="corpus JSON to token/tag lines")
    p.add_argument("input")
    p.add_argument("output")
    _add_section(p)
    p.add_argument("--mode", choices=seqlabel.TOKENIZE_MODES, default="punct_split")
    p.add_argument("--strict", action="store_true",
                   help="error on spans not aligned to token boundaries")
    p.set_defaults(func=_cmd_bio_encode)
    p = bio_sub.add_parser("decode", help="token/tag lines to corpus JSON")
    p.add_argument("input")
    p.add_argument("output")
    _add_section(p)
    p.set_defaults(func=_cmd_bio_decode)

    p = sub.add_parser("fuse", help="fuse two span prediction files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("output")
    _add_section(p)
    p.add_argument("--priority", choices=fusion.PRIORITY_CHOICES, default="first",
                   help="which file wins overlapping label conflicts")
    p.set_defaults(func=_cmd_fuse)

    p = sub.add_parser("chunk", help="sliding-window chunk records per document")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--chunk-len", type=int, default=chunking.DEFAULT_CHUNK_LEN)
    p.add_argument("--overlap", type=int, default=chunking.DEFAULT_OVERLAP)
    p.add_argument("--max-tokens", type=int, default=chunking.DEFAULT_MAX_TOKENS,
                   help="truncate documents to this many tokens first; 0 disables")
    p.add_argument("--mode", choices=seqlabel.TOKENIZE_MODES, default="whitespace")
    _add_jobs(p)
    p.set_defaults(func=_cmd_chunk)

    p = sub.add_parser("tail", help="keep each document's last n tokens")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("-n", type=int, default=chunking.DEFAULT_TAIL)
    p.add_argument("--mode", choices=seqlabel.TOKENIZE_MODES, default="whitespace")
    _add_jobs(p)
    p.set_defaults(func=_cmd_tail)

    p = sub.add_parser("decide", help="keyword-based accepted/rejected detection")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--policy", choices=judgment.POLICIES, default="latest_match")
    p.add_argument("--lexicon", help="phrase file overriding the built-in lexicon")
    _add_jobs(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("explain", help="extract last-N-words explanation spans")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("-n", "--n-words", type=int, default=300, dest="n_words")
    p.add_argument("--sweep", action="store_true",
                   help=f"run every span length in {list(judgment.SWEEP_WORD_COUNTS)}")
    _add_jobs(p)
    p.set_defaults(func=_cmd_explain)

    ev = sub.add_parser("eval", help="evaluation reports")
    ev_sub = ev.add_subparsers(dest="eval_command", required=True)
    p = ev_sub.add_parser("ner", help="strict-match entity precision/recall/F1")
    p.add_argument("gold")
    p.add_argument("pred")
    _add_section(p)
    p.add_argument("-o", "--output", help="also write machine-readable JSON here")
    p.set_defaults(func=_cmd_eval_ner)
    p = ev_sub.add_parser("clf", help="binary macro-F1 over decision labels")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_eval_clf)
    p = ev_sub.add_parser("rouge", help="mean ROUGE-2 over candidate/reference pairs")
    p.add_argument("candidate")
    p.add_argument("reference")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_eval_rouge)

    p = sub.add_parser("stats", help="corpus statistics and label distributions")
    p.add_argument("input")
    p.add_argument("--kind", choices=("ner", "decision"), default="ner")
    _add_section(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_stats)

    return parser


def _validate_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    command = args.command
    if command == "chunk":
        if not 0 <= args.overlap < args.chunk_len:
            parser.error("--overlap must satisfy 0 <= overlap < chunk-len")
        if args.max_tokens < 0:
            parser.error("--max-tokens must be >= 0")
    if command == "tail" and args.n < 0:
        parser.error("-n must be >= 0")
    if command == "explain" and args.n_words < 1:
        parser.error("--n-words must be >= 1")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate_args(parser, args)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:  # ParseError/ValidationError included
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
