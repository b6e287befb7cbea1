"""``hatecode`` command line: one executable, one subcommand per pipeline stage.

Exit status is 0 on success, 1 on usage or parameter errors and 2 on data
errors (missing or malformed inputs).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from hatecode import corpus
from hatecode.analysis import extract_aggressors, peak, timeline
from hatecode.classifier import Hyperparameters, Preprocessing, load_model, save_model
from hatecode.config import RunConfig, load_config
from hatecode.corpus import Label
from hatecode.errors import ConfigError, DataError, EmptyTimeline
from hatecode.evaluation import cross_validate
from hatecode.features import build_vocabulary
from hatecode.mining import apriori, cooccurrence, load_lexicon, phi_correlation, rank_terms
from hatecode.pipeline import classify, fit_model, preprocess_all
from hatecode.synth import generate_corpus, generate_stream
from hatecode.textprep import load_stopwords

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n{self.format_usage()}")


# ---------------------------------------------------------------- outputs


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _num(x: float | None) -> str:
    return "" if x is None else repr(float(x))


# ---------------------------------------------------------------- helpers


def _config(args) -> RunConfig:
    base = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    flags = {
        key: getattr(args, key)
        for key in RunConfig.__dataclass_fields__
        if getattr(args, key, None) is not None
    }
    return base.merged(flags).validate()


def _prep(cfg: RunConfig, args) -> Preprocessing:
    return Preprocessing(load_stopwords(cfg.stopwords_path), bool(getattr(args, "keep_mentions", False)))


def _hyper(cfg: RunConfig) -> Hyperparameters:
    return Hyperparameters(cfg.C, cfg.epochs, cfg.seed)


def _tweets(args):
    return corpus.load_tweets(args.tweets, args.format)


def _scoped(args, tweets):
    """Tweets in scope: all of them, or those annotated/classified hateful."""
    if args.scope == "all":
        return tweets
    if args.labels:
        labeled, _ = corpus.load_labels(args.labels, tweets)
        return [lt.tweet for lt in labeled if lt.label is Label.HATEFUL]
    if args.model:
        model = load_model(args.model)
        return [t for t, p in classify(model, tweets) if p.label is Label.HATEFUL]
    raise UsageError("--scope hateful needs --labels or --model")


# ---------------------------------------------------------------- commands


def cmd_ingest(args, cfg: RunConfig) -> None:
    tweets = _tweets(args)
    n_in = len(tweets)
    if not args.no_dedup:
        tweets = corpus.deduplicate(tweets)
    if not args.no_english_filter:
        tweets = corpus.filter_english(tweets, cfg.english_threshold, load_stopwords(cfg.stopwords_path))
    _emit(corpus.dumps_tweets(tweets, "jsonl"), args.out)
    print(f"ingest: kept {len(tweets)} of {n_in} tweets", file=sys.stderr)


def cmd_train(args, cfg: RunConfig) -> None:
    labeled, (n_benign, n_hateful) = corpus.load_labels(args.labels, _tweets(args))
    model = fit_model(labeled, _hyper(cfg), cfg.min_df, cfg.max_terms, _prep(cfg, args))
    save_model(model, args.out)
    print(
        f"train: {n_benign} benign + {n_hateful} hateful, {len(model.vocab)} terms -> {args.out}",
        file=sys.stderr,
    )


def cmd_eval(args, cfg: RunConfig) -> None:
    labeled, _ = corpus.load_labels(args.labels, _tweets(args))
    report = cross_validate(
        labeled, cfg.folds, _hyper(cfg), cfg.seed, cfg.min_df, cfg.max_terms, _prep(cfg, args), args.workers
    )
    if args.json_out:
        Path(args.json_out).write_text(report.to_json(), encoding="utf-8")
    _emit(report.to_json() if args.json else report.to_text(), args.out)


def cmd_classify(args, cfg: RunConfig) -> None:
    model = load_model(args.model)
    lines = [
        json.dumps({"id": t.id, "handle": t.handle, "label": p.label.value, "score": p.score})
        for t, p in classify(model, _tweets(args))
    ]
    _emit("".join(line + "\n" for line in lines), args.out)


def cmd_correlate(args, cfg: RunConfig) -> None:
    tweets = _tweets(args)
    labeled, _ = corpus.load_labels(args.labels, tweets)
    docs = preprocess_all([lt.tweet for lt in labeled], _prep(cfg, args))
    scores = phi_correlation(docs, [lt.label for lt in labeled])
    ranked = rank_terms(scores, args.top)
    _emit(
        _csv_text(("term", "phi", "n11", "n10", "n01", "n00"), ([s.term, _num(s.phi), *s.contingency] for s in ranked)),
        args.out,
    )


def cmd_mine(args, cfg: RunConfig) -> None:
    tweets = _scoped(args, _tweets(args))
    if not tweets:
        raise DataError("no transactions in scope")
    docs = preprocess_all(tweets, _prep(cfg, args))
    itemsets = apriori(docs, cfg.min_support)
    _emit(
        _csv_text(("itemset", "support", "count"), ([" ".join(s.items), _num(s.support), s.count] for s in itemsets)),
        args.out,
    )


def cmd_cooccur(args, cfg: RunConfig) -> None:
    tweets = _scoped(args, _tweets(args))
    lexicon = load_lexicon(cfg.lexicon_path)
    entries = cooccurrence(preprocess_all(tweets, _prep(cfg, args)), lexicon)
    _emit(_csv_text(("term_a", "term_b", "percentage"), ([e.term_a, e.term_b, _num(e.percentage)] for e in entries)), args.out)


def cmd_timeline(args, cfg: RunConfig) -> None:
    bins = timeline(_scoped(args, _tweets(args)))
    _emit(_csv_text(("date", "count"), ([b.date.isoformat(), b.count] for b in bins)), args.out)
    if args.plot_data:
        lines = ["# date count"] + [f"{b.date.isoformat()} {b.count}" for b in bins]
        Path(args.plot_data).write_text("\n".join(lines) + "\n", encoding="utf-8")
    try:
        top = peak(bins)
        print(f"timeline: peak {top.date.isoformat()} ({top.count} tweets)", file=sys.stderr)
    except EmptyTimeline:
        print("timeline: no tweets in scope", file=sys.stderr)


def cmd_aggressors(args, cfg: RunConfig) -> None:
    model = load_model(args.model)
    flagged = [(t.handle, t.id) for t, p in classify(model, _tweets(args)) if p.label is Label.HATEFUL]
    records = extract_aggressors(flagged, cfg.threshold)
    _emit(json.dumps([r.to_dict() for r in records], indent=2) + "\n", args.out)


def cmd_vocab(args, cfg: RunConfig) -> None:
    if args.model:
        vocab = load_model(args.model).vocab
    elif args.tweets:
        tweets = _tweets(args)
        if args.labels:
            tweets = [lt.tweet for lt in corpus.load_labels(args.labels, tweets)[0]]
        vocab = build_vocabulary(preprocess_all(tweets, _prep(cfg, args)), cfg.min_df, cfg.max_terms)
    else:
        raise UsageError("vocab needs --model or --tweets")
    _emit(json.dumps(vocab.to_records(), indent=2) + "\n", args.out)


def cmd_synth(args, cfg: RunConfig) -> None:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    train_set = generate_corpus(n=args.n, seed=cfg.seed)
    stream = generate_stream(seed=cfg.seed + 1)
    corpus.save_tweets(train_set.tweets, out / "tweets.jsonl")
    corpus.save_labels(train_set.labeled, out / "labels.csv")
    corpus.save_tweets(stream.tweets, out / "stream.jsonl")
    corpus.save_labels(stream.labeled, out / "stream_labels.csv")
    truth = {"aggressors": list(stream.aggressors), "spike_day": stream.spike_day.isoformat()}
    (out / "stream_truth.json").write_text(json.dumps(truth, indent=2) + "\n", encoding="utf-8")
    print(f"synth: wrote {len(train_set.labeled)} labeled + {len(stream.labeled)} stream tweets to {out}", file=sys.stderr)


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON RunConfig file; flags override it")
    p.add_argument("--seed", type=int)
    p.add_argument("--stopwords", dest="stopwords_path", help="stopword file, one word per line")


def _add_tweets(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--tweets", required=required, help="tweet file (JSONL or CSV)")
    p.add_argument("--format", choices=("jsonl", "csv"), help="tweet file format (default: by extension)")


def _add_training(p: argparse.ArgumentParser) -> None:
    p.add_argument("--C", dest="C", type=float, help="SVM regularization constant (default 1.0)")
    p.add_argument("--epochs", type=int, help="training epochs (default 50)")
    p.add_argument("--min-df", dest="min_df", type=int, help="minimum document frequency (default 2)")
    p.add_argument("--max-terms", dest="max_terms", type=int, help="vocabulary cap (default 1000)")
    p.add_argument("--keep-mentions", action="store_true", help="keep @mentions as features")


def _add_scope(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scope", choices=("hateful", "all"), default="hateful")
    p.add_argument("--labels", help="label CSV marking the hateful tweets")
    p.add_argument("--model", help="model file used to flag hateful tweets")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hatecode", description="Detect coded hate speech in tweet corpora.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(func=func, _parser=p)
        _add_common(p)
        return p

    p = add("ingest", cmd_ingest, "validate, deduplicate and English-filter tweets to canonical JSONL")
    _add_tweets(p)
    p.add_argument("--out")
    p.add_argument("--no-dedup", action="store_true")
    p.add_argument("--no-english-filter", action="store_true")
    p.add_argument("--english-threshold", dest="english_threshold", type=float)

    p = add("train", cmd_train, "train a linear SVM from annotated tweets")
    _add_tweets(p)
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True, help="model JSON path")
    _add_training(p)

    p = add("eval", cmd_eval, "stratified k-fold cross-validation report")
    _add_tweets(p)
    p.add_argument("--labels", required=True)
    p.add_argument("--folds", type=int)
    p.add_argument("--workers", type=int, default=1, help="folds evaluated in parallel")
    p.add_argument("--json", action="store_true", help="print JSON instead of the text table")
    p.add_argument("--json-out", help="also write the JSON report here")
    p.add_argument("--out")
    _add_training(p)

    p = add("classify", cmd_classify, "per-tweet predictions as JSONL")
    _add_tweets(p)
    p.add_argument("--model", required=True)
    p.add_argument("--out")

    p = add("correlate", cmd_correlate, "rank terms by phi correlation with the hateful label")
    _add_tweets(p)
    p.add_argument("--labels", required=True)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--keep-mentions", action="store_true")
    p.add_argument("--out")

    p = add("mine", cmd_mine, "Apriori frequent itemsets over tweet term sets")
    _add_tweets(p)
    _add_scope(p)
    p.add_argument("--support", dest="min_support", type=float, help="minimum support in (0, 1] (default 0.05)")
    p.add_argument("--keep-mentions", action="store_true")
    p.add_argument("--out")

    p = add("cooccur", cmd_cooccur, "pairwise codeword co-occurrence percentages")
    _add_tweets(p)
    _add_scope(p)
    p.add_argument("--lexicon", dest="lexicon_path", help="codeword lexicon JSON")
    p.add_argument("--out")

    p = add("timeline", cmd_timeline, "daily counts of tweets in scope")
    _add_tweets(p)
    _add_scope(p)
    p.add_argument("--out")
    p.add_argument("--plot-data", help="also write a gnuplot data file")

    p = add("aggressors", cmd_aggressors, "classify tweets and list handles at or above the threshold")
    _add_tweets(p)
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=int, help="minimum flagged tweets per handle (default 4)")
    p.add_argument("--out")

    p = add("vocab", cmd_vocab, "export a vocabulary as JSON (term, doc_freq)")
    _add_tweets(p, required=False)
    p.add_argument("--labels")
    p.add_argument("--model")
    p.add_argument("--min-df", dest="min_df", type=int)
    p.add_argument("--max-terms", dest="max_terms", type=int)
    p.add_argument("--out")

    p = add("synth", cmd_synth, "write the seeded synthetic demo corpus")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--n", type=int, default=400)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        args.func(args, cfg)
    except (ConfigError, UsageError) as exc:
        sys.stderr.write(f"hatecode {args.command}: error: {exc}\n{args._parser.format_usage()}")
        return EXIT_USAGE
    except (DataError, OSError, ValueError) as exc:
        sys.stderr.write(f"hatecode {args.command}: data error: {exc}\n")
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
