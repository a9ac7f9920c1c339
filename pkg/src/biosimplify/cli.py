"""Command-line front end: ``simplify``, ``stats``, ``eval`` and ``restore``.

Exit codes: 0 success, 1 internal failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, replace

from . import __version__
from .clause_split import OracleSpawnFailure
from .core import PipelineConfig
from .corpus import (
    InputError,
    JsonlReport,
    parse_config,
    read_corpus,
    read_link_file,
    read_simplified,
    read_stats_records,
    write_jsonl,
)
from .linkeval import AlignmentMismatch, EmptyCorpus, evaluate
from .pipeline import Simplifier, simplify_corpus
from .readability import corpus_stats, reduction_report, render_stats
from .substitute import GazetteerError, UnknownPlaceholder, restore_placeholders

log = logging.getLogger("biosimplify")

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class _WarningCollector(logging.Handler):
    def __init__(self):
        super().__init__(logging.WARNING)
        self.messages: list[str] = []

    def emit(self, record):
        self.messages.append(record.getMessage())


def _shared(p: argparse.ArgumentParser):
    p.add_argument("--in", dest="input", help="input corpus")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("text", "jsonl"), help="input format (default: by extension)")
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    strict = p.add_mutually_exclusive_group()
    strict.add_argument("--strict", dest="strict", action="store_true", default=True,
                        help="abort on malformed input lines (default)")
    strict.add_argument("--lenient", dest="strict", action="store_false",
                        help="skip and count malformed input lines")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biosimplify",
        description="Simplify biomedical sentences and measure the effect.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simplify", help="run the simplification pipeline")
    _shared(p)
    p.add_argument("--gazetteer", help="entity gazetteer file")
    p.add_argument("--no-preprocess", action="store_true")
    p.add_argument("--no-entities", action="store_true")
    p.add_argument("--no-np", action="store_true")
    p.add_argument("--no-split", action="store_true")
    p.add_argument("--split-threshold", type=int)
    p.add_argument("--split-min-commas", type=int)
    p.add_argument("--oracle", choices=("heuristic", "external"))
    p.add_argument("--oracle-cmd", help="command speaking the 1/0 clausehood protocol")
    p.add_argument("--oracle-pool", type=int, help="external oracle processes per worker")
    p.add_argument("--oracle-timeout", type=float)
    p.add_argument("--recognizer-cmd", help="external entity recognizer command")
    p.add_argument("--keep-parens", action="store_true", help="do not strip parentheticals")
    p.add_argument("--manifest", help="run manifest path (default: <out>.manifest.json)")
    p.set_defaults(func=run_simplify)

    p = sub.add_parser("stats", help="readability statistics")
    _shared(p)
    p.add_argument("--before", help="corpus before simplification")
    p.add_argument("--after", help="corpus after simplification")
    p.add_argument("--json", dest="json_out", help="also write the report as JSON here")
    p.set_defaults(func=run_stats)

    p = sub.add_parser("eval", help="score predicted links against gold links")
    _shared(p)
    p.add_argument("--gold", required=True, help="gold link TSV")
    p.add_argument("--pred", required=True, help="predicted link TSV")
    p.add_argument("--align", help="simplified JSONL for predictions over simplified text")
    p.add_argument("--system", default="system", help="row label in the report")
    p.add_argument("--json", dest="json_out", help="also write the report as JSON here")
    p.set_defaults(func=run_eval)

    p = sub.add_parser("restore", help="expand placeholders back to their surfaces")
    _shared(p)
    p.set_defaults(func=run_restore)
    return parser


def _write_text(path, text: str):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pipeline_config(args) -> PipelineConfig:
    config = parse_config(args.config) if args.config else PipelineConfig()
    updates: dict = {}
    if args.gazetteer:
        updates["gazetteer_path"] = args.gazetteer
    for flag, field in (("no_preprocess", "preprocess"), ("no_entities", "entities"),
                        ("no_np", "noun_phrases"), ("no_split", "split")):
        if getattr(args, flag):
            updates[field] = False
    if args.keep_parens:
        updates["strip_parentheticals"] = False
    if args.split_threshold is not None:
        updates["split_threshold_words"] = args.split_threshold
    if args.split_min_commas is not None:
        updates["split_min_commas"] = args.split_min_commas
    oracle: dict = {}
    if args.oracle:
        oracle["kind"] = args.oracle
    if args.oracle_cmd:
        oracle["command"] = args.oracle_cmd
    if args.oracle_pool is not None:
        oracle["pool_size"] = args.oracle_pool
    if args.oracle_timeout is not None:
        oracle["timeout"] = args.oracle_timeout
    if oracle:
        updates["oracle"] = replace(config.oracle, **oracle)
    try:
        return replace(config, **updates)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def run_simplify(args) -> int:
    if not args.input:
        raise InputError("--in is required")
    config = _pipeline_config(args)
    if config.entities and not args.recognizer_cmd and not config.gazetteer_path:
        raise InputError("entity stage needs --gazetteer (or --no-entities)")
    started = time.time()
    warnings = _WarningCollector()
    logging.getLogger().addHandler(warnings)
    try:
        report = JsonlReport()
        sentences = read_corpus(args.input, args.format, args.strict, report)
        # build once in the parent so resource errors surface before forking
        simplifier = Simplifier(config, recognizer_cmd=args.recognizer_cmd)
        results = simplify_corpus(sentences, config, args.jobs,
                                  simplifier=simplifier if args.jobs <= 1 else None,
                                  recognizer_cmd=args.recognizer_cmd)
        records = [rec for group in results for rec in group]
    finally:
        logging.getLogger().removeHandler(warnings)

    if args.out:
        write_jsonl(args.out, records)
    else:
        for rec in records:
            sys.stdout.write(json.dumps(rec.to_json(), ensure_ascii=False, sort_keys=True) + "\n")

    stats = corpus_stats(records)
    orig_counts = {}
    for rec in records:
        for tag in rec.transforms:
            orig_counts.setdefault(tag.value, set()).add(rec.orig_id)
    manifest = {
        "config": asdict(config),
        "input": args.input,
        "output": args.out,
        "input_sentences": len(sentences),
        "output_sentences": len(records),
        "skipped_lines": report.skipped,
        "stage_counts": stats.stage_counts,
        "input_stage_counts": {k: len(v) for k, v in sorted(orig_counts.items())},
        "warnings": warnings.messages,
        "duration_seconds": round(time.time() - started, 3),
    }
    manifest_path = args.manifest or (f"{args.out}.manifest.json" if args.out else None)
    if manifest_path:
        with open(manifest_path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
    log.info("%d sentences in, %d out", len(sentences), len(records))
    return EXIT_OK


def run_stats(args) -> int:
    if args.before or args.after:
        if not (args.before and args.after):
            raise InputError("--before and --after go together")
        before = corpus_stats(read_stats_records(args.before, args.format, args.strict))
        after = corpus_stats(read_stats_records(args.after, None, args.strict))
        if not before.sentence_count or not after.sentence_count:
            raise InputError("empty corpus")
        rep = reduction_report(before, after)
        _write_text(args.out, rep.render() + "\n")
        payload = rep.to_json()
    else:
        if not args.input:
            raise InputError("give --in, or --before and --after")
        stats = corpus_stats(read_stats_records(args.input, args.format, args.strict))
        if not stats.sentence_count:
            raise InputError("empty corpus", args.input)
        _write_text(args.out, render_stats(stats) + "\n")
        payload = stats.to_json()
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    return EXIT_OK


def run_eval(args) -> int:
    gold = read_link_file(args.gold)
    pred = read_link_file(args.pred)
    records = read_simplified(args.align, args.strict) if args.align else None
    try:
        report = evaluate(gold, pred, records, system=args.system,
                          strict=args.strict, warn=log.warning)
    except KeyError as exc:
        raise InputError(f"{args.pred}: {exc.args[0]}") from None
    except AlignmentMismatch as exc:
        raise InputError(f"{args.pred}: {exc}") from None
    _write_text(args.out, report.render() + "\n")
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2)
    return EXIT_OK


def run_restore(args) -> int:
    if not args.input:
        raise InputError("--in is required")
    records = read_simplified(args.input, args.strict)
    lines = []
    for rec in records:
        try:
            lines.append(restore_placeholders(rec))
        except UnknownPlaceholder as exc:
            raise InputError(str(exc), args.input) from None
    _write_text(args.out, "".join(line + "\n" for line in lines))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, GazetteerError, EmptyCorpus, OracleSpawnFailure) as exc:
        print(f"biosimplify {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        log.exception("internal failure: %s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
