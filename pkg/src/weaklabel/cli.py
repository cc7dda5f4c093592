"""Command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline
from .config import RunConfig
from .errors import ConfigError, ParseError, ValidationError

EXIT_OK, EXIT_CONFIG, EXIT_DATA = 0, 1, 2

log = logging.getLogger("weaklabel")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _key_value(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected NAME=PATH, got {text!r}")
    return key, value


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="YAML run configuration")
    p.add_argument("--corpus", action="append", help="directory whose subdirectories are projects (repeatable)")
    p.add_argument("--labels", help="label vocabulary JSON")
    p.add_argument("--truth", help="ground-truth JSON")
    p.add_argument("--keyword-table", help="use this keyword table instead of the built one")
    p.add_argument("--embedding", action="append", type=_key_value, metavar="NAME=PATH",
                   help="word2vec text table, used by LF similarity-NAME (repeatable)")
    p.add_argument("--subwords", action="append", type=_key_value, metavar="NAME=PATH",
                   help="character n-gram table for embedding NAME (repeatable)")
    p.add_argument("--stopwords", help="stopword file, one word per line")
    p.add_argument("--extension", help="source file extension (default .java)")
    p.add_argument("--lf", action="append", dest="lfs",
                   help="keyword-name | keyword-identifiers | random | similarity-NAME (repeatable)")
    p.add_argument("--threshold", action="append", type=float, dest="thresholds",
                   help="JSD filter threshold (repeatable)")
    p.add_argument("--transform", action="append", dest="transforms", choices=("RAW", "T1", "Tp"),
                   help="label transformation (repeatable)")
    p.add_argument("--tp-threshold", type=float)
    p.add_argument("--ensemble", action="append", dest="ensembles", metavar="KIND:LF1,LF2",
                   help="csc:... (cascade) or vt:... (vote) (repeatable)")
    p.add_argument("--vote-pool", type=int)
    p.add_argument("--topk", type=int, dest="top_k")
    p.add_argument("--no-recursive-packages", action="store_false", dest="recursive_packages", default=None)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weaklabel", description="Weak application-domain labelling of source repositories.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in (
        ("ingest", "discover sources, build structure graphs and term documents"),
        ("keywords", "extract project keywords and build the label keyword table"),
        ("annotate", "run labelling functions over every file"),
        ("aggregate", "lift file annotations to packages and projects"),
        ("evaluate", "compute the metric report"),
        ("run", "all stages in order"),
    ):
        _common(sub.add_parser(name, help=help_text))
    exp = sub.add_parser("export-treemap", help="write the nested treemap JSON of one aggregated configuration")
    _common(exp)
    exp.add_argument("--cell", help="configuration id (or unique prefix) from aggregate/manifest.json")
    exp.add_argument("--project", help="restrict to one project")
    exp.add_argument("--dest", type=Path, help="output file (default: stdout)")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {
        k: getattr(args, k)
        for k in ("labels", "truth", "keyword_table", "stopwords", "extension", "lfs", "thresholds",
                  "transforms", "tp_threshold", "ensembles", "vote_pool", "top_k", "recursive_packages",
                  "seed", "jobs", "out")
        if getattr(args, k, None) is not None
    }
    cwd = Path.cwd()
    for k in ("labels", "truth", "keyword_table", "stopwords", "out"):
        if k in overrides:
            overrides[k] = str((cwd / overrides[k]).resolve())
    if args.corpus:
        overrides["corpus"] = [str((cwd / c).resolve()) for c in args.corpus]
    for k, v in overrides.items():
        setattr(cfg, k, v)
    if args.embedding:
        cfg.embeddings = {**cfg.embeddings, **{k: str((cwd / v).resolve()) for k, v in args.embedding}}
    if args.subwords:
        cfg.subwords = {**cfg.subwords, **{k: str((cwd / v).resolve()) for k, v in args.subwords}}
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = resolve_config(args)
        if args.command == "ingest":
            pipeline.cmd_ingest(cfg)
        elif args.command == "keywords":
            pipeline.cmd_keywords(cfg)
        elif args.command == "annotate":
            pipeline.cmd_annotate(cfg)
        elif args.command == "aggregate":
            pipeline.cmd_aggregate(cfg)
        elif args.command == "evaluate":
            report = pipeline.cmd_evaluate(cfg)
            sys.stdout.write(report.to_csv())
        elif args.command == "run":
            report = pipeline.run_all(cfg)
            sys.stdout.write(report.to_csv())
        elif args.command == "export-treemap":
            doc = pipeline.export_treemap(cfg, args.cell, args.project, args.dest)
            if args.dest is None:
                sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (ValidationError, ParseError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
