"""Command-line entry point: ``electionbias {adjust,aggregate,bias,predict,compare,series}``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import report
from .electorate import C1_INDICATORS, C2_INDICATORS, MentionClassifier
from .ingest import FormatError
from .pipeline import default_threads
from .polls import NoDataError
from .sentiment import LexiconFormatError


def _scopes(values):
    out = []
    for v in values or ():
        out.extend(s.strip().upper() for s in v.split(",") if s.strip())
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output CSV (default: stdout)")
    common.add_argument("--c1-name", default="Trump")
    common.add_argument("--c2-name", default="Clinton")
    common.add_argument("--threads", type=int, default=default_threads(),
                        help="worker processes for tweet scoring (default: available CPUs)")
    common.add_argument("--decimals", type=int, default=report.DEFAULT_DECIMALS)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="electionbias", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adjust", parents=[common], help="two-party adjust every poll")
    p.add_argument("--in", dest="inp", required=True, help="poll CSV")

    p = sub.add_parser("aggregate", parents=[common], help="respondent-weighted monthly aggregates")
    p.add_argument("--in", dest="inp", required=True, help="poll CSV")

    p = sub.add_parser("bias", parents=[common], help="per-period bias and average bias per source")
    p.add_argument("--in", dest="inp", required=True, help="poll CSV")
    p.add_argument("--results", required=True)
    p.add_argument("--by", choices=("poll", "month"), default="month")

    p = sub.add_parser("series", parents=[common], help="chronological bias series for plotting")
    p.add_argument("--in", dest="inp", required=True, help="poll CSV")
    p.add_argument("--results", required=True)
    p.add_argument("--source", help="only this poll source")
    p.add_argument("--by", choices=("poll", "month"), default="poll")
    p.add_argument("--svg", help="also draw the series as an SVG chart")

    p = sub.add_parser("predict", parents=[common], help="extrapolate user votes from tweets")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="inp", help="newline-delimited JSON tweet corpus")
    src.add_argument("--users", help="user sentiment snapshot CSV instead of a corpus")
    p.add_argument("--results", required=True)
    p.add_argument("--lexicon", help="token<TAB>valence lexicon (default: bundled)")
    p.add_argument("--scope", action="append", help="US or a postal code; repeatable or comma separated")
    p.add_argument("--snapshot", help="where to write per-user sums (default: <out>.users.csv)")
    p.add_argument("--c1-indicators", default=",".join(C1_INDICATORS))
    p.add_argument("--c2-indicators", default=",".join(C2_INDICATORS))
    p.add_argument("--all-languages", action="store_true", help="skip the English-only pre-filter")

    p = sub.add_parser("compare", parents=[common], help="poll bias against social-media bias per scope")
    p.add_argument("--in", dest="inp", required=True, help="poll bias CSV (from `bias`)")
    p.add_argument("--social", required=True, help="social bias CSV (from `predict`)")
    return parser


def run(args) -> None:
    labels = report.Labels(args.c1_name, args.c2_name)
    if args.command == "adjust":
        report.cmd_adjust(args.inp, args.out, labels, args.decimals)
    elif args.command == "aggregate":
        report.cmd_aggregate(args.inp, args.out, labels, args.decimals)
    elif args.command == "bias":
        report.cmd_bias(args.inp, args.results, args.by, args.out, args.decimals)
    elif args.command == "series":
        report.cmd_series(args.inp, args.results, args.source, args.by, args.out, args.decimals, args.svg)
    elif args.command == "predict":
        snapshot = args.snapshot
        if snapshot is None and args.inp and args.out != "-":
            snapshot = f"{args.out}.users.csv"
        classifier = MentionClassifier(
            [w for w in args.c1_indicators.split(",") if w], [w for w in args.c2_indicators.split(",") if w]
        )
        report.cmd_predict(args.inp, args.lexicon, args.results, _scopes(args.scope), args.out,
                           users_in=args.users, snapshot=snapshot, threads=args.threads,
                           classifier=classifier, english_only=not args.all_languages,
                           decimals=args.decimals)
    elif args.command == "compare":
        report.cmd_compare(args.inp, args.social, args.out, args.decimals)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        run(args)
    except report.CommandError as exc:
        return _fail(exc.kind, exc)
    except (FormatError, LexiconFormatError) as exc:
        return _fail("format", exc)
    except NoDataError as exc:
        return _fail("no-data", exc)
    except OSError as exc:
        return _fail("io", exc)
    except ValueError as exc:
        return _fail("invalid-input", exc)
    return 0


def _fail(kind, exc) -> int:
    message = " ".join(str(exc).split())
    print(f"electionbias: error: {kind}: {message}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
