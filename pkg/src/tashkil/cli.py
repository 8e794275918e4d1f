"""Command-line entry point: ``tashkil <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from dataclasses import replace
from typing import Iterator, Sequence

from . import __version__
from .context import ContextMode, load_rules
from .db import load_db
from .errors import TashkilError
from .pipeline import RANKINGS, Pipeline, evaluate, make_predictor, parse_ref_line, reference_words
from .script import from_hsb, normalize, to_hsb
from .stats import accumulate, correlate, finalize
from .tokens import TokenKind, context_windows, detokenize, tokenize
from .wellformed import check_context


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read(path: str, hsb: bool) -> list[str]:
    if path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    return [from_hsb(l) for l in lines] if hsb else lines


def _read_ref(path: str, hsb: bool) -> list[str]:
    """Reference lines; with ``hsb`` only the sentence column is transliterated."""
    lines = _read(path, False)
    if not hsb:
        return lines
    out = []
    for line in lines:
        cols = line.split("\t")
        k = 1 if len(cols) >= 3 else 0
        cols[k] = from_hsb(cols[k])
        out.append("\t".join(cols))
    return out


@contextmanager
def _output(path: str | None) -> Iterator:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as f:
            yield f


def _emit(out, lines: Sequence[str], hsb: bool) -> None:
    for line in lines:
        out.write((to_hsb(line) if hsb else line) + "\n")


def cmd_stats(args) -> int:
    stats = finalize(accumulate(_read(args.input, args.hsb)))
    report = {"stats": stats.to_dict()}
    if args.compare:
        other = finalize(accumulate(_read(args.compare, args.hsb)))
        report["compare"] = other.to_dict()
        report["correlation"] = correlate(stats.diac_distribution, other.diac_distribution)
    with _output(args.output) as out:
        json.dump(report, out, ensure_ascii=False, indent=2)
        out.write("\n")
    return 0


def cmd_check(args) -> int:
    rows = []
    for line in _read(args.input, args.hsb):
        tokens = tokenize(line)
        for window in context_windows(tokens):
            words = [tokens[i].text for i in window]
            for w, v in zip(words, check_context(words, complete=not args.partial)):
                verdict = "OK" if v.ok else " ".join(map(str, v.violations))
                rows.append(f"{to_hsb(w) if args.hsb else w}\t{verdict}")
    with _output(args.output) as out:
        for r in rows:
            out.write(r + "\n")
    return 0


def cmd_normalize(args) -> int:
    result = []
    for line in _read(args.input, args.hsb):
        tokens = tokenize(line)
        for k, t in enumerate(tokens):
            if t.kind is TokenKind.ARABIC_WORD:
                tokens[k] = replace(t, text=normalize(t.text))
        result.append(detokenize(tokens, line[tokens[-1].end :] if tokens else line))
    with _output(args.output) as out:
        _emit(out, result, args.hsb)
    return 0


def cmd_diacritize(args) -> int:
    if not args.db:
        raise UsageError("diacritize needs --db")
    if args.ranking == "oracle" and not args.reference:
        raise UsageError("--ranking oracle needs --reference")
    db = load_db(args.db, hsb=args.hsb)
    predictor = make_predictor(args.predictor, hsb=args.hsb)
    pipe = Pipeline(db, predictor, ContextMode(args.context), args.ranking, load_rules(args.rules))
    lines = _read(args.input, args.hsb)
    refs = None
    if args.reference:
        refs = [reference_words(parse_ref_line(l)[0]) for l in _read_ref(args.reference, args.hsb)]
    out_lines, missing = [], 0
    for k, line in enumerate(lines):
        res = pipe.run(line, k, refs[k] if refs is not None else None)
        out_lines.append(res.text)
        missing += res.no_analysis
    with _output(args.output) as out:
        _emit(out, out_lines, args.hsb)
    if missing:
        print(f"{missing} word(s) without analysis left unchanged", file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    report = evaluate(_read_ref(args.hyp, args.hsb), _read_ref(args.ref, args.hsb), raw=args.raw)
    with _output(args.output) as out:
        json.dump(report.to_dict(), out, indent=2)
        out.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tashkil", description="Arabic diacritic normalization, validation and restoration.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("input", nargs="?", default="-", help="input file (default stdin)")
        sp.add_argument("--hsb", action="store_true", help="read and write HSB transliteration")
        sp.add_argument("--output", "-o", help="output file (default stdout)")

    sp = sub.add_parser("stats", help="corpus diacritic statistics as JSON")
    common(sp)
    sp.add_argument("--compare", metavar="FILE", help="second corpus; adds the distribution correlation")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("check", help="well-formedness verdict per word")
    common(sp)
    sp.add_argument("--partial", action="store_true", help="accept partially diacritized words")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("normalize", help="canonical cluster order for every word")
    common(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("diacritize", help="restore maximal diacritics")
    common(sp)
    sp.add_argument("--db", metavar="FILE", help="analysis database (TSV)")
    sp.add_argument("--predictor", default="null", help="null or gold:FILE")
    sp.add_argument("--context", choices=[m.value for m in ContextMode], default="full")
    sp.add_argument("--ranking", choices=RANKINGS, default="extended")
    sp.add_argument("--rules", metavar="FILE", help="context rule file")
    sp.add_argument("--reference", metavar="FILE", help="gold sentences for --ranking oracle")
    sp.set_defaults(func=cmd_diacritize)

    sp = sub.add_parser("evaluate", help="strict word accuracy")
    sp.add_argument("hyp")
    sp.add_argument("ref")
    common(sp, with_input=False)
    sp.add_argument("--raw", action="store_true", help="compare bytes without normalizing")
    sp.set_defaults(func=cmd_evaluate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tashkil: error: {exc}", file=sys.stderr)
        return 1
    except (TashkilError, ValueError, OSError) as exc:
        print(f"tashkil: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
