"""Command-line front end.

Input files are UTF-8 text::

    alphabet: ab
    kind: words
    a
    ba
    bb

or ``kind: regex`` followed by a single regular expression.  Exit codes:
0 computed, 1 a single check / code / completeness test failed, 2 usage or
parse error, 3 an undecided (open) case.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import automata, codes, completion, deciders
from .automata import Nfa, RegexError
from .words import Alphabet, AlphabetError, MetricSpec, ThetaSpec, show

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3
DEFAULT_SAMPLE_BOUND = 12


class SpecFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CodeSpec:
    alphabet: Alphabet
    kind: str
    body: tuple[str, ...]
    language: Nfa

    def describe(self) -> dict:
        return {"alphabet": self.alphabet.symbols, "kind": self.kind, "body": list(self.body)}


def _header(line: str, key: str, lineno: int) -> str:
    name, sep, value = line.partition(":")
    if not sep or name.strip() != key:
        raise SpecFileError(f"expected '{key}: ...'", lineno)
    return value.strip()


def _parse_alphabet(value: str, lineno: int) -> Alphabet:
    tokens = value.replace(",", " ").split()
    if len(tokens) > 1:
        for t in tokens:
            if len(t) != 1:
                raise SpecFileError(f"multi-character symbol {t!r} is not supported", lineno)
    value = "".join(tokens)
    try:
        return Alphabet(value)
    except AlphabetError as e:
        raise SpecFileError(str(e), lineno) from None


def parse_spec(text: str) -> CodeSpec:
    lines = text.splitlines()
    if len(lines) < 2:
        raise SpecFileError("expected 'alphabet:' and 'kind:' header lines", len(lines) + 1)
    alphabet = _parse_alphabet(_header(lines[0], "alphabet", 1), 1)
    kind = _header(lines[1], "kind", 2)
    if kind not in ("words", "regex"):
        raise SpecFileError(f"kind must be 'words' or 'regex', not {kind!r}", 2)
    body = [(i + 3, line) for i, line in enumerate(lines[2:]) if line.strip()]
    if kind == "regex":
        if len(body) != 1:
            lineno = body[1][0] if body else len(lines) + 1
            raise SpecFileError("a regex file holds exactly one expression", lineno)
        lineno, source = body[0]
        try:
            lang = automata.compile_regex(source, alphabet)
        except RegexError as e:
            raise SpecFileError(str(e), lineno, e.position + 1) from None
        except AlphabetError as e:
            raise SpecFileError(str(e), lineno) from None
        return CodeSpec(alphabet, kind, (source.strip(),), lang)
    words: list[str] = []
    seen: dict[str, int] = {}
    for lineno, line in body:
        raw = line.strip()
        try:
            w = alphabet.parse_word(raw)
        except AlphabetError:
            col = line.index(next(c for c in raw if c not in alphabet)) + 1
            raise SpecFileError(f"symbol not in alphabet {alphabet.symbols!r}", lineno, col) from None
        if w == "":
            raise SpecFileError("the empty word cannot be a codeword", lineno)
        if w in seen:
            raise SpecFileError(f"duplicate word {w!r} (first on line {seen[w]})", lineno)
        seen[w] = lineno
        words.append(w)
    return CodeSpec(alphabet, kind, tuple(words), automata.from_words(words, alphabet))


def read_spec(path: str) -> CodeSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SpecFileError(f"cannot read {path}: {e.strerror}", 1) from None
    return parse_spec(text)


# --------------------------------------------------------------------------
# Argument handling


def _metric(args, alphabet: Optional[Alphabet] = None) -> MetricSpec:
    if args.metric == "theta":
        theta = ThetaSpec.parse(args.theta or "", anti=args.anti)
        if alphabet is not None:
            theta.check_alphabet(alphabet)
        return MetricSpec("theta", 1, theta)
    if args.theta or args.anti:
        raise ValueError("--theta and --anti only apply to --metric theta")
    return MetricSpec(args.metric, args.k)


def _sample_bound(args) -> int:
    if args.sample_bound is not None:
        return args.sample_bound
    env = os.environ.get("VLC_SAMPLE_BOUND")
    if env is None:
        return DEFAULT_SAMPLE_BOUND
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"VLC_SAMPLE_BOUND must be an integer, not {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--metric", choices=("prefix", "suffix", "factor", "theta"), default="prefix")
    common.add_argument("-k", type=int, default=1, help="distance budget (default 1)")
    common.add_argument("--theta", help="letter permutation such as 'a:b,b:a'")
    common.add_argument("--anti", action="store_true", help="theta is an anti-automorphism")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--sample-bound", type=int, default=None,
                        help="word length bound for sampled checks (env VLC_SAMPLE_BOUND, default 12)")

    parser = argparse.ArgumentParser(prog="vlcodes", description="Error detection and correction for regular codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dist", parents=[common], help="distance between two words")
    p.add_argument("w1")
    p.add_argument("w2")
    for name, text in [("is-code", "Sardinas-Patterson test"), ("measure", "uniform Bernoulli measure"),
                       ("is-complete", "completeness test"), ("classify", "prefix/suffix/bifix/uniform"),
                       ("embed", "complete the code, keeping independence"),
                       ("image", "reflexive channel image of the code")]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
    p = sub.add_parser("check", parents=[common], help="decide c1..c4")
    p.add_argument("condition", choices=deciders.CONDITIONS + ("all",))
    p.add_argument("file")
    return parser


# --------------------------------------------------------------------------
# Commands; each returns (exit code, results list, text lines)


def _cmd_dist(args, spec):
    metric = _metric(args)
    value = metric.distance(args.w1 if args.w1 != "eps" else "", args.w2 if args.w2 != "eps" else "")
    return EXIT_OK, [{"metric": metric.label, "distance": value}], [str(value)]


def _cmd_is_code(args, spec):
    lang = spec.language
    if lang.accepts(""):
        return EXIT_FAIL, [{"is_code": False, "witness": ""}], ["not a code: contains the empty word"]
    sp = codes.sardinas_patterson(lang)
    if sp.is_code:
        return EXIT_OK, [{"is_code": True, "iterations": len(sp.items)}], ["code"]
    amb = sp.ambiguity
    res = {"is_code": False, "witness": amb.word, "left": list(amb.left), "right": list(amb.right)}
    text = f"not a code: {amb.word} = {'.'.join(amb.left)} = {'.'.join(amb.right)}"
    return EXIT_FAIL, [res], [text]


def _cmd_measure(args, spec):
    mu = codes.measure(spec.language)
    res = {"measure": None if mu.diverges else str(mu.value), "diverges": mu.diverges,
           "decimal": mu.decimal(20)}
    return EXIT_OK, [res], [str(mu)]


def _cmd_is_complete(args, spec):
    v = codes.is_complete(spec.language)
    if v.holds:
        return EXIT_OK, [{"complete": True, "witness": None}], ["complete"]
    return EXIT_FAIL, [{"complete": False, "witness": v.witness}], [f"not complete: {show(v.witness)} is not a factor of X*"]


def _cmd_classify(args, spec):
    c = codes.classify(spec.language)
    res = {"prefix": c.is_prefix, "suffix": c.is_suffix, "bifix": c.is_bifix, "uniform": c.is_uniform}
    return EXIT_OK, [res], [" ".join(f"{k}={'yes' if v else 'no'}" for k, v in res.items())]


def _report_line(r: deciders.ConditionReport) -> str:
    line = f"{r.condition}  {r.status}"
    if r.witness is not None:
        line += "  witness: (" + ", ".join(show(w) for w in r.witness) + ")"
    if r.notes:
        line += f"  [{r.notes}]"
    return line


def _cmd_check(args, spec):
    metric = _metric(args, spec.alphabet)
    lang = spec.language
    deciders.require_code(lang)
    if args.condition == "all":
        reports = deciders.check_all(lang, metric)
        code = EXIT_UNKNOWN if any(r.status == deciders.UNKNOWN for r in reports) else EXIT_OK
    else:
        reports = [deciders.decide(args.condition, lang, metric, checked=True)]
        code = {deciders.HOLDS: EXIT_OK, deciders.FAILS: EXIT_FAIL,
                deciders.UNKNOWN: EXIT_UNKNOWN}[reports[0].status]
    return code, [r.to_dict() for r in reports], [_report_line(r) for r in reports]


def _cmd_embed(args, spec):
    metric = _metric(args, spec.alphabet)
    bound = _sample_bound(args)
    try:
        recipe = completion.build_completion(spec.language, metric, bound)
    except completion.InconclusiveCompletion as e:
        return EXIT_UNKNOWN, [{"status": "inconclusive", "notes": str(e)}], [f"inconclusive: {e}"]
    except completion.CompletionError as e:
        return EXIT_FAIL, [{"status": "rejected", "notes": str(e)}], [f"cannot complete: {e}"]
    check = completion.verify_completion(recipe, metric, bound)
    res = recipe.to_dict()
    res["verified"] = check.ok
    res["failed"] = check.failed
    res["witness"] = list(check.witness) if check.witness is not None else None
    res["check_notes"] = check.notes
    sample = automata.enumerate_words(recipe.Y, len(recipe.z) + 2)
    lines = [
        f"flavor: {recipe.flavor}",
        f"seed z0: {recipe.z0}",
        f"anchor z: {recipe.z}",
        "added words (shortest): " + ", ".join(sample[:8]),
        "verified: " + ("yes" if check.ok else f"no ({check.failed})") + (f"  [{check.notes}]" if check.notes else ""),
    ]
    return (EXIT_OK if check.ok else EXIT_FAIL), [res], lines


def _cmd_image(args, spec):
    metric = _metric(args, spec.alphabet)
    img = deciders.channel_image(spec.language, metric)
    d = automata.minimize(img)
    bound = _sample_bound(args)
    finite = automata.is_finite(d)
    words = automata.words_of(d) if finite else automata.enumerate_words(d, bound)
    res = {"metric": metric.label, "k": metric.k, "finite": finite, "words": words,
           "automaton": d.to_dict()}
    head = "finite image" if finite else f"infinite image; words up to length {bound}"
    return EXIT_OK, [res], [head] + [show(w) for w in words]


COMMANDS = {
    "dist": _cmd_dist, "is-code": _cmd_is_code, "measure": _cmd_measure,
    "is-complete": _cmd_is_complete, "classify": _cmd_classify, "check": _cmd_check,
    "embed": _cmd_embed, "image": _cmd_image,
}


def run(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    spec = None
    try:
        if args.command != "dist" and args.k < 1:
            raise ValueError("k must be at least 1")
        if args.command != "dist":
            spec = read_spec(args.file)
            label = {"input": args.file, **spec.describe()}
        else:
            label = {"w1": args.w1, "w2": args.w2}
        code, results, lines = COMMANDS[args.command](args, spec)
    except SpecFileError as e:
        print(f"{getattr(args, 'file', '')}:{e}", file=err)
        return EXIT_USAGE
    except deciders.NotACodeError as e:
        print(str(e), file=err)
        return EXIT_FAIL
    except (ValueError, AlphabetError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    if args.format == "json":
        command = args.command if args.command != "check" else f"check {args.condition}"
        payload = {"input": label, "command": command, "results": results}
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return code


def main() -> None:
    sys.exit(run())
