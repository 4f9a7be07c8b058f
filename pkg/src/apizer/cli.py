"""Command-line entry points: apize, batch, evaluate and clones."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from .apize import apize
from .catalog import SchemaError, TypeCatalog, default_catalog, load_catalog
from .clones import DEFAULT_THRESHOLD, type3_containment
from .evaluate import evaluate_pair, summarize
from .model import ALREADY_API, APIZED, FAILED, SKIPPED, ApizationResult
from .naming import SoPage, default_lexicon, load_lexicon
from .syntax import LexError, ParseError
from .units import render_unit

EXIT_OK, EXIT_USAGE, EXIT_SKIPPED, EXIT_FAILED = 0, 1, 2, 3
OUTCOMES = (APIZED, ALREADY_API, SKIPPED, FAILED)
DEFAULT_BUDGET = 10.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _catalog(path: Optional[str]) -> TypeCatalog:
    if path is None:
        return default_catalog()
    try:
        return load_catalog(path)
    except (OSError, SchemaError) as exc:
        raise UsageError(f"cannot load catalog {path}: {exc}") from exc


def _lexicon(path: Optional[str]) -> frozenset[str]:
    if path is None:
        return default_lexicon()
    try:
        return load_lexicon(path)
    except OSError as exc:
        raise UsageError(f"cannot read verb lexicon {path}: {exc}") from exc


def write_result(result: ApizationResult, out: Path) -> Optional[Path]:
    """Write the rendered unit for a successful result; return its path."""
    if result.outcome not in (APIZED, ALREADY_API):
        return None
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{result.class_name}.java"
    path.write_text(render_unit(result.draft, result.class_name, result.javadoc), encoding="utf-8")
    return path


def exit_code(outcome: str) -> int:
    return {APIZED: EXIT_OK, ALREADY_API: EXIT_OK, SKIPPED: EXIT_SKIPPED}.get(outcome, EXIT_FAILED)


# ---------------------------------------------------------------- apize


def cmd_apize(args) -> int:
    try:
        snippet = Path(args.snippet).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read snippet {args.snippet}: {exc}") from exc
    catalog = _catalog(args.catalog)
    lexicon = _lexicon(args.verb_lexicon)
    page = SoPage(args.title, args.url, args.answer_id)
    result = apize(snippet, page, catalog, args.time_budget, lexicon)
    path = write_result(result, Path(args.out))
    print(result.label)
    if path is not None:
        print(path)
    return exit_code(result.outcome)


# ---------------------------------------------------------------- batch


def parse_record(line: str) -> dict:
    """Validate one JSON-lines job record; raises ValueError when malformed."""
    record = json.loads(line)
    if not isinstance(record, dict):
        raise ValueError("record is not an object")
    if not isinstance(record.get("answer_id"), int) or isinstance(record.get("answer_id"), bool):
        raise ValueError("answer_id must be an integer")
    snippet = record.get("snippet")
    if not isinstance(snippet, str) or not snippet.strip():
        raise ValueError("snippet must be non-empty text")
    for key in ("title", "url"):
        if not isinstance(record.get(key, ""), str):
            raise ValueError(f"{key} must be text")
    return record


def _run_job(job: tuple) -> tuple[str, str, Optional[str]]:
    record, catalog_path, lexicon_path, budget, out = job
    catalog = _catalog(catalog_path)
    lexicon = _lexicon(lexicon_path)
    page = SoPage(record.get("title", ""), record.get("url", ""), record["answer_id"])
    result = apize(record["snippet"], page, catalog, budget, lexicon)
    path = write_result(result, Path(out))
    return result.outcome, result.label, str(path) if path else None


def cmd_batch(args) -> int:
    try:
        lines = Path(args.input).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read input {args.input}: {exc}") from exc
    _catalog(args.catalog)
    _lexicon(args.verb_lexicon)
    rows: list[tuple[str, object]] = []  # (label-or-job kind, payload)
    seen: set[int] = set()
    for n, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = parse_record(line)
        except (ValueError, json.JSONDecodeError) as exc:
            rows.append(("error", (f"line{n}", f"{FAILED}: parse: {exc}")))
            continue
        if record["answer_id"] in seen:
            rows.append(("error", (record["answer_id"], f"{FAILED}: parse: duplicate answer_id")))
            continue
        seen.add(record["answer_id"])
        rows.append(("job", (record, args.catalog, args.verb_lexicon, args.time_budget, args.out)))
    jobs = [payload for kind, payload in rows if kind == "job"]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = iter(list(pool.map(_run_job, jobs)))
    else:
        results = iter([_run_job(j) for j in jobs])
    counts = Counter({o: 0 for o in OUTCOMES})
    for kind, payload in rows:
        if kind == "error":
            key, label = payload
            counts[FAILED] += 1
        else:
            outcome, label, _ = next(results)
            key = payload[0]["answer_id"]
            counts[outcome] += 1
        print(f"{key}\t{label}")
    print(" ".join(f"{o}={counts[o]}" for o in OUTCOMES))
    return EXIT_OK


# ---------------------------------------------------------------- evaluate / clones


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _pairs(path: str, first: str, second: str) -> list[tuple[object, Optional[tuple[str, str]], str]]:
    """Pair records as (id, (first, second)) or (id, None, error)."""
    out = []
    for n, line in enumerate(_read(path).splitlines(), 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            a, b = record[first], record[second]
            if not isinstance(a, str) or not isinstance(b, str):
                raise ValueError(f"{first} and {second} must be text")
            out.append((record.get("id", n), (a, b), ""))
        except (ValueError, KeyError, TypeError) as exc:
            out.append((n, None, f"malformed record: {exc}"))
    return out


def cmd_evaluate(args) -> int:
    if args.pairs:
        pairs = _pairs(args.pairs, "human", "tool")
    elif args.human and args.tool:
        pairs = [("pair", (_read(args.human), _read(args.tool)), "")]
    else:
        raise UsageError("evaluate needs --pairs or both --human and --tool")
    reports = []
    for key, pair, error in pairs:
        if pair is not None:
            try:
                report = evaluate_pair(*pair)
            except (ParseError, LexError, RecursionError) as exc:
                error = f"parse: {exc}"
            else:
                reports.append(report)
                print(json.dumps({"id": key, **report.to_dict()}, sort_keys=True))
                continue
        print(json.dumps({"id": key, "error": error}, sort_keys=True))
    if args.pairs:
        print(json.dumps({"summary": summarize(reports)}, sort_keys=True))
    return EXIT_OK if reports else EXIT_FAILED


def cmd_clones(args) -> int:
    if args.pairs:
        pairs = _pairs(args.pairs, "snippet", "method")
    elif args.snippet and args.method:
        pairs = [("pair", (_read(args.snippet), _read(args.method)), "")]
    else:
        raise UsageError("clones needs --pairs or both --snippet and --method")
    ok = 0
    for key, pair, error in pairs:
        if pair is not None:
            try:
                ratio, clone = type3_containment(pair[0], pair[1], args.threshold)
            except (ParseError, LexError, RecursionError) as exc:
                error = f"parse: {exc}"
            else:
                ok += 1
                print(json.dumps({"id": key, "ratio": round(ratio, 6), "clone": clone}, sort_keys=True))
                continue
        print(json.dumps({"id": key, "error": error}, sort_keys=True))
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------- parser


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--catalog", help="type catalog (JSON lines); defaults to the bundled one")
    p.add_argument("--out", default=".", help="directory for generated Snippet<answerId>.java files")
    p.add_argument("--time-budget", type=float, default=DEFAULT_BUDGET, help="seconds per snippet")
    p.add_argument("--verb-lexicon", help="verb list used for method names, one per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apizer", description="Turn dangling Java snippets into compilable methods.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("apize", help="convert one snippet")
    p.add_argument("--snippet", required=True, help="file holding the snippet")
    p.add_argument("--title", default="", help="question title, used for the name and JavaDoc")
    p.add_argument("--url", default="", help="answer URL for the JavaDoc")
    p.add_argument("--answer-id", type=int, default=0)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_apize)

    p = sub.add_parser("batch", help="convert JSON-lines job records")
    p.add_argument("--input", required=True, help='records {"answer_id", "title", "url", "snippet"}')
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("evaluate", help="compare reference and generated methods")
    p.add_argument("--human", help="reference method source")
    p.add_argument("--tool", help="generated method source")
    p.add_argument("--pairs", help='JSON lines {"id", "human", "tool"}')
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("clones", help="line-containment clone check")
    p.add_argument("--pairs", help='JSON lines {"id", "snippet", "method"}')
    p.add_argument("--snippet", help="snippet source")
    p.add_argument("--method", help="method source")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.set_defaults(func=cmd_clones)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if getattr(args, "time_budget", 1) is not None and getattr(args, "time_budget", 1) <= 0:
        parser.error("--time-budget must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"apizer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
