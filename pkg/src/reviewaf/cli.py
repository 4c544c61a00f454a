"""Command-line interface: ``reviewaf <command> ...``.

Exit codes: 0 success, 1 validation failure, 2 parse or I/O failure,
3 bad arguments, 4 unacceptable verdict (``solve --verdict-exit`` only).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analytics, interchange, owl_gen
from .errors import IccmaParseError, ReviewAFError, ReviewParseError, ValidationGateError
from .review_model import (
    ValidationReport,
    parse_review_json,
    resolve,
    serialize_review_json,
    validate,
)

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_USAGE, EXIT_UNACCEPTABLE = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load(path: str):
    return parse_review_json(_read(path))


def _print_report(report: ValidationReport, label: str) -> None:
    print(f"{label}: {'valid' if report.is_valid else 'INVALID'}")
    for kind, items in (("error", report.errors), ("warning", report.warnings), ("note", report.notes)):
        for f in items:
            print(f"  {kind} {f.code}: {f.message}")


def _ids(ids) -> str:
    return ", ".join(str(i) for i in ids) if ids else "-"


def cmd_validate(args) -> int:
    rf = _load(args.path)
    report = validate(rf)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        _print_report(report, args.path)
    return EXIT_OK if report.is_valid else EXIT_INVALID


def cmd_solve(args) -> int:
    rf = _load(args.path)
    res = resolve(rf, force=args.force)
    if args.json:
        print(json.dumps(res.as_dict(order=rf.ids), indent=2))
    else:
        verdict = "acceptable" if res.acceptable else "unacceptable"
        grounded = [i for i in rf.ids if i in res.grounded]
        print(f"verdict: {verdict}")
        print(f"root: {rf.root}")
        print(f"grounded ({len(grounded)}): {_ids(grounded)}")
        tally = ", ".join(f"{p}={c}" for p, c in res.per_party_accepted.items())
        print(f"accepted per party: {tally}")
        if res.undecided:
            print(f"undecided: {_ids([i for i in rf.ids if i in res.undecided])}")
    if args.verdict_exit and not res.acceptable:
        return EXIT_UNACCEPTABLE
    return EXIT_OK


def render_classification(rf, result, base: str) -> str:
    """Indented class tree in the style of a reasoner's classification log."""
    names = owl_gen.local_names(rf)

    def members(ids):
        ordered = [i for i in rf.ids if i in ids]
        if not ordered:
            return ""
        return " - (" + ", ".join(f"{base}#{names[i]}" for i in ordered) + ")"

    lines = ["owl:Thing"]
    for party in rf.party_names:
        pc = result[party]
        lines.append(f"  {base}#{party}")
        lines.append(f"    {base}#{party}ConflictFree{members(pc.conflict_free)}")
        lines.append(f"      {base}#{party}Admissible{members(pc.admissible)}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    rf = _load(args.path)
    result = owl_gen.classify_parties(rf)
    report = owl_gen.compare_with_grounded(rf) if args.compare else None
    if args.json:
        out = {
            "parties": {
                p: {
                    "conflict_free": [str(i) for i in rf.ids if i in pc.conflict_free],
                    "admissible": [str(i) for i in rf.ids if i in pc.admissible],
                }
                for p, pc in result.parties.items()
            }
        }
        if report is not None:
            out["divergence"] = report.as_dict()
        print(json.dumps(out, indent=2))
        return EXIT_OK
    sys.stdout.write(render_classification(rf, result, args.base or owl_gen.default_base()))
    if report is not None:
        def ordered(s):
            return _ids([i for i in rf.ids if i in s])

        print()
        print(f"grounded: {ordered(report.grounded)}")
        print(f"owl_union: {ordered(report.owl_union)}")
        print(f"only_owl: {ordered(report.only_owl)}")
        print(f"only_grounded: {ordered(report.only_grounded)}")
        print("DIVERGES" if report.diverges else "AGREES")
    return EXIT_OK


def cmd_export_owl(args) -> int:
    rf = _load(args.path)
    doc = owl_gen.emit_owl(rf, base=args.base)
    _write(args.output, doc.text)
    return EXIT_OK


def _looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def cmd_convert(args) -> int:
    text = _read(args.path)
    if _looks_like_json(text):
        rf = parse_review_json(text)
        if args.to == "json":
            _write(args.output, serialize_review_json(rf))
            return EXIT_OK
        iccma, sidecar = interchange.review_to_iccma(rf)
        _write(args.output, iccma)
        sidecar_path = args.sidecar or (args.output + ".sidecar.json" if args.output not in (None, "-") else None)
        if sidecar_path:
            Path(sidecar_path).write_text(interchange.dump_sidecar(sidecar), encoding="utf-8", newline="\n")
        else:
            print("note: no --sidecar given; argument ids are not recoverable from stdout output", file=sys.stderr)
        return EXIT_OK
    if args.to == "iccma":
        f, _ = interchange.parse_iccma(text)
        _write(args.output, interchange.emit_iccma(f))
        return EXIT_OK
    if not args.sidecar:
        raise _UsageError("converting ICCMA to review JSON needs --sidecar")
    sidecar = json.loads(_read(args.sidecar))
    rf = interchange.iccma_to_review(text, sidecar)
    _write(args.output, serialize_review_json(rf))
    return EXIT_OK


def cmd_stats(args) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        print(f"error: {root} is not a directory", file=sys.stderr)
        return EXIT_PARSE
    results = analytics.process_corpus(sorted(root.glob("*.json")), jobs=args.jobs)
    code = EXIT_OK
    for r in results:
        if r.error:
            print(f"{r.name}: {r.kind} error: {r.error}", file=sys.stderr)
            code = max(code, EXIT_PARSE if r.kind == "parse" else EXIT_INVALID)
    records = [r.record for r in results if r.record is not None]
    if args.csv:
        _write(args.csv, analytics.stats_csv(results))
    if not records:
        print("error: no framework could be resolved", file=sys.stderr)
        return max(code, EXIT_PARSE)
    summary = analytics.corpus_stats(records).as_dict()
    summary["files"] = [r.name for r in results if r.record is not None]
    _write(args.summary, json.dumps(summary, indent=2) + "\n")
    return code


def _range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition("-")
        lo_i = int(lo)
        return lo_i, int(hi) if hi else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO-HI or N, got {text!r}") from None


def cmd_synth(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for k in range(args.count):
        params = analytics.SynthParams(
            seed=args.seed + k,
            reviewer_count_range=args.reviewers,
            reviewer_args_range=args.reviewer_args,
            response_probability=args.response_prob,
            counter_response_probability=args.counter_prob,
            max_rounds=args.max_rounds,
            max_arguments=args.max_args,
        )
        rf = analytics.generate_synthetic(params)
        (out / f"synth_{k:04d}.json").write_text(serialize_review_json(rf), encoding="utf-8", newline="\n")
    print(f"wrote {args.count} frameworks to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reviewaf", description="Peer review disputes as abstract argumentation frameworks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check the structural rules of a review framework")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="grounded resolution and acceptability verdict")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.add_argument("--verdict-exit", action="store_true", help="exit 4 when the manuscript is unacceptable")
    s.add_argument("--force", action="store_true", help="solve even if validation fails")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("classify", help="per-party conflict-free/admissible classification")
    s.add_argument("path")
    s.add_argument("--compare", action="store_true", help="compare against the grounded extension")
    s.add_argument("--json", action="store_true")
    s.add_argument("--base", default=None, help="ontology base IRI used in the tree labels")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("export-owl", help="write the Manchester-syntax OWL document")
    s.add_argument("path")
    s.add_argument("-o", "--output", default=None)
    s.add_argument("--base", default=None, help=f"ontology base IRI (default ${owl_gen.BASE_ENV_VAR} or 'onto')")
    s.set_defaults(func=cmd_export_owl)

    s = sub.add_parser("convert", help="convert between review JSON and ICCMA text")
    s.add_argument("path")
    s.add_argument("--to", choices=("json", "iccma"), required=True)
    s.add_argument("-o", "--output", default=None)
    s.add_argument("--sidecar", default=None, help="index -> id map (written for --to iccma, read for --to json)")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("stats", help="per-framework CSV and corpus summary for a directory")
    s.add_argument("dir")
    s.add_argument("--csv", default=None)
    s.add_argument("--summary", default=None, help="summary JSON path (default stdout)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("synth", help="write seeded synthetic review frameworks")
    s.add_argument("--out", required=True)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--reviewers", type=_range, default=(1, 3))
    s.add_argument("--reviewer-args", type=_range, default=(1, 4))
    s.add_argument("--response-prob", type=float, default=0.8)
    s.add_argument("--counter-prob", type=float, default=0.2)
    s.add_argument("--max-rounds", type=int, default=3)
    s.add_argument("--max-args", type=int, default=None)
    s.set_defaults(func=cmd_synth)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationGateError as e:
        print(f"error: {e}", file=sys.stderr)
        for f in e.report.errors:
            print(f"  {f.code}: {f.message}", file=sys.stderr)
        return EXIT_INVALID
    except analytics.ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ReviewParseError, IccmaParseError, ReviewAFError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
