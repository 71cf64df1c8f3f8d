"""Command-line interface and structured run reports.

Subcommands:
  check      run property checks on a poset (bundled name or file)
  complete   emit the Dedekind-MacNeille completion as a poset document
  residuate  verify operator residuation, optionally on the completion
  greechie   validate a block diagram and optionally paste it to a poset
  hsum       horizontal sum of several posets
  corpus     verify bundled members against their recorded profiles
  export     emit a DOT rendering of the cover relation

Exit codes: 0 when every requested check passed, 1 when some check
failed, 2 on usage errors, 3 on parse or input data errors.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from . import corpus as corpus_mod
from .build import generate_small, greechie_to_omp, horizontal_sum, validate_greechie
from .checks import PROPERTIES, CheckContext
from .completion import DEFAULT_MAX_CLOSED_SETS, complete
from .errors import (
    CorpusError,
    MissingBounds,
    MissingInvolution,
    NoRelativePseudocomplement,
    NotALattice,
    NotComplemented,
    ParseError,
    PosetError,
    SizeLimitExceeded,
)
from .formats import (
    export_dot,
    parse_greechie,
    parse_poset,
    serialize_poset,
)
from .poset import FinitePoset
from .report import CheckReport
from .residuation import (
    KINDS,
    bdm_transform,
    operator_pair,
    star_on_dm,
    verify_left_residuated_lattice,
    verify_operator_left_residuation,
)

TOOL = "posetkit"
REPORT_FORMAT = 1

# Checks aborted by these are reported as skipped (or as failures when the
# property was requested by name).
_SKIP_ERRORS = (
    MissingInvolution,
    MissingBounds,
    NotComplemented,
    NotALattice,
    SizeLimitExceeded,
)

_NEEDS_COMPLETION = {
    "strongly-d-continuous",
    "finch",
    "completion-orthomodular",
    "completion-distributive",
    "completion-modular",
}


class _UsageError(Exception):
    pass


class RunReport:
    """Accumulates check results; rendering is stable except time-ms."""

    def __init__(self, input_id: str, content: str):
        self.input_id = input_id
        self.digest = hashlib.sha256(content.encode("utf-8")).hexdigest()
        self.checks: "list[CheckReport]" = []
        self.entries: "list[str]" = []
        self._start = time.monotonic()

    def add(self, line: str) -> None:
        self.entries.append(line)

    def add_report(self, report: CheckReport) -> None:
        self.checks.append(report)
        self.entries.append(report.line())

    def render(self) -> str:
        lines = [
            f"tool: {TOOL} {__version__} report-format {REPORT_FORMAT}",
            f"input: {self.input_id} sha256:{self.digest}",
        ]
        lines.extend(self.entries)
        elapsed = int((time.monotonic() - self._start) * 1000)
        lines.append(f"time-ms: {elapsed}")
        return "\n".join(lines) + "\n"


def _load_poset_input(arg: str) -> "tuple[str, str, FinitePoset]":
    """Resolve a bundled member name or a file path.

    Returns (input id, content used for the digest, poset).
    """
    if arg in corpus_mod.member_names():
        poset = corpus_mod.load(arg)
        backed = corpus_mod.bundled_text(arg)
        if backed is None:
            content = serialize_poset(poset, metadata={"name": arg})
        else:
            content = backed[1]
        return arg, content, poset
    path = Path(arg)
    if not path.is_file():
        raise _UsageError(f"{arg!r} is neither a bundled member nor a file")
    content = path.read_text(encoding="utf-8")
    if path.suffix == ".greechie":
        poset = greechie_to_omp(parse_greechie(content))
    else:
        poset = parse_poset(content)
    return str(path), content, poset


def _write_document(text: str, output: "str | None", notes: "list[str]") -> None:
    """Document to the file (or stdout); notes to the other stream."""
    if output is None:
        sys.stdout.write(text)
        for note in notes:
            print(note, file=sys.stderr)
    else:
        Path(output).write_text(text, encoding="utf-8")
        for note in notes:
            print(note)


def _failed_precondition(name: str, exc: Exception, **extra) -> CheckReport:
    return CheckReport(name, False, witness={"error": str(exc)},
                       details="precondition failed", extra=extra)


def _run_properties(ctx: CheckContext, names: "list[str]"):
    """Evaluate properties in worker threads, results in argument order."""
    if any(name in _NEEDS_COMPLETION for name in names):
        try:
            ctx.dm.as_poset()
        except SizeLimitExceeded:
            pass

    def one(name):
        try:
            return name, PROPERTIES[name](ctx), None
        except _SKIP_ERRORS as exc:
            return name, None, exc

    with ThreadPoolExecutor(max_workers=min(8, len(names))) as pool:
        return list(pool.map(one, names))


def _cmd_check(args) -> int:
    input_id, content, poset = _load_poset_input(args.input)
    if args.property and args.all:
        raise _UsageError("--property and --all are mutually exclusive")
    report = RunReport(input_id, content)
    ctx = CheckContext(poset, args.max_closed_sets)
    names = [args.property] if args.property else list(PROPERTIES)

    profile = None
    if args.property is None and input_id in corpus_mod.member_names():
        profile = corpus_mod.expectations(input_id)

    failures = 0
    mismatches: "list[str]" = []
    for name, result, exc in _run_properties(ctx, names):
        if result is None:
            if args.property:
                report.add_report(_failed_precondition(name, exc))
                failures += 1
            else:
                report.add(f"skip: {name} - {exc}")
                if profile is not None and name in profile:
                    mismatches.append(
                        f"{name} expected {profile[name]}, check was skipped")
            continue
        report.add_report(result)
        if profile is not None:
            expected = profile.get(name)
            if expected is None:
                mismatches.append(f"{name} ran but has no recorded expectation")
            elif result.holds != expected:
                mismatches.append(f"{name} expected {expected}, got {result.holds}")
        elif not result.holds:
            failures += 1

    if profile is not None:
        for text in mismatches:
            report.add(f"profile: MISMATCH {text}")
        report.add("profile: ok" if not mismatches
                   else f"profile: {len(mismatches)} mismatches")
    sys.stdout.write(report.render())
    return 1 if failures or mismatches else 0


def _cmd_complete(args) -> int:
    input_id, _, poset = _load_poset_input(args.input)
    lattice = complete(poset, args.max_closed_sets)
    as_poset = lattice.as_poset()
    meta = {"closed-sets": str(len(lattice)), "completion-of": input_id}
    text = serialize_poset(as_poset, metadata=meta, style=args.style)
    _write_document(text, args.output,
                    [f"complete: {input_id} has {len(lattice)} closed sets"])
    return 0


def _cmd_residuate(args) -> int:
    input_id, content, poset = _load_poset_input(args.input)
    report = RunReport(input_id, content)
    code = 0
    try:
        pair = operator_pair(poset, args.kind)
        verdict = verify_operator_left_residuation(poset, args.kind, pair)
        report.add_report(verdict)
        if not verdict.holds:
            code = 1
    except (NoRelativePseudocomplement,) + _SKIP_ERRORS as exc:
        report.add_report(
            _failed_precondition("operator-residuation", exc, kind=args.kind))
        code = 1

    if args.on_completion:
        try:
            lattice = complete(poset, args.max_closed_sets)
            star = None
            if args.kind == "relpseudo":
                star = star_on_dm(poset, lattice)
            # as_poset keeps element ids aligned with closed-set indices,
            # so the star table carries over unchanged
            completed = lattice.as_poset()
            ops = bdm_transform(completed, args.kind, star)
            verdict = verify_left_residuated_lattice(completed, ops)
            report.add_report(verdict)
            if verdict.holds:
                if verdict.extra.get("commutative") == "yes":
                    report.add("residuate: residuated (commutative)")
                else:
                    report.add("residuate: left residuated")
            else:
                report.add("residuate: not left residuated")
                code = 1
        except (NoRelativePseudocomplement,) + _SKIP_ERRORS as exc:
            report.add_report(
                _failed_precondition("left-residuated-lattice", exc, kind=args.kind))
            report.add("residuate: not left residuated")
            code = 1
    sys.stdout.write(report.render())
    return code


def _cmd_greechie(args) -> int:
    if args.input in corpus_mod.member_names():
        backed = corpus_mod.bundled_text(args.input)
        if backed is None or not backed[0].endswith(".greechie"):
            raise _UsageError(f"{args.input!r} is not a block diagram")
        input_id, content = args.input, backed[1]
    else:
        path = Path(args.input)
        if not path.is_file():
            raise _UsageError(
                f"{args.input!r} is neither a bundled member nor a file")
        input_id, content = str(path), path.read_text(encoding="utf-8")
    diagram = parse_greechie(content)
    report = RunReport(input_id, content)
    verdict = validate_greechie(diagram)
    report.add_report(verdict)
    if not verdict.holds:
        sys.stdout.write(report.render())
        return 1
    if args.to_poset:
        poset = greechie_to_omp(diagram)
        report.add(f"greechie: pasted poset has {poset.n} elements")
        text = serialize_poset(poset, metadata={"pasted-from": input_id})
        if args.output is None:
            print(report.render(), end="", file=sys.stderr)
            sys.stdout.write(text)
        else:
            Path(args.output).write_text(text, encoding="utf-8")
            sys.stdout.write(report.render())
        return 0
    sys.stdout.write(report.render())
    return 0


def _cmd_hsum(args) -> int:
    parts = [_load_poset_input(name)[2] for name in args.inputs]
    summed = horizontal_sum(parts)
    meta = {"parts": str(len(parts))}
    text = serialize_poset(summed, metadata=meta, style=args.style)
    _write_document(text, args.output,
                    [f"hsum: {summed.n} elements from {len(parts)} parts"])
    return 0


def _cmd_corpus(args) -> int:
    names = args.member or list(corpus_mod.member_names())
    bad = 0
    for name in names:
        problems = corpus_mod.verify_member(name)
        print(f"corpus: {name} {'ok' if not problems else 'MISMATCH'}")
        for text in problems:
            print(f"corpus:   {text}")
        bad += len(problems)

    if args.generate:
        if args.seed is None:
            raise _UsageError("--generate requires --seed")
        stream = generate_small(args.max_size, "complemented", seed=args.seed)
        disagreements = 0
        for _ in range(args.generate):
            poset = next(stream)
            ctx = CheckContext(poset, args.max_closed_sets)
            sdc = PROPERTIES["strongly-d-continuous"](ctx).holds
            pom = PROPERTIES["pseudo-orthomodular"](ctx).holds
            finch = PROPERTIES["finch"](ctx).holds
            oml = PROPERTIES["completion-orthomodular"](ctx).holds
            if ((sdc and pom) != oml) or (finch != oml):
                disagreements += 1
        print(f"generated: {args.generate} complemented posets, "
              f"{disagreements} discrepancies")
        bad += disagreements
    return 1 if bad else 0


def _cmd_export(args) -> int:
    input_id, _, poset = _load_poset_input(args.input)
    if args.completion:
        target = complete(poset, args.max_closed_sets)
        note = f"export: completion of {input_id}, {len(target)} nodes"
    else:
        target = poset
        note = f"export: {input_id}, {poset.n} nodes"
    _write_document(export_dot(target), args.output, [note])
    return 0


def _add_cap(sub) -> None:
    sub.add_argument("--max-closed-sets", type=int,
                     default=DEFAULT_MAX_CLOSED_SETS, metavar="N",
                     help="abort completions larger than N closed sets")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL,
        description="Verify order-theoretic properties of finite bounded "
                    "posets with involution.")
    parser.add_argument("--version", action="version",
                        version=f"{TOOL} {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="run property checks")
    p.add_argument("input", help="bundled member name or poset file")
    p.add_argument("--property", choices=sorted(PROPERTIES),
                   help="check a single property instead of all of them")
    p.add_argument("--all", action="store_true",
                   help="run every property (the default)")
    _add_cap(p)
    p.set_defaults(func=_cmd_check)

    p = subs.add_parser("complete", help="write the completion as a document")
    p.add_argument("input")
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--style", choices=("plain", "json"), default="plain")
    _add_cap(p)
    p.set_defaults(func=_cmd_complete)

    p = subs.add_parser("residuate", help="verify operator residuation")
    p.add_argument("input")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--on-completion", action="store_true",
                   help="also verify the transformed operations on the "
                        "completion")
    _add_cap(p)
    p.set_defaults(func=_cmd_residuate)

    p = subs.add_parser("greechie", help="validate and paste a block diagram")
    p.add_argument("input", help="bundled member name or diagram file")
    p.add_argument("--to-poset", action="store_true",
                   help="emit the pasted poset as a document")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=_cmd_greechie)

    p = subs.add_parser("hsum", help="horizontal sum of posets")
    p.add_argument("inputs", nargs="+",
                   help="bundled member names or poset files")
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--style", choices=("plain", "json"), default="plain")
    p.set_defaults(func=_cmd_hsum)

    p = subs.add_parser("corpus", help="verify bundled members")
    p.add_argument("--member", action="append",
                   choices=sorted(corpus_mod.member_names()),
                   help="restrict to one member (repeatable)")
    p.add_argument("--generate", type=int, default=0, metavar="N",
                   help="also test N generated complemented posets")
    p.add_argument("--seed", type=int, help="generator seed")
    p.add_argument("--max-size", type=int, default=8, metavar="K",
                   help="largest generated poset")
    _add_cap(p)
    p.set_defaults(func=_cmd_corpus)

    p = subs.add_parser("export", help="emit DOT for the cover relation")
    p.add_argument("input")
    p.add_argument("--completion", action="store_true",
                   help="export the completion instead of the input")
    p.add_argument("-o", "--output", metavar="FILE")
    _add_cap(p)
    p.set_defaults(func=_cmd_export)
    return parser


def cli_main(argv: "Sequence[str] | None" = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"{TOOL}: parse error: {exc}", file=sys.stderr)
        return 3
    except CorpusError as exc:
        print(f"{TOOL}: corpus error: {exc}", file=sys.stderr)
        return 3
    except PosetError as exc:
        print(f"{TOOL}: invalid input: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
