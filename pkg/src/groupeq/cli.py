"""Command-line frontend: classify / reduce / solve / verify / snf.

System files are line-oriented UTF-8 text::

    unknowns: x, y
    coefficients: a, c
    aimage: a = [1]
    aimage: c = [0]
    eq: x * x^-(a) * x^(a^2) * c^-1

Word grammar: factors separated by "*"; "sym^3" and "sym^-2" are integer
powers, "sym^(w)" conjugation by the word w (g^h = h⁻¹gh), "sym^-(w)" the
conjugated inverse.  '#' starts a comment.

Exit codes: 0 success; 1 parse/config error; 2 precondition violation
(e.g. singular input to reduce); 3 an expected verification fact failed.
JSON output (--format json) is canonical and bit-exact; text is a
projection of the same data.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .classify import NONSINGULAR, classify
from .groups import GroupError, brute_force_solve, builtin_group
from .intlinalg import IntMatrix, smith_normal_form
from .reduction import (
    CERTIFIED,
    MissingImageError,
    ReductionError,
    SplitExtensionSpec,
    certificate_document,
    reduce_system,
)
from .verify import identity_scan, verify_order42, verify_torsion_free
from .words import EquationSystem, SymbolTable, WordError, flatten, parse_word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_VERIFY_FAILED = 3


class FileFormatError(ValueError):
    pass


# --- input files ------------------------------------------------------------

def parse_system_file(text: str) -> tuple[EquationSystem, dict[str, tuple[int, ...]]]:
    unknowns: list[str] = []
    coefficients: list[str] = []
    images: dict[str, tuple[int, ...]] = {}
    eq_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if not _ or not rest:
            raise FileFormatError(f"line {lineno}: expected 'key: value'")
        if key == "unknowns":
            unknowns.extend(n.strip() for n in rest.split(","))
        elif key == "coefficients":
            coefficients.extend(n.strip() for n in rest.split(","))
        elif key == "aimage":
            name, _, vec = rest.partition("=")
            name, vec = name.strip(), vec.strip()
            if not vec.startswith("[") or not vec.endswith("]"):
                raise FileFormatError(f"line {lineno}: aimage needs NAME = [ints]")
            try:
                entries = tuple(int(x) for x in vec[1:-1].split(",") if x.strip())
            except ValueError:
                raise FileFormatError(f"line {lineno}: bad integer in aimage") from None
            if not entries:
                raise FileFormatError(f"line {lineno}: empty aimage vector")
            images[name] = entries
        elif key == "eq":
            eq_lines.append((lineno, rest))
        else:
            raise FileFormatError(f"line {lineno}: unknown key {key!r}")
    try:
        table = SymbolTable.make(unknowns, coefficients)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None
    equations = []
    for lineno, word_text in eq_lines:
        try:
            equations.append(flatten(parse_word(word_text, table)))
        except WordError as exc:
            raise FileFormatError(f"line {lineno}: {exc}") from None
    for name in images:
        if name not in table.coefficients:
            raise FileFormatError(f"aimage given for undeclared coefficient {name!r}")
    return EquationSystem(table, tuple(equations)), images


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None


def parse_matrix_file(text: str) -> IntMatrix:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise FileFormatError(f"line {lineno}: expected integers") from None
    try:
        return IntMatrix.from_rows(rows)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


# --- command handlers ---------------------------------------------------------

def _cmd_classify(args) -> tuple[dict, str, int]:
    system, _ = parse_system_file(_read_file(args.file))
    verdict = classify(system)
    doc = {
        "command": "classify",
        "verdict": verdict.kind,
        "rank": verdict.rank,
        "factors": list(verdict.invariant_factors),
        "bad_primes": sorted(verdict.bad_primes) if verdict.bad_primes is not None else None,
    }
    text = f"{verdict.kind.upper()} (rank {verdict.rank}, factors {list(verdict.invariant_factors)}"
    if verdict.kind == NONSINGULAR:
        text += ", bad primes {" + ", ".join(map(str, sorted(verdict.bad_primes))) + "}"
    text += ")"
    return doc, text, EXIT_OK


def _cmd_reduce(args) -> tuple[dict, str, int]:
    system, images = parse_system_file(_read_file(args.file))
    missing = [c for c in system.table.coefficients if c not in images]
    if missing:
        raise MissingImageError(f"missing coefficient image for {missing[0]!r}")
    ranks = {len(v) for v in images.values()}
    if len(ranks) > 1:
        raise FileFormatError("aimage vectors have inconsistent lengths")
    rank = ranks.pop() if ranks else 1
    spec = SplitExtensionSpec(rank, images)
    result = reduce_system(system, spec, minor_budget=args.minor_budget)
    doc = {"command": "reduce", **certificate_document(result)}
    cert = result.certificate
    lines = [
        f"verdict: {cert.verdict}",
        f"rank: {cert.integer_rank}",
        f"integer matrix: {cert.integer_matrix.to_rows()}",
        f"scale: {doc['scale']}",
    ]
    if doc["solution"] is not None:
        for u in system.table.unknowns:
            lines.append(f"solution: {u} = [{', '.join(doc['solution'][u])}]")
    if doc["rewritten_words"] is not None:
        for i, w in enumerate(doc["rewritten_words"]):
            lines.append(f"rewritten {i}: {w}")
    if doc["laurent_matrix"] is not None:
        for i, row in enumerate(doc["laurent_matrix"]):
            lines.append(f"laurent row {i}: [{'; '.join(row)}]")
    if doc["witness_minor"] is not None:
        wm = doc["witness_minor"]
        lines.append(
            f"witness minor: cols {tuple(wm['cols'])} det {wm['det']} "
            f"(augmentation {wm['augmentation']})"
        )
    code = EXIT_OK if cert.verdict == CERTIFIED else EXIT_PRECONDITION
    return doc, "\n".join(lines), code


def _cmd_solve(args) -> tuple[dict, str, int]:
    system, _ = parse_system_file(_read_file(args.file))
    group, assignment = builtin_group(args.group, cap=args.max_closure)
    missing = [c for c in system.table.coefficients if c not in assignment]
    if missing:
        raise GroupError(
            f"group {args.group!r} provides no element for coefficient {missing[0]!r}"
        )
    solutions = brute_force_solve(
        system, group, assignment, max_unknowns=args.max_unknowns, cap=args.max_closure
    )
    candidates = len(group) ** len(system.table.unknowns)
    doc = {
        "command": "solve",
        "group": args.group,
        "order": len(group),
        "candidates": candidates,
        "solutions": [
            {u: sol[u].canonical() for u in system.table.unknowns} for sol in solutions
        ],
    }
    lines = [f"group {args.group} (order {len(group)}), {candidates} candidates"]
    lines.append(f"solutions: {len(solutions)}")
    for sol in doc["solutions"]:
        lines.append("  " + ", ".join(f"{u} = {v}" for u, v in sol.items()))
    return doc, "\n".join(lines), EXIT_OK


def _kv_line(doc: dict) -> str:
    chunks = []
    for key, value in doc.items():
        if key == "command":
            continue
        if isinstance(value, str) and " " in value:
            chunks.append(f"{key}='{value}'")
        else:
            chunks.append(f"{key}={value}")
    return " ".join(chunks)


def _cmd_verify(args) -> tuple[dict, str, int]:
    if args.target == "prop1a":
        report = verify_order42(cap=args.max_closure)
        doc = {"command": "verify prop1a", **dataclasses.asdict(report), "ok": report.ok}
        code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    elif args.target == "prop1b":
        report = verify_torsion_free(seed=args.seed)
        doc = {"command": "verify prop1b", **dataclasses.asdict(report), "ok": report.ok}
        doc["series_ranks"] = list(report.series_ranks)
        code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    elif args.target == "lemma1":
        group, _ = builtin_group(args.group, cap=args.max_closure)
        report = identity_scan(group)
        doc = {
            "command": "verify lemma1",
            "group": args.group,
            "order": report.group_order,
            "pairs_total": report.pairs_total,
            "hypothesis_pairs": report.hypothesis_pairs,
            "violations": len(report.violations),
            "literal_pairs": report.literal_pairs,
            "literal_violations": report.literal_violations,
            "ok": report.holds,
        }
        code = EXIT_OK if report.holds else EXIT_VERIFY_FAILED
    else:  # pragma: no cover - argparse restricts choices
        raise FileFormatError(f"unknown verify target {args.target!r}")
    return doc, _kv_line(doc), code


def _cmd_snf(args) -> tuple[dict, str, int]:
    matrix = parse_matrix_file(_read_file(args.file))
    sf = smith_normal_form(matrix)
    doc = {
        "command": "snf",
        "factors": list(sf.factors),
        "S": sf.S.to_rows(),
        "U": sf.U.to_rows(),
        "V": sf.V.to_rows(),
    }
    lines = [f"factors: {', '.join(map(str, sf.factors))}"]
    for name, mat in (("S", sf.S), ("U", sf.U), ("V", sf.V)):
        lines.append(f"{name} =")
        lines.append(str(mat))
    return doc, "\n".join(lines), EXIT_OK


# --- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-closure", type=int, default=10**6, metavar="N")
    common.add_argument("--max-unknowns", type=int, default=3, metavar="N")
    common.add_argument("--minor-budget", type=int, default=500, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="N")

    parser = argparse.ArgumentParser(
        prog="groupeq",
        description="classify, reduce and brute-force equation systems over groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="verdict for a system file")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("reduce", parents=[common], help="nonsingularity certificate")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("solve", parents=[common], help="brute-force solutions in a stock group")
    p.add_argument("file")
    p.add_argument("--group", default="f7-42")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="recompute a counterexample bundle")
    p.add_argument("target", choices=("prop1a", "prop1b", "lemma1"))
    p.add_argument("--group", default="f7-42")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_snf)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text, code = args.handler(args)
    except (FileFormatError, WordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReductionError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
