"""Command-line front end.

Verbs: ``language``, ``qpaths``, ``classes``, ``graph``, ``condition-y``,
``socle``, ``compare``, ``verify-iso``.  Spec arguments are TOML file
paths or bundled spec names (golden, example3x, example54, example55,
f-001020).

Exit codes: 0 success, 2 spec parse error, 3 unsupported spec kind,
4 empty-result sentinel (a graph was requested but the socle is zero),
1 verification failure in ``verify-iso``.

Output is deterministic: fixed enumeration orders, no timestamps; every
verdict line carries the bound it was certified at.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from typing import List, Optional

from . import algebra as alg
from .points import Verdict
from .qpaths import find_irrational_singletons, is_line_path, partition_classes
from .socle_graph import (
    build_graph,
    build_layers,
    compare_invariants,
    disjoint_union,
    dot_dump,
    evaluate_condition_y,
    json_dump,
    validate_graph,
)
from .specfile import BUNDLED, SpecFileError, resolve_spec
from .subshift import Bounds, Subshift
from .usets import cardinality, cylinder, describe
from .words import format_word, word_key

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_EMPTY = 4


def _load(ref: str) -> Subshift:
    try:
        return resolve_spec(ref)
    except SpecFileError as exc:
        raise SystemExit(_fail(EXIT_PARSE, f"spec error: {exc}"))


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _merged_bounds(X: Subshift, args) -> Bounds:
    updates = {}
    if getattr(args, "bound", None) is not None:
        updates["word_bound"] = args.bound
    if getattr(args, "orbit", None) is not None:
        updates["orbit_len"] = args.orbit
    if getattr(args, "depth", None) is not None:
        updates["depth"] = args.depth
    return dataclasses.replace(X.bounds, **updates) if updates else X.bounds


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_line(label: str, v: Verdict) -> str:
    status = {"holds": "Holds", "fails": "Fails", "unknown": "Unknown"}[v.status.value]
    parts = [f"{label}: {status}"]
    if v.bound is not None:
        parts.append(f"[bound {v.bound}]")
    if v.reason:
        parts.append(f"- {v.reason}")
    return " ".join(parts)


# ----------------------------------------------------------------------
# commands

def cmd_language(args) -> int:
    X = _load(args.spec)
    if X.kind != "sft":
        return _fail(EXIT_UNSUPPORTED, "language enumeration requires an sft spec")
    words = sorted(X.language(args.n), key=word_key)
    _emit(" ".join(format_word(w) for w in words) + "\n", args.out)
    return EXIT_OK


def cmd_qpaths(args) -> int:
    X = _load(args.spec)
    b = _merged_bounds(X, args)
    witnesses = find_irrational_singletons(X, b.word_bound, b.closure_budget)
    lines: List[str] = []
    if not witnesses:
        lines.append(f"Q_X empty (socle = 0) [bound {b.word_bound}]")
    else:
        lines.append(
            f"{len(witnesses)} irrational-path witnesses [bound {b.word_bound}]"
        )
        lines.append(f"{'point':<24} {'witness set':<24} {'line path':<18} certificate")
        for w in witnesses:
            lp = is_line_path(X, w.point)
            lp_text = f"{lp.status.value} [bound {lp.bound}]"
            lines.append(
                f"{str(w.point):<24} {describe(w.witness_set):<24} {lp_text:<18} {w.certificate}"
            )
        classes = partition_classes(X, witnesses, b.tail_bound)
        lines.append(f"tail classes: {len(classes)} [bound {b.tail_bound}]")
        for i, cls in enumerate(classes):
            flag = " (unresolved pairs forced a split)" if cls.unresolved else ""
            lines.append(
                f"  class {i}: representative {cls.representative}, "
                f"{len(cls.members)} members{flag}"
            )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_classes(args) -> int:
    X = _load(args.spec)
    b = _merged_bounds(X, args)
    witnesses = find_irrational_singletons(X, b.word_bound, b.closure_budget)
    classes = partition_classes(X, witnesses, b.tail_bound)
    lines = [f"{len(classes)} tail classes [bound {b.tail_bound}]"]
    for i, cls in enumerate(classes):
        members = ", ".join(str(p) for p in cls.points)
        lines.append(f"class {i}: representative {cls.representative}")
        lines.append(f"  members: {members}")
        if cls.unresolved:
            lines.append("  note: unresolved comparisons forced a split")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_graph(args) -> int:
    X = _load(args.spec)
    b = _merged_bounds(X, args)
    witnesses = find_irrational_singletons(X, b.word_bound, b.closure_budget)
    if not witnesses:
        return _fail(EXIT_EMPTY, "ZeroSocle: no irrational paths, nothing to draw")
    classes = partition_classes(X, witnesses, b.tail_bound)
    graphs = []
    for cls in classes:
        layers = build_layers(X, cls.representative, b.orbit_len, b.depth)
        graphs.append(build_graph(layers, X, name=str(cls.representative)))
    g = graphs[0] if len(graphs) == 1 else disjoint_union(graphs, name=X.name)
    g.name = X.name or g.name
    text = dot_dump(g) if args.format == "dot" else json_dump(g)
    _emit(text, args.out)
    return EXIT_OK


def cmd_condition_y(args) -> int:
    X = _load(args.spec)
    b = _merged_bounds(X, args)
    report = evaluate_condition_y(X, b)
    lines = [f"spec: {X.name}"]
    if not report.witnesses:
        lines.append(f"W empty [bound {b.word_bound}]")
    lines.append(_verdict_line("condition (Y) via graph", report.graph_verdict))
    lines.append(_verdict_line("condition (Y) via shift map", report.sigma_verdict))
    lines.append(_verdict_line("condition (Y) combined", report.combined))
    lines.append(f"strong grading: {report.strong_grading} [bound {b.k_bound}]")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_socle(args) -> int:
    X = _load(args.spec)
    b = _merged_bounds(X, args)
    witnesses = find_irrational_singletons(X, b.word_bound, b.closure_budget)
    lines = [f"spec: {X.name}"]
    if not witnesses:
        lines.append(f"socle = 0: no irrational paths [bound {b.word_bound}]")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    classes = partition_classes(X, witnesses, b.tail_bound)
    lines.append(
        f"socle = direct sum over {len(classes)} tail classes [bound {b.word_bound}]"
    )
    for i, cls in enumerate(classes):
        lines.append(f"  class {i}: generated by p{{{cls.representative}}}")
    unit_verdict = alg.socle_membership(X, alg.unit(X), witnesses)
    lines.append(_verdict_line("unit in socle", unit_verdict))
    lines.append("socle is a proper ideal" if unit_verdict.is_fails else "")
    _emit("\n".join(l for l in lines if l) + "\n", args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    X1, X2 = _load(args.spec1), _load(args.spec2)
    updates = {}
    if args.bound is not None:
        updates["word_bound"] = args.bound
    if args.orbit is not None:
        updates["orbit_len"] = args.orbit
    if args.depth is not None:
        updates["depth"] = args.depth
    bounds = dataclasses.replace(X1.bounds, **updates) if updates else None
    report = compare_invariants(X1, X2, bounds)
    lines = [f"{report.verdict}"]
    for side in (report.left, report.right):
        lines.append(f"--- {side.spec_name}")
        lines.append(_verdict_line("condition (Y) via graph", side.graph_verdict))
        lines.append(_verdict_line("condition (Y) via shift map", side.sigma_verdict))
        lines.append(_verdict_line("condition (Y) combined", side.combined))
    lines.append(f"reason: {report.reason}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify_iso(args) -> int:
    X = _load(args.spec)
    b = _merged_bounds(X, args)
    witnesses = find_irrational_singletons(X, b.word_bound, b.closure_budget)
    if not witnesses:
        _emit(f"socle = 0: nothing to verify [bound {b.word_bound}]\n", args.out)
        return EXIT_OK
    classes = partition_classes(X, witnesses, b.tail_bound)
    lines = []
    failed = False
    for i, cls in enumerate(classes):
        layers = build_layers(X, cls.representative, b.orbit_len, b.depth)
        g = build_graph(layers, X, name=str(cls.representative))
        structure = validate_graph(g, X)
        relations = alg.phi_check(g, X)
        window = min(len(g.vertices), 8)
        dims = alg.truncation_tower(g, X, window)
        ok = not structure and not relations and dims == [
            k * k for k in range(1, window + 1)
        ]
        failed = failed or not ok
        status = "pass" if ok else "FAIL"
        lines.append(
            f"class {i} ({cls.representative}): {status} "
            f"[{len(g.vertices)} vertices, tower dims {dims}]"
        )
        for v in structure + relations:
            lines.append(f"  violation: {v}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY if failed else EXIT_OK


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftsocle",
        description=(
            "socle analysis for unital subshift algebras; SPEC is a TOML "
            f"file or one of the bundled names: {', '.join(BUNDLED)}"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_args=("spec",)):
        for name in spec_args:
            p.add_argument(name)
        p.add_argument("--bound", type=int, help="generator scan word bound")
        p.add_argument("--orbit", type=int, help="orbit window length")
        p.add_argument("--depth", type=int, help="layer depth")
        p.add_argument("--out", help="write output to a file")

    p = sub.add_parser("language", help="enumerate the length-n factors of an sft")
    p.add_argument("spec")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_language)

    p = sub.add_parser("qpaths", help="detect irrational paths")
    common(p)
    p.set_defaults(func=cmd_qpaths)

    p = sub.add_parser("classes", help="tail-equivalence classes of the witnesses")
    common(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("graph", help="dump the layered socle graph")
    common(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("condition-y", help="Condition (Y) and strong grading")
    common(p)
    p.set_defaults(func=cmd_condition_y)

    p = sub.add_parser("socle", help="socle decomposition summary")
    common(p)
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("compare", help="conjugacy invariant for two specs")
    common(p, spec_args=("spec1", "spec2"))
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify-iso", help="check the path-algebra relations")
    common(p)
    p.set_defaults(func=cmd_verify_iso)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
