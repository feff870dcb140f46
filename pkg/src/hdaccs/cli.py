"""Command line front end.

Exit codes: 0 success (or isomorphic), 1 user error, 2 not isomorphic,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import comb
from pathlib import Path

from .ccs.compiler import CompileError, CompileOptions, compile_term
from .ccs.parser import ParseError, parse_with_labels
from .ccs.terms import to_text
from .document import Document, DocumentError, dumps, load, to_dot
from .flow import CyclicSkeletonError, analyze, bad_realization_le2, path_classes
from .iso import iso_check
from .precubical import PointedLPS, boundary, standard_cube, truncate, validate
from .shells import cosk

OK, USER_ERROR, NOT_ISOMORPHIC, INTERNAL_ERROR = 0, 1, 2, 3


class UserError(Exception):
    pass


class InternalError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USER_ERROR, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Document:
    try:
        return load(path)
    except FileNotFoundError:
        raise UserError(f"{path}: no such file") from None
    except (DocumentError, ParseError) as exc:
        raise UserError(f"{path}: {exc}") from None


def _check(K) -> None:
    problems = validate(K)
    if problems:
        raise InternalError(f"constructed set violates invariants: {problems[0]}")


def cmd_compile(args) -> int:
    try:
        term, sigma = parse_with_labels(args.term)
        opts = CompileOptions(rec_depth=args.rec_depth, dim_cap=args.dim_cap, decorate=args.decorate)
        K = compile_term(term, opts)
    except (ParseError, CompileError, ValueError) as exc:
        raise UserError(str(exc)) from None
    _check(K.lps)
    doc = Document.from_pointed(K, sigma, term=to_text(term), rec_depth=args.rec_depth, dim_cap=args.dim_cap)
    _emit(dumps(doc), args.out)
    summary = f"cubes {K.lps.summary()}"
    if K.approximate:
        summary += f" (approximation at rec depth {args.rec_depth})"
    if K.truncated:
        print(f"warning: cubes above dimension {args.dim_cap} were dropped", file=sys.stderr)
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return OK


def _state(doc: Document, text: str | None, default: int | None) -> int | None:
    if text is None:
        return default
    if text == "initial":
        if doc.initial is None:
            raise UserError("document has no initial state")
        return doc.initial
    try:
        s = int(text)
    except ValueError:
        raise UserError(f"unknown state {text!r}") from None
    if not 0 <= s < doc.lps.count(0):
        raise UserError(f"unknown state {text!r}")
    return s


def _render(F, rep) -> str:
    if not rep:
        return ""
    parts = [str(F.edges[rep[0]][0])]
    for e in rep:
        s, t, a = F.edges[e]
        parts.append(f"-{a}-> {t}")
    return " ".join(parts)


def cmd_paths(args) -> int:
    doc = _load(args.file)
    source = _state(doc, args.source, doc.initial if doc.initial is not None else 0)
    target = _state(doc, args.target, None)
    try:
        F = bad_realization_le2(doc.lps)
    except CyclicSkeletonError as exc:
        raise UserError(str(exc)) from None
    targets = [target] if target is not None else sorted(t for (s, t) in F.homs if s == source)
    for t in targets:
        classes = path_classes(F, source, t)
        print(f"{source} -> {t}: {len(classes)} class{'es' if len(classes) != 1 else ''}")
        for m in classes:
            print(f"  #{m.id} length={m.length} label={m.label} path: {_render(F, m.representative)}")
    return OK


def cmd_iso(args) -> int:
    a, b = _load(args.file_a), _load(args.file_b)
    fix = ()
    if args.pointed:
        if a.initial is None or b.initial is None:
            raise UserError("--pointed needs initial vertices in both documents")
        fix = ((a.initial, b.initial),)
    iso = iso_check(a.lps, b.lps, fix)
    if iso is None:
        print("not isomorphic")
        return NOT_ISOMORPHIC
    if iso.forward.violations() or iso.backward.violations():
        raise InternalError("isomorphism witness fails to commute with faces")
    print("isomorphic")
    for n, row in enumerate(iso.forward.components):
        print(f"  dim {n}: " + " ".join(f"{x}->{y}" for x, y in enumerate(row)))
    return OK


def cmd_dot(args) -> int:
    _emit(to_dot(_load(args.file)), args.out)
    return OK


def cmd_analyze(args) -> int:
    doc = _load(args.file)
    try:
        F = bad_realization_le2(doc.lps)
    except CyclicSkeletonError as exc:
        raise UserError(str(exc)) from None
    K = doc.pointed() if doc.initial is not None else doc.lps
    print(json.dumps(analyze(F, K).to_dict(), indent=2))
    return OK


def _labels(text: str | None, n: int) -> tuple[str, ...]:
    if text is None:
        return tuple(chr(ord("a") + k) for k in range(n))
    labels = tuple(s.strip() for s in text.split(",") if s.strip())
    if len(labels) != n:
        raise UserError(f"expected {n} labels, got {len(labels)}")
    return tuple(sorted(labels))


def cmd_cube(args) -> int:
    if args.n < 0:
        raise UserError("dimension must be nonnegative")
    t = _labels(args.labels, args.n)
    K = boundary(args.n, t) if args.boundary else standard_cube(args.n, t)
    doc = Document(K, 0 if K.count(0) else None, meta={"cube": args.n, "boundary": args.boundary})
    _emit(dumps(doc), args.out)
    return OK


def cmd_hda_check(args) -> int:
    n = args.n
    if not 2 <= n <= 5:
        raise UserError("n must lie between 2 and 5")
    t = ("a",) * n if args.uniform else _labels(args.labels, n)
    C = standard_cube(n, t)
    filled = cosk(truncate(C, 1))
    _check(filled)
    ok = iso_check(filled, C) is not None
    print(f"{'dim':>4} {'expected':>9} {'cosk':>6}")
    for k in range(n + 1):
        print(f"{k:>4} {comb(n, k) * 2 ** (n - k):>9} {filled.count(k):>6}")
    print(f"cosk of the 1-skeleton of the {n}-cube labelled {','.join(t)}: {'pass' if ok else 'FAIL'}")
    if not ok:
        raise InternalError("coskeleton of the 1-skeleton is not the full cube")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hdaccs", description="Compile CCS terms to labelled precubical sets and query them.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compile", help="compile a CCS term to a JSON document")
    c.add_argument("term")
    c.add_argument("--rec-depth", type=int, default=2)
    c.add_argument("--dim-cap", type=int, default=None)
    c.add_argument("--decorate", action=argparse.BooleanOptionalAction, default=True)
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_compile)

    c = sub.add_parser("paths", help="list path classes between states")
    c.add_argument("file")
    c.add_argument("--from", dest="source")
    c.add_argument("--to", dest="target")
    c.set_defaults(func=cmd_paths)

    c = sub.add_parser("iso", help="check two documents for isomorphism")
    c.add_argument("file_a")
    c.add_argument("file_b")
    c.add_argument("--pointed", action="store_true", help="also match initial vertices")
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("dot", help="export the 1-skeleton as a DOT digraph")
    c.add_argument("file")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_dot)

    c = sub.add_parser("analyze", help="report counts, path classes and deadlocks")
    c.add_argument("file")
    c.set_defaults(func=cmd_analyze)

    c = sub.add_parser("cube", help="write the standard n-cube or its boundary")
    c.add_argument("n", type=int)
    c.add_argument("--labels")
    c.add_argument("--boundary", action="store_true")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_cube)

    c = sub.add_parser("hda-check", help="check that cosk rebuilds the n-cube from its 1-skeleton")
    c.add_argument("n", type=int)
    group = c.add_mutually_exclusive_group()
    group.add_argument("--labels")
    group.add_argument("--uniform", action="store_true", help="label every coordinate 'a'")
    c.set_defaults(func=cmd_hda_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USER_ERROR
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
