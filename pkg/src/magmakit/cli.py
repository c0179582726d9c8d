"""Command-line front end.

Exit codes: 0 success; 1 negative domain answer (not isomorphic, no
solution, violations found); 2 usage or input error; 3 resource cap hit.
"""
from __future__ import annotations

import argparse
import re
import sys

from magmakit.congruence import (
    SaturationCapExceeded,
    build_rewrite_system,
    classes_bounded,
    evaluate_polynomial,
    normalize,
    solve_equation,
)
from magmakit.models import (
    MODEL_NAMES,
    EFormModel,
    FiniteLanguage,
    PeriodicSeq,
    check_equidec_sampled,
)
from magmakit.presentation import (
    free_product,
    parse_eform,
    parse_presentation,
    reduce_presentation,
    render_eform,
    render_presentation,
)
from magmakit.structure import SearchTooLarge, conjugate, split
from magmakit.terms import Alphabet, Term, format_term, parse_term


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


class UsageError(Exception):
    pass


def _load_presentation(path: str):
    try:
        return parse_presentation(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")


def _load_eform(path: str):
    try:
        return parse_eform(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")


def _eform_summary(e) -> str:
    body = "; ".join(f"{a} -> {format_term(e.phi[a], True)}"
                     for a in e.alphabet)
    return f"eform: {body}"


def cmd_reduce(args) -> int:
    p = _load_presentation(args.file)
    eform, trace = reduce_presentation(p)
    for step in trace.steps:
        print(f"[{step.tag}] {step.detail}")
    print(_eform_summary(eform))
    return 0


def cmd_eform(args) -> int:
    p = _load_presentation(args.file)
    eform, _ = reduce_presentation(p)
    print(render_eform(eform), end="")
    return 0


def cmd_iso(args) -> int:
    e1 = _load_eform(args.left)
    e2 = _load_eform(args.right)
    try:
        witness = conjugate(e1, e2, max_gens=args.max_gens)
    except SearchTooLarge:
        print("search too large")
        return 3
    if witness is None:
        print("not isomorphic")
        return 1
    print("isomorphic")
    for a in e1.alphabet:
        print(f"{a} -> {witness[a]}")
    return 0


def cmd_normalize(args) -> int:
    e = _load_eform(args.file)
    rs = build_rewrite_system(e, max_rules=args.max_rules)
    if not rs.completed:
        print("completion cap exceeded", file=sys.stderr)
        return 3
    try:
        t = parse_term(args.term, e.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(format_term(normalize(rs, t)))
    return 0


def cmd_classes(args) -> int:
    e = _load_eform(args.file)
    classes = classes_bounded(e, args.bound, max_pairs=args.max_pairs)
    for cls in classes:
        print("{" + ", ".join(format_term(t) for t in cls) + "}")
    return 0


_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|1")


def _poly_alphabet(text: str) -> Alphabet:
    names = []
    for m in _VAR_RE.finditer(text):
        if m.group() not in names:
            names.append(m.group())
    if not names:
        raise UsageError("polynomial has no variables")
    return Alphabet(names)


def _parse_element(model_key, model, text: str):
    if model_key in ("diamond", "uparrow"):
        try:
            value = int(text)
        except ValueError:
            raise UsageError(f"expected an integer element, got {text!r}")
        if value < 1:
            raise UsageError("element must be >= 1")
        return value
    if model_key == "seq":
        if not text:
            raise UsageError("expected a nonempty period word")
        return PeriodicSeq(text)
    if model_key == "lang":
        if text == "0":
            return FiniteLanguage(frozenset())
        words = []
        for piece in text.split(","):
            piece = piece.strip()
            if piece == "-":
                words.append("")
            elif all(c in "ab" for c in piece) and piece:
                words.append(piece)
            else:
                raise UsageError(f"bad word {piece!r}; use a/b, '-' for the "
                                 "empty word, '0' for the empty language")
        return FiniteLanguage(frozenset(words))
    # E-form model: elements are normal-form terms
    t = parse_term(text, model.eform.alphabet)
    return normalize(model.rs, t)


def cmd_solve(args) -> int:
    key = args.model
    if key in MODEL_NAMES:
        model = MODEL_NAMES[key]()
    else:
        eform = _load_eform(key)
        try:
            model = EFormModel(eform)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return 3
        key = "eform"
    variables = _poly_alphabet(args.poly)
    if key == "eform":
        clash = set(variables) & set(model.eform.alphabet)
        if clash:
            raise UsageError(
                f"polynomial variables collide with generators: {sorted(clash)}")
    try:
        poly = parse_term(args.poly, variables)
    except ValueError as exc:
        raise UsageError(str(exc))
    element = _parse_element(key, model, args.element)
    solution = solve_equation(model, poly, element)
    if solution is None:
        print("no solution")
        return 1
    assert model.equal(evaluate_polynomial(model, poly, solution), element)
    for var in variables:
        value = solution[var]
        if isinstance(value, Term):
            print(f"{var} = {format_term(value)}")
        elif isinstance(value, PeriodicSeq):
            print(f"{var} = {value.word}")
        elif isinstance(value, FiniteLanguage):
            body = ",".join(w or "-" for w in sorted(value.words)) or "0"
            print(f"{var} = {body}")
        else:
            print(f"{var} = {value}")
    return 0


def cmd_split(args) -> int:
    e = _load_eform(args.file)
    result = split(e)
    print("initial: " + (" ".join(result.initial_gens) or "(none)"))
    print("full: " + (" ".join(result.full_gens) or "(none)"))
    if result.initial_eform is not None:
        print("initial part:")
        print(render_eform(result.initial_eform), end="")
    print("full part:")
    print(render_presentation(result.full_part_presentation), end="")
    return 0


def cmd_product(args) -> int:
    e1 = _load_eform(args.left)
    e2 = _load_eform(args.right)
    prod = free_product(e1, e2)
    for old, new in prod.left_renaming.items():
        print(f"# renamed (left): {old} -> {new}")
    for old, new in prod.right_renaming.items():
        print(f"# renamed (right): {old} -> {new}")
    print(render_eform(prod.eform), end="")
    return 0


def cmd_models_check(args) -> int:
    model = MODEL_NAMES[args.model]()
    report = check_equidec_sampled(model, args.samples)
    print(f"samples: {report.samples}")
    if report.ok:
        print("violations: none")
        return 0
    for line in report.violations:
        print(f"violation: {line}")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magmakit",
        description="Finitely presented equidecomposable magmas: reduction "
                    "to E-form, isomorphism, word problem, models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--bound", type=int, default=6,
                        help="term-length bound for class listings (default 6)")
        sp.add_argument("--max-pairs", type=int, default=10**6,
                        help="cap on stored relation pairs (default 1e6)")
        sp.add_argument("--max-rules", type=int, default=10**4,
                        help="cap on completed rewrite rules (default 1e4)")
        sp.add_argument("--max-gens", type=int, default=12,
                        help="cap on the isomorphism search (default 12)")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker count; 1 (the default) is fully "
                             "deterministic")

    sp = sub.add_parser("reduce", help="reduce a presentation, printing the trace")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("eform", help="reduce a presentation to an E-form file")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_eform)

    sp = sub.add_parser("iso", help="decide isomorphism of two E-forms")
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("normalize", help="normal form of a term in an E-form magma")
    sp.add_argument("file")
    sp.add_argument("term")
    common(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("classes", help="equivalence classes of short terms")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("solve", help="solve a polynomial equation in a model")
    sp.add_argument("model", help="diamond|uparrow|seq|lang or an .eform file")
    sp.add_argument("poly")
    sp.add_argument("element")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("split", help="initial/full split of an E-form")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_split)

    sp = sub.add_parser("product", help="free product of two E-forms")
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("models-check",
                        help="sampled equidecomposability check of a model")
    sp.add_argument("model", choices=sorted(MODEL_NAMES))
    sp.add_argument("--samples", type=int, default=1000)
    common(sp)
    sp.set_defaults(func=cmd_models_check)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "threads", 1) < 1:
        print("--threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SaturationCapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 3


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
