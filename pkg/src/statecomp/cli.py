"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 budget exceeded, 3 check failed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import engine, monster, oracle, serialize, transform
from .dfa import minimize
from .errors import BudgetError, ParseError
from .modifier import DEFAULT_APPLY_BUDGET, apply, parse_modifier

EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_CHECK = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sizes(text):
    try:
        sizes = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}: expected comma-separated integers") from None
    if any(n < 1 for n in sizes):
        raise UsageError("sizes must be positive")
    return sizes


def _finals(text, k):
    """``1;0,2`` -> ({1}, {0, 2}); components separated by semicolons."""
    parts = text.split(";")
    if len(parts) != k:
        raise UsageError(f"--finals has {len(parts)} components, expected {k}")
    out = []
    for part in parts:
        part = part.strip()
        try:
            out.append(frozenset(int(x) for x in part.split(",")) if part else frozenset())
        except ValueError:
            raise UsageError(f"bad final set {part!r}") from None
    return out


def _load_all(spec):
    return [serialize.load(path) for path in spec.split(",")]


def _print_automaton(A, title):
    print(f"{title}: {A.state_count} states, {A.letter_count} letters, "
          f"initial {A.initial}, {len(A.final_states)} final")


def cmd_monster(args):
    sizes = _sizes(args.sizes)
    finals = _finals(args.finals, len(sizes))
    spec = monster.MonsterSpec(sizes, finals)
    autos = monster.build(spec, args.letter_budget)
    os.makedirs(args.out, exist_ok=True)
    for j, A in enumerate(autos, start=1):
        path = os.path.join(args.out, f"monster_{j}.json")
        serialize.save(A, path)
        print(f"component {j}: {A.state_count} states, {A.letter_count} letters, "
              f"finals {engine.format_finals(spec.finals[j - 1])} -> {path}")
    return 0


def cmd_apply(args):
    m = parse_modifier(args.modifier)
    autos = _load_all(args.auto)
    result = apply(m, autos, args.budget)
    _print_automaton(result, m.name)
    if args.out:
        serialize.save(result, args.out)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(serialize.to_dot(result))
    return 0


def cmd_minimize(args):
    A = serialize.load(args.auto)
    result = minimize(A)
    _print_automaton(A, "input")
    _print_automaton(result, "minimal")
    if args.out:
        serialize.save(result, args.out)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(serialize.to_dot(result))
    return 0


def cmd_sc(args):
    m = parse_modifier(args.modifier)
    sizes = _sizes(args.sizes)
    if len(sizes) != m.arity:
        raise UsageError(f"{m.name} takes {m.arity} sizes, got {len(sizes)}")
    family = "canonical" if args.canonical else "all"
    report = engine.state_complexity(
        m, sizes, family=family, parallel=args.parallel, budget=args.budget
    )
    only = set(report.argmax) if args.family == "argmax-only" else None
    width = max(len(engine.format_tuple(f)) for f, _ in report.rows)
    for finals, count in report.rows:
        if only is not None and finals not in only:
            continue
        print(f"{engine.format_tuple(finals):<{width}}  {count}")
    print(report.summary())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("\n".join(report.csv_lines(only)) + "\n")
    return 0


def cmd_check(args):
    op = oracle.OperationId(args.op)
    m = parse_modifier(args.modifier or args.op)
    autos = _load_all(args.auto)
    if len(autos) != op.arity:
        raise UsageError(f"{op.name} takes {op.arity} automata, got {len(autos)}")
    cex = oracle.exhaustive_agree(op, m, autos, args.max_len)
    if cex is None:
        print(f"{m.name} agrees with the {op.name} oracle on all words up to length {args.max_len}")
        return 0
    labels = autos[0].letter_labels
    word = " ".join(labels[a] for a in cex) or "<empty word>"
    print(f"counterexample: {word} (letters {list(cex)})")
    return EXIT_CHECK


def cmd_semigroup(args):
    gens = [transform.parse_transformation(args.n, g) for g in args.generators.split(";") if g.strip()]
    words = transform.closure_witnesses(args.n, gens)
    full = args.n**args.n
    for k, g in enumerate(gens):
        print(f"g{k} = {g}")
    print(f"monoid size {len(words)} of {full} ({'full' if len(words) == full else 'proper'})")
    if args.list:
        for t, w in sorted(words.items(), key=lambda item: transform.encode(item[0])):
            print(f"{t}  {' '.join(f'g{k}' for k in w) or '1'}")
    return 0


def build_parser():
    parser = _Parser(prog="statecomp", description="Modifiers, monsters and state complexity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("monster", help="write the automata of a k-monster as JSON")
    p.add_argument("--sizes", required=True)
    p.add_argument("--finals", required=True, help="e.g. '1;0,1' for F1={1}, F2={0,1}")
    p.add_argument("--out", default=".")
    p.add_argument("--letter-budget", type=int, default=monster.DEFAULT_LETTER_BUDGET)
    p.set_defaults(func=cmd_monster)

    p = sub.add_parser("apply", help="apply a modifier to automata")
    p.add_argument("--modifier", required=True)
    p.add_argument("--auto", required=True, help="comma-separated JSON files")
    p.add_argument("--out")
    p.add_argument("--dot")
    p.add_argument("--budget", type=int, default=DEFAULT_APPLY_BUDGET)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("minimize", help="minimize an automaton")
    p.add_argument("--auto", required=True)
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("sc", help="state complexity by sweeping monster final sets")
    p.add_argument("--modifier", required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--family", choices=["all", "argmax-only"], default="all")
    p.add_argument("--canonical", action="store_true", help="one final set per (size, contains 0) class")
    p.add_argument("--csv")
    p.add_argument("--parallel", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_APPLY_BUDGET)
    p.set_defaults(func=cmd_sc)

    p = sub.add_parser("check", help="compare a modifier with a membership oracle")
    p.add_argument("--op", required=True, choices=sorted(oracle.ARITY))
    p.add_argument("--modifier", help="defaults to the built-in named like the operation")
    p.add_argument("--auto", required=True)
    p.add_argument("--max-len", type=int, default=6)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("semigroup", help="monoid generated by transformations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--generators", required=True, help="';'-separated: [102], (0 1 2), 0>1")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_semigroup)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
