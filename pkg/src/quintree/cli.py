"""Command-line entry point: ``quintree check|amalgamate|extract|oracle``.

Exit codes: 0 success, 1 axiom violation, 2 input error, 3 incomplete
coverage.  Results go to stdout one per line; explanations go to stderr.
"""
from __future__ import annotations

import argparse
import sys

from .errors import ConflictError, FormatError, IncompleteCoverageError, PreconditionError
from .oracle import ORACLE_SIZES, exhaustive_theorem_check
from .pipeline import amalgamate_trees
from .quartets import q4_violations
from .quintets import tts_violations
from .systems import QuartetSystem, QuintetSystem
from .tree import parse_newick, quartet_system_of, quintet_system_of, read_newick_trees, to_newick

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INCOMPLETE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors already; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _fail(msg: str, code: int = EXIT_INPUT) -> int:
    print(f"quintree: {msg}", file=sys.stderr)
    return code


def cmd_check(args) -> int:
    path = args.quintets or args.quartets
    cls, need = (QuintetSystem, 5) if args.quintets else (QuartetSystem, 4)
    try:
        system = cls.parse(_read(path))
    except OSError as e:
        return _fail(f"{path}: {e.strerror}")
    except FormatError as e:
        return _fail(f"{path}: {e}")
    if len(system.universe) < need:
        return _fail(f"{path}: universe has {len(system.universe)} taxa, need at least {need}")
    found = tts_violations(system, exhaustive=True) if args.quintets else q4_violations(system, exhaustive=True)
    if not found:
        print("OK")
        return EXIT_OK
    for cert in found:
        print(cert.line())
    print(f"{len(found)} violation(s)", file=sys.stderr)
    return EXIT_VIOLATION


def cmd_amalgamate(args) -> int:
    trees = []
    for path in args.trees:
        try:
            trees.extend(read_newick_trees(_read(path)))
        except OSError as e:
            return _fail(f"{path}: {e.strerror}")
        except FormatError as e:
            return _fail(f"{path}: {e}")
    try:
        result = amalgamate_trees(trees)
    except IncompleteCoverageError as e:
        for m in e.missing:
            print("missing: {" + ",".join(sorted(m)) + "}")
        print(f"missing_count: {e.count}")
        return _fail(f"{e.count} 5-subset(s) not covered", EXIT_INCOMPLETE)
    except (ConflictError, PreconditionError) as e:
        return _fail(str(e))
    if result.certificate is not None:
        print(result.certificate.line())
        return _fail("input trees cannot be amalgamated", EXIT_VIOLATION)
    print(to_newick(result.tree))
    return EXIT_OK


def cmd_extract(args) -> int:
    try:
        tree = parse_newick(_read(args.tree))
    except OSError as e:
        return _fail(f"{args.tree}: {e.strerror}")
    except FormatError as e:
        return _fail(f"{args.tree}: {e}")
    need = 5 if args.mode == "quintets" else 4
    if len(tree) < need:
        return _fail(f"tree has {len(tree)} leaves, {args.mode} need at least {need}")
    system = quintet_system_of(tree) if args.mode == "quintets" else quartet_system_of(tree)
    sys.stdout.write(system.to_text())
    return EXIT_OK


def cmd_oracle(args) -> int:
    budget = args.budget
    if budget is None:
        budget = "full" if args.n == 5 else 10000
    try:
        report = exhaustive_theorem_check(args.n, budget, seed=args.seed)
    except ValueError as e:
        return _fail(str(e))
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _budget(text: str):
    if text == "full":
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a sample count or 'full'") from None
    if value < 0:
        raise argparse.ArgumentTypeError("sample count must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quintree", description="Quintet systems, TTS axioms and 5-leaf tree amalgamation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="check a quintet or quartet system file against the axioms")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--quintets", metavar="FILE")
    g.add_argument("--quartets", metavar="FILE")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("amalgamate", help="build the supertree of 5-leaf Newick trees")
    a.add_argument("--trees", metavar="FILE", nargs="+", required=True)
    a.set_defaults(func=cmd_amalgamate)

    e = sub.add_parser("extract", help="print the quintet or quartet system of a tree")
    e.add_argument("--tree", metavar="FILE", required=True)
    e.add_argument("--mode", choices=("quintets", "quartets"), default="quintets")
    e.set_defaults(func=cmd_extract)

    o = sub.add_parser("oracle", help="compare the decision procedure with brute force")
    o.add_argument("--n", type=int, required=True, choices=ORACLE_SIZES)
    o.add_argument("--budget", type=_budget, default=None,
                   help="sample count, or 'full' (n=5 only); default full for n=5, else 10000")
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
