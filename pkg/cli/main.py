"""
termlint command line.

Exit codes: 0 terminating (or command succeeded), 1 not recognized,
2 input error, 3 resource cap or exhausted evaluation under --strict.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from analyzers import QueryAnalyzer, to_dot
from kernel import AnalysisConfig, Converged, Fuel, Program, bottom_up_eval, parse_atom, parse_facts, parse_program
from kernel.errors import ParseError, ResourceCapError, TermlintError
from transforms import Query, standard_version

from .pipeline import GRAPHS, REWRITES, analyze_program, build_graph, rewrite_program
from .report import CRITERIA, render_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_RECOGNIZED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_CAP = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load(path: str, strict: bool) -> Program:
    program = parse_program(_read(path), strict=strict)
    if not program.rules:
        raise ParseError(f"{path} contains no rules")
    return program


def _config(args: argparse.Namespace) -> AnalysisConfig:
    fuel = Fuel(max_iterations=args.fuel_iters, max_atoms=args.fuel_atoms, max_term_depth=args.fuel_depth)
    return AnalysisConfig.from_env(strict=args.strict, k=args.k, fuel=fuel)


def _criteria(text: str) -> List[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in CRITERIA]
    if unknown or not names:
        raise argparse.ArgumentTypeError(f"criteria must be a comma-separated subset of {','.join(CRITERIA)}")
    return names


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _config(args)
    program = _load(args.file, config.strict)
    report = analyze_program(program, args.criteria, config, source=args.file)
    if args.json:
        print(report.to_json())
    else:
        sys.stdout.write(render_text(report))
    if args.dot:
        sys.stdout.write(to_dot(build_graph(program, args.dot, config.k, config), args.dot))
    return EXIT_OK if report.terminating else EXIT_NOT_RECOGNIZED


def cmd_graph(args: argparse.Namespace) -> int:
    config = _config(args)
    program = _load(args.file, config.strict)
    sys.stdout.write(to_dot(build_graph(program, args.kind, config.k, config), args.kind))
    return EXIT_OK


def cmd_rewrite(args: argparse.Namespace) -> int:
    program = _load(args.file, args.strict)
    goal = parse_atom(args.goal) if args.goal else None
    sys.stdout.write(rewrite_program(program, args.kind, goal, annotate=args.annotate))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config(args)
    program = _load(args.file, True)
    if args.standard and not program.is_standard:
        program = standard_version(program)
    database = parse_facts(_read(args.db)) if args.db else ()
    outcome = bottom_up_eval(program, database, config.fuel)
    if isinstance(outcome, Converged):
        facts = sorted(str(atom) for atom in outcome.model)
        if args.json:
            print(json.dumps({"converged": True, "iterations": outcome.iterations, "facts": facts}, indent=2))
        else:
            sys.stdout.writelines(f"{fact}.\n" for fact in facts)
        return EXIT_OK
    if args.json:
        print(json.dumps({
            "converged": False,
            "bound": outcome.bound,
            "iterations": outcome.iterations,
            "atoms": len(outcome.partial),
        }, indent=2))
    else:
        print(f"exhausted {outcome.bound} after {outcome.iterations} iterations with {len(outcome.partial)} atoms")
    return EXIT_RESOURCE_CAP if args.strict else EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    config = _config(args)
    program = _load(args.file, config.strict)
    verdict = QueryAnalyzer(config, args.criterion).run(Query(parse_atom(args.goal), program))
    if args.json:
        print(json.dumps(verdict.to_dict(), indent=2))
    else:
        print(f"{args.goal}: {verdict.verdict}" + (f" via the {verdict.branch} program" if verdict.branch else ""))
    return EXIT_OK if verdict.holds else EXIT_NOT_RECOGNIZED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="termlint", description="Termination analysis for logic programs with function symbols")
    parser.add_argument("-v", "--verbose", action="store_true", help="log analysis steps to stderr")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="program file, or - for stdin")
    common.add_argument("--strict", action="store_true", help="reject invalid input instead of flagging it")
    common.add_argument("--k", type=int, default=1, help="activation path length for ksafe and activation graphs")
    common.add_argument("--fuel-iters", type=int, default=Fuel.max_iterations)
    common.add_argument("--fuel-atoms", type=int, default=Fuel.max_atoms)
    common.add_argument("--fuel-depth", type=int, default=Fuel.max_term_depth)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", parents=[common], help="check termination criteria")
    analyze.add_argument("--criteria", type=_criteria, default=list(CRITERIA),
                         help=f"comma-separated subset of {','.join(CRITERIA)}")
    analyze.add_argument("--dot", choices=GRAPHS, help="also print one of the analysis graphs")
    analyze.set_defaults(handler=cmd_analyze)

    graph = subparsers.add_parser("graph", parents=[common], help="print an analysis graph as DOT")
    graph.add_argument("kind", choices=GRAPHS)
    graph.set_defaults(handler=cmd_graph)

    rewrite = subparsers.add_parser("rewrite", parents=[common], help="print a rewritten program")
    rewrite.add_argument("kind", choices=REWRITES)
    rewrite.add_argument("goal", nargs="?", help="query goal for magic, e.g. 'p(f(f(a)))'")
    rewrite.add_argument("--annotate", action="store_true", help="mark flattened rules with their source rule")
    rewrite.set_defaults(handler=cmd_rewrite)

    evaluate = subparsers.add_parser("eval", parents=[common], help="compute the minimum model bottom-up")
    evaluate.add_argument("--db", help="file of ground facts")
    evaluate.add_argument("--standard", action="store_true", help="evaluate the standard version of the program")
    evaluate.set_defaults(handler=cmd_eval)

    query = subparsers.add_parser("query", parents=[common], help="check termination for a query goal")
    query.add_argument("goal")
    query.add_argument("--criterion", choices=CRITERIA, default="safe")
    query.set_defaults(handler=cmd_query)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug("running %s on %s", args.command, args.file)
    try:
        return args.handler(args)
    except ResourceCapError as e:
        print(f"termlint: resource cap: {e}", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    except (TermlintError, ValueError, OSError) as e:
        print(f"termlint: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
