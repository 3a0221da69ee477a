"""Command-line interface.

Exit codes are stable for scripting: 0 soluble/valid, 1 insoluble/invalid,
2 input schema error, 3 mathematical precondition error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import sys
from pathlib import Path

from . import documents
from .documents import SchemaError
from .lattice import classify_type, staircase
from .measures import MeasureError, format_rational
from .moments import MissingMomentError, ZeroMomentError, gamma_from_measure
from .oracle import generate_instance, verify_solution
from .solver import MODE_CONSECUTIVE, MODES, solve_canonical

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="romp",
        description="Reconstruct Berger measures of 2-variable weighted shifts "
        "from localized measures and marginals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build an instance from a measure and a pattern")
    p.add_argument("--measure", required=True, help="measure document")
    p.add_argument("--pattern", required=True, help="pattern document")
    p.add_argument("-o", "--output", required=True, help="instance document to write")

    p = sub.add_parser("solve", help="solve one or more instances")
    p.add_argument("instances", nargs="+", help="instance document(s)")
    p.add_argument("-o", "--output", help="solution document (single instance)")
    p.add_argument("--out-dir", help="directory for solution documents (batch)")
    p.add_argument("--mode", choices=MODES, default=MODE_CONSECUTIVE)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for batch solving")

    p = sub.add_parser("verify", help="verify a solution against its instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--moment-bound", type=int, default=None)

    p = sub.add_parser("classify", help="print foundation, staircase, and type of a pattern")
    p.add_argument("pattern")

    p = sub.add_parser("moments", help="print the moment table of a measure")
    p.add_argument("measure")
    p.add_argument("--max1", type=int, required=True)
    p.add_argument("--max2", type=int, required=True)
    p.add_argument("-o", "--output", help="also write the table as a document")

    return parser


def _cmd_generate(args) -> int:
    mu = documents.measure_from_doc(documents.read_document(args.measure))
    pattern = documents.pattern_from_doc(documents.read_document(args.pattern))
    try:
        inst = generate_instance(mu, pattern)
    except ValueError as exc:
        if isinstance(exc, ZeroMomentError):
            raise
        raise SchemaError("atoms", str(exc)) from None
    documents.write_document(args.output, documents.instance_to_doc(inst))
    return EXIT_OK


def _solve_one(instance_path: str, output_path, mode: str) -> int:
    inst = documents.instance_from_doc(documents.read_document(instance_path))
    solution = solve_canonical(inst, mode=mode)
    if output_path is not None:
        documents.write_document(output_path, documents.solution_to_doc(solution))
    for step, report in solution.reports:
        for cond in report.conditions:
            line = f"{instance_path}: {step}: {cond.id} {cond.status}"
            if cond.equality is True:
                line += " (with equality)"
            elif cond.equality is False:
                line += " (strict)"
            print(line)
        for warning in report.warnings:
            print(f"{instance_path}: {step}: warning: {warning}")
    print(f"{instance_path}: verdict {solution.verdict}")
    return EXIT_OK if solution.ok else EXIT_INVALID


def _cmd_solve(args) -> int:
    if len(args.instances) == 1 and args.out_dir is None:
        return _solve_one(args.instances[0], args.output, args.mode)
    if args.out_dir is None:
        print("error: batch solving needs --out-dir", file=sys.stderr)
        return EXIT_SCHEMA
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = max(1, args.jobs)
    targets = [(path, out_dir / (Path(path).stem + ".solution.json")) for path in args.instances]
    codes = []
    if jobs == 1:
        for path, out in targets:
            codes.append(_solve_one(path, out, args.mode))
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_solve_one, path, out, args.mode) for path, out in targets]
            codes = [f.result() for f in futures]
    return max(codes)


def _cmd_verify(args) -> int:
    inst = documents.instance_from_doc(documents.read_document(args.instance))
    solution = documents.solution_from_doc(documents.read_document(args.solution))
    if solution.measure is None:
        print("solution carries no measure (verdict insoluble); nothing to verify")
        return EXIT_INVALID
    report = verify_solution(inst, solution.measure, moment_bound=args.moment_bound)
    for cond in report.conditions:
        print(f"{cond.id}: {cond.status}")
    return EXIT_OK if report.ok else EXIT_INVALID


def _cmd_classify(args) -> int:
    pattern = documents.pattern_from_doc(documents.read_document(args.pattern))
    path = staircase(pattern)
    print("foundation:", " ".join(str(p) for p in pattern.foundation))
    print("staircase:", " ".join(str(p) for p in path.points))
    print(f"Type {classify_type(pattern)}")
    return EXIT_OK


def _cmd_moments(args) -> int:
    mu = documents.measure_from_doc(documents.read_document(args.measure))
    gamma = gamma_from_measure(mu, args.max1, args.max2)
    cells = {
        (p.k1, p.k2): format_rational(v) for p, v in gamma.items()
    }
    width = max(len(text) for text in cells.values())
    for n in range(args.max2, -1, -1):
        row = " ".join(cells[(m, n)].rjust(width) for m in range(args.max1 + 1))
        print(f"k2={n}: {row}")
    if args.output:
        documents.write_document(args.output, documents.gamma_table_to_doc(gamma))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "solve": _cmd_solve,
        "verify": _cmd_verify,
        "classify": _cmd_classify,
        "moments": _cmd_moments,
    }
    try:
        return handlers[args.command](args)
    except (SchemaError, FileNotFoundError, MissingMomentError) as exc:
        message = exc.args[0] if isinstance(exc, MissingMomentError) else exc
        print(f"schema error: {message}", file=sys.stderr)
        return EXIT_SCHEMA
    except ZeroMomentError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MeasureError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
