"""Command-line driver.

    tropspan solve     --input problem.json --output solution.json
    tropspan verify    --input problem.json --candidates cand.json
    tropspan enumerate --input problem.json
    tropspan plot      --input problem.json --output picture.svg

Exit codes: 0 success, 1 verification found failures, 2 parse or validation
problems, 3 infeasible instance, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import documents as docs
from .errors import (
    EnumerationBudgetExceeded,
    InfeasibleDeadline,
    InfeasiblePrecedence,
    ParseError,
    TropicalError,
)
from .linalg import TropMatrix
from .plotting import render_span_svg
from .scheduling import (
    check_schedule,
    compact_generators,
    latest_schedule,
    solve_schedule,
)
from .solvers import GeneratorSet, membership
from .spanopt import (
    DEFAULT_ENUMERATION_BUDGET,
    attains_minimum,
    complete_solution,
    enumerate_selections,
    extended_interval,
    extended_solution,
    objective,
    selection_count,
    selection_generators,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _fmt(sf, value) -> str:
    return sf.format_scalar(value)


def _matrix_lines(matrix: TropMatrix) -> list[str]:
    sf = matrix.semifield
    return ["[" + ", ".join(sf.format_scalar(e) for e in row) + "]"
            for row in matrix.entries]


# -- solve --------------------------------------------------------------------

def _solve_span_document(doc, digest, *, budget, prune, compact):
    prob = doc.to_span_problem()
    sol = complete_solution(prob, budget=budget, prune=prune)
    interval = extended_interval(prob)
    extended = extended_solution(prob)
    return docs.SolutionDocument(
        kind=docs.KIND_SPAN_SOLUTION,
        semifield=prob.semifield,
        input_sha256=digest,
        delta=sol.delta,
        enumeration_visited=sol.enumerated_count,
        enumeration_pruned=sol.pruned_count,
        compact=compact,
        generators=sol.generators.generators,
        extended_lower=interval.lower,
        extended_upper=interval.upper,
        extended_generators=extended.generators,
    )


def _solve_schedule_document(doc, digest, *, budget, prune, compact):
    inst = doc.to_schedule_instance()
    sol = solve_schedule(inst, budget=budget, prune=prune)
    if compact:
        sol = compact_generators(sol)
    x_latest, y_latest = latest_schedule(sol)
    return docs.SolutionDocument(
        kind=docs.KIND_SCHEDULE_SOLUTION,
        semifield=inst.semifield,
        input_sha256=digest,
        delta=sol.delta,
        enumeration_visited=sol.enumerated_count,
        enumeration_pruned=sol.pruned_count,
        compact=compact,
        span_generators=sol.span_generators,
        x_generators=sol.x_generators,
        y_generators=sol.y_generators,
        coefficient_bound=sol.coeff_bound,
        latest_x=x_latest,
        latest_y=y_latest,
    )


def _solve_document(text: str, *, budget, prune, compact) -> docs.SolutionDocument:
    doc = docs.parse_problem(text)
    digest = docs.input_digest(text)
    if doc.kind == docs.KIND_SPAN:
        return _solve_span_document(doc, digest, budget=budget, prune=prune,
                                    compact=compact)
    return _solve_schedule_document(doc, digest, budget=budget, prune=prune,
                                    compact=compact)


def cmd_solve(args) -> int:
    text = _read(args.input)
    solution = _solve_document(text, budget=args.budget,
                               prune=not args.exhaustive, compact=args.compact)
    _write(args.output, docs.serialize_solution(solution))
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _verify_span_vectors(doc, vectors) -> tuple[list[str], bool]:
    prob = doc.to_span_problem()
    sf = prob.semifield
    lines = [f"delta: {_fmt(sf, prob.delta)}"]
    all_ok = True
    for i, vec in enumerate(vectors, start=1):
        if not vec.is_regular():
            lines.append(f"candidate {i}: FAIL (not regular)")
            all_ok = False
            continue
        value = objective(prob, vec)
        ok = value == prob.delta
        all_ok &= ok
        lines.append(f"candidate {i}: {'PASS' if ok else 'FAIL'} "
                     f"objective={_fmt(sf, value)} delta={_fmt(sf, prob.delta)}")
    return lines, all_ok


def _verify_schedule_pairs(doc, pairs) -> tuple[list[str], bool]:
    inst = doc.to_schedule_instance()
    sol = solve_schedule(inst)
    sf = inst.semifield
    lines = [f"delta: {_fmt(sf, sol.delta)}"]
    all_ok = True
    for i, (x, y) in enumerate(pairs, start=1):
        report = check_schedule(inst, x, y)
        ok = report.ok and report.span == sol.delta
        all_ok &= ok
        line = (f"schedule {i}: {'PASS' if ok else 'FAIL'} "
                f"span={_fmt(sf, report.span)} delta={_fmt(sf, sol.delta)}")
        if not report.ok:
            line += " violations: " + "; ".join(report.failures())
        lines.append(line)
    return lines, all_ok


def _verify_solution_document(problem_text, doc, given) -> tuple[list[str], bool]:
    digest = docs.input_digest(problem_text)
    lines = []
    checks = []

    checks.append(("input hash", given.input_sha256 == digest))
    expected = _solve_document(problem_text, budget=DEFAULT_ENUMERATION_BUDGET,
                               prune=True, compact=given.compact)
    checks.append(("recomputation",
                   docs.serialize_solution(expected)
                   == docs.serialize_solution(given)))
    sf = given.semifield
    if given.kind == docs.KIND_SPAN_SOLUTION:
        prob = doc.to_span_problem()
        checks.append(("delta", given.delta == prob.delta))
        cols = given.generators.columns()
        checks.append(("generator columns attain delta",
                       all(attains_minimum(prob, c) for c in cols)))
        checks.append(("q lies in the generator span",
                       membership(GeneratorSet(given.generators), prob.q)))
    else:
        inst = doc.to_schedule_instance()
        report = check_schedule(inst, given.latest_x, given.latest_y)
        checks.append(("latest schedule feasible", report.ok))
        checks.append(("latest schedule attains delta",
                       report.span == given.delta))
    all_ok = True
    for name, ok in checks:
        all_ok &= ok
        lines.append(f"{name}: {'OK' if ok else 'MISMATCH'}")
    return lines, all_ok


def _parse_candidates(text: str, doc):
    data = docs._load_json(text)
    if not isinstance(data, dict):
        raise ParseError("candidates: top level must be an object")
    kind = data.get("kind")
    sf = doc.semifield
    if kind in (docs.KIND_SPAN_SOLUTION, docs.KIND_SCHEDULE_SOLUTION):
        return ("solution", docs.parse_solution(text))
    if kind != "candidates":
        raise ParseError("candidates file must have kind 'candidates' or be "
                         "a solution document")
    if doc.kind == docs.KIND_SPAN:
        raw = data.get("vectors")
        if not isinstance(raw, list) or not raw:
            raise ParseError("candidates: expected a non-empty 'vectors' array")
        vectors = [docs._vector_from_json(v, f"vectors[{i}]", sf)
                   for i, v in enumerate(raw)]
        return ("vectors", vectors)
    raw = data.get("schedules")
    if not isinstance(raw, list) or not raw:
        raise ParseError("candidates: expected a non-empty 'schedules' array")
    pairs = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "x" not in item or "y" not in item:
            raise ParseError(f"schedules[{i}]: expected an object with x and y")
        pairs.append((docs._vector_from_json(item["x"], f"schedules[{i}].x", sf),
                      docs._vector_from_json(item["y"], f"schedules[{i}].y", sf)))
    return ("pairs", pairs)


def cmd_verify(args) -> int:
    problem_text = _read(args.input)
    doc = docs.parse_problem(problem_text)
    shape, payload = _parse_candidates(_read(args.candidates), doc)
    if shape == "solution":
        lines, ok = _verify_solution_document(problem_text, doc, payload)
    elif shape == "vectors":
        lines, ok = _verify_span_vectors(doc, payload)
    else:
        lines, ok = _verify_schedule_pairs(doc, payload)
    lines.append(f"result: {'PASS' if ok else 'FAIL'}")
    _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# -- enumerate ----------------------------------------------------------------

def cmd_enumerate(args) -> int:
    text = _read(args.input)
    doc = docs.parse_problem(text)
    prob = doc.to_span_problem()
    sf = prob.semifield
    sparse = prob.sparsified
    total = selection_count(sparse, prob.p)
    emitted = list(enumerate_selections(sparse, prob.p, prune=True,
                                        budget=args.budget))
    emitted_keys = {sel.chosen_col for sel in emitted}

    lines = [f"delta: {_fmt(sf, prob.delta)}", "sparsified:"]
    lines.extend(_matrix_lines(sparse))
    lines.append(f"selections: {len(emitted)} emitted, "
                 f"{total - len(emitted)} pruned, {total} total")

    def describe(index, sel, status=None):
        cols = [j + 1 for j in sel.chosen_col]
        suffix = f" [{status}]" if status else ""
        lines.append(f"selection {index}: rows -> columns {cols}{suffix}")
        lines.append("A1:")
        lines.extend(_matrix_lines(sel.materialize(sparse)))
        lines.append("S1:")
        lines.extend(_matrix_lines(selection_generators(sel, prob).generators))

    if args.exhaustive:
        every = list(enumerate_selections(sparse, prob.p, prune=False,
                                          budget=args.budget))
        for i, sel in enumerate(every, start=1):
            status = "emitted" if sel.chosen_col in emitted_keys else "pruned"
            describe(i, sel, status)
    else:
        for i, sel in enumerate(emitted, start=1):
            describe(i, sel)
        if total - len(emitted) > 0:
            if total <= args.budget:
                every = enumerate_selections(sparse, prob.p, prune=False,
                                             budget=args.budget)
                for sel in every:
                    if sel.chosen_col not in emitted_keys:
                        cols = [j + 1 for j in sel.chosen_col]
                        lines.append(f"pruned selection: rows -> columns {cols}")
            else:
                lines.append("pruned selections not listed: total exceeds budget")
    _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


# -- plot ---------------------------------------------------------------------

def cmd_plot(args) -> int:
    text = _read(args.input)
    doc = docs.parse_problem(text)
    prob = doc.to_span_problem()
    svg = render_span_svg(prob, window=(args.window[0], args.window[1]),
                          budget=args.budget)
    _write(args.output, svg)
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropspan",
        description="Exact max-plus span optimization and just-in-time "
                    "scheduling")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", default="-", metavar="PATH",
                       help="problem file, or - for stdin (default)")
        p.add_argument("--output", default="-", metavar="PATH",
                       help="where to write the result, - for stdout (default)")
        p.add_argument("--budget", type=int, default=DEFAULT_ENUMERATION_BUDGET,
                       metavar="N", help="cap on enumerated selections")
        p.add_argument("--exhaustive", action="store_true",
                       help="disable enumeration pruning (for comparison)")
        p.add_argument("--compact", action="store_true",
                       help="merge collinear generator columns in the output")

    p_solve = sub.add_parser("solve", help="compute the complete solution")
    common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check candidate vectors or a "
                                             "solution document")
    common(p_verify)
    p_verify.add_argument("--candidates", required=True, metavar="PATH",
                          help="candidates file or solution document, - for stdin")
    p_verify.set_defaults(func=cmd_verify)

    p_enum = sub.add_parser("enumerate", help="list row selections and their "
                                              "generators")
    common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_plot = sub.add_parser("plot", help="render a 2-D solution set as SVG")
    common(p_plot)
    p_plot.add_argument("--window", type=float, nargs=2, default=(-10.0, 10.0),
                        metavar=("LO", "HI"), help="square viewing window")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InfeasiblePrecedence, InfeasibleDeadline) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EnumerationBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TropicalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
