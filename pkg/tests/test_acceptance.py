"""Acceptance suite: one test per release criterion, each printing a PASS
line with its measured runtime.  All comparisons are exact (integer and
rational arithmetic end to end); the only tolerances are the wall-clock
budgets stated next to each criterion."""

import random
import time
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from conftest import (
    Z,
    demo_schedule_instance,
    demo_span_problem,
    mat,
    random_regular_vector,
    random_span_problem,
    vec,
)
from tropspan import (
    MAX_PLUS,
    MAX_TIMES,
    MIN_PLUS,
    GeneratorSet,
    InfeasiblePrecedence,
    ScheduleInstance,
    SpanProblem,
    TropMatrix,
    attains_minimum,
    check_schedule,
    compact_generators,
    complete_solution,
    delta,
    enumerate_selections,
    extended_interval,
    extended_solution,
    instantiate,
    kleene_star,
    latest_schedule,
    membership,
    objective,
    selection_generators,
    solve_schedule,
    trace_closure,
    verify_optimal,
)
from tropspan.cli import main as cli_main

DATA = Path(__file__).parent / "data"


@pytest.fixture
def announce(capsys):
    def _announce(line: str) -> None:
        with capsys.disabled():
            print(line)
    return _announce


def _best_of(runs, fn):
    best = None
    for _ in range(runs):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def test_criterion_1_two_by_two_reproduction(announce):
    def pipeline():
        prob = demo_span_problem()
        assert prob.delta == 2
        assert prob.sparsified == mat([[2, Z], [4, 1]])
        interval = extended_interval(prob)
        assert interval.lower == vec([1, -1])
        assert interval.upper == vec([1, 2])
        assert extended_solution(prob).generators == mat([[0, -1], [-2, 0]])

    pipeline()  # warm caches and imports before timing
    best = _best_of(5, pipeline)
    assert best < 0.001, f"pipeline took {best * 1e3:.3f} ms"
    announce(f"criterion 1 PASS: 2x2 minimum, threshold matrix, interval and "
             f"extended span reproduced exactly ({best * 1e6:.0f} us)")


def test_criterion_2_selection_family_reproduction(announce):
    prob = demo_span_problem()
    every = list(enumerate_selections(prob.sparsified, prob.p, prune=False))
    assert [s.chosen_col for s in every] == [(0, 0), (0, 1)]
    s1 = selection_generators(every[0], prob).generators
    s2 = selection_generators(every[1], prob).generators
    assert s1 == mat([[0, -1], [Z, 0]])
    assert s2 == mat([[0, -1], [-2, 0]])
    assert delta(s1, vec([0, -2])) == MAX_PLUS.one
    sol = complete_solution(prob)
    assert sol.generators.generators == mat([[0, -1], [Z, 0]])
    pruned = list(enumerate_selections(prob.sparsified, prob.p))
    assert [s.chosen_col for s in pruned] == [(0, 0)]
    announce("criterion 2 PASS: selection family, per-selection spans, "
             "dependence test and pruned enumeration reproduced exactly")


def test_criterion_3_three_activity_reproduction(announce):
    def pipeline():
        inst = demo_schedule_instance()
        assert trace_closure(inst.precedence) == -1
        star = kleene_star(inst.precedence)
        assert star == mat([[0, -5, -3], [3, 0, 1], [2, -2, 0]])
        assert inst.A @ star == mat([[3, -1, 0], [5, 2, 3], [6, 2, 4]])
        sol = solve_schedule(inst)
        assert sol.delta == 3
        assert sol.span_generators == mat([[0, Z, -2, Z],
                                           [Z, 0, Z, 2],
                                           [Z, Z, 0, 0]])
        assert sol.x_generators == mat([[0, -5, -2, -3],
                                        [3, 0, 1, 2],
                                        [2, -2, 0, 0]])
        assert sol.y_generators == mat([[3, -1, 1, 1],
                                        [5, 2, 3, 4],
                                        [6, 2, 4, 4]])
        assert sol.coeff_bound == vec([1, 5, 3, 3])
        assert latest_schedule(sol) == (vec([1, 5, 3]), vec([4, 7, 7]))
        compact = compact_generators(sol)
        assert compact.coeff_bound == vec([1, 5])
        return inst, sol

    inst, sol = pipeline()
    # sparsified reduced matrix and its two selections, exactly as expected
    prob = SpanProblem(sol.D, vec([0, 0, 0]), vec([-6, -2, -4]))
    assert prob.sparsified == mat([[3, -1, Z], [5, 2, 3], [6, 2, 4]])
    sels = list(enumerate_selections(prob.sparsified, prob.p))
    assert [s.chosen_col for s in sels] == [(0, 0, 0), (1, 1, 1)]
    assert sels[0].materialize(prob.sparsified) == mat([[3, Z, Z],
                                                        [5, Z, Z],
                                                        [6, Z, Z]])
    assert sels[1].materialize(prob.sparsified) == mat([[Z, -1, Z],
                                                        [Z, 2, Z],
                                                        [Z, 2, Z]])
    assert selection_generators(sels[0], prob).generators \
        == mat([[0, -4, -2], [Z, 0, Z], [Z, Z, 0]])
    assert selection_generators(sels[1], prob).generators \
        == mat([[0, Z, Z], [4, 0, 2], [Z, Z, 0]])

    best = _best_of(3, pipeline)
    assert best < 0.010, f"pipeline took {best * 1e3:.3f} ms"
    announce(f"criterion 3 PASS: closure, reduced matrix, selections, spans, "
             f"bound and latest schedule reproduced exactly "
             f"({best * 1e3:.2f} ms)")


def test_criterion_4_span_property_suite(announce):
    started = time.perf_counter()
    rng = random.Random(20240817)
    instances = 500
    for k in range(instances):
        prob = random_span_problem(rng, max_dim=4, lo=-5, hi=5)
        sf = prob.semifield
        dlt = prob.delta
        sol = complete_solution(prob)
        s0 = sol.generators.generators
        span = GeneratorSet(s0)

        # (a) no regular vector beats the minimum
        for _ in range(100):
            x = random_regular_vector(rng, prob.A.cols)
            assert sf.le(dlt, objective(prob, x)), (k, x)

        # (b) every complete-span column attains the minimum
        for col in s0.columns():
            assert attains_minimum(prob, col), (k, col)
            image = prob.A @ col
            value = sf.mul(prob.q.conj() @ col, image.conj() @ prob.p)
            assert value == dlt, (k, col)

        # (c) q lies in the complete span
        assert membership(span, prob.q), k

        # (d) optimal vectors are closed under addition and scaling
        x = s0 @ random_regular_vector(rng, s0.cols, lo=-4, hi=4)
        y = prob.q.scale(rng.randint(-4, 4))
        assert verify_optimal(prob, x + y), k
        assert verify_optimal(prob, x.scale(rng.randint(-5, 5))), k

        # (e) pruning drops no part of the solution set
        exhaustive_cols = []
        seen = set()
        for sel in enumerate_selections(prob.sparsified, prob.p, prune=False):
            for col in selection_generators(sel, prob).generators.columns():
                if col.entries not in seen:
                    seen.add(col.entries)
                    exhaustive_cols.append(col)
        for col in exhaustive_cols:
            assert membership(span, col), (k, col)
        pool = GeneratorSet(TropMatrix.from_columns(sf, exhaustive_cols))
        for col in s0.columns():
            assert membership(pool, col), (k, col)

        # (f) sparsification leaves the minimum unchanged
        assert SpanProblem(prob.sparsified, prob.p, prob.q).delta == dlt, k

    elapsed = time.perf_counter() - started
    assert elapsed < 60, f"property suite took {elapsed:.1f} s"
    announce(f"criterion 4 PASS: {instances} random instances, zero failures "
             f"across bound/attainment/membership/closure/pruning/"
             f"sparsification checks ({elapsed:.1f} s)")


def _grid_min_span(inst: ScheduleInstance, lo: int = -10, hi: int = 10):
    """Plain-integer exhaustive oracle, independent of the library path."""
    n = inst.n
    a = [[None if e is Z else int(e) for e in row] for row in inst.A.entries]
    b = [[None if e is Z else int(e) for e in row] for row in inst.B.entries]
    c = [[None if e is Z else int(e) for e in row] for row in inst.C.entries]
    f = [int(v) for v in inst.f]
    best = None
    for xs in product(range(lo, hi + 1), repeat=n):
        ys = []
        feasible = True
        for i in range(n):
            yi = None
            for j in range(n):
                if a[i][j] is None:
                    continue
                val = a[i][j] + xs[j]
                if yi is None or val > yi:
                    yi = val
            if yi is None or yi > f[i]:
                feasible = False
                break
            ys.append(yi)
        if not feasible:
            continue
        for i in range(n):
            for j in range(n):
                if b[i][j] is not None and b[i][j] + xs[j] > xs[i]:
                    feasible = False
                    break
                if c[i][j] is not None and c[i][j] + ys[j] > xs[i]:
                    feasible = False
                    break
            if not feasible:
                break
        if not feasible:
            continue
        span = max(ys) - min(ys)
        if best is None or span < best:
            best = span
    return best


def _random_feasible_instance(rng: random.Random, n: int) -> ScheduleInstance:
    while True:
        def entry(low, high, density):
            return rng.randint(low, high) if rng.random() < density else Z

        a = [[entry(-3, 3, 0.7) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            if all(e is Z for e in a[i]):
                a[i][rng.randrange(n)] = rng.randint(-3, 3)
        for j in range(n):
            if all(row[j] is Z for row in a):
                a[rng.randrange(n)][j] = rng.randint(-3, 3)
        b = [[entry(-3, 3, 0.35) for _ in range(n)] for _ in range(n)]
        c = [[entry(-3, 3, 0.35) for _ in range(n)] for _ in range(n)]
        f = [rng.randint(0, 10) for _ in range(n)]
        try:
            return ScheduleInstance(mat(a), mat(b), mat(c), vec(f))
        except InfeasiblePrecedence:
            continue


def test_criterion_5_schedule_grid_oracle(announce):
    started = time.perf_counter()
    rng = random.Random(971)
    checked = 0
    attempted = 0
    while checked < 100:
        attempted += 1
        assert attempted < 1000, "instance generation is rejecting too much"
        n = 2 if checked % 2 == 0 else 3
        inst = _random_feasible_instance(rng, n)
        sol = solve_schedule(inst)
        x, y = latest_schedule(sol)
        # normalize into the oracle window; shifting down keeps deadlines
        shift = min(0, -max(int(v) for v in x))
        x0, y0 = x.scale(shift), y.scale(shift)
        if min(int(v) for v in x0) < -10:
            continue
        checked += 1
        report = check_schedule(inst, x0, y0)
        assert report.ok and report.span == sol.delta
        assert _grid_min_span(inst) == int(sol.delta), (inst.A, inst.B, inst.C)
        for steps in (0, -1, -3):
            v = sol.coeff_bound.scale(steps)
            xi, yi = instantiate(sol, v)
            rep = check_schedule(inst, xi, yi)
            assert rep.ok and rep.span == sol.delta
    elapsed = time.perf_counter() - started
    assert elapsed < 120, f"grid oracle took {elapsed:.1f} s"
    announce(f"criterion 5 PASS: {checked} random instances "
             f"({attempted - checked} resampled), grid minimum equals the "
             f"computed spread everywhere ({elapsed:.1f} s)")


def test_criterion_6_semifield_axioms(announce):
    started = time.perf_counter()
    cases = {
        MAX_PLUS: lambda rng: rng.randint(-50, 50) if rng.random() > 0.3
        else Fraction(rng.randint(-60, 60), rng.randint(1, 9)),
        MIN_PLUS: lambda rng: rng.randint(-50, 50),
        MAX_TIMES: lambda rng: Fraction(rng.randint(1, 50), rng.randint(1, 50)),
    }
    for sf, draw in cases.items():
        rng = random.Random(sf.name)
        for _ in range(10_000):
            a, b, c = (Z if rng.random() < 0.12 else draw(rng)
                       for _ in range(3))
            assert sf.add(sf.add(a, b), c) == sf.add(a, sf.add(b, c))
            assert sf.mul(sf.mul(a, b), c) == sf.mul(a, sf.mul(b, c))
            assert sf.mul(a, sf.add(b, c)) == sf.add(sf.mul(a, b), sf.mul(a, c))
            assert sf.add(a, a) == a
            if a is not Z:
                assert sf.mul(a, sf.inv(a)) == sf.one
    elapsed = time.perf_counter() - started
    announce(f"criterion 6 PASS: 10^4 exact axiom triples per semifield "
             f"instance ({elapsed:.1f} s)")


def test_criterion_7_cli_determinism(announce, capsys, tmp_path):
    schedule = str(DATA / "schedule_demo.json")
    span = str(DATA / "span_demo.json")

    def solve(*argv):
        code = cli_main(["solve", *argv])
        out = capsys.readouterr().out
        assert code == 0
        return out

    first = solve("--input", schedule)
    second = solve("--input", schedule)
    assert first == second, "solution documents differ between runs"

    for problem, extra in ((schedule, ()), (schedule, ("--compact",)),
                           (span, ())):
        out = solve("--input", problem, *extra)
        candidate = tmp_path / "candidate.json"
        candidate.write_text(out)
        code = cli_main(["verify", "--input", problem,
                         "--candidates", str(candidate)])
        report = capsys.readouterr().out
        assert code == 0, report
        assert "result: PASS" in report
    announce("criterion 7 PASS: byte-identical re-solve and verifier "
             "acceptance of every solver output")
