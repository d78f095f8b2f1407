"""Just-in-time project scheduling with minimal finish-time spread.

A project of n parallel activities has start times x and finish times y tied
together by four constraint families (all lags in the same time unit, an
absent lag being the semifield zero):

    start-finish   max_j(a_ij + x_j)  =  y_i    (finish as soon as allowed)
    start-start    max_j(b_ij + x_j) <=  x_i
    finish-start   max_j(c_ij + y_j) <=  x_i
    late finish             y_i      <=  f_i

The objective is the span seminorm max(y) - min(y), the largest deviation
between finish times.  Substituting y = A x turns the precedence constraints
into (B (+) C A) x <= x, solvable by the Kleene star when the closed trace is
at most the identity; with D = A (B (+) C A)* the remaining problem is a span
problem over D whose complete solution S0, cut back by the deadline bound
v <= (f^- D S0)^-, parametrizes every optimal schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    CoefficientOutOfBound,
    InfeasibleDeadline,
    InfeasiblePrecedence,
    NotRegularMatrix,
    NotRegularVector,
    ShapeMismatch,
    SpectralConditionViolated,
)
from .linalg import TropMatrix, TropVector, kleene_star, trace_closure, _collinear
from .semifield import Scalar
from .solvers import solve_upper_bound
from .spanopt import DEFAULT_ENUMERATION_BUDGET, SpanProblem, complete_solution


class ScheduleInstance:
    """Validated scheduling data (A, B, C, f) for n activities."""

    def __init__(self, A: TropMatrix, B: TropMatrix, C: TropMatrix,
                 f: TropVector):
        n = A.rows
        for name, mat in (("A", A), ("B", B), ("C", C)):
            if mat.shape != (n, n):
                raise ShapeMismatch(f"{name} must be {n}x{n}, got {mat.shape}")
        if f.dim != n:
            raise ShapeMismatch(f"f must have {n} components, got {f.dim}")
        if not A.is_regular():
            raise NotRegularMatrix("A must be regular (no zero rows or columns)")
        if not f.is_regular():
            raise NotRegularVector("late finish times f must all be finite")
        sf = A.semifield
        closed = B + (C @ A)
        tr = trace_closure(closed)
        if not sf.le(tr, sf.one):
            raise InfeasiblePrecedence(
                "cyclic precedence with positive total lag: "
                f"Tr(B (+) CA) = {sf.format_scalar(tr)}")
        self.n = n
        self.A = A
        self.B = B
        self.C = C
        self.f = f
        self.semifield = sf
        self.precedence = closed


def build_instance(A: TropMatrix, B: TropMatrix, C: TropMatrix,
                   f: TropVector) -> ScheduleInstance:
    return ScheduleInstance(A, B, C, f)


@dataclass(frozen=True)
class ScheduleSolution:
    """All optimal schedules: (x, y) = (x_generators v, y_generators v) for
    regular v up to coeff_bound."""

    delta: Scalar
    x_generators: TropMatrix
    y_generators: TropMatrix
    coeff_bound: TropVector
    span_generators: TropMatrix
    D: TropMatrix
    closure: TropMatrix
    enumerated_count: int
    pruned_count: int
    compacted: bool = False

    def __post_init__(self):
        if self.x_generators.cols != self.y_generators.cols:
            raise ShapeMismatch("x and y generators must have equal column counts")
        if self.coeff_bound.dim != self.x_generators.cols:
            raise ShapeMismatch("coefficient bound does not match generator count")


def precedence_closure(inst: ScheduleInstance) -> TropMatrix:
    """Kleene star of B (+) CA; instance validation guarantees it exists."""
    try:
        return kleene_star(inst.precedence)
    except SpectralConditionViolated as exc:
        raise InfeasiblePrecedence(str(exc)) from exc


def reduced_span_problem(inst: ScheduleInstance,
                         closure: TropMatrix | None = None) -> SpanProblem:
    """Span problem over D = A (B (+) CA)* with p all-one and q^- the column
    maxima of D."""
    if closure is None:
        closure = precedence_closure(inst)
    D = inst.A @ closure
    ones = TropVector.ones(inst.semifield, inst.n)
    col_max = ones @ D
    return SpanProblem(D, ones, col_max.conj())


def solve_schedule(inst: ScheduleInstance, *,
                   budget: int | None = DEFAULT_ENUMERATION_BUDGET,
                   prune: bool = True) -> ScheduleSolution:
    closure = precedence_closure(inst)
    prob = reduced_span_problem(inst, closure)
    sol = complete_solution(prob, budget=budget, prune=prune)
    s0 = sol.generators.generators
    x_gens = closure @ s0
    y_gens = prob.A @ s0
    bound = solve_upper_bound(y_gens, inst.f)
    if not bound.is_regular():
        raise InfeasibleDeadline("no regular coefficient vector meets the deadlines")
    return ScheduleSolution(
        delta=sol.delta,
        x_generators=x_gens,
        y_generators=y_gens,
        coeff_bound=bound,
        span_generators=s0,
        D=prob.A,
        closure=closure,
        enumerated_count=sol.enumerated_count,
        pruned_count=sol.pruned_count,
    )


def instantiate(sol: ScheduleSolution, v: TropVector) -> tuple[TropVector, TropVector]:
    """Concrete schedule for an admissible coefficient vector."""
    if v.dim != sol.coeff_bound.dim:
        raise ShapeMismatch(f"v has dim {v.dim}, expected {sol.coeff_bound.dim}")
    if not v.is_regular():
        raise NotRegularVector("coefficient vector must be regular")
    if not v.le(sol.coeff_bound):
        raise CoefficientOutOfBound("coefficient vector exceeds the deadline bound")
    return sol.x_generators @ v, sol.y_generators @ v


def latest_schedule(sol: ScheduleSolution) -> tuple[TropVector, TropVector]:
    """Componentwise-latest optimal schedule, at v = coeff_bound."""
    if not sol.coeff_bound.is_regular():
        raise InfeasibleDeadline("deadline bound admits no regular coefficients")
    return instantiate(sol, sol.coeff_bound)


def span_seminorm(y: TropVector) -> Scalar:
    """Largest deviation between components: 1^T y (x) y^- 1."""
    if not y.is_regular():
        raise NotRegularVector("span seminorm needs a regular vector")
    sf = y.semifield
    ones = TropVector.ones(sf, y.dim)
    return sf.mul(ones @ y, y.conj() @ ones)


@dataclass(frozen=True)
class ScheduleReport:
    """Per-row outcome of every constraint family plus the achieved span."""

    start_finish: tuple[bool, ...]
    start_start: tuple[bool, ...]
    finish_start: tuple[bool, ...]
    late_finish: tuple[bool, ...]
    span: Scalar

    @property
    def ok(self) -> bool:
        return all(self.start_finish) and all(self.start_start) \
            and all(self.finish_start) and all(self.late_finish)

    def failures(self) -> list[str]:
        out = []
        for name, flags in (("start-finish", self.start_finish),
                            ("start-start", self.start_start),
                            ("finish-start", self.finish_start),
                            ("late-finish", self.late_finish)):
            out.extend(f"{name} row {i + 1}" for i, okay in enumerate(flags)
                       if not okay)
        return out


def check_schedule(inst: ScheduleInstance, x: TropVector,
                   y: TropVector) -> ScheduleReport:
    """Re-derive every constraint directly from the instance data."""
    if not x.is_regular() or not y.is_regular():
        raise NotRegularVector("schedules under check must be regular")
    if x.dim != inst.n or y.dim != inst.n:
        raise ShapeMismatch("schedule length does not match the activity count")
    sf = inst.semifield
    ax = inst.A @ x
    bx = inst.B @ x
    cy = inst.C @ y
    return ScheduleReport(
        start_finish=tuple(ax[i] == y[i] for i in range(inst.n)),
        start_start=tuple(sf.le(bx[i], x[i]) for i in range(inst.n)),
        finish_start=tuple(sf.le(cy[i], x[i]) for i in range(inst.n)),
        late_finish=tuple(sf.le(y[i], inst.f[i]) for i in range(inst.n)),
        span=span_seminorm(y),
    )


def compact_generators(sol: ScheduleSolution) -> ScheduleSolution:
    """Merge collinear x-generator columns, folding the bound accordingly.

    If column j equals kappa (x) column r, any admissible v_j acts exactly as
    the coefficient kappa v_j on column r, so the merged bound entry is the
    tropical sum of kappa_j v_bound_j over the class.  The y generators are
    collinear in the same pattern because y columns are A times x columns.
    """
    sf = sol.x_generators.semifield
    x_cols = sol.x_generators.columns()
    y_cols = sol.y_generators.columns()
    reps: list[int] = []
    merged_bound: list[Scalar] = []
    for j, col in enumerate(x_cols):
        for slot, r in enumerate(reps):
            if _collinear(col, x_cols[r]):
                sup = col.support()[0]
                kappa = sf.mul(col[sup], sf.inv(x_cols[r][sup]))
                merged_bound[slot] = sf.add(merged_bound[slot],
                                            sf.mul(kappa, sol.coeff_bound[j]))
                break
        else:
            reps.append(j)
            merged_bound.append(sol.coeff_bound[j])
    if len(reps) == len(x_cols):
        return replace(sol, compacted=True)
    return replace(
        sol,
        x_generators=TropMatrix.from_columns(sf, [x_cols[r] for r in reps]),
        y_generators=TropMatrix.from_columns(sf, [y_cols[r] for r in reps]),
        coeff_bound=TropVector(sf, merged_bound),
        compacted=True,
    )
