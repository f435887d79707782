"""Exact solvers behind the procedures and the optimality checks.

Two independent engines live here: a parametric solver for the equal-value
cut systems (greedy leftmost cuts, walked segment by segment over the
target value), and a dense two-phase rational simplex with Bland's rule
used to decide Pareto domination on cell decompositions.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InfeasibleSeedError, InsufficientMassError, UnboundedError
from .measures import (
    ONE,
    ZERO,
    Allocation,
    Interval,
    IntervalSet,
    Scenario,
    StepDensity,
    as_rational,
)


def as_permutation(scenario: Scenario, ordering: Sequence) -> tuple[int, ...]:
    """Normalize an ordering of player indices or names to index form."""
    idx = []
    for entry in ordering:
        if isinstance(entry, str):
            idx.append(scenario.index(entry))
        else:
            idx.append(int(entry))
    if sorted(idx) != list(range(scenario.n)):
        raise ValueError(f"{ordering!r} is not a permutation of the players")
    return tuple(idx)


def greedy_cuts(
    scenario: Scenario, ordering: Sequence, target: Fraction
) -> Optional[tuple[Fraction, ...]]:
    """Chain leftmost quantiles so each of the first n-1 pieces is worth
    exactly ``target`` to its assigned player.

    Returns None when some chained quantile runs out of mass. The last
    piece (the remainder) is not checked here.
    """
    idx = as_permutation(scenario, ordering)
    target = as_rational(target)
    position = ZERO
    cuts = []
    for i in idx[:-1]:
        density = scenario.players[i][1]
        try:
            position = density.quantile_left(target, start=position)
        except InsufficientMassError:
            return None
        cuts.append(position)
    return tuple(cuts)


@dataclass(frozen=True)
class EqualValueSolution:
    cuts: tuple[Fraction, ...]
    common_value: Fraction


def _plateau_end(density: StepDensity, anchor: Fraction, target: Fraction):
    """sup{x >= anchor : mass([anchor, x]) <= target}.

    Returns None when the whole suffix holds less than ``target``.
    """
    acc = ZERO
    for piece in density.pieces:
        seg_lo = max(piece.lo, anchor)
        if seg_lo >= piece.hi or piece.density == 0:
            continue
        gained = piece.density * (piece.hi - seg_lo)
        if acc + gained > target:
            return seg_lo + (target - acc) / piece.density
        acc += gained
    return ONE if acc == target else None


def _right_limits(ordered: Sequence[StepDensity], target: Fraction):
    """Right-hand limits and slopes of the greedy cuts at a given target.

    As the target increases past a value where a cut sits at the start of a
    zero-density span, the cut jumps to the far side of the span; the limit
    positions computed here are those jump targets. Returns None when no
    target above the current one is feasible.
    """
    anchor, anchor_slope = ZERO, ZERO
    cuts, slopes = [], []
    for density in ordered[:-1]:
        x = _plateau_end(density, anchor, target)
        if x is None or x == ONE:
            return None
        at_cut = density.density_at(x)
        at_anchor = density.density_at(anchor)
        slope = (ONE + at_anchor * anchor_slope) / at_cut
        cuts.append(x)
        slopes.append(slope)
        anchor, anchor_slope = x, slope
    return cuts, slopes


def equal_value_solve(scenario: Scenario, ordering: Sequence) -> Optional[EqualValueSolution]:
    """Find a target t whose greedy cuts give the last piece value t too.

    With greedy leftmost cuts the last-piece value L(t) is non-increasing,
    left-continuous, and piecewise affine, while the target itself grows, so
    L(t) = t has at most one solution. The walk visits the affine segments
    of L in order: at each segment start it evaluates the chain exactly,
    derives right-hand slopes for every cut, solves the affine equation on
    the segment, and otherwise advances to the first target at which some
    cut reaches the next density breakpoint. L can jump downward when a cut
    clears a zero-density span; if the jump steps over the diagonal the
    system has no greedy solution and None is returned.
    """
    idx = as_permutation(scenario, ordering)
    if len(idx) < 2:
        raise ValueError("equal-value systems need at least two players")
    ordered = [scenario.players[i][1] for i in idx]
    last = ordered[-1]
    grid = sorted({p for _, d in scenario.players for p in d.breakpoints()})
    t = ZERO
    # Each segment pins some cut to a fresh breakpoint, so the walk is
    # bounded by cuts times grid size; the margin covers the endpoints.
    for _ in range((len(ordered) + 1) * (len(grid) + 2)):
        cuts = greedy_cuts(scenario, idx, t)
        if cuts is None:
            return None
        value = last.mass(Interval(cuts[-1], ONE))
        if value == t:
            return EqualValueSolution(tuple(cuts), t)
        if value < t:
            return None
        limits = _right_limits(ordered, t)
        if limits is None:
            return None
        cuts_plus, slopes = limits
        value_plus = last.mass(Interval(cuts_plus[-1], ONE))
        if value_plus <= t:
            return None
        value_slope = -last.density_at(cuts_plus[-1]) * slopes[-1]
        t_next = None
        for x, slope in zip(cuts_plus, slopes):
            nxt = grid[bisect_right(grid, x)]
            dt = (nxt - x) / slope
            if t_next is None or t + dt < t_next:
                t_next = t + dt
        root = (value_plus - value_slope * t) / (ONE - value_slope)
        if t < root <= t_next:
            cuts_root = greedy_cuts(scenario, idx, root)
            if cuts_root is not None and last.mass(Interval(cuts_root[-1], ONE)) == root:
                return EqualValueSolution(tuple(cuts_root), root)
            raise AssertionError("equal-value walk lost its root")
        t = t_next
    raise AssertionError("equal-value walk failed to terminate")


# ---------------------------------------------------------------------------
# Exact linear programming
# ---------------------------------------------------------------------------

SENSES = ("<=", ">=", "==")


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple[Fraction, ...]
    sense: str
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_rational(a) for a in self.coeffs))
        object.__setattr__(self, "rhs", as_rational(self.rhs))
        if self.sense not in SENSES:
            raise ValueError(f"unknown constraint sense {self.sense!r}")


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to the constraints and x >= 0."""

    n_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[LinearConstraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(as_rational(c) for c in self.objective))
        if len(self.objective) != self.n_vars:
            raise ValueError("objective length does not match variable count")
        for c in self.constraints:
            if len(c.coeffs) != self.n_vars:
                raise ValueError("constraint width does not match variable count")


@dataclass(frozen=True)
class SimplexResult:
    value: Fraction
    point: tuple[Fraction, ...]


def check_point(lp: LinearProgram, point: Sequence[Fraction]) -> Optional[str]:
    """Describe the first constraint the point violates, or None."""
    if len(point) != lp.n_vars:
        return f"point has {len(point)} coordinates, expected {lp.n_vars}"
    for j, v in enumerate(point):
        if v < 0:
            return f"x[{j}] = {v} violates nonnegativity"
    for k, c in enumerate(lp.constraints):
        lhs = sum((a * v for a, v in zip(c.coeffs, point)), ZERO)
        ok = (
            lhs <= c.rhs
            if c.sense == "<="
            else lhs >= c.rhs
            if c.sense == ">="
            else lhs == c.rhs
        )
        if not ok:
            return f"constraint {k}: {lhs} !{c.sense} {c.rhs}"
    return None


def simplex_max(lp: LinearProgram, seed: Sequence) -> SimplexResult:
    """Exact two-phase simplex with Bland's rule on both pivot choices.

    The seed is only used to certify feasibility up front; the optimum is
    found from scratch. Bland's rule rules out cycling, so termination is
    unconditional, and every tableau entry stays rational.
    """
    point = tuple(as_rational(v) for v in seed)
    violation = check_point(lp, point)
    if violation is not None:
        raise InfeasibleSeedError(violation)

    rows = []
    for c in lp.constraints:
        coeffs, sense, rhs = list(c.coeffs), c.sense, c.rhs
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        rows.append((coeffs, sense, rhs))

    n = lp.n_vars
    next_col = n
    slack_col: dict[int, int] = {}
    art_col: dict[int, int] = {}
    for i, (_, sense, _) in enumerate(rows):
        if sense != "==":
            slack_col[i] = next_col
            next_col += 1
    for i, (_, sense, _) in enumerate(rows):
        if sense != "<=":
            art_col[i] = next_col
            next_col += 1
    width = next_col

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (coeffs, sense, rhs) in enumerate(rows):
        row = [ZERO] * (width + 1)
        for j, a in enumerate(coeffs):
            row[j] = a
        if i in slack_col:
            row[slack_col[i]] = ONE if sense == "<=" else -ONE
        if i in art_col:
            row[art_col[i]] = ONE
        row[width] = rhs
        tableau.append(row)
        basis.append(art_col[i] if i in art_col else slack_col[i])

    art_cols = frozenset(art_col.values())
    if art_cols:
        objrow = [ZERO] * (width + 1)
        for col in art_cols:
            objrow[col] = -ONE
        for i, b in enumerate(basis):
            if b in art_cols:
                objrow = [x + y for x, y in zip(objrow, tableau[i])]
        _optimize(tableau, basis, objrow, width, blocked=frozenset())
        for i, b in enumerate(basis):
            if b in art_cols and tableau[i][width] != 0:
                raise InfeasibleSeedError(
                    "constraints proved infeasible despite the seed; seed check is broken"
                )
        for i in reversed(range(len(basis))):
            if basis[i] not in art_cols:
                continue
            pivot_col = next(
                (j for j in range(width) if j not in art_cols and tableau[i][j] != 0),
                None,
            )
            if pivot_col is None:
                del tableau[i]
                del basis[i]
            else:
                _pivot(tableau, basis, None, i, pivot_col)

    objrow = [ZERO] * (width + 1)
    for j, cj in enumerate(lp.objective):
        objrow[j] = cj
    for i, b in enumerate(basis):
        if objrow[b] != 0:
            coef = objrow[b]
            objrow = [x - coef * y for x, y in zip(objrow, tableau[i])]
    _optimize(tableau, basis, objrow, width, blocked=art_cols)

    solution = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            solution[b] = tableau[i][width]
    value = sum((cj * xj for cj, xj in zip(lp.objective, solution)), ZERO)
    return SimplexResult(value=value, point=tuple(solution))


def _optimize(tableau, basis, objrow, width, blocked):
    while True:
        enter = next(
            (j for j in range(width) if j not in blocked and objrow[j] > 0), None
        )
        if enter is None:
            return
        leave = None
        best = None
        for i, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise UnboundedError("objective is unbounded above")
        _pivot(tableau, basis, objrow, leave, enter)


def _pivot(tableau, basis, objrow, leave, enter):
    pivot = tableau[leave][enter]
    tableau[leave] = [a / pivot for a in tableau[leave]]
    for i, row in enumerate(tableau):
        if i != leave and row[enter] != 0:
            factor = row[enter]
            tableau[i] = [a - factor * b for a, b in zip(row, tableau[leave])]
    if objrow is not None and objrow[enter] != 0:
        factor = objrow[enter]
        objrow[:] = [a - factor * b for a, b in zip(objrow, tableau[leave])]
    basis[leave] = enter


# ---------------------------------------------------------------------------
# Pareto domination via cell decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellDecomposition:
    """Refinement of [0, 1] on which every player's density is constant."""

    bounds: tuple[Fraction, ...]
    cells: tuple[Interval, ...]
    densities: tuple[tuple[Fraction, ...], ...]


def decompose(
    scenario: Scenario,
    allocation: Optional[Allocation] = None,
    extra_cuts: Sequence = (),
) -> CellDecomposition:
    points = {ZERO, ONE}
    for _, density in scenario.players:
        points.update(density.breakpoints())
    if allocation is not None:
        for _, portion in allocation.portions:
            for iv in portion.intervals:
                points.add(iv.lo)
                points.add(iv.hi)
    points.update(as_rational(x) for x in extra_cuts)
    bounds = tuple(sorted(p for p in points if ZERO <= p <= ONE))
    cells = tuple(
        Interval(a, b) for a, b in zip(bounds, bounds[1:]) if b > a
    )
    densities = tuple(
        tuple(density.density_at(cell.lo) for cell in cells)
        for _, density in scenario.players
    )
    return CellDecomposition(bounds, cells, densities)


@dataclass(frozen=True)
class DominationWitness:
    """An explicit allocation that weakly improves on a given one.

    Every gain is nonnegative and at least one is strictly positive; the
    constructor enforces that, so a witness verifies itself.
    """

    allocation: Allocation
    value_vector: dict
    gains: dict

    def __post_init__(self):
        gains = dict(self.gains)
        if any(g < 0 for g in gains.values()) or not any(g > 0 for g in gains.values()):
            raise ValueError(f"not a domination witness: gains {gains}")


def build_improvement_lp(
    scenario: Scenario, allocation: Allocation, extra_cuts: Sequence = ()
):
    """LP whose optimum exceeds the current total value iff the allocation
    is Pareto dominated.

    One variable per (player, cell) pair holds the fraction of the cell
    given to the player; because densities are constant on cells, those
    fractions range over all measurable allocations. Constraints keep every
    player at least at the current value, and the objective is the total
    value, so optimum minus the current total is the achievable sum of
    gains. Returns (lp, seed point, decomposition, current values).
    """
    dec = decompose(scenario, allocation, extra_cuts)
    n = scenario.n
    m = len(dec.cells)
    weight = [
        [dec.densities[i][c] * dec.cells[c].length for c in range(m)]
        for i in range(n)
    ]
    base = tuple(
        density.mass(allocation.portion(name)) for name, density in scenario.players
    )

    def var(i: int, c: int) -> int:
        return i * m + c

    n_vars = n * m
    constraints = []
    for c in range(m):
        coeffs = [ZERO] * n_vars
        for i in range(n):
            coeffs[var(i, c)] = ONE
        constraints.append(LinearConstraint(tuple(coeffs), "==", ONE))
    for i in range(n):
        coeffs = [ZERO] * n_vars
        for c in range(m):
            coeffs[var(i, c)] = weight[i][c]
        constraints.append(LinearConstraint(tuple(coeffs), ">=", base[i]))
    objective = [ZERO] * n_vars
    for i in range(n):
        for c in range(m):
            objective[var(i, c)] = weight[i][c]
    lp = LinearProgram(n_vars, tuple(objective), tuple(constraints))

    seed = [ZERO] * n_vars
    for c, cell in enumerate(dec.cells):
        owner = next(
            i
            for i, (name, _) in enumerate(scenario.players)
            if allocation.portion(name).contains_point(cell.midpoint)
        )
        seed[var(owner, c)] = ONE
    return lp, tuple(seed), dec, base


def pareto_improve(
    scenario: Scenario, allocation: Allocation, extra_cuts: Sequence = ()
) -> Optional[DominationWitness]:
    """Return a dominating allocation, or None if this one is Pareto optimal.

    Optimality here is against all measurable allocations, not just
    contiguous ones: with step densities only the per-cell fractions
    matter, and the LP ranges over all of them.
    """
    lp, seed, dec, base = build_improvement_lp(scenario, allocation, extra_cuts)
    result = simplex_max(lp, seed)
    if result.value == sum(base, ZERO):
        return None

    m = len(dec.cells)
    pieces: dict[str, list[Interval]] = {name: [] for name, _ in scenario.players}
    for c, cell in enumerate(dec.cells):
        position = cell.lo
        for i, (name, _) in enumerate(scenario.players):
            share = result.point[i * m + c]
            if share > 0:
                end = position + share * cell.length
                pieces[name].append(Interval(position, end))
                position = end
    witness_alloc = Allocation(
        tuple((name, IntervalSet(tuple(ivs))) for name, ivs in pieces.items())
    )
    values = {
        name: density.mass(witness_alloc.portion(name))
        for name, density in scenario.players
    }
    gains = {
        name: values[name] - base[i] for i, (name, _) in enumerate(scenario.players)
    }
    return DominationWitness(witness_alloc, values, gains)


def utilitarian_bound(scenario: Scenario) -> Fraction:
    """Upper bound on total value: integrate the pointwise maximum density."""
    dec = decompose(scenario)
    total = ZERO
    for c, cell in enumerate(dec.cells):
        total += max(dec.densities[i][c] for i in range(scenario.n)) * cell.length
    return total
