"""The four allocation procedures.

Each procedure reads only the players' declared densities and returns a
contiguous allocation together with the cuts, the left-to-right assignment,
and any tie events it resolved. Scoring outcomes against true preferences
belongs to the verify module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import EPUndefinedError, NoFeasibleOrderingError, NonUniqueMedianError
from .measures import (
    ONE,
    ZERO,
    Allocation,
    Interval,
    IntervalSet,
    Scenario,
    StepDensity,
)
from . import solve

EQUITABLE = "equitable"
PROPORTIONAL = "proportional"

PROCEDURE_NAMES = ("cut-choose", "moving-knife", "sp-e", "sp-p", "ep")

TieResolver = Callable[[Fraction, tuple[str, ...]], str]


@dataclass(frozen=True)
class TieRule:
    """Deterministic tie-breaking policy.

    ``lowest`` picks the first of the tied candidates in the order the
    procedure lists them (scenario order for the moving knife, chooser
    first for cut and choose). ``seeded`` draws from a PRNG seeded once per
    procedure run, so a given rule replays identically on the same
    scenario regardless of where or when it executes.
    """

    mode: str = "lowest"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("lowest", "seeded", "scripted"):
            raise ValueError(f"unknown tie mode {self.mode!r}")
        if self.mode == "seeded" and self.seed is None:
            raise ValueError("seeded tie rule needs a seed")

    @classmethod
    def lowest_index(cls) -> "TieRule":
        return cls()

    @classmethod
    def seeded(cls, seed: int) -> "TieRule":
        return cls(mode="seeded", seed=seed)

    def resolver(self) -> TieResolver:
        if self.mode == "lowest":
            return lambda location, tied: tied[0]
        rng = random.Random(self.seed)
        return lambda location, tied: rng.choice(tied)


TIE_LOWEST = TieRule()


@dataclass(frozen=True)
class _ScriptRule(TieRule):
    """Replays a fixed list of tie winners, then falls back to first-listed.

    Used by the verify module to enumerate every way the ties in a run
    could have been resolved.
    """

    mode: str = "scripted"
    script: tuple[str, ...] = ()

    def resolver(self) -> TieResolver:
        cursor = itertools.count()

        def pick(location, tied):
            i = next(cursor)
            if i < len(self.script) and self.script[i] in tied:
                return self.script[i]
            return tied[0]

        return pick


@dataclass(frozen=True)
class TieEvent:
    location: Fraction
    tied: tuple[str, ...]
    winner: str


@dataclass(frozen=True)
class ProcedureOutcome:
    """An allocation plus the diagnostics that produced it.

    ``cuts`` are sorted and, for the contiguous procedures, the portions
    are exactly the consecutive intervals they induce, assigned left to
    right per ``ordering``.
    """

    allocation: Allocation
    cuts: tuple[Fraction, ...]
    ordering: tuple[str, ...]
    common_value: Optional[Fraction] = None
    tie_events: tuple[TieEvent, ...] = ()


def contiguous_allocation(ordering: Sequence[str], cuts: Sequence[Fraction]) -> Allocation:
    """Assign the consecutive intervals induced by the cuts, left to right."""
    bounds = [ZERO, *cuts, ONE]
    portions = []
    for name, lo, hi in zip(ordering, bounds, bounds[1:]):
        portion = IntervalSet((Interval(lo, hi),)) if hi > lo else IntervalSet()
        portions.append((name, portion))
    return Allocation(tuple(portions))


def declared_values(scenario: Scenario, allocation: Allocation) -> dict:
    return {
        name: density.mass(allocation.portion(name))
        for name, density in scenario.players
    }


def _require_players(scenario: Scenario, minimum: int, exactly: bool = False) -> None:
    if exactly and scenario.n != minimum:
        raise ValueError(f"this procedure needs exactly {minimum} players, got {scenario.n}")
    if scenario.n < minimum:
        raise ValueError(f"this procedure needs at least {minimum} players, got {scenario.n}")


def cut_and_choose(
    scenario: Scenario,
    cutter: str,
    strict: bool = False,
    tie: TieRule = TIE_LOWEST,
) -> ProcedureOutcome:
    """Two players: the cutter halves the cake by declared value, the other
    player takes the piece they declare more valuable.

    The risk-averse cut is the midpoint of the cutter's median interval;
    in strict mode a nondegenerate interval is refused instead, since no
    single cut point is then uniquely optimal. On indifference the chooser
    takes the left piece (the tie rule can override, and the tie is
    recorded either way).
    """
    _require_players(scenario, 2, exactly=True)
    if cutter not in scenario.names:
        raise ValueError(f"unknown cutter {cutter!r}")
    chooser = next(name for name in scenario.names if name != cutter)
    median = scenario.density(cutter).median_interval()
    if strict and median.lo != median.hi:
        raise NonUniqueMedianError(cutter, median)
    cut = median.midpoint
    chooser_density = scenario.density(chooser)
    left_value = chooser_density.mass(Interval(ZERO, cut))
    right_value = chooser_density.mass(Interval(cut, ONE))
    events = []
    if left_value > right_value:
        left_owner = chooser
    elif right_value > left_value:
        left_owner = cutter
    else:
        tied = (chooser, cutter)
        left_owner = tie.resolver()(cut, tied)
        events.append(TieEvent(cut, tied, left_owner))
    right_owner = chooser if left_owner == cutter else cutter
    ordering = (left_owner, right_owner)
    return ProcedureOutcome(
        allocation=contiguous_allocation(ordering, (cut,)),
        cuts=(cut,),
        ordering=ordering,
        tie_events=tuple(events),
    )


def moving_knife(scenario: Scenario, tie: TieRule = TIE_LOWEST) -> ProcedureOutcome:
    """Sweep a knife from 0; whoever calls first takes the slice and exits.

    Each remaining player calls where the slice reaches their share of what
    the remainder is still worth to them (remaining mass over remaining
    player count). That adaptive threshold gives every winner at least 1/n
    of the whole by their own declaration and splits identical declarations
    into exact 1/n pieces. The tie rule settles simultaneous calls; the
    last player takes the remainder.
    """
    _require_players(scenario, 2)
    resolver = tie.resolver()
    remaining = list(scenario.players)
    position = ZERO
    cuts: list[Fraction] = []
    order: list[str] = []
    events: list[TieEvent] = []
    while len(remaining) > 1:
        count = len(remaining)
        calls = []
        for name, density in remaining:
            threshold = density.mass(Interval(position, ONE)) / count
            calls.append((density.quantile_left(threshold, start=position), name))
        earliest = min(point for point, _ in calls)
        tied = tuple(name for point, name in calls if point == earliest)
        if len(tied) == 1:
            winner = tied[0]
        else:
            winner = resolver(earliest, tied)
            events.append(TieEvent(earliest, tied, winner))
        cuts.append(earliest)
        order.append(winner)
        remaining = [(name, d) for name, d in remaining if name != winner]
        position = earliest
    order.append(remaining[0][0])
    ordering = tuple(order)
    return ProcedureOutcome(
        allocation=contiguous_allocation(ordering, cuts),
        cuts=tuple(cuts),
        ordering=ordering,
        tie_events=tuple(events),
    )


def _surplus_cut(
    left_density: StepDensity,
    right_density: StepDensity,
    a: Fraction,
    b: Fraction,
    variant: str,
    mass_left: Fraction,
    mass_right: Fraction,
) -> Fraction:
    """Cut point inside the surplus [a, b], both surplus masses positive.

    The defining equation (equal surplus shares, or equal surplus share
    proportions) is nondecreasing and piecewise affine in the cut, negative
    at a and positive at b, so its root set is a point or a closed
    interval; the midpoint is taken so the choice is symmetric. Both
    players value every point of the root set identically, so the choice
    inside it changes no one's share.
    """
    points = {a, b}
    for p in (*left_density.breakpoints(), *right_density.breakpoints()):
        if a < p < b:
            points.add(p)
    grid = sorted(points)

    def residual(c: Fraction) -> Fraction:
        left_gain = left_density.mass(Interval(a, c))
        right_gain = right_density.mass(Interval(c, b))
        if variant == EQUITABLE:
            return left_gain - right_gain
        return left_gain * mass_right - right_gain * mass_left

    values = [residual(g) for g in grid]
    first = None
    last = None
    for j in range(len(grid) - 1):
        span = grid[j + 1] - grid[j]
        if first is None and values[j] < 0 <= values[j + 1]:
            slope = (values[j + 1] - values[j]) / span
            first = grid[j] - values[j] / slope
        if values[j] <= 0 < values[j + 1]:
            slope = (values[j + 1] - values[j]) / span
            last = grid[j] - values[j] / slope
    if first is None or last is None:
        raise AssertionError("surplus residual failed to cross zero")
    return (first + last) / 2


def surplus_divide(
    scenario: Scenario,
    variant: str = EQUITABLE,
    strict: bool = False,
    tie: TieRule = TIE_LOWEST,
) -> ProcedureOutcome:
    """Two players: cut inside the interval between their median points.

    Each player's median point is the midpoint of their median interval
    (strict mode refuses nondegenerate intervals). The player with the
    smaller median takes the left side; coinciding medians are a tie for
    the left piece. On the surplus between the medians, the equitable
    variant equalizes the two surplus shares outright, the proportional
    variant equalizes them relative to each player's value of the whole
    surplus. When only one player values the surplus it all goes to that
    player; when neither does the cut lands mid-surplus.
    """
    _require_players(scenario, 2, exactly=True)
    if variant not in (EQUITABLE, PROPORTIONAL):
        raise ValueError(f"unknown variant {variant!r}")
    (name_one, density_one), (name_two, density_two) = scenario.players
    medians = {}
    for name, density in scenario.players:
        interval = density.median_interval()
        if strict and interval.lo != interval.hi:
            raise NonUniqueMedianError(name, interval)
        medians[name] = interval.midpoint
    events = []
    if medians[name_one] == medians[name_two]:
        cut = medians[name_one]
        tied = (name_one, name_two)
        left = tie.resolver()(cut, tied)
        events.append(TieEvent(cut, tied, left))
        right = name_two if left == name_one else name_one
    else:
        if medians[name_one] < medians[name_two]:
            left, right = name_one, name_two
        else:
            left, right = name_two, name_one
        a, b = medians[left], medians[right]
        left_density = scenario.density(left)
        right_density = scenario.density(right)
        mass_left = left_density.mass(Interval(a, b))
        mass_right = right_density.mass(Interval(a, b))
        if mass_left == 0 and mass_right == 0:
            cut = (a + b) / 2
        elif mass_left == 0:
            cut = a
        elif mass_right == 0:
            cut = b
        else:
            cut = _surplus_cut(
                left_density, right_density, a, b, variant, mass_left, mass_right
            )
    ordering = (left, right)
    allocation = contiguous_allocation(ordering, (cut,))
    value_left = scenario.density(left).mass(Interval(ZERO, cut))
    value_right = scenario.density(right).mass(Interval(cut, ONE))
    common = value_left if value_left == value_right else None
    return ProcedureOutcome(
        allocation=allocation,
        cuts=(cut,),
        ordering=ordering,
        common_value=common,
        tie_events=tuple(events),
    )


def ep_for_ordering(scenario: Scenario, ordering: Sequence):
    """Cuts and common value for one left-to-right assignment, or None.

    Absence is a value rather than an error: some assignments admit no
    equalizing cutpoints at all, and both behaviors must be observable.
    """
    solution = solve.equal_value_solve(scenario, ordering)
    if solution is None:
        return None
    return solution.cuts, solution.common_value


def equitability(scenario: Scenario, strict: bool = False) -> ProcedureOutcome:
    """Solve the equal-value system for every assignment of pieces.

    Strict mode raises as soon as any of the n! assignments is infeasible,
    naming all of them. Lenient mode returns the feasible assignment with
    the largest common value, breaking ties toward the lexicographically
    smallest permutation in scenario order.
    """
    _require_players(scenario, 2)
    names = scenario.names
    feasible = []
    infeasible = []
    for perm in itertools.permutations(range(scenario.n)):
        ordered_names = tuple(names[i] for i in perm)
        solution = solve.equal_value_solve(scenario, perm)
        if solution is None:
            infeasible.append(ordered_names)
        else:
            feasible.append((ordered_names, solution))
    if strict and infeasible:
        raise EPUndefinedError(infeasible)
    if not feasible:
        raise NoFeasibleOrderingError(
            "no assignment of pieces admits equalizing cutpoints"
        )
    best_names, best = feasible[0]
    for ordered_names, solution in feasible[1:]:
        if solution.common_value > best.common_value:
            best_names, best = ordered_names, solution
    return ProcedureOutcome(
        allocation=contiguous_allocation(best_names, best.cuts),
        cuts=best.cuts,
        ordering=best_names,
        common_value=best.common_value,
    )


def run_procedure(
    name: str,
    scenario: Scenario,
    *,
    strict: bool = False,
    tie: TieRule = TIE_LOWEST,
    cutter: Optional[str] = None,
) -> ProcedureOutcome:
    """Dispatch on the wire-format procedure names used by documents and
    the command line."""
    if name == "cut-choose":
        return cut_and_choose(scenario, cutter or scenario.names[0], strict=strict, tie=tie)
    if name == "moving-knife":
        return moving_knife(scenario, tie=tie)
    if name == "sp-e":
        return surplus_divide(scenario, EQUITABLE, strict=strict, tie=tie)
    if name == "sp-p":
        return surplus_divide(scenario, PROPORTIONAL, strict=strict, tie=tie)
    if name == "ep":
        return equitability(scenario, strict=strict)
    raise ValueError(f"unknown procedure {name!r}; expected one of {PROCEDURE_NAMES}")
