"""Property checkers for allocations and procedures.

Every checker separates the densities that drove a procedure (declared)
from the densities an outcome is scored with (truth); every manipulation
argument rests on that split.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .measures import Allocation, Scenario, StepDensity
from .procedures import (
    TIE_LOWEST,
    ProcedureOutcome,
    TieRule,
    _ScriptRule,
    contiguous_allocation,
    ep_for_ordering,
    equitability,
    run_procedure,
)
from .solve import DominationWitness, pareto_improve


@dataclass(frozen=True)
class TruthProfile:
    """Per-player true densities, possibly different from the declared ones."""

    densities: tuple[tuple[str, StepDensity], ...]

    def __post_init__(self):
        names = [name for name, _ in self.densities]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate names in truth profile: {names}")
        for name, density in self.densities:
            density.require_valid(f"true density for {name!r}")

    @classmethod
    def of(cls, mapping: Mapping[str, StepDensity]) -> "TruthProfile":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_scenario(cls, scenario: Scenario) -> "TruthProfile":
        return cls(scenario.players)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.densities)

    def density(self, name: str) -> StepDensity:
        for player, density in self.densities:
            if player == name:
                return density
        raise KeyError(name)

    def require_same_players(self, scenario: Scenario) -> None:
        if set(self.names) != set(scenario.names):
            raise ValueError(
                f"truth profile names {self.names} do not match scenario {scenario.names}"
            )


@dataclass(frozen=True)
class PropertyReport:
    """Per-player values plus the verdicts recomputable from them."""

    check: str
    values: dict
    verdicts: dict
    passed: bool
    witness: Optional[DominationWitness] = None
    matrix: Optional[dict] = None
    details: Optional[dict] = None


def _truth_or_declared(scenario: Scenario, truth: Optional[TruthProfile]) -> TruthProfile:
    profile = truth if truth is not None else TruthProfile.from_scenario(scenario)
    profile.require_same_players(scenario)
    return profile


def proportional_check(
    scenario: Scenario, allocation: Allocation, truth: Optional[TruthProfile] = None
) -> PropertyReport:
    """Does every player get at least 1/n of the cake by their true measure?"""
    profile = _truth_or_declared(scenario, truth)
    share = Fraction(1, scenario.n)
    values = {
        name: profile.density(name).mass(allocation.portion(name))
        for name in scenario.names
    }
    verdicts = {name: values[name] >= share for name in scenario.names}
    return PropertyReport(
        check="proportional",
        values=values,
        verdicts=verdicts,
        passed=all(verdicts.values()),
        details={"fair_share": share},
    )


def envy_free_check(
    scenario: Scenario, allocation: Allocation, truth: Optional[TruthProfile] = None
) -> PropertyReport:
    """Does anyone value another player's portion above their own?"""
    profile = _truth_or_declared(scenario, truth)
    matrix = {
        viewer: {
            owner: profile.density(viewer).mass(allocation.portion(owner))
            for owner in scenario.names
        }
        for viewer in scenario.names
    }
    values = {name: matrix[name][name] for name in scenario.names}
    verdicts = {
        viewer: all(matrix[viewer][viewer] >= matrix[viewer][owner] for owner in scenario.names)
        for viewer in scenario.names
    }
    return PropertyReport(
        check="envy-free",
        values=values,
        verdicts=verdicts,
        passed=all(verdicts.values()),
        matrix=matrix,
    )


def pareto_optimal_check(
    scenario: Scenario,
    allocation: Allocation,
    truth: Optional[TruthProfile] = None,
    extra_cuts: Sequence = (),
) -> PropertyReport:
    """Is there no allocation better for someone and worse for no one?"""
    profile = _truth_or_declared(scenario, truth)
    truth_scenario = Scenario(
        tuple((name, profile.density(name)) for name in scenario.names)
    )
    witness = pareto_improve(truth_scenario, allocation, extra_cuts)
    values = {
        name: profile.density(name).mass(allocation.portion(name))
        for name in scenario.names
    }
    optimal = witness is None
    return PropertyReport(
        check="pareto",
        values=values,
        verdicts={"pareto_optimal": optimal},
        passed=optimal,
        witness=witness,
    )


def _enumerate_outcomes(
    procedure: str, scenario: Scenario, strict: bool = False, cutter: Optional[str] = None
) -> list[ProcedureOutcome]:
    """Every outcome the procedure can produce across tie resolutions.

    The equal-value procedure has no runtime ties; its only freedom is the
    choice among assignments tied at the maximal common value, so those are
    enumerated directly. The other procedures are replayed with scripted
    tie winners, branching on each recorded tie event.
    """
    if procedure == "ep":
        best = equitability(scenario, strict=strict).common_value
        outcomes = []
        for perm in itertools.permutations(range(scenario.n)):
            result = ep_for_ordering(scenario, perm)
            if result is not None and result[1] == best:
                names = tuple(scenario.names[i] for i in perm)
                outcomes.append(
                    ProcedureOutcome(
                        allocation=contiguous_allocation(names, result[0]),
                        cuts=result[0],
                        ordering=names,
                        common_value=result[1],
                    )
                )
        return outcomes
    outcomes = []
    pending: list[tuple[str, ...]] = [()]
    while pending:
        script = pending.pop()
        outcome = run_procedure(
            procedure, scenario, strict=strict, tie=_ScriptRule(script=script), cutter=cutter
        )
        outcomes.append(outcome)
        events = outcome.tie_events
        for i in range(len(script), len(events)):
            prefix = tuple(event.winner for event in events[:i])
            for alternative in events[i].tied:
                if alternative != events[i].winner:
                    pending.append(prefix + (alternative,))
    return outcomes


def theorem_a_check(
    procedure: str,
    truth: StepDensity,
    misreport: StepDensity,
    n: int,
    tie: TieRule = TIE_LOWEST,
    strict: bool = False,
) -> PropertyReport:
    """The identical-misreport harness.

    All n players declare the same ``misreport``; portions are then scored
    under the single ``truth`` measure. Because the portions partition the
    cake, the minimum true value is at most 1/n in every run, so no player
    can be assured of beating the fair share this way. Under a seeded tie
    rule the check also enumerates every tie resolution and confirms that
    some outcome leaves the first player at or below 1/n, the randomized
    form of the same argument.
    """
    truth.require_valid("truth")
    misreport.require_valid("misreport")
    if procedure in ("cut-choose", "sp-e", "sp-p") and n != 2:
        raise ValueError(f"{procedure} needs exactly 2 players, got {n}")
    if n < 2:
        raise ValueError("need at least 2 players")
    scenario = Scenario(tuple((f"p{i + 1}", misreport) for i in range(n)))
    outcome = run_procedure(procedure, scenario, strict=strict, tie=tie)
    values = {
        name: truth.mass(outcome.allocation.portion(name)) for name in scenario.names
    }
    share = Fraction(1, n)
    verdicts = {"min_value_le_fair_share": min(values.values()) <= share}
    details: dict = {"fair_share": share, "procedure": procedure}
    if tie.mode == "seeded":
        outcomes = _enumerate_outcomes(procedure, scenario, strict=strict)
        distinguished = scenario.names[0]
        verdicts["distinguished_player_can_end_le_fair_share"] = any(
            truth.mass(o.allocation.portion(distinguished)) <= share for o in outcomes
        )
        details["enumerated_outcomes"] = len(outcomes)
    return PropertyReport(
        check="theorem-a",
        values=values,
        verdicts=verdicts,
        passed=all(verdicts.values()),
        details=details,
    )


@dataclass(frozen=True)
class ManipulationWitness:
    """A misreport at least as good against every opponent strategy and
    strictly better against at least one, relative to the given sets."""

    candidate_index: int
    misreport: StepDensity
    truthful_values: tuple[Fraction, ...]
    misreport_values: tuple[Fraction, ...]
    strict_opponents: tuple[int, ...]


def weak_manipulation_search(
    procedure: str,
    truth: StepDensity,
    candidates: Sequence[StepDensity],
    opponents: Sequence[StepDensity],
    *,
    manipulator: str = "A",
    opponent: str = "B",
    tie: TieRule = TIE_LOWEST,
    strict: bool = False,
    cutter: Optional[str] = None,
) -> Optional[ManipulationWitness]:
    """Search finite candidate misreports for a weakly dominant one.

    For each candidate, the manipulator's true value of their portion is
    compared against truthful declaration across every opponent density.
    The verdict is relative to the supplied finite sets only.
    """
    truth.require_valid("truth")

    def run(declared: StepDensity, against: StepDensity) -> Fraction:
        scenario = Scenario(((manipulator, declared), (opponent, against)))
        outcome = run_procedure(
            procedure, scenario, strict=strict, tie=tie, cutter=cutter or manipulator
        )
        return truth.mass(outcome.allocation.portion(manipulator))

    baseline = tuple(run(truth, against) for against in opponents)
    for index, candidate in enumerate(candidates):
        candidate.require_valid(f"candidate {index}")
        values = tuple(run(candidate, against) for against in opponents)
        strict_wins = tuple(
            k for k, (new, old) in enumerate(zip(values, baseline)) if new > old
        )
        if all(new >= old for new, old in zip(values, baseline)) and strict_wins:
            return ManipulationWitness(
                candidate_index=index,
                misreport=candidate,
                truthful_values=baseline,
                misreport_values=values,
                strict_opponents=strict_wins,
            )
    return None
