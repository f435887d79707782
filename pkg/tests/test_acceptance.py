"""Acceptance suite: one test per criterion, every comparison exact.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass line per
criterion.
"""

import random
from fractions import Fraction as F

from fairslice import (
    Scenario,
    TieRule,
    build_improvement_lp,
    declared_values,
    emit_report,
    equitability,
    load_scenario,
    moving_knife,
    pareto_optimal_check,
    run_counterexample,
    save_scenario,
    simplex_max,
    surplus_divide,
    theorem_a_check,
    utilitarian_bound,
)
from fairslice.harness import CASES, ce6_block_allocation
from helpers import (
    QUARTER_POOL,
    grid_affine_equal_value,
    random_allocation,
    random_density,
    random_lp,
    random_scenario,
    ratio_sweep_dominated,
    vertex_enumeration_max,
)

ZERO, ONE, HALF = F(0), F(1), F(1, 2)


def _entry(report, field):
    return next(e for e in report.entries if e.field == field)


def test_criterion_01_ce1_both_directions():
    report = run_counterexample(1)
    assert report.ok
    assert _entry(report, "horizontal.cut").actual == F(3, 4)
    assert _entry(report, "horizontal.values").actual == (HALF, ONE)
    assert _entry(report, "vertical.cut").actual == HALF
    assert _entry(report, "vertical.values").actual == (HALF, HALF)
    for direction in ("vertical", "horizontal"):
        assert _entry(report, f"{direction}.weakly_dominated_by_split").actual is True
        assert _entry(report, f"{direction}.split_strictly_better_for_P1").actual is True
    print("PASS: criterion 1, CE1 cut-and-choose dominated in both directions")


def test_criterion_02_ce2_exact_values():
    report = run_counterexample(2)
    assert report.ok
    assert _entry(report, "cut").actual == HALF
    assert _entry(report, "values").actual == (HALF, HALF)
    assert _entry(report, "published_witness.values").actual == (F(3, 4), HALF)
    assert _entry(report, "pareto_optimal").actual is False
    assert _entry(report, "median_interval.P2").actual == (F(1, 4), F(3, 4))
    print("PASS: criterion 2, CE2 cut at 1/2, witness (3/4, 1/2), dominated, plateau median")


def test_criterion_03_ce3_oracle_then_solver():
    scenario = CASES[3].scenarios["main"]
    # independent grid-plus-affine oracle first
    oracle = grid_affine_equal_value(scenario, ("P2", "P1", "P3"))
    assert oracle is not None
    oracle_cuts, oracle_t = oracle
    assert oracle_t == F(3, 5)
    assert oracle_cuts == (F(1, 5), F(4, 5))
    report = run_counterexample(3)
    assert report.ok
    assert _entry(report, "strict.error_code").actual == "EP_UNDEFINED"
    assert _entry(report, "strict.names_ordering_1_3_2").actual is True
    assert _entry(report, "lenient.ordering").actual == ("P2", "P1", "P3")
    assert _entry(report, "lenient.common_value").actual == oracle_t
    assert _entry(report, "lenient.cuts").actual == oracle_cuts
    print("PASS: criterion 3, CE3 strict refusal names 1-3-2; lenient 2-1-3 at t = 3/5 (oracle-confirmed)")


def test_criterion_04_ce4_rightward_shifts_break_fairness():
    report = run_counterexample(4)
    assert report.ok
    assert _entry(report, "cuts").actual == (F(1, 3), F(2, 3))
    assert _entry(report, "shift_by_1/100.min_value").actual == F(97, 300) < F(1, 3)
    assert _entry(report, "shift_by_1/10.min_value").actual == F(7, 30) < F(1, 3)
    print("PASS: criterion 4, CE4 marks at (1/3, 2/3); both rightward shifts drop a player below 1/3")


def test_criterion_05_ce5_ep_dominated():
    report = run_counterexample(5)
    assert report.ok
    assert _entry(report, "ep.ordering").actual == ("A", "C", "B")
    assert _entry(report, "ep.cuts").actual == (F(1, 3), F(2, 3))
    assert _entry(report, "ep.common_value").actual == F(9, 20)
    assert _entry(report, "block.values").actual == (F(4, 5), F(4, 5), F(4, 5))
    assert _entry(report, "block.dominates_ep").actual is True
    assert _entry(report, "ep.pareto_optimal").actual is False
    print("PASS: criterion 5, CE5 equal-value outcome at 9/20 each, dominated by the 4/5 block split")


def test_criterion_06_ce6_sp_dominated_block_optimal():
    report = run_counterexample(6)
    assert report.ok
    assert _entry(report, "sp_e.cut").actual == HALF
    assert _entry(report, "sp_p.cut").actual == HALF
    assert _entry(report, "sp_e.values").actual == (HALF, HALF)
    assert _entry(report, "block.values").actual == (F(4, 5), F(4, 5))
    assert _entry(report, "block.dominates_sp").actual is True
    assert _entry(report, "block.pareto_optimal").actual is True
    assert _entry(report, "block.improvement_gain").actual == ZERO
    assert _entry(report, "utilitarian_bound").actual == F(8, 5)
    scenario = CASES[6].scenarios["main"]
    lp, seed, _, base = build_improvement_lp(scenario, ce6_block_allocation())
    assert simplex_max(lp, seed).value == sum(base, ZERO) == utilitarian_bound(scenario)
    print("PASS: criterion 6, CE6 both variants cut at 1/2; block split optimal at the 8/5 bound")


def test_criterion_07_theorem_a_suite():
    rng = random.Random(2024)
    runs = 0
    for pair_index in range(200):
        truth = random_density(rng, max_pieces=3)
        misreport = random_density(rng, max_pieces=3)
        tie = TieRule.seeded(pair_index)
        for n in (2, 3):
            procedures = (
                ("cut-choose", "moving-knife", "sp-e", "ep")
                if n == 2
                else ("moving-knife", "ep")
            )
            for procedure in procedures:
                report = theorem_a_check(procedure, truth, misreport, n, tie=tie)
                assert report.verdicts["min_value_le_fair_share"], (procedure, n)
                assert report.verdicts[
                    "distinguished_player_can_end_le_fair_share"
                ], (procedure, n)
                runs += 1
    print(
        f"PASS: criterion 7, identical-misreport bound held in {runs} runs, "
        "tie enumeration always finds a losing outcome for the misreporter"
    )


def test_criterion_08_oracle_equivalence():
    rng = random.Random(4096)
    for _ in range(100):
        scenario = random_scenario(rng, 2, max_pieces=3, pool=QUARTER_POOL)
        allocation = random_allocation(rng, scenario, pool=QUARTER_POOL)
        lp_verdict = not pareto_optimal_check(scenario, allocation).passed
        assert lp_verdict == ratio_sweep_dominated(scenario, allocation)
    for _ in range(100):
        lp, seed = random_lp(rng)
        assert simplex_max(lp, seed).value == vertex_enumeration_max(lp)
    print(
        "PASS: criterion 8, Pareto check matched the ratio-sweep oracle 100/100 "
        "and simplex matched vertex enumeration 100/100"
    )


def test_criterion_09_moving_knife_proportionality():
    rng = random.Random(512)
    for index in range(100):
        n = (2, 3, 4)[index % 3]
        scenario = random_scenario(rng, n)
        outcome = moving_knife(scenario)
        share = F(1, n)
        for value in declared_values(scenario, outcome.allocation).values():
            assert value >= share
    for n in (2, 3, 4):
        shared = random_density(rng)
        scenario = Scenario(tuple((f"p{i}", shared) for i in range(n)))
        values = declared_values(scenario, moving_knife(scenario).allocation)
        assert all(v == F(1, n) for v in values.values())
    print(
        "PASS: criterion 9, moving knife gave every player at least 1/n in 100 runs, "
        "exactly 1/n under identical declarations"
    )


def test_criterion_10_round_trip_and_determinism():
    rng = random.Random(77)
    for _ in range(25):
        scenario = random_scenario(rng, rng.choice((2, 3)))
        assert load_scenario(save_scenario(scenario)) == scenario
    scenario = random_scenario(random.Random(8), 3)
    first = emit_report(moving_knife(scenario, tie=TieRule.seeded(21)))
    second = emit_report(moving_knife(scenario, tie=TieRule.seeded(21)))
    assert first == second
    assert emit_report(run_counterexample(5)) == emit_report(run_counterexample(5))
    assert emit_report(equitability(CASES[5].scenarios["main"])) == emit_report(
        equitability(CASES[5].scenarios["main"])
    )
    assert surplus_divide(CASES[6].scenarios["main"]) == surplus_divide(
        CASES[6].scenarios["main"]
    )
    print("PASS: criterion 10, documents round-trip exactly and seeded runs emit identical bytes")
