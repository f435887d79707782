"""Command-line interface.

Exit codes: 0 success, 2 validation error, 3 procedure undefined in strict
mode, 4 counterexample mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import EXIT_OK, FairsliceError, MismatchError
from .harness import (
    emit_report,
    load_allocation,
    load_densities,
    load_document,
    parse_tie,
    run_counterexample,
)
from .procedures import PROCEDURE_NAMES, declared_values, run_procedure
from .verify import (
    TruthProfile,
    envy_free_check,
    pareto_optimal_check,
    proportional_check,
    weak_manipulation_search,
)

CHECKS = ("proportional", "envy", "pareto")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairslice",
        description="Exact-arithmetic cake-cutting procedures and property checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a procedure on a scenario document")
    run.add_argument("scenario", help="path to a scenario JSON document")
    run.add_argument("--procedure", choices=PROCEDURE_NAMES)
    run.add_argument("--strict", action="store_true")
    run.add_argument("--cutter", help="cutter name for cut-choose")
    run.add_argument("--tie", default=None, help="lowest or seed:<u64>")
    run.add_argument("-o", "--output", help="write the report here instead of stdout")

    verify = sub.add_parser("verify", help="check properties of an allocation")
    verify.add_argument("scenario")
    verify.add_argument("allocation")
    verify.add_argument("--truth", help="scenario-shaped document with true densities")
    verify.add_argument(
        "--checks",
        default=",".join(CHECKS),
        help=f"comma-separated subset of {','.join(CHECKS)}",
    )
    verify.add_argument("-o", "--output")

    paper = sub.add_parser("paper-ce", help="replay a registered counterexample")
    paper.add_argument("case", type=int, choices=range(1, 7), metavar="1..6")
    paper.add_argument("-o", "--output")

    manipulate = sub.add_parser(
        "manipulate", help="search candidate misreports for a weak improvement"
    )
    manipulate.add_argument("scenario")
    manipulate.add_argument("--player", required=True)
    manipulate.add_argument("--candidates", required=True)
    manipulate.add_argument("--opponents", required=True)
    manipulate.add_argument("-o", "--output")
    return parser


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_run(args) -> int:
    document = load_document(Path(args.scenario).read_text(encoding="utf-8"))
    embedded = document.procedure
    name = args.procedure or (embedded.name if embedded else None)
    if name is None:
        raise FairsliceError(
            "no procedure given: pass --procedure or embed one in the document"
        )
    strict = args.strict or (embedded.strict if embedded else False)
    cutter = args.cutter or (embedded.cutter if embedded else None)
    tie = parse_tie(args.tie) if args.tie else (embedded.tie if embedded else parse_tie("lowest"))
    outcome = run_procedure(
        name, document.scenario, strict=strict, tie=tie, cutter=cutter
    )
    report = {
        "command": "run",
        "procedure": name,
        "outcome": outcome,
        "declared_values": declared_values(document.scenario, outcome.allocation),
    }
    _write(emit_report(report), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    document = load_document(Path(args.scenario).read_text(encoding="utf-8"))
    scenario = document.scenario
    allocation = load_allocation(
        Path(args.allocation).read_text(encoding="utf-8"), scenario
    )
    truth = document.truth
    if args.truth:
        truth_doc = load_document(Path(args.truth).read_text(encoding="utf-8"))
        truth = TruthProfile(truth_doc.scenario.players)
    wanted = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in wanted if c not in CHECKS]
    if unknown:
        raise FairsliceError(f"unknown checks {unknown}; choose from {CHECKS}")
    reports = []
    for check in wanted:
        if check == "proportional":
            reports.append(proportional_check(scenario, allocation, truth))
        elif check == "envy":
            reports.append(envy_free_check(scenario, allocation, truth))
        else:
            reports.append(pareto_optimal_check(scenario, allocation, truth))
    _write(emit_report({"command": "verify", "checks": reports}), args.output)
    return EXIT_OK


def _cmd_paper_ce(args) -> int:
    try:
        report = run_counterexample(args.case)
    except MismatchError as exc:
        _write(emit_report({"command": "paper-ce", "comparison": exc.report}), args.output)
        raise
    _write(emit_report({"command": "paper-ce", "comparison": report}), args.output)
    return EXIT_OK


def _cmd_manipulate(args) -> int:
    document = load_document(Path(args.scenario).read_text(encoding="utf-8"))
    scenario = document.scenario
    if scenario.n != 2:
        raise FairsliceError("manipulation search needs a two-player scenario")
    if document.procedure is None:
        raise FairsliceError("the scenario document must embed a procedure to search")
    if args.player not in scenario.names:
        raise FairsliceError(f"unknown player {args.player!r}")
    opponent_name = next(n for n in scenario.names if n != args.player)
    candidates = load_densities(Path(args.candidates).read_text(encoding="utf-8"))
    opponents = load_densities(Path(args.opponents).read_text(encoding="utf-8"))
    embedded = document.procedure
    witness = weak_manipulation_search(
        embedded.name,
        scenario.density(args.player),
        candidates,
        opponents,
        manipulator=args.player,
        opponent=opponent_name,
        tie=embedded.tie,
        strict=embedded.strict,
        cutter=embedded.cutter,
    )
    report = {
        "command": "manipulate",
        "player": args.player,
        "witness_found": witness is not None,
        "witness": witness,
    }
    _write(emit_report(report), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "verify": _cmd_verify,
        "paper-ce": _cmd_paper_ce,
        "manipulate": _cmd_manipulate,
    }
    try:
        return handlers[args.command](args)
    except FairsliceError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status


if __name__ == "__main__":
    sys.exit(main())
