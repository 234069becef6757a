"""Command-line front door.

Subcommands: ``play`` evaluates one scenario file, ``sweep`` grids one
parameter and emits CSV, ``verify`` runs the built-in golden suite and
``oracle`` cross-checks the classical limit against the classical game.
Exit codes: 0 success, 1 check failure, 2 input or validation error,
3 numerical-integrity error.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from dataclasses import dataclass, replace

from .classical import DEFAULT_TIE_EPS, PlayerRoster, classical_payoffs
from .engine import MeasurementTable, Scenario, evaluate, validate_scenario
from .errors import NumericalIntegrityError, ValidationError
from .scenario_io import load_scenario
from .selfcheck import run_verification
from .sweep import DEFAULT_SWEEP_STEPS, SweepSpec, run_sweep

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


@dataclass(frozen=True)
class RunReport:
    """Everything the play command shows for one evaluated scenario."""

    scenario: Scenario
    table: MeasurementTable
    notices: tuple[str, ...]

    @property
    def payoffs(self) -> tuple[int, ...]:
        return self.table.payoffs


def _load(args) -> tuple[Scenario, list[str]]:
    scenario, notices = load_scenario(args.scenario, degrees=args.degrees)
    if args.eps is not None:
        scenario, _ = validate_scenario(replace(scenario, eps=args.eps))
    return scenario, notices


def _print_report(report: RunReport, stream=None) -> None:
    stream = stream or sys.stdout
    scenario = report.scenario
    dims = scenario.dims
    print(
        f"players: {scenario.num_players}  battlefields: "
        f"{scenario.num_battlefields}  composite dim: {dims.dim}",
        file=stream,
    )
    pattern = " ".join(f"{s:+d}" for s in scenario.sign_pattern)
    print(
        f"gamma: {_fmt(scenario.gamma)}  sign pattern: {pattern}  "
        f"tie eps: {_fmt(scenario.eps)}",
        file=stream,
    )
    for notice in report.notices:
        print(f"notice: {notice}", file=stream)
    headers = ["player"] + [
        f"b{k}" for k in range(1, scenario.num_battlefields + 1)
    ] + ["payoff"]
    rows = [
        [name]
        + [_fmt(v) for v in report.table.values[j]]
        + [f"{report.payoffs[j]:+d}"]
        for j, name in enumerate(scenario.player_names)
    ]
    widths = [
        max(len(headers[c]), *(len(row[c]) for row in rows))
        for c in range(len(headers))
    ]
    for row in [headers] + rows:
        line = "  ".join(cell.ljust(w) for cell, w in zip(row, widths))
        print(line.rstrip(), file=stream)


def _play_csv(report: RunReport) -> str:
    n = report.scenario.num_battlefields
    header = "player," + ",".join(f"m_b{k}" for k in range(1, n + 1)) + ",payoff"
    lines = [header]
    for j, name in enumerate(report.scenario.player_names):
        cells = ",".join(_fmt(v) for v in report.table.values[j])
        lines.append(f"{name},{cells},{report.payoffs[j]}")
    return "\n".join(lines) + "\n"


def cmd_play(args) -> int:
    scenario, notices = _load(args)
    table = evaluate(scenario)
    report = RunReport(scenario=scenario, table=table, notices=tuple(notices))
    _print_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_play_csv(report))
        print(f"wrote {args.out}")
    return EXIT_OK


def _sweep_csv(result, num_players: int, num_battlefields: int) -> str:
    payoff_cols = ",".join(f"payoff_p{j}" for j in range(1, num_players + 1))
    value_cols = ",".join(
        f"m_p{j}_b{k}"
        for j in range(1, num_players + 1)
        for k in range(1, num_battlefields + 1)
    )
    lines = [f"param_value,{payoff_cols},{value_cols}"]
    for point in result.points:
        payoffs = ",".join(str(p) for p in point.payoffs)
        cells = ",".join(_fmt(v) for row in point.values for v in row)
        lines.append(f"{_fmt(point.value)},{payoffs},{cells}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    scenario, _ = _load(args)
    lo, hi = args.lo, args.hi
    if args.degrees:
        lo, hi = math.radians(lo), math.radians(hi)
    spec = SweepSpec(
        base=scenario,
        target_player=args.player,
        target_battlefield=args.battlefield,
        parameter=args.param,
        lo=lo,
        hi=hi,
        steps=args.steps,
    )
    result = run_sweep(spec, jobs=args.jobs)
    csv_text = _sweep_csv(result, scenario.num_players, scenario.num_battlefields)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text)
        boundary_stream = sys.stdout
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(csv_text)
        boundary_stream = sys.stderr
    for transition in result.transitions:
        print(
            f"payoff transition near {args.param} = {_fmt(transition.boundary)}: "
            f"{transition.below} -> {transition.above}",
            file=boundary_stream,
        )
    if not result.transitions:
        print("no payoff transitions on the grid", file=boundary_stream)
    return EXIT_OK


def cmd_verify(args) -> int:
    eps = args.eps if args.eps is not None else DEFAULT_TIE_EPS
    results = run_verification(
        eps, exclude_own_battlefield=args.exclude_own_battlefield
    )
    failures = [r for r in results if not r.passed]
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        detail = f": {result.detail}" if result.detail else ""
        print(f"{status} {result.name}{detail}")
    if failures:
        print(
            f"verification failed ({len(failures)} of {len(results)} checks)",
            file=sys.stderr,
        )
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_oracle(args) -> int:
    scenario, _ = _load(args)
    nonzero = [
        (j + 1, k + 1)
        for j, row in enumerate(scenario.phases)
        for k, phase in enumerate(row)
        if phase != 0.0
    ]
    if nonzero:
        raise ValidationError(
            f"oracle compares the classical limit only; scenario has nonzero "
            f"phases at (player, battlefield) {nonzero}"
        )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        roster = PlayerRoster(scenario.totals)
    classical = classical_payoffs(scenario.allocations, roster, scenario.eps)
    quantum = evaluate(scenario).payoffs
    print(f"classical payoffs: {classical}")
    print(f"quantum payoffs:   {quantum}")
    if quantum == classical:
        print("PASS")
        return EXIT_OK
    print("FAIL: payoff vectors differ", file=sys.stderr)
    return EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--eps", type=float, default=None, help="override the tie tolerance"
    )
    common.add_argument(
        "--jobs", type=int, default=1, help="parallel evaluations for sweeps"
    )
    common.add_argument("--out", default=None, help="write CSV output to this file")
    common.add_argument(
        "--degrees",
        action="store_true",
        help="treat file and range angles as degrees",
    )

    parser = argparse.ArgumentParser(
        prog="qblotto",
        description="Quantum multiplayer Colonel Blotto simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", parents=[common], help="evaluate a scenario file")
    play.add_argument("scenario", help="path to a scenario JSON file")
    play.set_defaults(handler=cmd_play)

    swp = sub.add_parser(
        "sweep", parents=[common], help="sweep one parameter and emit CSV"
    )
    swp.add_argument("scenario", help="path to a scenario JSON file")
    swp.add_argument("--player", type=int, required=True, help="1-based player")
    swp.add_argument(
        "--battlefield", type=int, required=True, help="1-based battlefield"
    )
    swp.add_argument(
        "--param",
        choices=["phi", "lambda", "gamma"],
        required=True,
        help="which parameter to sweep",
    )
    swp.add_argument(
        "--from", dest="lo", type=float, required=True, help="range start (radians)"
    )
    swp.add_argument(
        "--to", dest="hi", type=float, required=True, help="range end (radians)"
    )
    swp.add_argument(
        "--steps", type=int, default=DEFAULT_SWEEP_STEPS, help="grid points"
    )
    swp.set_defaults(handler=cmd_sweep)

    ver = sub.add_parser(
        "verify", parents=[common], help="run the built-in golden checks"
    )
    ver.add_argument(
        "--exclude-own-battlefield",
        action="store_true",
        help="debug payoff variant skipping the battlefield matching the "
        "player index (expected to fail the golden payoffs)",
    )
    ver.set_defaults(handler=cmd_verify)

    orc = sub.add_parser(
        "oracle",
        parents=[common],
        help="compare quantum and classical payoffs on a zero-phase scenario",
    )
    orc.add_argument("scenario", help="path to a scenario JSON file")
    orc.set_defaults(handler=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalIntegrityError as exc:
        print(f"numerical integrity error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
