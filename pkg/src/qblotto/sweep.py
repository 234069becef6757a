"""Parameter sweeps and grid searches over quantum resources.

Payoffs are integer-valued step functions of the swept parameter, so a
sweep records exact payoff vectors on a grid and, where two neighboring
grid points disagree, localizes the transition by bisection. A small
exhaustive grid search over one player's phases finds their best
reachable payoff with allocations held fixed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .engine import (
    EntanglerConfig,
    MeasurementTable,
    QuantumStrategy,
    Scenario,
    evaluate_strategies,
    strategies_of,
    validate_scenario,
)
from .errors import ValidationError

HALF_PI = math.pi / 2

SWEEP_PARAMETERS = ("phi", "lambda", "gamma")

# Bisection width for payoff-transition boundaries, in radians.
TRANSITION_RESOLUTION = 1e-6

# Cap on exhaustive phase grids: 64 steps on up to 4 battlefields.
MAX_GRID_POINTS = 64**4

DEFAULT_SWEEP_STEPS = 101


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep over phi, lambda or gamma.

    ``target_player`` and ``target_battlefield`` are 1-based and select
    whose parameter moves (both are ignored for gamma, which is global,
    but still validated). The grid has ``steps`` evenly spaced points on
    [lo, hi].
    """

    base: Scenario
    target_player: int
    target_battlefield: int
    parameter: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "steps", int(self.steps))
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValidationError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"choose one of {SWEEP_PARAMETERS}"
            )
        if self.steps < 2:
            raise ValidationError(f"need at least 2 steps, got {self.steps}")
        if self.lo > self.hi:
            raise ValidationError(
                f"sweep range is reversed: {self.lo!r} > {self.hi!r}"
            )
        if not 1 <= self.target_player <= self.base.num_players:
            raise ValidationError(
                f"target player {self.target_player} outside "
                f"1..{self.base.num_players}"
            )
        if not 1 <= self.target_battlefield <= self.base.num_battlefields:
            raise ValidationError(
                f"target battlefield {self.target_battlefield} outside "
                f"1..{self.base.num_battlefields}"
            )
        if self.parameter == "lambda" and not (
            0.0 <= self.lo and self.hi <= HALF_PI + 1e-12
        ):
            raise ValidationError(
                "rotation-angle sweeps must stay inside [0, pi/2]"
            )
        if self.parameter == "gamma" and not (
            0.0 <= self.lo and self.hi <= HALF_PI + 1e-12
        ):
            raise ValidationError(
                "entanglement sweeps must stay inside [0, pi/2]"
            )

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    payoffs: tuple[int, ...]
    values: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class PayoffTransition:
    """Bisection-localized boundary between two payoff vectors."""

    boundary: float
    below: tuple[int, ...]
    above: tuple[int, ...]


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    points: tuple[SweepPoint, ...]
    transitions: tuple[PayoffTransition, ...]


def _evaluator(spec: SweepSpec) -> Callable[[float], MeasurementTable]:
    """Closure evaluating the base scenario with one parameter replaced."""
    base, _ = validate_scenario(spec.base)
    strategies = strategies_of(base)
    player = spec.target_player
    battlefield = spec.target_battlefield
    eps = base.eps

    if spec.parameter == "gamma":

        def evaluate_at(value: float) -> MeasurementTable:
            config = EntanglerConfig(value, base.sign_pattern)
            return evaluate_strategies(strategies, config, eps)

    else:
        modify = (
            QuantumStrategy.with_phase
            if spec.parameter == "phi"
            else QuantumStrategy.with_angle
        )
        config = base.entangler_config

        def evaluate_at(value: float) -> MeasurementTable:
            moved = list(strategies)
            moved[player - 1] = modify(moved[player - 1], battlefield, value)
            return evaluate_strategies(moved, config, eps)

    return evaluate_at


def run_sweep(
    spec: SweepSpec,
    *,
    jobs: int = 1,
    locate_transitions: bool = True,
    resolution: float = TRANSITION_RESOLUTION,
) -> SweepResult:
    """Evaluate the sweep grid and localize payoff transitions.

    The result is a pure function of ``spec``: grid points are reported
    in grid order regardless of ``jobs``, and repeat runs are
    bit-identical.
    """
    if jobs < 1:
        raise ValidationError(f"jobs must be >= 1, got {jobs}")
    evaluate_at = _evaluator(spec)
    values = [float(v) for v in spec.grid()]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            tables = list(pool.map(evaluate_at, values))
    else:
        tables = [evaluate_at(v) for v in values]

    points = tuple(
        SweepPoint(value=v, payoffs=t.payoffs, values=t.values)
        for v, t in zip(values, tables)
    )

    transitions: list[PayoffTransition] = []
    if locate_transitions:
        for left, right in zip(points, points[1:]):
            if left.payoffs != right.payoffs:
                transitions.append(
                    _bisect_transition(
                        evaluate_at, left.value, right.value, left.payoffs, resolution
                    )
                )
    return SweepResult(spec=spec, points=points, transitions=tuple(transitions))


def _bisect_transition(
    evaluate_at: Callable[[float], MeasurementTable],
    lo: float,
    hi: float,
    lo_payoffs: tuple[int, ...],
    resolution: float,
) -> PayoffTransition:
    """Narrow the first payoff change in (lo, hi] to ``resolution`` width."""
    hi_payoffs = evaluate_at(hi).payoffs
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        mid_payoffs = evaluate_at(mid).payoffs
        if mid_payoffs == lo_payoffs:
            lo = mid
        else:
            hi = mid
            hi_payoffs = mid_payoffs
    return PayoffTransition(
        boundary=0.5 * (lo + hi), below=lo_payoffs, above=hi_payoffs
    )


@dataclass(frozen=True)
class PhaseInsensitivityReport:
    """Payoffs across interior phase samples versus the zero-phase point.

    ``interior_uniform`` says whether every sampled interior phase gave
    the same payoff vector; ``differs_at_zero`` whether that common
    vector jumps when the phase is set exactly to zero.
    """

    samples: tuple[tuple[float, tuple[int, ...]], ...]
    interior_uniform: bool
    zero_payoffs: tuple[int, ...]
    differs_at_zero: bool


def check_phase_insensitivity(
    base: Scenario,
    player: int,
    battlefield: int,
    samples: Sequence[float],
) -> PhaseInsensitivityReport:
    """Probe payoff dependence on one phase strictly inside (0, pi/2)."""
    if not samples:
        raise ValidationError("need at least one sample phase")
    for value in samples:
        if not 0.0 < float(value) < HALF_PI:
            raise ValidationError(
                f"sample phase {value!r} must lie strictly inside (0, pi/2)"
            )
    spec = SweepSpec(
        base=base,
        target_player=player,
        target_battlefield=battlefield,
        parameter="phi",
        lo=0.0,
        hi=HALF_PI,
        steps=2,
    )
    evaluate_at = _evaluator(spec)

    sampled = tuple(
        (float(v), evaluate_at(float(v)).payoffs) for v in samples
    )
    first = sampled[0][1]
    interior_uniform = all(payoffs == first for _, payoffs in sampled)
    zero_payoffs = evaluate_at(0.0).payoffs
    differs = interior_uniform and zero_payoffs != first
    return PhaseInsensitivityReport(
        samples=sampled,
        interior_uniform=interior_uniform,
        zero_payoffs=zero_payoffs,
        differs_at_zero=differs,
    )


@dataclass(frozen=True)
class BestResponse:
    player: int
    payoff: int
    phases: tuple[float, ...]


def best_response_grid(
    base: Scenario, player: int, phi_grid_steps: int
) -> BestResponse:
    """Exhaustive search over one player's phases on [0, pi/2]^n.

    Allocations stay fixed; every combination of ``phi_grid_steps``
    evenly spaced phases per battlefield is evaluated. Returns the best
    payoff for ``player`` and the lexicographically smallest grid point
    achieving it.
    """
    if phi_grid_steps < 2:
        raise ValidationError(f"need at least 2 grid steps, got {phi_grid_steps}")
    scenario, _ = validate_scenario(base)
    if not 1 <= player <= scenario.num_players:
        raise ValidationError(
            f"player index {player} outside 1..{scenario.num_players}"
        )
    n = scenario.num_battlefields
    total_points = phi_grid_steps**n
    if total_points > MAX_GRID_POINTS:
        raise ValidationError(
            f"phase grid has {total_points} points, over the cap "
            f"{MAX_GRID_POINTS}; lower the step count or battlefield count"
        )

    strategies = list(strategies_of(scenario))
    config = scenario.entangler_config
    axis = [float(v) for v in np.linspace(0.0, HALF_PI, phi_grid_steps)]

    best_payoff: int | None = None
    best_phases: tuple[float, ...] = ()
    counters = [0] * n
    while True:
        phases = tuple(axis[c] for c in counters)
        moved = list(strategies)
        moved[player - 1] = QuantumStrategy(moved[player - 1].angles, phases)
        table = evaluate_strategies(moved, config, scenario.eps)
        payoff = table.payoffs[player - 1]
        if best_payoff is None or payoff > best_payoff:
            best_payoff = payoff
            best_phases = phases
        # lexicographic increment, most significant axis first
        slot = n - 1
        while slot >= 0:
            counters[slot] += 1
            if counters[slot] < phi_grid_steps:
                break
            counters[slot] = 0
            slot -= 1
        if slot < 0:
            break
    assert best_payoff is not None
    return BestResponse(player=player, payoff=best_payoff, phases=best_phases)
