"""Built-in verification suite behind the CLI's verify command.

Runs the golden three-player example, a tie-absorption regression, the
classical-correspondence property on randomized scenarios and the
operator-order invariance check. Randomness is drawn from a fixed seed
so a verification run is reproducible.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .classical import DEFAULT_TIE_EPS, PlayerRoster, classical_payoffs
from .engine import (
    Scenario,
    evaluate,
    evolve,
    measurements,
    player_operator,
    quantum_payoffs,
    rotation_angle,
    strategies_of,
    validate_scenario,
)

VERIFY_SEED = 0xB10770

GOLDEN_PAYOFFS = (0, -1, -1)


def golden_scenario(eps: float = DEFAULT_TIE_EPS) -> Scenario:
    """The worked three-player example: budgets 6/4/3 over two battlefields."""
    return Scenario.create(
        totals=(6.0, 4.0, 3.0),
        allocations=((3.0, 3.0), (3.0, 1.0), (0.0, 3.0)),
        gamma=math.pi / 2,
        eps=eps,
    )


def golden_measurement_grid() -> tuple[tuple[float, ...], ...]:
    """Closed-form measurement grid of the worked example."""
    half_sin_sq = 0.5 * math.sin(math.pi / 12) ** 2
    return (
        (0.25, 0.25),
        (0.25, half_sin_sq),
        (0.0, 0.25),
    )


def random_classical_scenario(rng: np.random.Generator) -> Scenario:
    """Three players, 2 or 3 battlefields, zero phases, random entanglement."""
    n = int(rng.choice((2, 3)))
    blotto_total = float(rng.uniform(1.0, 10.0))
    totals = (blotto_total,) + tuple(rng.uniform(0.0, blotto_total) for _ in range(2))
    allocations = tuple(
        tuple(float(x) for x in rng.dirichlet(np.ones(n)) * total)
        for total in totals
    )
    gamma = float(rng.uniform(0.0, math.pi / 2))
    return Scenario.create(totals, allocations, gamma)


def random_quantum_scenario(rng: np.random.Generator) -> Scenario:
    """Like the classical draw, but with nonzero phases on every battlefield."""
    base = random_classical_scenario(rng)
    phases = tuple(
        tuple(float(p) for p in rng.uniform(0.0, 2.0 * math.pi, base.num_battlefields))
        for _ in range(base.num_players)
    )
    return Scenario(
        player_names=base.player_names,
        totals=base.totals,
        allocations=base.allocations,
        phases=phases,
        gamma=base.gamma,
        sign_pattern=base.sign_pattern,
        eps=base.eps,
    )


def _roster(scenario: Scenario) -> PlayerRoster:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return PlayerRoster(scenario.totals)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def run_verification(
    eps: float = DEFAULT_TIE_EPS,
    *,
    exclude_own_battlefield: bool = False,
    correspondence_trials: int = 100,
    order_trials: int = 20,
) -> list[CheckResult]:
    """Run every self-check and report one result per check."""
    results: list[CheckResult] = []
    rng = np.random.default_rng(VERIFY_SEED)

    results.append(_check_golden_measurements(eps))
    results.append(_check_golden_payoffs(eps, exclude_own_battlefield))
    results.append(_check_tie_absorption(eps, exclude_own_battlefield))
    results.append(
        _check_classical_correspondence(rng, eps, correspondence_trials)
    )
    results.append(_check_order_invariance(rng, order_trials))
    return results


def _check_golden_measurements(eps: float) -> CheckResult:
    name = "golden-measurements"
    scenario = golden_scenario(eps)
    table = evaluate(scenario)
    expected = golden_measurement_grid()
    worst = max(
        abs(table.values[j][k] - expected[j][k])
        for j in range(3)
        for k in range(2)
    )
    if worst > 1e-10:
        return CheckResult(
            name, False, f"measurement grid off by {worst:.3e} (limit 1e-10)"
        )
    return CheckResult(name, True, f"max deviation {worst:.3e}")


def _check_golden_payoffs(eps: float, exclude_own_battlefield: bool) -> CheckResult:
    name = "golden-payoffs"
    scenario = golden_scenario(eps)
    table = evaluate(scenario)
    quantum = quantum_payoffs(
        table, eps, exclude_own_battlefield=exclude_own_battlefield
    )
    classical = classical_payoffs(scenario.allocations, _roster(scenario), eps)
    if quantum != GOLDEN_PAYOFFS:
        return CheckResult(
            name, False, f"quantum payoffs {quantum}, expected {GOLDEN_PAYOFFS}"
        )
    if classical != GOLDEN_PAYOFFS:
        return CheckResult(
            name, False, f"classical payoffs {classical}, expected {GOLDEN_PAYOFFS}"
        )
    return CheckResult(name, True, f"both oracles give {GOLDEN_PAYOFFS}")


def _check_tie_absorption(eps: float, exclude_own_battlefield: bool) -> CheckResult:
    """Ties perturbed by 1e-12 troops must still land in the tie band."""
    name = "tie-absorption"
    nudge = 1e-12
    allocations = ((3.0 + nudge, 3.0 - nudge), (3.0, 1.0), (0.0, 3.0))
    totals = (sum(allocations[0]), 4.0, 3.0)
    scenario = Scenario.create(totals, allocations, math.pi / 2, eps=eps)
    table = evaluate(scenario)
    quantum = quantum_payoffs(
        table, eps, exclude_own_battlefield=exclude_own_battlefield
    )
    classical = classical_payoffs(scenario.allocations, _roster(scenario), eps)
    if quantum != GOLDEN_PAYOFFS or classical != GOLDEN_PAYOFFS:
        return CheckResult(
            name,
            False,
            f"near-tie payoffs changed: quantum {quantum}, classical "
            f"{classical}, expected {GOLDEN_PAYOFFS}",
        )
    return CheckResult(name, True, "1e-12 perturbation absorbed")


def _check_classical_correspondence(
    rng: np.random.Generator, eps: float, trials: int
) -> CheckResult:
    """Zero-phase scenarios must match the classical oracle and closed form."""
    name = "classical-correspondence"
    for trial in range(trials):
        scenario = random_classical_scenario(rng)
        table = evaluate(scenario)
        quantum = quantum_payoffs(table, eps)
        classical = classical_payoffs(scenario.allocations, _roster(scenario), eps)
        if quantum != classical:
            return CheckResult(
                name,
                False,
                f"trial {trial}: quantum {quantum} != classical {classical} "
                f"for {scenario.allocations}",
            )
        n = scenario.num_battlefields
        for j in range(scenario.num_players):
            for k in range(n):
                angle = rotation_angle(
                    scenario.allocations[j][k], scenario.blotto_total
                )
                closed = math.sin(angle) ** 2 / n
                if abs(table.values[j][k] - closed) > 1e-10:
                    return CheckResult(
                        name,
                        False,
                        f"trial {trial}: measurement {table.values[j][k]!r} "
                        f"deviates from closed form {closed!r}",
                    )
    return CheckResult(name, True, f"{trials} randomized scenarios")


def _check_order_invariance(rng: np.random.Generator, trials: int) -> CheckResult:
    """Strategy operators commute; payoffs ignore the application order."""
    name = "order-invariance"
    for trial in range(trials):
        scenario = random_quantum_scenario(rng)
        scenario, _ = validate_scenario(scenario)
        strategies = strategies_of(scenario)
        count = scenario.num_players
        operators = [
            player_operator(j, strategies[j - 1], count)
            for j in range(1, count + 1)
        ]
        for a in range(count):
            for b in range(a + 1, count):
                residue = float(
                    np.abs(
                        operators[a] @ operators[b] - operators[b] @ operators[a]
                    ).max()
                )
                if residue > 1e-10:
                    return CheckResult(
                        name,
                        False,
                        f"trial {trial}: players {a + 1},{b + 1} commutator "
                        f"residue {residue:.3e}",
                    )
        baseline = evaluate(scenario).payoffs
        for _ in range(5):
            order = [int(j) for j in rng.permutation(count) + 1]
            psi = evolve(scenario, order=order)
            table = measurements(psi, scenario.dims, scenario.eps)
            if table.payoffs != baseline:
                return CheckResult(
                    name,
                    False,
                    f"trial {trial}: order {order} gave {table.payoffs}, "
                    f"ascending gave {baseline}",
                )
    return CheckResult(name, True, f"{trials} randomized scenarios")
