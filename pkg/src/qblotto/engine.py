"""Quantum multiplayer Colonel Blotto engine.

The composite space holds one soldier qubit per player plus an
n-dimensional battlefield register prepared in a uniform superposition.
A player's troop commitment on battlefield k becomes a rotation angle of
their qubit, applied conditionally on the register; an optional phase
per battlefield is the purely quantum part of the strategy. An
entangling operator is applied before the strategy operators and undone
after them. Measurement contracts the final density matrix, reduced to
one player's qubit and the register, against the "qubit in state 1 on
battlefield k" projector, and payoffs compare those measured strengths
across players with a signed tie-tolerant rule.

All operations are pure functions of their inputs; evaluating the same
scenario twice produces bit-identical results.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import tensor
from .classical import DEFAULT_TIE_EPS, PlayerRoster, sgn_eps, validate_allocation
from .errors import DimensionError, NumericalIntegrityError, ValidationError
from .tensor import ComplexMatrix, StateVector, TensorDims

HALF_PI = math.pi / 2
TWO_PI = 2.0 * math.pi

# Tolerances for runtime operator self-checks.
UNITARITY_EPS = 1e-10
COMMUTATION_EPS = 1e-10

_ANGLE_SLACK = 1e-12


def rotation_angle(soldiers: float, blotto_total: float) -> float:
    """Map a troop commitment to a qubit rotation angle in [0, pi/2].

    The angle is ``(pi/2) * soldiers / blotto_total``: committing
    Blotto's entire budget rotates the qubit all the way from state 0 to
    state 1. No player can commit more than Blotto's budget to a single
    battlefield, so values outside the domain are rejected.
    """
    soldiers = float(soldiers)
    blotto_total = float(blotto_total)
    if blotto_total <= 0:
        raise ValidationError(
            f"Blotto's budget must be positive, got {blotto_total!r}"
        )
    if soldiers < 0:
        raise ValidationError(f"troop commitment is negative: {soldiers!r}")
    if soldiers > blotto_total:
        raise ValidationError(
            f"troop commitment {soldiers!r} exceeds Blotto's budget "
            f"{blotto_total!r}; no valid allocation can reach this"
        )
    return HALF_PI * soldiers / blotto_total


def strategy_gate(angle: float, phase: float = 0.0) -> ComplexMatrix:
    """Single-qubit strategy gate.

    ::

        [[exp(i*phase)*cos(angle), -sin(angle)              ],
         [sin(angle),               exp(-i*phase)*cos(angle)]]

    At ``phase = 0`` this is the plain rotation taking state 0 toward
    state 1 by ``angle``; a nonzero phase is the quantum resource.
    """
    c = math.cos(angle)
    s = math.sin(angle)
    ph = complex(math.cos(phase), math.sin(phase))
    return np.array([[ph * c, -s], [s, ph.conjugate() * c]], dtype=complex)


@dataclass(frozen=True)
class QuantumStrategy:
    """One player's move: a rotation angle and a phase per battlefield."""

    angles: tuple[float, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        phases = tuple(float(p) for p in self.phases)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "phases", phases)
        if not angles:
            raise ValidationError("strategy needs at least one battlefield")
        if len(phases) != len(angles):
            raise DimensionError(len(angles), len(phases), "strategy phases")
        for k, a in enumerate(angles, start=1):
            if not -_ANGLE_SLACK <= a <= HALF_PI + _ANGLE_SLACK:
                raise ValidationError(
                    f"battlefield {k} rotation angle {a!r} outside [0, pi/2]"
                )

    @classmethod
    def from_allocation(
        cls,
        troops: Sequence[float],
        blotto_total: float,
        phases: Sequence[float] | None = None,
    ) -> "QuantumStrategy":
        """Derive the rotation angles of an allocation vector."""
        angles = tuple(rotation_angle(x, blotto_total) for x in troops)
        if phases is None:
            phases = (0.0,) * len(angles)
        return cls(angles=angles, phases=tuple(float(p) for p in phases))

    @property
    def num_battlefields(self) -> int:
        return len(self.angles)

    def with_angle(self, battlefield: int, value: float) -> "QuantumStrategy":
        """Copy with the 1-based battlefield's rotation angle replaced."""
        angles = list(self.angles)
        angles[_battlefield_slot(battlefield, len(angles))] = float(value)
        return QuantumStrategy(tuple(angles), self.phases)

    def with_phase(self, battlefield: int, value: float) -> "QuantumStrategy":
        """Copy with the 1-based battlefield's phase replaced."""
        phases = list(self.phases)
        phases[_battlefield_slot(battlefield, len(phases))] = float(value)
        return QuantumStrategy(self.angles, tuple(phases))


def _battlefield_slot(battlefield: int, n: int) -> int:
    if not 1 <= battlefield <= n:
        raise ValidationError(
            f"battlefield index {battlefield} outside 1..{n}"
        )
    return battlefield - 1


@dataclass(frozen=True)
class EntanglerConfig:
    """Entanglement strength and the generator's battlefield sign pattern."""

    gamma: float
    sign_pattern: tuple[int, ...]

    def __post_init__(self):
        gamma = float(self.gamma)
        pattern = tuple(int(s) for s in self.sign_pattern)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "sign_pattern", pattern)
        if not -_ANGLE_SLACK <= gamma <= HALF_PI + _ANGLE_SLACK:
            raise ValidationError(
                f"entanglement parameter {gamma!r} outside [0, pi/2]"
            )
        if not pattern:
            raise ValidationError("sign pattern needs at least one entry")
        if any(s not in (-1, 1) for s in pattern):
            raise ValidationError(
                f"sign pattern entries must be +1 or -1, got {pattern}"
            )

    @staticmethod
    def default_pattern(num_battlefields: int) -> tuple[int, ...]:
        """Deterministic default: all +1 with the last battlefield flipped."""
        if num_battlefields < 1:
            raise ValidationError("a game needs at least one battlefield")
        return (1,) * (num_battlefields - 1) + (-1,)


@dataclass(frozen=True)
class MeasurementTable:
    """Measured strengths per player and battlefield, with payoffs.

    ``values[j][k]`` is player j+1's strength on battlefield k+1, a
    probability-like number in [0, 1]. ``rival_best`` holds, for each
    cell, the best strength among the other players on that battlefield,
    and ``payoffs`` the resulting signed scores in [-n, n].
    """

    values: tuple[tuple[float, ...], ...]
    rival_best: tuple[tuple[float, ...], ...]
    payoffs: tuple[int, ...]

    @property
    def num_players(self) -> int:
        return len(self.values)

    @property
    def num_battlefields(self) -> int:
        return len(self.values[0])


@dataclass(frozen=True)
class Scenario:
    """Complete description of one game.

    Player 1 is Blotto and must hold the largest budget. ``allocations``
    and ``phases`` are player-major grids of shape N x n; ``eps`` is the
    absolute tie tolerance used for payoffs and budget sums.
    """

    player_names: tuple[str, ...]
    totals: tuple[float, ...]
    allocations: tuple[tuple[float, ...], ...]
    phases: tuple[tuple[float, ...], ...]
    gamma: float
    sign_pattern: tuple[int, ...]
    eps: float = DEFAULT_TIE_EPS

    def __post_init__(self):
        names = tuple(str(s) for s in self.player_names)
        totals = tuple(float(t) for t in self.totals)
        allocations = tuple(tuple(float(x) for x in row) for row in self.allocations)
        phases = tuple(tuple(float(p) for p in row) for row in self.phases)
        pattern = tuple(int(s) for s in self.sign_pattern)
        object.__setattr__(self, "player_names", names)
        object.__setattr__(self, "totals", totals)
        object.__setattr__(self, "allocations", allocations)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "sign_pattern", pattern)
        object.__setattr__(self, "eps", float(self.eps))

        count = len(totals)
        if count == 0:
            raise ValidationError("scenario has no players")
        if len(names) != count:
            raise DimensionError(count, len(names), "player names")
        if len(allocations) != count:
            raise DimensionError(count, len(allocations), "allocation rows")
        if len(phases) != count:
            raise DimensionError(count, len(phases), "phase rows")
        n = len(allocations[0])
        if n < 1:
            raise ValidationError("scenario has no battlefields")
        for j, row in enumerate(allocations, start=1):
            if len(row) != n:
                raise DimensionError(n, len(row), f"player {j} allocations")
        for j, row in enumerate(phases, start=1):
            if len(row) != n:
                raise DimensionError(n, len(row), f"player {j} phases")
        if len(pattern) != n:
            raise DimensionError(n, len(pattern), "sign pattern")
        if self.eps < 0:
            raise ValidationError(f"tie tolerance must be non-negative, got {self.eps!r}")

    @classmethod
    def create(
        cls,
        totals: Sequence[float],
        allocations: Sequence[Sequence[float]],
        gamma: float,
        *,
        phases: Sequence[Sequence[float]] | None = None,
        sign_pattern: Sequence[int] | None = None,
        names: Sequence[str] | None = None,
        eps: float = DEFAULT_TIE_EPS,
    ) -> "Scenario":
        """Build a scenario, filling in the standard defaults.

        Phases default to all zero (the classical game), the sign
        pattern to :meth:`EntanglerConfig.default_pattern`, and names to
        "Blotto", "enemy 1", "enemy 2", ...
        """
        rows = [tuple(float(x) for x in row) for row in allocations]
        if not rows or not rows[0]:
            raise ValidationError("allocations must be a non-empty N x n grid")
        n = len(rows[0])
        if phases is None:
            phases = [(0.0,) * n for _ in rows]
        if sign_pattern is None:
            sign_pattern = EntanglerConfig.default_pattern(n)
        if names is None:
            names = ["Blotto"] + [f"enemy {j}" for j in range(1, len(rows))]
        return cls(
            player_names=tuple(names),
            totals=tuple(float(t) for t in totals),
            allocations=tuple(rows),
            phases=tuple(tuple(float(p) for p in row) for row in phases),
            gamma=gamma,
            sign_pattern=tuple(sign_pattern),
            eps=eps,
        )

    @property
    def num_players(self) -> int:
        return len(self.totals)

    @property
    def num_battlefields(self) -> int:
        return len(self.allocations[0])

    @property
    def blotto_total(self) -> float:
        return self.totals[0]

    @property
    def dims(self) -> TensorDims:
        return TensorDims.for_game(self.num_players, self.num_battlefields)

    @property
    def entangler_config(self) -> EntanglerConfig:
        return EntanglerConfig(self.gamma, self.sign_pattern)


def validate_scenario(scenario: Scenario) -> tuple[Scenario, list[str]]:
    """Validate a scenario and normalize its phases.

    Returns the normalized scenario plus human-readable notices (phase
    reductions, two-player acceptance, uniform sign pattern). Hard
    violations raise :class:`ValidationError`.
    """
    notices: list[str] = []
    count = scenario.num_players
    if count < 2:
        raise ValidationError(
            f"need at least two players, got {count}"
        )
    if count == 2:
        notices.append(
            "two-player game accepted; the game is usually played with "
            "three or more players"
        )

    # Triggers the composite-dimension guardrail before anything costly.
    scenario.dims

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        PlayerRoster(scenario.totals)  # enforces the Blotto-has-most rule

    for j, row in enumerate(scenario.allocations):
        violation = validate_allocation(row, scenario.totals[j], scenario.eps)
        if violation is not None:
            raise ValidationError(
                f"player {j + 1} ({scenario.player_names[j]}): {violation.message}"
            )

    # EntanglerConfig checks gamma's domain and the pattern values.
    scenario.entangler_config
    pattern = scenario.sign_pattern
    if len(set(pattern)) == 1 and len(pattern) > 1:
        notices.append(
            f"uniform sign pattern {pattern} accepted as an explicit "
            f"override; the default flips the last battlefield's sign"
        )

    normalized = []
    changed = False
    for j, row in enumerate(scenario.phases, start=1):
        out_row = []
        for k, p in enumerate(row, start=1):
            if 0.0 <= p < TWO_PI:
                out_row.append(p)
            else:
                q = p % TWO_PI
                notices.append(
                    f"phase for player {j}, battlefield {k} reduced "
                    f"from {p!r} to {q!r} (period 2*pi)"
                )
                out_row.append(q)
                changed = True
        normalized.append(tuple(out_row))

    if changed:
        scenario = replace(scenario, phases=tuple(normalized))
    return scenario, notices


def strategies_of(scenario: Scenario) -> tuple[QuantumStrategy, ...]:
    """Per-player strategies derived from the scenario's allocations."""
    return tuple(
        QuantumStrategy.from_allocation(
            scenario.allocations[j], scenario.blotto_total, scenario.phases[j]
        )
        for j in range(scenario.num_players)
    )


def battlefield_projector(battlefield: int, num_battlefields: int) -> ComplexMatrix:
    """Projector onto the 1-based battlefield basis state of the register."""
    slot = _battlefield_slot(battlefield, num_battlefields)
    proj = np.zeros((num_battlefields, num_battlefields), dtype=complex)
    proj[slot, slot] = 1.0
    return proj


_COMMITTED = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)  # |1><1|
_FLIP = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def initial_state(num_players: int, num_battlefields: int) -> StateVector:
    """All qubits in state 0, battlefield register uniformly superposed."""
    dims = TensorDims.for_game(num_players, num_battlefields)
    qubits = np.zeros(2**num_players, dtype=complex)
    qubits[0] = 1.0
    register = np.full(num_battlefields, 1.0 / math.sqrt(num_battlefields), complex)
    psi = np.kron(qubits, register)
    assert psi.shape == (dims.dim,)
    return psi


def player_operator(
    player: int, strategy: QuantumStrategy, num_players: int
) -> ComplexMatrix:
    """Full-space strategy operator of the 1-based ``player``.

    Sum over battlefields of the player's gate on their own qubit,
    identities on everyone else's, tensored with the battlefield
    projector; block-diagonal in the register basis and unitary.
    """
    if not 1 <= player <= num_players:
        raise ValidationError(f"player index {player} outside 1..{num_players}")
    n = strategy.num_battlefields
    dims = TensorDims.for_game(num_players, n)
    op = np.zeros((dims.dim, dims.dim), dtype=complex)
    identity = np.eye(2, dtype=complex)
    for k in range(1, n + 1):
        factors: list[ComplexMatrix] = [identity] * num_players
        factors[player - 1] = strategy_gate(
            strategy.angles[k - 1], strategy.phases[k - 1]
        )
        factors.append(battlefield_projector(k, n))
        op += tensor.kron_all(factors)
    return op


def entangler_generator(
    num_players: int, sign_pattern: Sequence[int]
) -> ComplexMatrix:
    """Generator of the entangling operator.

    A scaled tensor product of one antisymmetric flip block per player
    with a diagonal battlefield block of ``sign * i`` entries. It
    squares to plus the identity for an odd player count and minus the
    identity for an even one, which decides whether an entangler can be
    built from it.
    """
    pattern = tuple(int(s) for s in sign_pattern)
    if not pattern:
        raise ValidationError("sign pattern needs at least one entry")
    if any(s not in (-1, 1) for s in pattern):
        raise ValidationError(
            f"sign pattern entries must be +1 or -1, got {pattern}"
        )
    if num_players < 1:
        raise ValidationError("a game needs at least one player")
    register_block = np.diag([1j * s for s in pattern]).astype(complex)
    generator = tensor.kron_all([_FLIP] * num_players + [register_block])
    return ((-1.0) ** num_players) * generator


def generator_square_scalar(generator: ComplexMatrix) -> complex:
    """Scalar s with ``generator @ generator == s * I`` (diagnostic)."""
    generator = tensor.as_matrix(generator)
    square = generator @ generator
    return complex(square[0, 0])


def entangler(
    gamma: float,
    generator: ComplexMatrix,
    dims: TensorDims | None = None,
) -> ComplexMatrix:
    """Entangling operator ``cos(gamma/2) I + i sin(gamma/2) generator``.

    The closed form is only unitary when the generator squares to the
    identity, which holds for an odd number of players; an even count
    is rejected with a diagnostic. When ``dims`` is given, the result is
    additionally checked to commute with a pseudo-randomly sampled
    classical (phase-free) strategy operator, which every valid
    entangler must do.
    """
    generator = tensor.as_matrix(generator)
    dim = generator.shape[0]
    if generator.shape != (dim, dim):
        raise DimensionError((dim, dim), generator.shape, "entangler generator")
    half = float(gamma) / 2.0
    out = math.cos(half) * np.eye(dim, dtype=complex) + (
        1j * math.sin(half)
    ) * generator

    deviation = float(np.abs(tensor.dagger(out) @ out - np.eye(dim)).max())
    if deviation > UNITARITY_EPS:
        square = generator_square_scalar(generator)
        hint = ""
        if abs(square + 1.0) < 1e-6:
            hint = (
                "; the generator squares to -I, which happens for an even "
                "number of players: use an odd player count or gamma = 0"
            )
        raise NumericalIntegrityError(
            f"entangler is not unitary (max deviation {deviation:.3e}){hint}"
        )

    if dims is not None:
        if dims.dim != dim:
            raise DimensionError(dims.dim, dim, "entangler dims")
        _check_classical_commutation(out, dims)
    return out


def _check_classical_commutation(op: ComplexMatrix, dims: TensorDims) -> None:
    """Verify ``op`` commutes with a sampled phase-free strategy operator."""
    num_players = len(dims) - 1
    n = dims.factors[-1]
    if num_players < 1:
        return
    rng = np.random.default_rng(0x51B10)  # fixed seed keeps runs bit-identical
    player = int(rng.integers(1, num_players + 1))
    angles = rng.uniform(0.0, HALF_PI, size=n)
    probe = player_operator(
        player,
        QuantumStrategy(tuple(angles), (0.0,) * n),
        num_players,
    )
    residue = float(np.abs(op @ probe - probe @ op).max())
    if residue > COMMUTATION_EPS:
        raise NumericalIntegrityError(
            f"entangler fails to commute with a classical strategy operator "
            f"(max residue {residue:.3e})"
        )


def evolve_strategies(
    strategies: Sequence[QuantumStrategy],
    config: EntanglerConfig,
    order: Sequence[int] | None = None,
) -> StateVector:
    """Run the protocol for explicit strategies and an entangler config.

    The entangler is applied, every player's strategy operator in
    ``order`` (1-based; ascending by default), then the entangler's
    inverse. Strategy operators commute pairwise, so the order cannot
    change the outcome; the parameter exists to make that checkable.
    """
    count = len(strategies)
    if count < 2:
        raise ValidationError(f"need at least two players, got {count}")
    n = strategies[0].num_battlefields
    for j, strategy in enumerate(strategies, start=1):
        if strategy.num_battlefields != n:
            raise DimensionError(
                n, strategy.num_battlefields, f"player {j} battlefield count"
            )
    if len(config.sign_pattern) != n:
        raise DimensionError(n, len(config.sign_pattern), "sign pattern")

    order = _check_order(order, count)
    dims = TensorDims.for_game(count, n)

    generator = entangler_generator(count, config.sign_pattern)
    entangle = entangler(config.gamma, generator, dims)

    psi = initial_state(count, n)
    psi = entangle @ psi
    for player in order:
        psi = player_operator(player, strategies[player - 1], count) @ psi
    psi = tensor.dagger(entangle) @ psi
    tensor.assert_unit_norm(psi)
    return psi


def _check_order(order: Sequence[int] | None, count: int) -> list[int]:
    if order is None:
        return list(range(1, count + 1))
    order = [int(j) for j in order]
    if sorted(order) != list(range(1, count + 1)):
        raise ValidationError(
            f"order must be a permutation of 1..{count}, got {order}"
        )
    return order


def evolve(scenario: Scenario, order: Sequence[int] | None = None) -> StateVector:
    """Final normalized state of a validated scenario."""
    scenario, _ = validate_scenario(scenario)
    return evolve_strategies(
        strategies_of(scenario), scenario.entangler_config, order
    )


def measurements(
    psi: StateVector, dims: TensorDims, eps: float = DEFAULT_TIE_EPS
) -> MeasurementTable:
    """Contract a final state into per-player battlefield strengths.

    Builds the density matrix, reduces it for each player to that
    player's qubit plus the battlefield register (qubit factor first),
    and measures the committed-qubit projector on each battlefield.
    Values with imaginary residue or outside [0, 1] beyond tolerance
    raise :class:`NumericalIntegrityError`.
    """
    num_players = len(dims) - 1
    if num_players < 2:
        raise ValidationError(
            f"need at least two players, got {num_players}"
        )
    n = dims.factors[-1]
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (dims.dim,):
        raise DimensionError((dims.dim,), psi.shape, "state vector")

    rho = tensor.density_matrix(psi)
    projectors = [
        tensor.kron(_COMMITTED, battlefield_projector(k, n))
        for k in range(1, n + 1)
    ]

    grid = np.empty((num_players, n))
    for j in range(1, num_players + 1):
        reduced = tensor.partial_trace(rho, dims, keep={j, num_players + 1})
        for k in range(1, n + 1):
            value = tensor.expectation(projectors[k - 1], reduced)
            if value < -UNITARITY_EPS or value > 1.0 + UNITARITY_EPS:
                raise NumericalIntegrityError(
                    f"measurement for player {j}, battlefield {k} outside "
                    f"[0, 1]: {value!r}"
                )
            grid[j - 1, k - 1] = value

    rival_best = np.empty_like(grid)
    for j in range(num_players):
        others = np.delete(grid, j, axis=0)
        rival_best[j] = others.max(axis=0)

    values = tuple(tuple(float(v) for v in row) for row in grid)
    best = tuple(tuple(float(v) for v in row) for row in rival_best)
    payoffs = _payoffs_from_grids(values, best, eps, exclude_own_battlefield=False)
    return MeasurementTable(values=values, rival_best=best, payoffs=payoffs)


def _payoffs_from_grids(
    values: tuple[tuple[float, ...], ...],
    rival_best: tuple[tuple[float, ...], ...],
    eps: float,
    exclude_own_battlefield: bool,
) -> tuple[int, ...]:
    payoffs = []
    for j, row in enumerate(values, start=1):
        score = 0
        for k in range(1, len(row) + 1):
            if exclude_own_battlefield and k == j:
                continue
            score += sgn_eps(row[k - 1] - rival_best[j - 1][k - 1], eps)
        payoffs.append(score)
    return tuple(payoffs)


def quantum_payoffs(
    table: MeasurementTable,
    eps: float = DEFAULT_TIE_EPS,
    *,
    exclude_own_battlefield: bool = False,
) -> tuple[int, ...]:
    """Signed payoffs from a measurement table.

    Each battlefield contributes the tie-tolerant sign of (own strength
    minus best rival strength), summed over all battlefields.
    ``exclude_own_battlefield`` is a debug variant that skips the
    battlefield whose index equals the player's; it exists only to show
    that reading the payoff sum that way contradicts the worked
    three-player example, and is never used in normal evaluation.
    """
    return _payoffs_from_grids(
        table.values, table.rival_best, eps, exclude_own_battlefield
    )


def evaluate(
    scenario: Scenario, order: Sequence[int] | None = None
) -> MeasurementTable:
    """Validate, evolve and measure a scenario in one call."""
    scenario, _ = validate_scenario(scenario)
    psi = evolve_strategies(strategies_of(scenario), scenario.entangler_config, order)
    return measurements(psi, scenario.dims, scenario.eps)


def evaluate_strategies(
    strategies: Sequence[QuantumStrategy],
    config: EntanglerConfig,
    eps: float = DEFAULT_TIE_EPS,
    order: Sequence[int] | None = None,
) -> MeasurementTable:
    """Evolve and measure explicit strategies (sweep entry point)."""
    psi = evolve_strategies(strategies, config, order)
    n = strategies[0].num_battlefields
    dims = TensorDims.for_game(len(strategies), n)
    return measurements(psi, dims, eps)
