"""Scenario file loading, validation and canonical serialization.

Scenario files are UTF-8 JSON documents with strict key checking, so a
typo like "phases_" fails loudly instead of silently running a different
experiment. Angles are radians unless the caller asks for degree
conversion on ingestion.

Schema::

    {
      "players": [{"name": "Blotto", "total": 6}, ...],
      "battlefields": 2,
      "allocations": [[3, 3], [3, 1], [0, 3]],
      "phases": [[0, 0], [0, 0], [0, 0]],      # optional, default all 0
      "gamma": 1.5707963267948966,
      "sign_pattern": [1, -1],                 # optional, default last flipped
      "eps": 1e-9                              # optional
    }
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .engine import EntanglerConfig, Scenario, validate_scenario
from .classical import DEFAULT_TIE_EPS
from .errors import ValidationError

TOP_KEYS = {
    "players",
    "battlefields",
    "allocations",
    "phases",
    "gamma",
    "sign_pattern",
    "eps",
}
REQUIRED_KEYS = {"players", "battlefields", "allocations", "gamma"}
PLAYER_KEYS = {"name", "total"}


def _require_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _require_grid(
    value: Any, num_players: int, num_battlefields: int, where: str
) -> list[list[float]]:
    if not isinstance(value, list) or len(value) != num_players:
        raise ValidationError(
            f"{where}: expected {num_players} rows (one per player)"
        )
    grid = []
    for j, row in enumerate(value, start=1):
        if not isinstance(row, list) or len(row) != num_battlefields:
            raise ValidationError(
                f"{where}: player {j} row must list {num_battlefields} "
                f"battlefield values"
            )
        grid.append([_require_number(x, f"{where}[player {j}]") for x in row])
    return grid


def scenario_from_dict(doc: Any, *, degrees: bool = False) -> Scenario:
    """Build a Scenario from a parsed JSON document, strictly."""
    if not isinstance(doc, dict):
        raise ValidationError("scenario document must be a JSON object")
    unknown = set(doc) - TOP_KEYS
    if unknown:
        raise ValidationError(
            f"unknown scenario keys: {sorted(unknown)}; allowed keys are "
            f"{sorted(TOP_KEYS)}"
        )
    missing = REQUIRED_KEYS - set(doc)
    if missing:
        raise ValidationError(f"missing required scenario keys: {sorted(missing)}")

    players = doc["players"]
    if not isinstance(players, list) or not players:
        raise ValidationError("players: expected a non-empty list of objects")
    names: list[str] = []
    totals: list[float] = []
    for j, entry in enumerate(players, start=1):
        if not isinstance(entry, dict):
            raise ValidationError(f"players[{j}]: expected an object")
        unknown = set(entry) - PLAYER_KEYS
        if unknown:
            raise ValidationError(
                f"players[{j}]: unknown keys {sorted(unknown)}; allowed keys "
                f"are {sorted(PLAYER_KEYS)}"
            )
        if "name" not in entry or "total" not in entry:
            raise ValidationError(f"players[{j}]: needs 'name' and 'total'")
        if not isinstance(entry["name"], str):
            raise ValidationError(f"players[{j}].name: expected a string")
        names.append(entry["name"])
        totals.append(_require_number(entry["total"], f"players[{j}].total"))

    battlefields = doc["battlefields"]
    if isinstance(battlefields, bool) or not isinstance(battlefields, int):
        raise ValidationError("battlefields: expected an integer count")
    if battlefields < 1:
        raise ValidationError(f"battlefields: must be >= 1, got {battlefields}")

    allocations = _require_grid(
        doc["allocations"], len(players), battlefields, "allocations"
    )
    if "phases" in doc:
        phases = _require_grid(doc["phases"], len(players), battlefields, "phases")
    else:
        phases = [[0.0] * battlefields for _ in players]

    gamma = _require_number(doc["gamma"], "gamma")

    if "sign_pattern" in doc:
        raw = doc["sign_pattern"]
        if not isinstance(raw, list) or len(raw) != battlefields:
            raise ValidationError(
                f"sign_pattern: expected {battlefields} entries of +1 or -1"
            )
        sign_pattern = []
        for k, s in enumerate(raw, start=1):
            value = _require_number(s, f"sign_pattern[{k}]")
            if value not in (-1.0, 1.0):
                raise ValidationError(
                    f"sign_pattern[{k}]: entries must be +1 or -1, got {s!r}"
                )
            sign_pattern.append(int(value))
    else:
        sign_pattern = list(EntanglerConfig.default_pattern(battlefields))

    eps = DEFAULT_TIE_EPS
    if "eps" in doc:
        eps = _require_number(doc["eps"], "eps")

    if degrees:
        gamma = math.radians(gamma)
        phases = [[math.radians(p) for p in row] for row in phases]

    return Scenario(
        player_names=tuple(names),
        totals=tuple(totals),
        allocations=tuple(tuple(row) for row in allocations),
        phases=tuple(tuple(row) for row in phases),
        gamma=gamma,
        sign_pattern=tuple(sign_pattern),
        eps=eps,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    """Canonical JSON-ready form; inverse of :func:`scenario_from_dict`."""
    return {
        "players": [
            {"name": name, "total": total}
            for name, total in zip(scenario.player_names, scenario.totals)
        ],
        "battlefields": scenario.num_battlefields,
        "allocations": [list(row) for row in scenario.allocations],
        "phases": [list(row) for row in scenario.phases],
        "gamma": scenario.gamma,
        "sign_pattern": list(scenario.sign_pattern),
        "eps": scenario.eps,
    }


def load_scenario(
    path: str | Path, *, degrees: bool = False
) -> tuple[Scenario, list[str]]:
    """Load, schema-check and validate a scenario file.

    Returns the normalized scenario and the validation notices. JSON
    syntax errors surface as :class:`ValidationError` with the line and
    column of the parse failure.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from exc
    scenario = scenario_from_dict(doc, degrees=degrees)
    return validate_scenario(scenario)


def dump_scenario(scenario: Scenario, path: str | Path) -> None:
    """Write the canonical serialization (round-trips to an equal Scenario)."""
    path = Path(path)
    text = json.dumps(scenario_to_dict(scenario), indent=2)
    path.write_text(text + "\n", encoding="utf-8")
