"""JSON game documents.

A document carries the element labels, the state family, the explicit move
list, and the start position.  Only explicit move families serialize;
structured games are rebuilt from their parameters instead.
"""

from __future__ import annotations

import json
from typing import Any

from .core import (
    AllSubsets,
    BandStates,
    ExplicitMoves,
    ExplicitStates,
    GroundSet,
    OccupationGame,
    PositionSet,
    StateFamily,
    validate_game,
    _mask_sort_key,
)
from .errors import GameFileError


def parse_game(text: str) -> OccupationGame:
    """Parse and fully validate a game document.

    Raises GameFileError with a location for syntax problems, or naming the
    violated invariant for semantic ones.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFileError(
            f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    return game_from_document(doc)


def game_from_document(doc: Any) -> OccupationGame:
    if not isinstance(doc, dict):
        raise GameFileError("document must be a JSON object")
    for key in ("elements", "states", "moves", "start"):
        if key not in doc:
            raise GameFileError(f"missing required field {key!r}")

    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise GameFileError("elements must be a list of strings")
    if len(set(elements)) != len(elements):
        raise GameFileError("elements contains duplicate labels")
    ground = GroundSet.of(elements)

    states = _states_from(doc["states"], ground)
    moves = _moves_from(doc["moves"], ground)
    start = PositionSet(ground, _mask_from(doc["start"], ground, "start"))

    game = OccupationGame(ground=ground, states=states, moves=moves, start=start)
    violations = validate_game(game, cap=len(ground))
    if violations:
        raise GameFileError(
            "; ".join(f"{v.code}: {v.message}" for v in violations)
        )
    return game


def _mask_from(value: Any, ground: GroundSet, where: str) -> int:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise GameFileError(f"{where} must be a list of element labels")
    mask = 0
    for label in value:
        try:
            mask |= 1 << ground.index(label)
        except ValueError:
            raise GameFileError(f"unknown label {label!r} in {where}") from None
    return mask


def _states_from(spec: Any, ground: GroundSet) -> StateFamily:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise GameFileError("states must be an object with a kind")
    kind = spec["kind"]
    if kind == "all":
        return AllSubsets()
    if kind == "explicit":
        sets = spec.get("sets")
        if not isinstance(sets, list):
            raise GameFileError("explicit states need a sets list")
        masks = [_mask_from(s, ground, "states.sets") for s in sets]
        return ExplicitStates(tuple(sorted(set(masks), key=_mask_sort_key)))
    if kind == "band":
        return BandStates(
            w_mask=_mask_from(spec.get("w_region", None), ground, "states.w_region"),
            v_mask=_mask_from(spec.get("v_region", None), ground, "states.v_region"),
        )
    raise GameFileError(f"unknown state kind {kind!r}")


def _moves_from(spec: Any, ground: GroundSet) -> ExplicitMoves:
    if not isinstance(spec, dict) or spec.get("kind") != "explicit":
        raise GameFileError("moves must be an object with kind 'explicit'")
    sets = spec.get("sets")
    if not isinstance(sets, list):
        raise GameFileError("explicit moves need a sets list")
    masks = []
    for i, s in enumerate(sets):
        mask = _mask_from(s, ground, f"moves.sets[{i}]")
        if mask == 0:
            raise GameFileError(f"empty move set at moves.sets[{i}]")
        masks.append(mask)
    return ExplicitMoves(tuple(sorted(set(masks), key=_mask_sort_key)))


def game_to_document(game: OccupationGame) -> dict[str, Any]:
    if not isinstance(game.moves, ExplicitMoves):
        raise GameFileError("only explicit move families serialize")
    ground = game.ground

    def labels(mask: int) -> list[str]:
        return list(ground.labels_of(mask))

    states: dict[str, Any]
    if isinstance(game.states, AllSubsets):
        states = {"kind": "all"}
    elif isinstance(game.states, ExplicitStates):
        states = {
            "kind": "explicit",
            "sets": [labels(m) for m in sorted(set(game.states.masks), key=_mask_sort_key)],
        }
    else:
        states = {
            "kind": "band",
            "w_region": labels(game.states.w_mask),
            "v_region": labels(game.states.v_mask),
        }

    return {
        "elements": list(ground.labels),
        "states": states,
        "moves": {
            "kind": "explicit",
            "sets": [labels(m) for m in sorted(set(game.moves.masks), key=_mask_sort_key)],
        },
        "start": labels(game.start.mask),
    }


def serialize_game(game: OccupationGame) -> str:
    return json.dumps(game_to_document(game), indent=2) + "\n"


def semantically_equal(a: OccupationGame, b: OccupationGame) -> bool:
    """Same elements, state family, move family, and start; region tags and
    list orderings are presentation only."""
    return game_to_document(a) == game_to_document(b)
