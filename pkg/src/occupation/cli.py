"""Command line: solve game files, evaluate piles, run the subset-sum
reduction, play against the engine, and launch the local service.

Exit codes: 0 for a true/winning verdict, 1 for a false/losing one, 2 for
usage errors, 3 for bad data, 4 when --verify finds solver disagreement.
The first output line is always the machine-parsable verdict.
"""

from __future__ import annotations

import os
import sys
from collections.abc import Sequence

import click

from . import classic, core, formats, reduction
from .errors import GameError

CAP_ENV_VAR = "OCCUPATION_SOLVE_CAP"

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_DISAGREE = 4


def resolve_cap(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(CAP_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"{CAP_ENV_VAR} must be an integer, got {env!r}")
    return core.DEFAULT_SOLVE_CAP


def _data_error(message: str) -> "click.exceptions.Exit":
    click.echo(f"error: {message}", err=True)
    return click.exceptions.Exit(EXIT_DATA)


def _truth_exit(value: int) -> "click.exceptions.Exit":
    return click.exceptions.Exit(EXIT_TRUE if value == 1 else EXIT_FALSE)


cap_option = click.option(
    "--cap", type=int, default=None, help=f"Explicit-solve cap override (or ${CAP_ENV_VAR})."
)


@click.group()
def main() -> None:
    """Exact solving and play for occupation games."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@cap_option
def solve(file: str, cap: int | None) -> None:
    """Solve a game document and report Truth at its start position."""
    try:
        with open(file, encoding="utf-8") as fh:
            game = formats.parse_game(fh.read())
        solver = core.Solver(game, cap=resolve_cap(cap))
        value = solver.truth(game.start)
        click.echo(f"Truth={value}")
        if value == 1:
            move = solver.best_move(game.start)
            assert move is not None
            click.echo(f"winning move: {','.join(move.labels)}")
    except GameError as e:
        raise _data_error(str(e))
    raise _truth_exit(value)


def _pile_command(variant: classic.Variant, sizes: Sequence[int], verify: bool, cap: int | None) -> None:
    sizes = list(sizes)
    try:
        if variant == "nim":
            value = classic.nim_truth_closed_form(sizes)
        else:
            value = classic.subtraction_truth_closed_form(sizes)
        click.echo(f"Truth={value}")
        if verify:
            solver_value = classic.pile_truth(variant, sizes)
            embed = classic.embed_nim if variant == "nim" else classic.embed_subtraction
            game = embed(sizes, cap=resolve_cap(cap))
            explicit_value = core.truth(game, game.start, cap=resolve_cap(cap))
            if not value == solver_value == explicit_value:
                click.echo(
                    f"solver disagreement: closed-form={value} "
                    f"pile-solver={solver_value} explicit={explicit_value}",
                    err=True,
                )
                raise click.exceptions.Exit(EXIT_DISAGREE)
            click.echo("verified: closed form, pile solver, and explicit solver agree")
    except ValueError as e:
        raise _data_error(str(e))
    except GameError as e:
        raise _data_error(str(e))
    raise _truth_exit(value)


@main.command()
@click.argument("sizes", type=int, nargs=-1, required=True)
@click.option("--verify", is_flag=True, help="Cross-check all three solvers.")
@cap_option
def nim(sizes: tuple[int, ...], verify: bool, cap: int | None) -> None:
    """Truth for Nim piles via the closed form."""
    _pile_command("nim", sizes, verify, cap)


@main.command()
@click.argument("sizes", type=int, nargs=-1, required=True)
@click.option("--verify", is_flag=True, help="Cross-check all three solvers.")
@cap_option
def subtraction(sizes: tuple[int, ...], verify: bool, cap: int | None) -> None:
    """Truth for take-1-or-2 piles via the closed form."""
    _pile_command("subtraction", sizes, verify, cap)


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise click.UsageError(f"weights must be comma-separated integers, got {text!r}")


@main.command()
@click.option("--weights", required=True, help="Comma-separated positive integers.")
@click.option("--target", required=True, type=int)
@click.option("--witness", is_flag=True, help="Report a subset summing to the target.")
@click.option("--emit-game", type=click.Path(dir_okay=False), default=None,
              help="Write the explicit element-level game as JSON.")
@cap_option
def reduce(weights: str, target: int, witness: bool, emit_game: str | None, cap: int | None) -> None:
    """Decide Subset Sum by building and solving its game encoding."""
    try:
        instance = reduction.SubsetSumInstance.of(_parse_weights(weights), target)
        gadget = reduction.build_gadget(instance)
        value = reduction.gadget_truth(gadget, gadget.start())
        click.echo(f"Truth={value}")
        if witness:
            found = reduction.extract_witness(gadget)
            if found is None:
                click.echo("witness: none")
            else:
                click.echo(f"witness: {','.join(str(i) for i in sorted(found))}")
        if emit_game is not None:
            explicit = reduction.gadget_to_explicit(gadget, cap=resolve_cap(cap))
            with open(emit_game, "w", encoding="utf-8") as fh:
                fh.write(formats.serialize_game(explicit))
            click.echo(f"game written to {emit_game}")
    except GameError as e:
        raise _data_error(str(e))
    raise _truth_exit(value)


@main.command()
@click.option("--weights", required=True, help="Comma-separated positive integers.")
@click.option("--target", required=True, type=int)
def oracle(weights: str, target: int) -> None:
    """Decide Subset Sum by dynamic programming, independent of any game."""
    try:
        instance = reduction.SubsetSumInstance.of(_parse_weights(weights), target)
    except GameError as e:
        raise _data_error(str(e))
    answer = reduction.subset_sum_oracle(instance)
    click.echo("true" if answer else "false")
    raise _truth_exit(1 if answer else 0)


@main.command()
@click.argument("variant", type=click.Choice(["nim", "subtraction", "gadget"]))
@click.argument("sizes", type=int, nargs=-1)
@click.option("--weights", default=None, help="Gadget only: comma-separated weights.")
@click.option("--target", default=None, type=int, help="Gadget only: target sum.")
@click.option("--engine-first", is_flag=True, help="Let the engine move first.")
def play(variant: str, sizes: tuple[int, ...], weights: str | None,
         target: int | None, engine_first: bool) -> None:
    """Play against the optimal engine in the terminal.

    Enter the number of a listed move, or q to resign.
    """
    from .service import SessionStore

    store = SessionStore()
    try:
        if variant == "gadget":
            if weights is None or target is None:
                raise click.UsageError("gadget play needs --weights and --target")
            session = store.create(
                variant="gadget",
                weights=list(_parse_weights(weights)),
                target=target,
                first="engine" if engine_first else "human",
            )
        else:
            if not sizes:
                raise click.UsageError(f"{variant} play needs pile sizes")
            session = store.create(
                variant=variant,
                piles=list(sizes),
                first="engine" if engine_first else "human",
            )
    except GameError as e:
        raise _data_error(str(e))

    view = store.view(session.id)
    click.echo(f"Truth={view['truth_start']}")
    winnable = (view["truth_start"] == 1) == (view["first_mover"] == "human")
    click.echo("you can win with perfect play" if winnable else "the engine wins with perfect play")
    while True:
        view = store.view(session.id)
        click.echo(_render_state(view))
        if view["status"] != "in_progress":
            click.echo("you won" if view["status"] == "human_won" else "you lost")
            break
        moves = view["legal_moves"]
        for i, move in enumerate(moves, start=1):
            click.echo(f"  {i}. {_render_move(view['variant'], move)}")
        raw = click.prompt("your move", default="", show_default=False).strip()
        if raw.lower() in ("q", "quit"):
            click.echo("resigned")
            break
        try:
            choice = int(raw)
            if not 1 <= choice <= len(moves):
                raise ValueError
        except ValueError:
            click.echo("enter the number of a listed move, or q")
            continue
        result = store.submit(session.id, moves[choice - 1])
        reply = result.get("engine_reply")
        if reply is not None:
            click.echo(f"engine: {_render_move(view['variant'], reply)}")


def _render_state(view: dict) -> str:
    state = view["state"]
    if view["variant"] in ("nim", "subtraction"):
        piles = " ".join(
            f"[{i}: {'*' * size if 0 < size <= 12 else size}]"
            for i, size in enumerate(state["piles"], 1)
        )
        return f"piles: {piles or '(empty)'}"
    if view["variant"] == "gadget":
        piles = ",".join(str(p) for p in state["piles_present"]) or "none"
        return f"V={state['v']} W={state['w']} L={state['l']} piles present: {piles}"
    return f"position: {','.join(state['position']) or '(empty)'}"


def _render_move(variant: str, move: dict) -> str:
    if variant in ("nim", "subtraction"):
        return f"take {move['take']} from pile {move['pile']}"
    if variant == "gadget":
        if move["family"] == "O2":
            return "remove one W and one L element"
        if move["l_take"]:
            return f"remove pile {move['pile']} with {move['l_take']} L elements"
        return f"remove pile {move['pile']} with no L elements"
    return f"remove {{{','.join(move['elements'])}}}"


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port: int, host: str) -> None:
    """Run the local play service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
