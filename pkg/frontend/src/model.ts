// Pure view-model functions: everything the DOM layer shows is derived
// here from the latest server view, never simulated client-side.

import type {
  ExplicitState,
  GadgetState,
  Mover,
  PileState,
  SessionView,
  Variant,
  WireMove,
} from "./api.js";

export function bannerText(truthStart: 0 | 1, firstMover: Mover): string {
  const humanWinnable = (truthStart === 1) === (firstMover === "human");
  return humanWinnable
    ? "You can win with perfect play."
    : "The engine wins with perfect play.";
}

export function statusText(view: SessionView): string {
  if (view.status === "human_won") return "You won.";
  if (view.status === "human_lost") return "You lost.";
  return view.to_move === "human" ? "Your move." : "Engine thinking…";
}

export function isGadgetMove(move: WireMove): move is Extract<WireMove, { family: string }> {
  return "family" in move;
}

export function isPileMove(move: WireMove): move is { pile: number; take: number } {
  return "pile" in move && "take" in move;
}

export function moveLabel(variant: Variant, move: WireMove): string {
  if (variant === "nim" || variant === "subtraction") {
    if (isPileMove(move)) return `Take ${move.take} from pile ${move.pile}`;
  } else if (variant === "gadget") {
    if (isGadgetMove(move)) {
      if (move.family === "O2") return "Remove one W and one L element";
      return move.l_take > 0
        ? `Remove pile ${move.pile} and ${move.l_take} from L`
        : `Remove pile ${move.pile} and nothing from L`;
    }
  } else if ("elements" in move) {
    return `Remove {${move.elements.join(", ")}}`;
  }
  return JSON.stringify(move);
}

export type PileChip = { pile: number; size: number };
export type GadgetPileChip = { pile: number; weight: number; present: boolean };

export type BoardModel =
  | { kind: "piles"; piles: PileChip[] }
  | {
      kind: "gadget";
      v: number;
      w: number;
      l: number;
      target: number;
      piles: GadgetPileChip[];
    }
  | { kind: "explicit"; present: string[]; absent: string[] };

export function boardModel(view: SessionView): BoardModel {
  if (view.variant === "nim" || view.variant === "subtraction") {
    const state = view.state as PileState;
    return {
      kind: "piles",
      piles: state.piles.map((size, i) => ({ pile: i + 1, size })),
    };
  }
  if (view.variant === "gadget") {
    const state = view.state as GadgetState;
    return {
      kind: "gadget",
      v: state.v,
      w: state.w,
      l: state.l,
      target: state.target,
      piles: state.weights.map((weight, i) => ({
        pile: i + 1,
        weight,
        present: state.piles_present.includes(i + 1),
      })),
    };
  }
  const state = view.state as ExplicitState;
  const present = new Set(state.position);
  return {
    kind: "explicit",
    present: state.position,
    absent: state.elements.filter((label) => !present.has(label)),
  };
}

export function describeMoveBy(view: SessionView, entry: { by: Mover; move: WireMove }): string {
  const who = entry.by === "human" ? "You" : "Engine";
  return `${who}: ${moveLabel(view.variant, entry.move)}`;
}

export function rejectionText(clause: string | null, message: string): string {
  return clause === null
    ? `Move rejected: ${message}`
    : `Move rejected (${clause}): ${message}`;
}
