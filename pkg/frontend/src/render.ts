// DOM layer. Boards and move buttons are rebuilt from the latest server
// view on every exchange; the move buttons are exactly the server's
// legal-move list and submit the identical move objects back.

import type { SessionView, WireMove } from "./api.js";
import { bannerText, boardModel, describeMoveBy, moveLabel, statusText } from "./model.js";

export function renderBanner(el: HTMLElement, view: SessionView): void {
  el.textContent = bannerText(view.truth_start, view.first_mover);
}

export function renderStatus(el: HTMLElement, view: SessionView): void {
  el.textContent = statusText(view);
  el.dataset.status = view.status;
}

export function renderBoard(el: HTMLElement, view: SessionView): void {
  el.replaceChildren();
  const model = boardModel(view);
  if (model.kind === "piles") {
    for (const { pile, size } of model.piles) {
      const row = document.createElement("div");
      row.className = "pile";
      const label = document.createElement("span");
      label.className = "pile-label";
      label.textContent = `pile ${pile}`;
      const stones = document.createElement("span");
      stones.className = "stones";
      stones.textContent = size <= 16 ? "●".repeat(size) : `${size} elements`;
      stones.dataset.count = String(size);
      row.append(label, stones);
      el.appendChild(row);
    }
    return;
  }
  if (model.kind === "gadget") {
    const counters = document.createElement("div");
    counters.className = "counters";
    for (const [name, value] of [["V", model.v], ["W", model.w], ["L", model.l]] as const) {
      const counter = document.createElement("span");
      counter.className = "counter";
      counter.dataset.region = name;
      counter.textContent = `${name}: ${value}`;
      counters.appendChild(counter);
    }
    el.appendChild(counters);
    const piles = document.createElement("div");
    piles.className = "gadget-piles";
    for (const chip of model.piles) {
      const span = document.createElement("span");
      span.className = chip.present ? "ypile" : "ypile taken";
      span.textContent = `Y${chip.pile} (${chip.weight})`;
      piles.appendChild(span);
    }
    el.appendChild(piles);
    const target = document.createElement("div");
    target.className = "target";
    target.textContent = `target: ${model.target}`;
    el.appendChild(target);
    return;
  }
  const present = document.createElement("div");
  present.className = "explicit-present";
  present.textContent = model.present.length
    ? `present: ${model.present.join(", ")}`
    : "position is empty";
  el.appendChild(present);
}

export function renderMoves(
  el: HTMLElement,
  view: SessionView,
  busy: boolean,
  onPick: (move: WireMove) => void,
): void {
  el.replaceChildren();
  if (view.status !== "in_progress" || view.to_move !== "human") {
    return;
  }
  for (const move of view.legal_moves) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "move";
    button.textContent = moveLabel(view.variant, move);
    button.disabled = busy;
    button.addEventListener("click", () => onPick(move));
    el.appendChild(button);
  }
}

export function renderHistory(el: HTMLElement, view: SessionView): void {
  el.replaceChildren();
  for (const entry of view.history) {
    const li = document.createElement("li");
    li.textContent = describeMoveBy(view, entry);
    el.appendChild(li);
  }
}

export function renderError(el: HTMLElement, text: string | null): void {
  el.textContent = text ?? "";
  el.hidden = text === null;
}

export function flashEngineReply(el: HTMLElement, view: SessionView): void {
  const reply = view.engine_reply;
  if (!reply) return;
  const note = document.createElement("div");
  note.className = "engine-reply";
  note.textContent = `Engine: ${moveLabel(view.variant, reply)}`;
  el.appendChild(note);
  setTimeout(() => note.classList.add("fade"), 50);
}
