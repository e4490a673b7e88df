import { ApiError, Client, type CreateSessionRequest, type SessionView, type WireMove } from "./api.js";
import { rejectionText } from "./model.js";
import {
  flashEngineReply,
  renderBanner,
  renderBoard,
  renderError,
  renderHistory,
  renderMoves,
  renderStatus,
} from "./render.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

const setup = el<HTMLFormElement>("setup");
const variantInput = el<HTMLSelectElement>("variant");
const pilesInput = el<HTMLInputElement>("piles");
const weightsInput = el<HTMLInputElement>("weights");
const targetInput = el<HTMLInputElement>("target");
const firstInput = el<HTMLSelectElement>("first");
const serverInput = el<HTMLInputElement>("server");
const bannerEl = el<HTMLElement>("banner");
const statusEl = el<HTMLElement>("status");
const boardEl = el<HTMLElement>("board");
const movesEl = el<HTMLElement>("moves");
const historyEl = el<HTMLOListElement>("history");
const errorEl = el<HTMLElement>("error");

let view: SessionView | null = null;
let busy = false;

function client(): Client {
  return new Client(serverInput.value || "http://127.0.0.1:8000");
}

function parseNumbers(text: string): number[] {
  return text
    .split(/[\s,]+/)
    .filter((part) => part.length > 0)
    .map((part) => Number(part));
}

function syncParameterVisibility(): void {
  const variant = variantInput.value;
  el<HTMLElement>("piles-field").hidden = variant === "gadget";
  el<HTMLElement>("weights-field").hidden = variant !== "gadget";
  el<HTMLElement>("target-field").hidden = variant !== "gadget";
}

function redraw(): void {
  if (!view) return;
  renderBanner(bannerEl, view);
  renderStatus(statusEl, view);
  renderBoard(boardEl, view);
  renderMoves(movesEl, view, busy, submit);
  renderHistory(historyEl, view);
}

async function startGame(event: Event): Promise<void> {
  event.preventDefault();
  if (busy) return;
  busy = true;
  renderError(errorEl, null);
  try {
    const request: CreateSessionRequest = {
      variant: variantInput.value as CreateSessionRequest["variant"],
      first: firstInput.value as CreateSessionRequest["first"],
    };
    if (request.variant === "gadget") {
      request.weights = parseNumbers(weightsInput.value);
      request.target = Number(targetInput.value);
    } else {
      request.piles = parseNumbers(pilesInput.value);
    }
    view = await client().createSession(request);
  } catch (err) {
    renderError(errorEl, errorText(err));
  } finally {
    busy = false;
    redraw();
  }
}

async function submit(move: WireMove): Promise<void> {
  if (!view || busy) return;
  busy = true;
  redraw(); // controls disabled while the request is in flight
  renderError(errorEl, null);
  try {
    const next = await client().submitMove(view.id, move);
    view = next;
    flashEngineReply(statusEl, next);
  } catch (err) {
    renderError(errorEl, errorText(err));
    if (err instanceof ApiError && err.status === 404) {
      view = null;
    }
  } finally {
    busy = false;
    redraw();
  }
}

function errorText(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status === 422 ? rejectionText(err.clause, err.message) : err.message;
  }
  return err instanceof Error ? `service unreachable: ${err.message}` : String(err);
}

setup.addEventListener("submit", startGame);
variantInput.addEventListener("change", syncParameterVisibility);
syncParameterVisibility();
