import { describe, expect, it } from "vitest";

import type { SessionView } from "../src/api.js";
import {
  bannerText,
  boardModel,
  describeMoveBy,
  moveLabel,
  rejectionText,
  statusText,
} from "../src/model.js";

function nimView(overrides: Partial<SessionView> = {}): SessionView {
  return {
    id: "s1",
    variant: "nim",
    status: "in_progress",
    to_move: "human",
    first_mover: "human",
    truth_start: 1,
    state: { piles: [3, 5] },
    legal_moves: [],
    history: [],
    ...overrides,
  };
}

describe("bannerText", () => {
  it("is a pure function of truth_start and first_mover", () => {
    expect(bannerText(1, "human")).toBe("You can win with perfect play.");
    expect(bannerText(0, "human")).toBe("The engine wins with perfect play.");
    expect(bannerText(1, "engine")).toBe("The engine wins with perfect play.");
    expect(bannerText(0, "engine")).toBe("You can win with perfect play.");
  });
});

describe("statusText", () => {
  it("tracks turn and terminal states", () => {
    expect(statusText(nimView())).toBe("Your move.");
    expect(statusText(nimView({ to_move: "engine" }))).toBe("Engine thinking…");
    expect(statusText(nimView({ status: "human_won" }))).toBe("You won.");
    expect(statusText(nimView({ status: "human_lost" }))).toBe("You lost.");
  });
});

describe("moveLabel", () => {
  it("labels pile moves", () => {
    expect(moveLabel("nim", { pile: 2, take: 3 })).toBe("Take 3 from pile 2");
    expect(moveLabel("subtraction", { pile: 1, take: 1 })).toBe("Take 1 from pile 1");
  });

  it("labels gadget moves as count choices, never element picking", () => {
    expect(moveLabel("gadget", { family: "O1", pile: 2, l_take: 8 })).toBe(
      "Remove pile 2 and 8 from L",
    );
    expect(moveLabel("gadget", { family: "O1", pile: 1, l_take: 0 })).toBe(
      "Remove pile 1 and nothing from L",
    );
    expect(moveLabel("gadget", { family: "O2" })).toBe("Remove one W and one L element");
  });

  it("labels explicit moves by their elements", () => {
    expect(moveLabel("explicit", { elements: ["a", "b"] })).toBe("Remove {a, b}");
  });
});

describe("boardModel", () => {
  it("mirrors pile counts exactly", () => {
    const model = boardModel(nimView());
    expect(model).toEqual({
      kind: "piles",
      piles: [
        { pile: 1, size: 3 },
        { pile: 2, size: 5 },
      ],
    });
  });

  it("mirrors gadget counters and pile presence exactly", () => {
    const view = nimView({
      variant: "gadget",
      state: { v: 1, w: 2, l: 5, piles_present: [2], weights: [1, 2], target: 3 },
    });
    expect(boardModel(view)).toEqual({
      kind: "gadget",
      v: 1,
      w: 2,
      l: 5,
      target: 3,
      piles: [
        { pile: 1, weight: 1, present: false },
        { pile: 2, weight: 2, present: true },
      ],
    });
  });

  it("splits explicit positions into present and absent", () => {
    const view = nimView({
      variant: "explicit",
      state: { position: ["a"], elements: ["a", "b"] },
    });
    expect(boardModel(view)).toEqual({ kind: "explicit", present: ["a"], absent: ["b"] });
  });
});

describe("describeMoveBy", () => {
  it("names the mover", () => {
    const view = nimView();
    expect(describeMoveBy(view, { by: "human", move: { pile: 1, take: 2 } })).toBe(
      "You: Take 2 from pile 1",
    );
    expect(describeMoveBy(view, { by: "engine", move: { pile: 2, take: 1 } })).toBe(
      "Engine: Take 1 from pile 2",
    );
  });
});

describe("rejectionText", () => {
  it("surfaces the violated clause verbatim", () => {
    expect(rejectionText("successor-not-in-S", "band broken")).toBe(
      "Move rejected (successor-not-in-S): band broken",
    );
    expect(rejectionText(null, "nope")).toBe("Move rejected: nope");
  });
});
