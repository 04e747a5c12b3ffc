// Keyboard-to-action state machine.
//
// Arrows combine into the 8 movement actions and are sticky on the server;
// releasing the last arrow sends StopMoving. Shift sprints while held
// (StopSprint on release), KeyC dribbles while held (StopDribble on
// release). Kick keys fire once per press:
//   KeyA ShortPass, KeyW HighPass, KeyD LongPass, KeyS Shot, KeyX Sliding.

import type { ActionName, InputMessage } from "./protocol.js";

export interface KeyState {
  held: Set<string>;
}

export function newKeyState(): KeyState {
  return { held: new Set() };
}

const ARROWS = new Set(["ArrowLeft", "ArrowRight", "ArrowUp", "ArrowDown"]);

const KICK_KEYS: Record<string, ActionName> = {
  KeyA: "ShortPass",
  KeyW: "HighPass",
  KeyD: "LongPass",
  KeyS: "Shot",
  KeyX: "Sliding",
};

const DIRECTION_BY_DELTA: Record<string, ActionName> = {
  "-1,0": "Left",
  "-1,1": "TopLeft",
  "0,1": "Top",
  "1,1": "TopRight",
  "1,0": "Right",
  "1,-1": "BottomRight",
  "0,-1": "Bottom",
  "-1,-1": "BottomLeft",
};

function combinedDirection(held: Set<string>): ActionName | null {
  const dx =
    (held.has("ArrowRight") ? 1 : 0) - (held.has("ArrowLeft") ? 1 : 0);
  const dy = (held.has("ArrowUp") ? 1 : 0) - (held.has("ArrowDown") ? 1 : 0);
  return DIRECTION_BY_DELTA[`${dx},${dy}`] ?? null;
}

function message(action: ActionName, press: boolean): InputMessage {
  return { t: "input", action, press };
}

/** Translate one keyboard transition into an input message (or nothing). */
export function handleKeyEvent(
  state: KeyState,
  type: "down" | "up",
  code: string,
): InputMessage | null {
  const held = state.held;
  if (type === "down") {
    if (held.has(code)) return null; // key auto-repeat
    held.add(code);
    if (ARROWS.has(code)) {
      const dir = combinedDirection(held);
      return dir ? message(dir, true) : null; // opposing arrows cancel out
    }
    if (code === "ShiftLeft" || code === "ShiftRight") {
      return message("Sprint", true);
    }
    if (code === "KeyC") {
      return message("Dribble", true);
    }
    const kick = KICK_KEYS[code];
    return kick ? message(kick, true) : null;
  }

  if (!held.has(code)) return null;
  held.delete(code);
  if (ARROWS.has(code)) {
    const anyArrow = [...ARROWS].some((a) => held.has(a));
    if (!anyArrow) return message("StopMoving", false);
    const dir = combinedDirection(held);
    return dir ? message(dir, false) : null;
  }
  if (code === "ShiftLeft" || code === "ShiftRight") {
    return message("StopSprint", false);
  }
  if (code === "KeyC") {
    return message("StopDribble", false);
  }
  return null; // kick keys and unmapped keys have no release action
}
