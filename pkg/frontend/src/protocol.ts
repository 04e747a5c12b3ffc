// Wire protocol shared with the `minipitch serve` server.

export const ACTION_NAMES = [
  "Idle",
  "Left",
  "TopLeft",
  "Top",
  "TopRight",
  "Right",
  "BottomRight",
  "Bottom",
  "BottomLeft",
  "ShortPass",
  "HighPass",
  "LongPass",
  "Shot",
  "Sliding",
  "Dribble",
  "StopDribble",
  "Sprint",
  "StopMoving",
  "StopSprint",
] as const;

export type ActionName = (typeof ACTION_NAMES)[number];

export interface ConfigMessage {
  t: "config";
  mode: "live" | "replay";
  human_side: "left" | "right" | null;
  scenario: string;
  n_left: number;
  n_right: number;
  fps: number;
  frames: number | null;
  pitch: [number, number];
}

// players: [sideIndex, x, y, activeFlag]
export interface StateMessage {
  t: "state";
  frame: number;
  players: [number, number, number, number][];
  ball: [number, number, number];
  score: [number, number];
  mode: string;
}

export interface InputMessage {
  t: "input";
  action: ActionName;
  press: boolean;
}

export interface CtlMessage {
  t: "ctl";
  cmd: "pause" | "resume" | "seek" | "speed";
  frame?: number;
  value?: number;
}

export type ServerMessage = ConfigMessage | StateMessage;
export type ClientMessage = InputMessage | CtlMessage;
