// Top-down pitch rendering over a minimal 2D-context interface so tests can
// substitute a recording fake.

import type { StateMessage } from "./protocol.js";

export interface Ctx2D {
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  font: string;
  textAlign: string;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  fillText(text: string, x: number, y: number): void;
}

export const PITCH_HALF_X = 1.0;
export const PITCH_HALF_Y = 0.42;
export const ASPECT_W = 96;
export const ASPECT_H = 72;

const FIELD = "#26823a";
const LINE = "#f2f2f2";
const TEAM_COLORS = ["#ebd232", "#466eeb"];
const BALL = "#ffffff";

/** Pitch point to canvas pixel; +y on the pitch is up on the screen. */
export function worldToCanvas(
  x: number,
  y: number,
  width: number,
  height: number,
): [number, number] {
  const cx = ((x + PITCH_HALF_X) / (2 * PITCH_HALF_X)) * width;
  const cy = ((PITCH_HALF_Y - y) / (2 * PITCH_HALF_Y)) * height;
  return [cx, cy];
}

/** Largest 96:72 canvas that fits the container. */
export function fitSize(
  containerW: number,
  containerH: number,
): [number, number] {
  const scale = Math.min(containerW / ASPECT_W, containerH / ASPECT_H);
  return [Math.floor(ASPECT_W * scale), Math.floor(ASPECT_H * scale)];
}

export function renderFrame(
  ctx: Ctx2D,
  state: StateMessage,
  width: number,
  height: number,
): void {
  ctx.fillStyle = FIELD;
  ctx.fillRect(0, 0, width, height);

  ctx.strokeStyle = LINE;
  ctx.lineWidth = Math.max(1, width / 400);
  ctx.strokeRect(1, 1, width - 2, height - 2);
  ctx.beginPath();
  ctx.moveTo(width / 2, 0);
  ctx.lineTo(width / 2, height);
  ctx.stroke();
  ctx.beginPath();
  ctx.arc(width / 2, height / 2, height / 8, 0, 2 * Math.PI);
  ctx.stroke();

  const radius = Math.max(2, Math.round(Math.min(width, height) / 45));
  for (const [side, x, y, active] of state.players) {
    const [cx, cy] = worldToCanvas(x, y, width, height);
    if (active) {
      ctx.beginPath();
      ctx.strokeStyle = LINE;
      ctx.arc(cx, cy, radius + 3, 0, 2 * Math.PI);
      ctx.stroke();
    }
    ctx.beginPath();
    ctx.fillStyle = TEAM_COLORS[side] ?? TEAM_COLORS[0];
    ctx.arc(cx, cy, radius, 0, 2 * Math.PI);
    ctx.fill();
  }

  const [bx, by] = worldToCanvas(state.ball[0], state.ball[1], width, height);
  ctx.beginPath();
  ctx.fillStyle = BALL;
  ctx.arc(bx, by, Math.max(1.5, radius * 0.6), 0, 2 * Math.PI);
  ctx.fill();

  ctx.fillStyle = LINE;
  ctx.font = `${Math.max(10, Math.round(height / 20))}px monospace`;
  ctx.textAlign = "center";
  ctx.fillText(`${state.score[0]} - ${state.score[1]}`, width / 2, 16);
  ctx.fillText(state.mode, width / 2, height - 6);
  ctx.textAlign = "left";
  ctx.fillText(`frame ${state.frame}`, 6, 16);
}
