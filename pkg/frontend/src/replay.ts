// Replay playback controls: pause/resume, clamped seeking, speed presets.

import type { CtlMessage } from "./protocol.js";

export const SPEED_PRESETS = [0.5, 1, 2, 4] as const;

export interface ReplayControls {
  playing: boolean;
  speed: number;
  totalFrames: number;
  current: number;
}

export function newControls(totalFrames: number): ReplayControls {
  return { playing: true, speed: 1, totalFrames, current: 0 };
}

export function togglePlay(c: ReplayControls): {
  controls: ReplayControls;
  message: CtlMessage;
} {
  const playing = !c.playing;
  return {
    controls: { ...c, playing },
    message: { t: "ctl", cmd: playing ? "resume" : "pause" },
  };
}

export function seekTo(
  c: ReplayControls,
  frame: number,
): { controls: ReplayControls; message: CtlMessage } {
  const clamped = Math.max(0, Math.min(c.totalFrames, Math.round(frame)));
  return {
    controls: { ...c, current: clamped },
    message: { t: "ctl", cmd: "seek", frame: clamped },
  };
}

export function setSpeed(
  c: ReplayControls,
  value: number,
): { controls: ReplayControls; message: CtlMessage } {
  const clamped = Math.max(0.5, Math.min(4, value));
  return {
    controls: { ...c, speed: clamped },
    message: { t: "ctl", cmd: "speed", value: clamped },
  };
}

export function onStateFrame(c: ReplayControls, frame: number): ReplayControls {
  return { ...c, current: frame };
}
