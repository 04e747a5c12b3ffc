// Viewer entry point: wires the socket, keyboard, canvas and replay bar.

import { handleKeyEvent, newKeyState } from "./keymap.js";
import type { ConfigMessage, StateMessage } from "./protocol.js";
import { fitSize, renderFrame } from "./render.js";
import {
  newControls,
  onStateFrame,
  seekTo,
  setSpeed,
  SPEED_PRESETS,
  togglePlay,
  type ReplayControls,
} from "./replay.js";
import { connect } from "./ws.js";

const canvas = document.getElementById("pitch") as HTMLCanvasElement;
const statusLine = document.getElementById("status") as HTMLElement;
const bar = document.getElementById("replay-bar") as HTMLElement;
const playButton = document.getElementById("play") as HTMLButtonElement;
const slider = document.getElementById("seek") as HTMLInputElement;
const speedSelect = document.getElementById("speed") as HTMLSelectElement;

let config: ConfigMessage | null = null;
let lastState: StateMessage | null = null;
let controls: ReplayControls | null = null;

function resize() {
  const [w, h] = fitSize(window.innerWidth - 20, window.innerHeight - 90);
  canvas.width = w;
  canvas.height = h;
  draw();
}

function draw() {
  if (!lastState) return;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  renderFrame(ctx as never, lastState, canvas.width, canvas.height);
}

const proto = location.protocol === "https:" ? "wss" : "ws";
const conn = connect(`${proto}://${location.host}/ws`, (message) => {
  if (message.t === "config") {
    config = message;
    statusLine.textContent =
      `${message.scenario} — ${message.mode}` +
      (message.human_side ? ` (you play ${message.human_side})` : "");
    if (message.mode === "replay" && message.frames) {
      controls = newControls(message.frames);
      bar.style.display = "flex";
      slider.max = String(message.frames);
    }
    return;
  }
  lastState = message;
  if (controls) {
    controls = onStateFrame(controls, message.frame);
    slider.value = String(message.frame);
  }
  draw();
});

window.addEventListener("resize", resize);

const keys = newKeyState();
window.addEventListener("keydown", (event) => {
  if (config?.mode !== "live") return;
  const message = handleKeyEvent(keys, "down", event.code);
  if (message) {
    conn.send(message);
    event.preventDefault();
  }
});
window.addEventListener("keyup", (event) => {
  if (config?.mode !== "live") return;
  const message = handleKeyEvent(keys, "up", event.code);
  if (message) {
    conn.send(message);
    event.preventDefault();
  }
});

playButton.addEventListener("click", () => {
  if (!controls) return;
  const result = togglePlay(controls);
  controls = result.controls;
  playButton.textContent = controls.playing ? "Pause" : "Play";
  conn.send(result.message);
});

slider.addEventListener("input", () => {
  if (!controls) return;
  const result = seekTo(controls, Number(slider.value));
  controls = result.controls;
  conn.send(result.message);
});

for (const preset of SPEED_PRESETS) {
  const option = document.createElement("option");
  option.value = String(preset);
  option.textContent = `${preset}x`;
  if (preset === 1) option.selected = true;
  speedSelect.appendChild(option);
}
speedSelect.addEventListener("change", () => {
  if (!controls) return;
  const result = setSpeed(controls, Number(speedSelect.value));
  controls = result.controls;
  conn.send(result.message);
});

resize();
