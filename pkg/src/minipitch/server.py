"""Wire server for the browser viewer: live keyboard play and replay scrub.

One WebSocket endpoint at ``/ws``.  On connect the server sends a config
message, then state messages at the simulation rate (10 Hz) while running:

    {"t": "config", "mode": "live"|"replay", "human_side": ..., ...}
    {"t": "state", "frame": n, "players": [[side, x, y, active], ...],
     "ball": [x, y, z], "score": [l, r], "mode": "Normal"}

Clients send ``{"t":"input","action":"<Action name>","press":true|false}``
to queue an action for the human-controlled player (one applied per frame)
and ``{"t":"ctl","cmd":"pause"|"resume"|"seek","frame":n}`` to control
playback; seek restores the nearest cached snapshot and re-simulates
forward, and replay sessions also accept ``{"t":"ctl","cmd":"speed",
"value":0.5..4}``.  Each connection owns an independent session.
"""

from __future__ import annotations

import asyncio
import os
from collections import deque
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles

from .actions import Action
from .env import EnvOptions, create_environment
from .state import Side

SIM_FPS = 10.0

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>minipitch viewer</title></head>
<body style="font-family: monospace; background: #143d1e; color: #eee">
<h1>minipitch wire server</h1>
<p>The browser viewer assets are not built. Build them with
<code>npm install &amp;&amp; npm run build</code> in the frontend directory,
then restart with MINIPITCH_VIEWER_DIST pointing at its <code>dist/</code>.
The WebSocket endpoint is live at <code>/ws</code>.</p>
</body></html>
"""


class LiveSession:
    """Human (or idle) control of one side against the scenario's bot."""

    mode = "live"

    def __init__(self, scenario: str, human_side: str, seed: int):
        side = Side.LEFT if human_side == "left" else Side.RIGHT
        from .scenarios import load_scenario

        config = load_scenario(scenario)
        config = config.with_overrides(
            controlled_left=1 if side is Side.LEFT else 0,
            controlled_right=1 if side is Side.RIGHT else 0,
        )
        self.env = create_environment(
            config, EnvOptions(representation="raw", seed=seed)
        )
        self.env.reset()
        self.human_side = side
        self.queue: deque[Action] = deque()
        self.paused = False
        self.speed = 1.0
        self.dirty = True
        self.total_frames: Optional[int] = None

    def handle(self, message: dict) -> None:
        kind = message.get("t")
        if kind == "input":
            name = message.get("action")
            if isinstance(name, str) and name in Action.__members__:
                self.queue.append(Action[name])
        elif kind == "ctl":
            cmd = message.get("cmd")
            if cmd == "pause":
                self.paused = True
            elif cmd == "resume":
                self.paused = False

    def advance(self) -> None:
        action = self.queue.popleft() if self.queue else Action.Idle
        result = self.env.step([action])
        if result.done:
            self.env.reset()

    def state_message(self) -> dict:
        return _state_message(self.env.state)


class ReplaySession:
    """Scrubbing playback of a recorded episode."""

    mode = "replay"

    def __init__(self, path: str):
        from .replay import _env_from_replay, load_replay

        self.recording = load_replay(path)
        self.env = _env_from_replay(self.recording)
        self.env.seed(self.recording.seed)
        self.env.reset()
        self.position = 0
        self.snapshots = {0: self.env.snapshot()}
        self.paused = False
        self.speed = 1.0
        self.dirty = True
        self.human_side = None
        self.total_frames = self.recording.steps

    def handle(self, message: dict) -> None:
        if message.get("t") != "ctl":
            return
        cmd = message.get("cmd")
        if cmd == "pause":
            self.paused = True
        elif cmd == "resume":
            self.paused = False
        elif cmd == "seek":
            frame = message.get("frame", 0)
            if isinstance(frame, (int, float)):
                self.seek(int(frame))
                self.dirty = True
        elif cmd == "speed":
            value = message.get("value", 1.0)
            if isinstance(value, (int, float)):
                self.speed = min(4.0, max(0.5, float(value)))

    def _apply_one(self) -> None:
        actions = self.recording.frames[self.position]
        self.env.step(list(actions))
        self.position += 1
        if self.position % 100 == 0 and self.position not in self.snapshots:
            self.snapshots[self.position] = self.env.snapshot()

    def advance(self) -> None:
        if self.position >= self.recording.steps:
            self.paused = True
            return
        self._apply_one()

    def seek(self, target: int) -> None:
        target = max(0, min(self.recording.steps, target))
        base = max(f for f in self.snapshots if f <= target)
        self.env.restore(self.snapshots[base])
        self.position = base
        while self.position < target:
            self._apply_one()

    def state_message(self) -> dict:
        return _state_message(self.env.state)


def _state_message(state) -> dict:
    players = []
    for side in (Side.LEFT, Side.RIGHT):
        team = state.team(side)
        active = state.active_player[int(side)]
        for i in range(team.n):
            if team.sent_off[i]:
                continue
            players.append([
                int(side),
                round(float(team.pos[i, 0]), 5),
                round(float(team.pos[i, 1]), 5),
                1 if i == active else 0,
            ])
    b = state.ball
    return {
        "t": "state",
        "frame": state.frame,
        "players": players,
        "ball": [round(b.position.x, 5), round(b.position.y, 5), round(b.z, 5)],
        "score": [state.score[0], state.score[1]],
        "mode": state.mode.name,
    }


def _find_viewer_dist() -> Optional[Path]:
    env_dir = os.environ.get("MINIPITCH_VIEWER_DIST")
    candidates = [Path(env_dir)] if env_dir else []
    candidates.append(Path.cwd() / "frontend" / "dist")
    for cand in candidates:
        if cand.is_dir() and (cand / "index.html").is_file():
            return cand
    return None


def build_app(scenario: str = "11_vs_11_medium", human_side: str = "left",
              replay_path: Optional[str] = None, seed: int = 0,
              fps: float = SIM_FPS) -> FastAPI:
    app = FastAPI(title="minipitch viewer server")
    app.state.sessions = []
    app.state.tick_interval = 1.0 / fps if fps > 0 else 0.0

    def make_session():
        if replay_path is not None:
            return ReplaySession(replay_path)
        return LiveSession(scenario, human_side, seed)

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket):
        await websocket.accept()
        session = make_session()
        app.state.sessions.append(session)
        n_left = session.env.state.left.n
        n_right = session.env.state.right.n
        await websocket.send_json({
            "t": "config",
            "mode": session.mode,
            "human_side": (None if session.human_side is None
                           else session.human_side.name.lower()),
            "scenario": scenario,
            "n_left": n_left,
            "n_right": n_right,
            "fps": fps,
            "frames": session.total_frames,
            "pitch": [1.0, 0.42],
        })

        async def reader():
            while True:
                message = await websocket.receive_json()
                session.handle(message)

        reader_task = asyncio.create_task(reader())
        try:
            while True:
                if not session.paused:
                    session.advance()
                    session.dirty = True
                if session.dirty:
                    await websocket.send_json(session.state_message())
                    session.dirty = False
                await asyncio.sleep(app.state.tick_interval / session.speed)
                if reader_task.done():
                    reader_task.result()
        except (WebSocketDisconnect, RuntimeError):
            pass
        finally:
            reader_task.cancel()
            if session in app.state.sessions:
                app.state.sessions.remove(session)

    dist = _find_viewer_dist()
    if dist is not None:
        app.mount("/", StaticFiles(directory=str(dist), html=True), name="viewer")
    else:
        @app.get("/")
        async def index() -> HTMLResponse:
            return HTMLResponse(_FALLBACK_PAGE)

    return app
