"""State-to-observation transforms: compact float vector, binary occupancy
planes, rendered pixels, raw view, and frame stacking.

Every transform takes a viewpoint side and mirrors coordinates so that the
viewing team always attacks toward +x; the mirror map is the point reflection
(x, y) -> (-x, -y), its own inverse.  Layouts here are wire contracts: the
float vector is 115 float64 values in the documented block order, planes are
4x72x96 uint8 row-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import constants as C
from .state import GameState, N_GAME_MODES, Side, Vec2

FLOAT_VECTOR_LENGTH = 115
GRID_ROWS = 72
GRID_COLS = 96

# float vector block offsets (inclusive starts)
_OWN_POS = 0        # 22: (x, y) x 11
_OWN_VEL = 22       # 22
_OPP_POS = 44       # 22
_OPP_VEL = 66       # 22
_BALL_POS = 88      # 3: x, y, z
_BALL_VEL = 91      # 3
_OWNERSHIP = 94     # 3 one-hot: none, own, opponent
_ACTIVE = 97        # 11 one-hot
_MODE = 108         # 7 one-hot

_ABSENT = (-1.0, -0.42)  # encoding slot for sent-off or absent players


def mirror_point(x: float, y: float) -> tuple[float, float]:
    """Viewpoint mirror; applying it twice returns the original point."""
    return (-x, -y)


@dataclass(frozen=True)
class RawView:
    """Raw-representation observation: the live state plus the viewing side.

    Zero-copy by design; clone the state before retaining it across steps.
    """

    state: GameState
    side: Side


def _team_blocks(state: GameState, side: Side, sign: float):
    team = state.team(side)
    pos = np.full((11, 2), _ABSENT, dtype=np.float64)
    vel = np.zeros((11, 2), dtype=np.float64)
    for i in range(team.n):
        if team.sent_off[i]:
            continue
        pos[i, 0] = sign * team.pos[i, 0]
        pos[i, 1] = sign * team.pos[i, 1]
        vel[i, 0] = sign * team.vel[i, 0]
        vel[i, 1] = sign * team.vel[i, 1]
    return pos.ravel(), vel.ravel()


def to_float115(state: GameState, viewpoint: Side) -> np.ndarray:
    """115-float encoding of the state from one side's viewpoint.

    Blocks: own positions, own velocities, opponent positions, opponent
    velocities (11 slots each, absent/sent-off players at (-1,-0.42) with
    zero velocity), ball position (x,y,z) and velocity, ownership one-hot
    (none/own/opponent), own active-player one-hot, game-mode one-hot.
    Positions are copied exactly, never quantized.
    """
    sign = 1.0 if viewpoint is Side.LEFT else -1.0
    out = np.zeros(FLOAT_VECTOR_LENGTH, dtype=np.float64)

    own_pos, own_vel = _team_blocks(state, viewpoint, sign)
    opp_pos, opp_vel = _team_blocks(state, viewpoint.other, sign)
    out[_OWN_POS:_OWN_POS + 22] = own_pos
    out[_OWN_VEL:_OWN_VEL + 22] = own_vel
    out[_OPP_POS:_OPP_POS + 22] = opp_pos
    out[_OPP_VEL:_OPP_VEL + 22] = opp_vel

    b = state.ball
    out[_BALL_POS] = sign * b.position.x
    out[_BALL_POS + 1] = sign * b.position.y
    out[_BALL_POS + 2] = b.z
    out[_BALL_VEL] = sign * b.velocity[0]
    out[_BALL_VEL + 1] = sign * b.velocity[1]
    out[_BALL_VEL + 2] = b.velocity[2]

    if b.owned_by is None:
        out[_OWNERSHIP] = 1.0
    elif b.owned_by[0] == viewpoint:
        out[_OWNERSHIP + 1] = 1.0
    else:
        out[_OWNERSHIP + 2] = 1.0

    out[_ACTIVE + state.active_player[int(viewpoint)]] = 1.0
    out[_MODE + int(state.mode)] = 1.0
    return out


def world_to_grid(p) -> tuple[int, int]:
    """(row, col) occupancy cell for a pitch point; out-of-pitch clamps.

    col = round((x+1)/2 * 95), row = round((y+0.42)/0.84 * 71), rounding
    half away from zero.
    """
    x, y = p
    x = max(-C.PITCH_HALF_X, min(C.PITCH_HALF_X, x))
    y = max(-C.PITCH_HALF_Y, min(C.PITCH_HALF_Y, y))
    col = int(math.floor((x + 1.0) / 2.0 * (GRID_COLS - 1) + 0.5))
    row = int(math.floor((y + C.PITCH_HALF_Y) / (2 * C.PITCH_HALF_Y)
                         * (GRID_ROWS - 1) + 0.5))
    return (min(GRID_ROWS - 1, max(0, row)), min(GRID_COLS - 1, max(0, col)))


def to_smm(state: GameState, viewpoint: Side) -> np.ndarray:
    """Four binary 72x96 occupancy planes: own team, opponents, ball, active.

    Marks are single cells via world_to_grid; two players in one cell still
    produce a 1 (binary encoding).  Sent-off players are omitted.
    """
    sign = 1.0 if viewpoint is Side.LEFT else -1.0
    planes = np.zeros((4, GRID_ROWS, GRID_COLS), dtype=np.uint8)
    for plane, side in ((0, viewpoint), (1, viewpoint.other)):
        team = state.team(side)
        for i in range(team.n):
            if team.sent_off[i]:
                continue
            r, c = world_to_grid((sign * team.pos[i, 0], sign * team.pos[i, 1]))
            planes[plane, r, c] = 1
    b = state.ball
    r, c = world_to_grid((sign * b.position.x, sign * b.position.y))
    planes[2, r, c] = 1
    own = state.team(viewpoint)
    active = state.active_player[int(viewpoint)]
    if not own.sent_off[active]:
        r, c = world_to_grid((sign * own.pos[active, 0], sign * own.pos[active, 1]))
        planes[3, r, c] = 1
    return planes


@dataclass(frozen=True)
class PixelFrame:
    """RGB frame, row-major; bytes are width*height*3 exactly."""

    width: int
    height: int
    array: np.ndarray  # (height, width, 3) uint8

    def tobytes(self) -> bytes:
        return self.array.tobytes()


_FIELD = (38, 130, 55)
_LINE = (255, 255, 255)
_LEFT_COLOR = (235, 210, 50)
_RIGHT_COLOR = (70, 110, 235)
_BALL_COLOR = (255, 255, 255)
_STRIP = (20, 20, 20)

# 3x5 digit bitmaps for the score strip
_DIGITS = {
    "0": ("111", "101", "101", "101", "111"),
    "1": ("010", "110", "010", "010", "111"),
    "2": ("111", "001", "111", "100", "111"),
    "3": ("111", "001", "111", "001", "111"),
    "4": ("101", "101", "111", "001", "001"),
    "5": ("111", "100", "111", "001", "111"),
    "6": ("111", "100", "111", "101", "111"),
    "7": ("111", "001", "010", "010", "010"),
    "8": ("111", "101", "111", "101", "111"),
    "9": ("111", "101", "111", "001", "111"),
    "-": ("000", "000", "111", "000", "000"),
}


def _disc(img: np.ndarray, cx: int, cy: int, radius: int, color, ring=False):
    h, w = img.shape[:2]
    x0, x1 = max(0, cx - radius), min(w, cx + radius + 1)
    y0, y1 = max(0, cy - radius), min(h, cy + radius + 1)
    if x0 >= x1 or y0 >= y1:
        return
    yy, xx = np.mgrid[y0:y1, x0:x1]
    d2 = (xx - cx) ** 2 + (yy - cy) ** 2
    if ring:
        mask = (d2 <= radius * radius) & (d2 >= (radius - 1) * (radius - 1))
    else:
        mask = d2 <= radius * radius
    img[y0:y1, x0:x1][mask] = color


def _draw_digit(img, ch, x, y, scale, color):
    bitmap = _DIGITS.get(ch)
    if bitmap is None:
        return
    for ry, rowbits in enumerate(bitmap):
        for rx, bit in enumerate(rowbits):
            if bit == "1":
                img[y + ry * scale:y + (ry + 1) * scale,
                    x + rx * scale:x + (rx + 1) * scale] = color


def to_pixels(state: GameState, width: int, height: int) -> PixelFrame:
    """Deterministic top-down rasterization with a score strip.

    Green field with white boundary/halfway lines, team-colored player
    discs, white ball disc, a ring on each side's active player, and the
    score digits in a dark strip across the top.  Identical states render
    identical bytes.
    """
    if width < 16 or height < 16:
        raise ValueError("render size must be at least 16x16")
    img = np.empty((height, width, 3), dtype=np.uint8)
    img[:] = _FIELD

    def to_px(x, y):
        cx = int(round((x + C.PITCH_HALF_X) / (2 * C.PITCH_HALF_X) * (width - 1)))
        cy = int(round((C.PITCH_HALF_Y - y) / (2 * C.PITCH_HALF_Y) * (height - 1)))
        return cx, cy

    # boundary and halfway lines
    img[0, :] = _LINE
    img[-1, :] = _LINE
    img[:, 0] = _LINE
    img[:, -1] = _LINE
    img[:, width // 2] = _LINE

    radius = max(1, round(min(width, height) / 40))
    for side, color in ((Side.LEFT, _LEFT_COLOR), (Side.RIGHT, _RIGHT_COLOR)):
        team = state.team(side)
        for i in range(team.n):
            if team.sent_off[i]:
                continue
            cx, cy = to_px(float(team.pos[i, 0]), float(team.pos[i, 1]))
            _disc(img, cx, cy, radius, color)
        active = state.active_player[int(side)]
        if not team.sent_off[active]:
            cx, cy = to_px(float(team.pos[active, 0]), float(team.pos[active, 1]))
            _disc(img, cx, cy, radius + 2, _LINE, ring=True)

    bx, by = to_px(state.ball.position.x, state.ball.position.y)
    _disc(img, bx, by, max(1, radius - 1), _BALL_COLOR)

    # score strip
    scale = max(1, height // 72)
    strip_h = 5 * scale + 2
    img[0:strip_h, :] = _STRIP
    text = f"{state.score[0]}-{state.score[1]}"
    x = 2
    for ch in text:
        _draw_digit(img, ch, x, 1, scale, _LINE)
        x += 4 * scale
    return PixelFrame(width=width, height=height, array=img)


def stack_obs(history: Sequence, k: int):
    """Last k frames oldest-first; short histories repeat the first frame."""
    if k < 1:
        raise ValueError("stacking depth must be >= 1")
    if not history:
        raise ValueError("history must hold at least one frame")
    frames = list(history[-k:])
    while len(frames) < k:
        frames.insert(0, history[0])
    return tuple(frames)
