"""The 19-action control alphabet and its sticky semantics.

Movement (8 directions), Sprint and Dribble are sticky: once issued they
persist on the player until the matching explicit stop action (StopMoving,
StopSprint, StopDribble).  Kicks and Sliding are one-shot and leave sticky
flags untouched.
"""

from __future__ import annotations

import math
from enum import IntEnum


class Action(IntEnum):
    Idle = 0
    Left = 1
    TopLeft = 2
    Top = 3
    TopRight = 4
    Right = 5
    BottomRight = 6
    Bottom = 7
    BottomLeft = 8
    ShortPass = 9
    HighPass = 10
    LongPass = 11
    Shot = 12
    Sliding = 13
    Dribble = 14
    StopDribble = 15
    Sprint = 16
    StopMoving = 17
    StopSprint = 18


N_ACTIONS = 19

DIRECTION_ACTIONS = (
    Action.Left,
    Action.TopLeft,
    Action.Top,
    Action.TopRight,
    Action.Right,
    Action.BottomRight,
    Action.Bottom,
    Action.BottomLeft,
)

KICK_ACTIONS = (Action.ShortPass, Action.HighPass, Action.LongPass, Action.Shot)

_D = math.sqrt(0.5)

# Unit vectors indexed by direction slot 0..7 (Left .. BottomLeft); Top is +y.
DIRECTION_VECTORS = (
    (-1.0, 0.0),   # Left
    (-_D, _D),     # TopLeft
    (0.0, 1.0),    # Top
    (_D, _D),      # TopRight
    (1.0, 0.0),    # Right
    (_D, -_D),     # BottomRight
    (0.0, -1.0),   # Bottom
    (-_D, -_D),    # BottomLeft
)


def direction_slot(action: Action) -> int:
    """Direction index 0..7 for a movement action, -1 otherwise."""
    if Action.Left <= action <= Action.BottomLeft:
        return int(action) - 1
    return -1


def quantize_heading(dx: float, dy: float) -> Action:
    """Nearest of the 8 movement actions for a desired heading.

    Ties resolve by the first-listed direction at equal angular distance.
    Zero vectors map to Idle.
    """
    if dx == 0.0 and dy == 0.0:
        return Action.Idle
    best = 0
    best_dot = -math.inf
    norm = math.hypot(dx, dy)
    ux, uy = dx / norm, dy / norm
    for i, (vx, vy) in enumerate(DIRECTION_VECTORS):
        dot = ux * vx + uy * vy
        if dot > best_dot + 1e-12:
            best_dot = dot
            best = i
    return Action(best + 1)
