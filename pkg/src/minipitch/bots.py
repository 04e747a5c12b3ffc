"""Rule-based controllers.

The opponent bot plays a whole side at a difficulty theta in [0, 1]: theta
scales how often decisions are recomputed (reaction cadence) and how much
noise perturbs aiming.  The teammate helper drives a controlled side's
non-active players with the same decision tree restricted to movement.

Decision tree, evaluated per player:
  carrier        -> shoot in range, else pass to a clearly better-placed
                    teammate, else dribble at the goal
  team in possession -> advance to a formation point pushed toward the ball
  nearest to a loose ball -> chase it (sprint when far)
  otherwise      -> retreat to a defensive formation point
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from . import constants as C
from .actions import Action, quantize_heading
from .engine import pass_target
from .errors import ContractViolation
from .rng import DeterministicRng
from .state import GameState, Role, Side

_FORMATION = json.loads(
    resources.files("minipitch").joinpath("data/formations.json").read_text()
)
_TEMPLATE = {Role[name]: slots for name, slots in _FORMATION["template"].items()}


def reaction_period(theta: float) -> int:
    """Frames between decision recomputations: round(1 + 9*(1-theta)).

    theta 0.05 -> 10, 0.6 -> 5, 0.95 -> 1; rounding is half away from zero.
    """
    if not 0.0 <= theta <= 1.0:
        raise ContractViolation(f"theta must be within [0, 1], got {theta}")
    return int(math.floor(1.0 + 9.0 * (1.0 - theta) + 0.5))


@dataclass(frozen=True)
class BotParams:
    theta: float
    reaction_period_frames: int
    aim_noise_scale: float

    @classmethod
    def from_theta(cls, theta: float) -> "BotParams":
        period = reaction_period(theta)
        return cls(
            theta=theta,
            reaction_period_frames=period,
            aim_noise_scale=C.BOT_AIM_NOISE_MAX * (1.0 - theta),
        )


class BotMemory:
    """Last computed action per player index, for the reaction cadence."""

    __slots__ = ("last",)

    def __init__(self):
        self.last: dict[int, Action] = {}


def _formation_point(state: GameState, side: Side, index: int,
                     attacking: bool) -> tuple[float, float]:
    """Template anchor for this player, stretched toward the ball's x.

    Coordinates are computed in the attack frame (goal at +x) and mirrored
    back for the right side.  Keepers track the ball's y on their own line.
    """
    attack = side.attack_sign
    team = state.team(side)
    role = Role(int(team.roles[index]))
    ball_x = state.ball.position.x * attack
    ball_y = state.ball.position.y * attack

    if role == Role.Keeper:
        ky = ball_y * _FORMATION["keeper_track_y"]
        ky = max(-_FORMATION["keeper_max_y"], min(_FORMATION["keeper_max_y"], ky))
        return (attack * _FORMATION["keeper_home_x"], attack * ky)

    slots = _TEMPLATE[role]
    nth = sum(
        1 for j in range(index)
        if Role(int(team.roles[j])) == role
    )
    ax, ay = slots[nth % len(slots)]
    if attacking:
        x = ax + _FORMATION["attack_push_x"] + _FORMATION["attack_ball_pull_x"] * ball_x
        y = ay + _FORMATION["attack_ball_pull_y"] * (ball_y - ay)
    else:
        x = ax * _FORMATION["defense_compress_x"] \
            + _FORMATION["defense_ball_pull_x"] * min(ball_x, 0.0)
        y = ay + _FORMATION["defense_ball_pull_y"] * (ball_y - ay)
    x = max(-0.98, min(0.95, x))
    y = max(-0.40, min(0.40, y))
    return (attack * x, attack * y)


def _nearest_to_ball(state: GameState, side: Side) -> int:
    team = state.team(side)
    bx, by = state.ball.position.x, state.ball.position.y
    best, best_d2 = -1, math.inf
    for i in range(team.n):
        if team.sent_off[i]:
            continue
        dx = float(team.pos[i, 0]) - bx
        dy = float(team.pos[i, 1]) - by
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best, best_d2 = i, d2
    return best


def _move_toward(state: GameState, side: Side, index: int,
                 tx: float, ty: float, noise: float,
                 rng: Optional[DeterministicRng]) -> Action:
    team = state.team(side)
    dx = tx - float(team.pos[index, 0])
    dy = ty - float(team.pos[index, 1])
    if math.hypot(dx, dy) < 0.01:
        return Action.Idle
    if noise > 0.0 and state.stochastic and rng is not None:
        angle = math.atan2(dy, dx) + noise * rng.normal()
        dx, dy = math.cos(angle), math.sin(angle)
    return quantize_heading(dx, dy)


def _decide(state: GameState, side: Side, index: int, params: BotParams,
            rng: Optional[DeterministicRng], kicks_allowed: bool,
            nearest_idx: Optional[int] = None) -> Action:
    team = state.team(side)
    attack = side.attack_sign
    goal_x, goal_y = attack * C.PITCH_HALF_X, 0.0
    noise = params.aim_noise_scale
    owner = state.ball.owned_by

    if owner == (side, index):
        px, py = float(team.pos[index, 0]), float(team.pos[index, 1])
        d_goal = math.hypot(goal_x - px, goal_y - py)
        if kicks_allowed:
            if d_goal <= C.BOT_SHOT_RANGE:
                return Action.Shot
            best_idx, best_score = pass_target(state, side, index)
            my_score = px * attack
            if best_idx is not None and best_score > my_score + C.BOT_PASS_MARGIN:
                tx, ty = float(team.pos[best_idx, 0]), float(team.pos[best_idx, 1])
                if math.hypot(tx - px, ty - py) > C.BOT_LONG_PASS_DISTANCE:
                    return Action.LongPass
                return Action.ShortPass
        return _move_toward(state, side, index, goal_x, goal_y, noise, rng)

    if owner is not None and owner[0] == side:
        tx, ty = _formation_point(state, side, index, attacking=True)
        return _move_toward(state, side, index, tx, ty, noise, rng)

    if nearest_idx is None:
        nearest_idx = _nearest_to_ball(state, side)
    if index == nearest_idx:
        bx, by = state.ball.position.x, state.ball.position.y
        px, py = float(team.pos[index, 0]), float(team.pos[index, 1])
        far = math.hypot(bx - px, by - py) > C.BOT_SPRINT_DISTANCE
        if far and not team.sticky_sprint[index]:
            return Action.Sprint
        return _move_toward(state, side, index, bx, by, noise, rng)

    tx, ty = _formation_point(state, side, index, attacking=False)
    return _move_toward(state, side, index, tx, ty, noise, rng)


def bot_action(state: GameState, side: Side, index: int, params: BotParams,
               rng: DeterministicRng, memory: BotMemory) -> Action:
    """One opponent-bot action; recomputed only on cadence boundaries.

    Between recomputation frames (frame % reaction period != 0) the last
    computed action is repeated verbatim.
    """
    if state.team(side).sent_off[index]:
        raise ContractViolation(f"{side.name.lower()} player {index} is sent off")
    if state.frame % params.reaction_period_frames != 0:
        cached = memory.last.get(index)
        if cached is not None:
            return cached
    action = _decide(state, side, index, params, rng, kicks_allowed=True)
    memory.last[index] = action
    return action


_TEAMMATE_PARAMS = BotParams.from_theta(1.0)


def teammate_action(state: GameState, side: Side, index: int) -> Action:
    """Helper behavior for a controlled side's non-active players.

    Same decision tree at full cadence with no aim noise, restricted to
    movement (never kicks; kicking is the active player's job).
    """
    return _decide(state, side, index, _TEAMMATE_PARAMS, None, kicks_allowed=False)


class BotController:
    """Drives every player of one side with the opponent bot.

    Holds the cadence memory and the noise RNG; ``actions`` returns one
    entry per player (None for sent-off players), suitable for tick input.
    """

    def __init__(self, side: Side, params: BotParams,
                 rng: Optional[DeterministicRng] = None, lazy: bool = False):
        self.side = side
        self.params = params
        self.rng = rng if rng is not None else DeterministicRng(0)
        self.lazy = lazy
        self.memory = BotMemory()

    def actions(self, state: GameState) -> list[Optional[Action]]:
        team = state.team(self.side)
        out: list[Optional[Action]] = []
        if self.lazy:
            # lazy opponents hold position; interception happens in the
            # engine whenever the ball strays into control range
            return [None if team.sent_off[i] else Action.Idle
                    for i in range(team.n)]
        recompute = state.frame % self.params.reaction_period_frames == 0
        nearest = _nearest_to_ball(state, self.side)
        for i in range(team.n):
            if team.sent_off[i]:
                out.append(None)
                continue
            if not recompute and i in self.memory.last:
                out.append(self.memory.last[i])
                continue
            action = _decide(state, self.side, i, self.params, self.rng,
                             kicks_allowed=True, nearest_idx=nearest)
            self.memory.last[i] = action
            out.append(action)
        return out
