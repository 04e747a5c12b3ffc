"""Shared helpers for building small, hand-placed game states."""

from __future__ import annotations

import pytest

from minipitch.engine import reset_state
from minipitch.scenarios import ScenarioConfig
from minipitch.state import GameMode, GameState, Role, Side


def make_config(
    left=((Role.Forward, 0.0, 0.0),),
    right=((Role.Defender, 0.5, 0.0),),
    ball=(0.0, 0.0),
    stochastic=False,
    offsides=True,
    duration=1000,
    start_mode=GameMode.Normal,
    **kwargs,
) -> ScenarioConfig:
    return ScenarioConfig(
        name=kwargs.pop("name", "fixture"),
        duration_frames=duration,
        difficulty=kwargs.pop("difficulty", 0.6),
        stochastic=stochastic,
        offsides_enabled=offsides,
        left_placements=tuple(left),
        right_placements=tuple(right),
        ball_start=ball,
        start_mode=start_mode,
        controlled_left=kwargs.pop("controlled_left", 1),
        controlled_right=kwargs.pop("controlled_right", 0),
        teammate_bot_enabled=kwargs.pop("teammate_bot", True),
        end_on_score=kwargs.pop("end_on_score", True),
        end_on_possession_loss=kwargs.pop("end_on_possession_loss", True),
        end_on_out_of_play=kwargs.pop("end_on_out_of_play", True),
        lazy_opponents=kwargs.pop("lazy_opponents", False),
        **kwargs,
    ).validate()


def make_state(seed=0, **kwargs) -> GameState:
    return reset_state(make_config(**kwargs), seed)


def grant(state: GameState, side: Side, idx: int) -> GameState:
    """Hand the ball to a player directly (test setup shortcut)."""
    from minipitch.state import BallState, Vec2

    team = state.team(side)
    state.ball = BallState(
        position=Vec2(float(team.pos[idx, 0]), float(team.pos[idx, 1])),
        z=0.0,
        velocity=(0.0, 0.0, 0.0),
        owned_by=(side, idx),
    )
    state.last_touch = (side, idx)
    state.last_possession_side = side
    state.active_player[int(side)] = idx
    return state


def idle_actions(state: GameState) -> list:
    """One Idle per player, None for sent-off (valid tick input)."""
    from minipitch.actions import Action

    out = []
    for side in (Side.LEFT, Side.RIGHT):
        team = state.team(side)
        for i in range(team.n):
            out.append(None if team.sent_off[i] else Action.Idle)
    return out


def actions_with(state: GameState, overrides: dict) -> list:
    """Idle for everyone except the given {(side, idx): action} entries."""
    out = idle_actions(state)
    for (side, idx), action in overrides.items():
        offset = 0 if side is Side.LEFT else state.left.n
        out[offset + idx] = action
    return out


@pytest.fixture
def simple_state() -> GameState:
    return make_state()
