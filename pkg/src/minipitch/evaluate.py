"""Bot-vs-bot and policy evaluation: average goal difference over episodes.

Controllers are named by spec strings: ``bot:<theta>`` for the built-in bot
at a difficulty, or ``replay:<path>`` to drive a side's active player with
the actions recorded in a replay file (teammates fall back to the helper
behavior).  Episodes alternate the physical sides (the first controller
plays the left side on even episodes) and the goal difference is always
reported from the first controller's perspective, so in deterministic mode
with an even episode count swapping the arguments exactly negates the mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import engine
from .actions import Action
from .bots import BotController, BotParams, teammate_action
from .errors import ConfigurationError
from .rng import DeterministicRng, stream_seed
from .scenarios import ScenarioConfig, load_scenario
from .state import GameState, Side

# a side controller: (state, side) -> list of actions (None for sent off)
SideController = Callable[[GameState, Side], list]
ControllerSpec = Union[str, SideController]


@dataclass(frozen=True)
class EvalResult:
    mean: float
    std: float
    diffs: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.mean:+.2f} ± {self.std:.2f} over {len(self.diffs)} episodes"


def _spec_theta(spec: ControllerSpec) -> Optional[float]:
    if isinstance(spec, str) and spec.startswith("bot:"):
        try:
            theta = float(spec[4:])
        except ValueError:
            raise ConfigurationError(f"bad controller spec {spec!r}") from None
        if not 0.0 <= theta <= 1.0:
            raise ConfigurationError(f"bot theta must be in [0, 1], got {theta}")
        return theta
    return None


def _make_controller(spec: ControllerSpec, side: Side, episode_seed: int):
    if callable(spec):
        return lambda state: spec(state, side)
    theta = _spec_theta(spec)
    if theta is not None:
        bot = BotController(
            side,
            BotParams.from_theta(theta),
            rng=DeterministicRng(stream_seed(episode_seed, 9100 + int(side))),
        )
        return bot.actions
    if isinstance(spec, str) and spec.startswith("replay:"):
        from .replay import load_replay

        recording = load_replay(spec[len("replay:"):])
        frames = recording.frames
        counter = {"i": 0}

        def replay_controller(state: GameState):
            team = state.team(side)
            step_actions = frames[counter["i"]] if counter["i"] < len(frames) else ()
            counter["i"] += 1
            lead = Action(step_actions[0]) if step_actions else Action.Idle
            active = state.active_player[int(side)]
            out = []
            for i in range(team.n):
                if team.sent_off[i]:
                    out.append(None)
                elif i == active:
                    out.append(lead)
                else:
                    out.append(teammate_action(state, side, i))
            return out

        return replay_controller
    raise ConfigurationError(
        f"unknown controller spec {spec!r}; expected 'bot:<theta>', "
        f"'replay:<path>' or a callable"
    )


def run_eval(left_spec: ControllerSpec, right_spec: ControllerSpec,
             episodes: int, scenario: Union[str, ScenarioConfig],
             seed: int = 0) -> EvalResult:
    """Play episodes between two controllers; mean/std of goal difference.

    Episode i runs on seed ``seed + i``; odd episodes swap the physical
    sides and negate the recorded difference so venue effects cancel.
    """
    if episodes < 1:
        raise ConfigurationError("episodes must be >= 1")
    config = scenario if isinstance(scenario, ScenarioConfig) \
        else load_scenario(scenario)

    diffs = []
    for ep in range(episodes):
        swapped = ep % 2 == 1
        spec_l, spec_r = (right_spec, left_spec) if swapped else (left_spec, right_spec)
        ep_seed = seed + ep
        overrides = dict(controlled_left=0, controlled_right=0)
        theta_l, theta_r = _spec_theta(spec_l), _spec_theta(spec_r)
        if theta_l is not None:
            overrides["difficulty_left"] = theta_l
        if theta_r is not None:
            overrides["difficulty_right"] = theta_r
        ep_config = config.with_overrides(**overrides)

        state = engine.reset_state(ep_config, ep_seed)
        control_l = _make_controller(spec_l, Side.LEFT, ep_seed)
        control_r = _make_controller(spec_r, Side.RIGHT, ep_seed)
        while state.frame < state.duration_frames:
            actions = list(control_l(state)) + list(control_r(state))
            engine.tick(state, actions)
        diff = state.score[0] - state.score[1]
        diffs.append(-diff if swapped else diff)

    n = len(diffs)
    mean = sum(diffs) / n
    var = sum((d - mean) ** 2 for d in diffs) / n
    return EvalResult(mean=mean, std=math.sqrt(var), diffs=tuple(diffs))
