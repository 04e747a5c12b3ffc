"""Step/reset environment facade.

Composes the engine, bots, observations, rewards and scenarios into the
usual reinforcement-learning loop: ``reset`` returns one observation per
controlled player, ``step`` takes one action per controlled player and fills
in every other player (teammate helper on the controlled side, difficulty
bot or substituted policy on the opponent side), ticks the engine once, and
returns observations, shared per-side rewards, the done flag and an info
map with keys score_left, score_right, frame, events, end_reason.

Control slots: a side controlling a single player follows that side's
active player (which tracks the ball); a side controlling n > 1 players is
bound to player indices 0..n-1 in placement order.  Episode i after seeding
uses an RNG stream derived from (seed, i), so sequential episodes differ
while runs stay reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from . import engine
from .actions import Action
from .bots import BotController, BotParams, teammate_action
from .errors import ConfigurationError, ContractViolation
from .observations import RawView, stack_obs, to_float115, to_pixels, to_smm
from .rewards import (
    CheckpointTracker,
    REWARD_NAMES,
    RewardHook,
    checkpoint_step,
    scoring_reward,
)
from .rng import DeterministicRng, stream_seed
from .scenarios import ScenarioConfig, is_episode_done, load_scenario
from .state import Event, EventKind, GameMode, GameState, Side

REPRESENTATIONS = ("raw", "float115", "smm", "pixels")

# opponent policy: observation(s) for the opponent side -> one action per
# opponent player (queried every frame, no bot cadence)
OpponentPolicy = Callable[[object], Sequence[Action]]


@dataclass
class EnvOptions:
    representation: str = "float115"
    stacking: int = 1
    reward: str = "scoring"
    seed: int = 0
    render_size: tuple[int, int] = (96, 72)  # (width, height) for pixels
    stochastic: Optional[bool] = None        # None keeps the scenario's flag
    reward_hook: Optional[RewardHook] = None

    def validate(self) -> "EnvOptions":
        if self.representation not in REPRESENTATIONS:
            raise ConfigurationError(
                f"unknown representation {self.representation!r}; "
                f"valid: {', '.join(REPRESENTATIONS)}"
            )
        if self.reward not in REWARD_NAMES:
            raise ConfigurationError(
                f"unknown reward {self.reward!r}; valid: {', '.join(REWARD_NAMES)}"
            )
        if self.stacking < 1:
            raise ConfigurationError("stacking must be >= 1")
        w, h = self.render_size
        if self.representation == "pixels" and (w < 16 or h < 16):
            raise ConfigurationError("render_size must be at least 16x16")
        return self


@dataclass
class StepResult:
    observations: list
    rewards: list[float]
    done: bool
    info: dict


class Environment:
    """Single-owner stateful environment; run many instances for parallelism."""

    def __init__(self, config: ScenarioConfig, options: Optional[EnvOptions] = None):
        self.config = config.validate()
        self.options = (options or EnvOptions()).validate()
        if self.options.stochastic is not None:
            self.config = self.config.with_overrides(
                stochastic=self.options.stochastic
            )
        self._base_seed = self.options.seed
        self._episode_index = 0
        self._state: Optional[GameState] = None
        self._done = True
        self._opponent_policy: Optional[OpponentPolicy] = None
        self._bots: dict[Side, BotController] = {}
        self._trackers: dict[Side, CheckpointTracker] = {}
        self._history: dict[Side, list] = {Side.LEFT: [], Side.RIGHT: []}

    # -- seeding ------------------------------------------------------------

    def seed(self, value: int) -> None:
        """Fix the next episode's RNG stream; only callable between episodes."""
        if self._state is not None and not self._done:
            raise ContractViolation("seed() may not be called mid-episode")
        self._base_seed = value
        self._episode_index = 0

    # -- opponent substitution ----------------------------------------------

    @property
    def opponent_side(self) -> Optional[Side]:
        if self.config.controlled_right == 0:
            return Side.RIGHT
        if self.config.controlled_left == 0:
            return Side.LEFT
        return None

    def set_opponent_policy(self, policy: Optional[OpponentPolicy]) -> None:
        """Replace the opponent bot with a policy; None restores the bot."""
        if policy is not None and self.opponent_side is None:
            raise ContractViolation(
                "both sides are agent-controlled; there is no opponent slot"
            )
        self._opponent_policy = policy

    def clear_opponent_policy(self) -> None:
        self.set_opponent_policy(None)

    # -- episode lifecycle ----------------------------------------------------

    @property
    def state(self) -> GameState:
        if self._state is None:
            raise ContractViolation("reset() the environment first")
        return self._state

    @property
    def episode_seed(self) -> int:
        return stream_seed(self._base_seed, self._episode_index - 1)

    def controlled_counts(self) -> tuple[int, int]:
        return (self.config.controlled_left, self.config.controlled_right)

    def _controlled_sides(self) -> list[Side]:
        sides = []
        if self.config.controlled_left > 0:
            sides.append(Side.LEFT)
        if self.config.controlled_right > 0:
            sides.append(Side.RIGHT)
        return sides

    def reset(self) -> list:
        episode_seed = stream_seed(self._base_seed, self._episode_index)
        self._episode_index += 1
        self._state = engine.reset_state(self.config, episode_seed)
        self._done = False
        self._trackers = {
            side: CheckpointTracker() for side in self._controlled_sides()
        }
        self._bots = {}
        for side in (Side.LEFT, Side.RIGHT):
            counts = self.controlled_counts()
            if counts[int(side)] == 0:
                theta = self._state.theta[int(side)]
                self._bots[side] = BotController(
                    side,
                    BotParams.from_theta(theta),
                    rng=DeterministicRng(stream_seed(episode_seed, 7001 + int(side))),
                    lazy=self.config.lazy_opponents and side is Side.RIGHT,
                )
        self._history = {Side.LEFT: [], Side.RIGHT: []}
        for side in self._sides_needing_obs():
            self._history[side].append(self._encode(side))
        return self._observations()

    def _sides_needing_obs(self) -> list[Side]:
        sides = self._controlled_sides()
        opp = self.opponent_side
        if self._opponent_policy is not None and opp is not None and opp not in sides:
            sides = sides + [opp]
        return sides

    # -- observations ---------------------------------------------------------

    def _encode(self, side: Side):
        state = self._state
        rep = self.options.representation
        if rep == "raw":
            if self.options.stacking > 1:
                return RawView(state.clone(), side)
            return RawView(state, side)
        if rep == "float115":
            return to_float115(state, side)
        if rep == "smm":
            return to_smm(state, side)
        w, h = self.options.render_size
        return to_pixels(state, w, h)

    def _side_observation(self, side: Side):
        history = self._history[side]
        if not history:  # policy attached mid-episode; backfill lazily
            history.append(self._encode(side))
        k = self.options.stacking
        if k == 1:
            return history[-1]
        return stack_obs(history, k)

    def _observations(self) -> list:
        out = []
        for side in self._controlled_sides():
            obs = self._side_observation(side)
            out.extend([obs] * self.controlled_counts()[int(side)])
        return out

    # -- stepping ---------------------------------------------------------------

    def _slot_players(self, side: Side) -> list[int]:
        count = self.controlled_counts()[int(side)]
        if count == 1:
            return [self.state.active_player[int(side)]]
        return list(range(count))

    def step(self, actions: Sequence[Union[Action, int]]) -> StepResult:
        if self._state is None:
            raise ContractViolation("reset() the environment before stepping")
        if self._done:
            raise ContractViolation("episode is done; reset() before stepping")
        state = self._state
        n_slots = sum(self.controlled_counts())
        if len(actions) != n_slots:
            raise ContractViolation(
                f"need {n_slots} actions (one per controlled player), "
                f"got {len(actions)}"
            )

        full: list[Optional[Action]] = [None] * (state.left.n + state.right.n)
        offset = {Side.LEFT: 0, Side.RIGHT: state.left.n}
        cursor = 0
        for side in self._controlled_sides():
            team = state.team(side)
            count = self.controlled_counts()[int(side)]
            slots = self._slot_players(side)
            slot_set = set(slots)
            for player_idx in slots:
                action = Action(int(actions[cursor]))
                cursor += 1
                if not team.sent_off[player_idx]:
                    full[offset[side] + player_idx] = action
            for i in range(team.n):
                if i in slot_set or team.sent_off[i]:
                    continue
                if self.config.teammate_bot_enabled:
                    full[offset[side] + i] = teammate_action(state, side, i)
                else:
                    full[offset[side] + i] = Action.Idle

        for side, bot in self._bots.items():
            if side is self.opponent_side and self._opponent_policy is not None:
                self._fill_from_policy(side, full, offset[side])
            else:
                for i, action in enumerate(bot.actions(state)):
                    full[offset[side] + i] = action

        _, events = engine.tick(state, full)

        rewards_by_side: dict[Side, float] = {}
        for side in self._controlled_sides():
            base = float(scoring_reward(events, side))
            if self.options.reward == "checkpoints":
                delta, self._trackers[side] = checkpoint_step(
                    self._trackers[side], state, side, events
                )
                base += delta
            if self.options.reward_hook is not None:
                base = self.options.reward_hook(state, events, base)
            rewards_by_side[side] = base

        reason = is_episode_done(state, self.config, events)
        self._done = reason is not None
        info_events = list(events)
        if self._done:
            info_events.append(Event(EventKind.EPISODE_END, detail=reason))

        for side in self._sides_needing_obs():
            history = self._history[side]
            history.append(self._encode(side))
            if len(history) > self.options.stacking:
                del history[: len(history) - self.options.stacking]

        rewards: list[float] = []
        for side in self._controlled_sides():
            rewards.extend([rewards_by_side[side]] * self.controlled_counts()[int(side)])

        info = {
            "score_left": state.score[0],
            "score_right": state.score[1],
            "frame": state.frame,
            "events": info_events,
            "end_reason": reason,
        }
        return StepResult(
            observations=self._observations(),
            rewards=rewards,
            done=self._done,
            info=info,
        )

    # -- snapshots (replay seeking, search rollouts) --------------------------

    def snapshot(self) -> dict:
        """Resumable copy of the episode: state, bot memories, trackers.

        Observation stacking history is not captured; a restore re-encodes
        only the current frame.
        """
        return {
            "state": self.state.clone(),
            "done": self._done,
            "bots": {
                side: (dict(bot.memory.last), bot.rng.state)
                for side, bot in self._bots.items()
            },
            "trackers": dict(self._trackers),
        }

    def restore(self, snap: dict) -> None:
        self._state = snap["state"].clone()
        self._done = snap["done"]
        for side, (last, rng_state) in snap["bots"].items():
            bot = self._bots.get(side)
            if bot is not None:
                bot.memory.last = dict(last)
                bot.rng.state = rng_state
        self._trackers = dict(snap["trackers"])
        self._history = {Side.LEFT: [], Side.RIGHT: []}
        for side in self._sides_needing_obs():
            self._history[side].append(self._encode(side))

    def _fill_from_policy(self, side: Side, full: list, base: int) -> None:
        team = self.state.team(side)
        obs = self._side_observation(side)
        actions = self._opponent_policy(obs)
        if actions is None or len(actions) != team.n:
            got = "None" if actions is None else str(len(actions))
            raise ContractViolation(
                f"opponent policy must return {team.n} actions "
                f"(one per opponent player), got {got}"
            )
        for i in range(team.n):
            full[base + i] = None if team.sent_off[i] else Action(int(actions[i]))


def create_environment(
    name: Union[str, ScenarioConfig],
    options: Optional[EnvOptions] = None,
    **option_kwargs,
) -> Environment:
    """Environment from a builtin scenario name, a scenario file path, or a
    ready ScenarioConfig; keyword arguments override EnvOptions fields."""
    if options is None:
        options = EnvOptions(**option_kwargs)
    elif option_kwargs:
        raise ContractViolation("pass either an EnvOptions or keyword overrides")
    config = name if isinstance(name, ScenarioConfig) else load_scenario(name)
    return Environment(config, options)
