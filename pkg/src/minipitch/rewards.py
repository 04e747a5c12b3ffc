"""Reward functions: plain goal reward and the distance-region shaped reward.

The shaped reward divides the opponent half into ten regions by Euclidean
distance from the ball to the opponent goal center; the first time the team
possesses the ball inside a region it pays +0.1, any regions still
uncollected pay out on the first goal, and nothing pays twice in an episode.
Collected counts are integers so the +0.1 multiples stay decimal-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .state import Event, EventKind, GameState, Side

REWARD_NAMES = ("scoring", "checkpoints")

# caller-supplied transform: (state, events, base reward) -> reward
RewardHook = Callable[[GameState, Sequence[Event], float], float]

N_REGIONS = 10


def scoring_reward(events: Sequence[Event], side: Side) -> int:
    """+1 per goal scored by ``side``, -1 per goal conceded.

    An own goal counts as conceding for the team that put it in.
    """
    total = 0
    for e in events:
        if e.kind == EventKind.GOAL:
            total += 1 if e.side == side else -1
        elif e.kind == EventKind.OWN_GOAL:
            total += -1 if e.side == side else 1
    return total


def checkpoint_thresholds() -> tuple[float, ...]:
    """Region distance thresholds t_i = 0.99 - 0.8*i/9, strictly decreasing."""
    return tuple(0.99 - 0.8 * i / 9 for i in range(N_REGIONS))


_THRESHOLDS = checkpoint_thresholds()


@dataclass(frozen=True)
class CheckpointTracker:
    """Per-episode progress: regions collected and the paid-out flag."""

    collected: int = 0
    exhausted: bool = False


def goal_distance(state: GameState, side: Side) -> float:
    """Ball distance to the opponent goal center in the attacking frame."""
    attack = side.attack_sign
    bx = state.ball.position.x * attack
    by = state.ball.position.y * attack
    return math.hypot(1.0 - bx, by)


def checkpoint_step(tracker: CheckpointTracker, state: GameState, side: Side,
                    events: Sequence[Event]) -> tuple[float, CheckpointTracker]:
    """Shaped-reward delta for one step (scoring reward not included).

    Call once per environment step after the tick.  Regions collect in
    ascending index while the side possesses the ball in the opponent half;
    a goal by the side pays every uncollected region and exhausts the
    tracker; an exhausted tracker always yields (0, tracker).
    """
    if tracker.exhausted:
        return 0.0, tracker

    collected = tracker.collected
    tenths = 0

    owner = state.ball.owned_by
    if owner is not None and owner[0] == side:
        attack = side.attack_sign
        if state.ball.position.x * attack > 0.0:  # opponent half only
            d = goal_distance(state, side)
            while collected < N_REGIONS and d <= _THRESHOLDS[collected]:
                collected += 1
                tenths += 1

    exhausted = collected >= N_REGIONS
    if any(e.kind == EventKind.GOAL and e.side == side for e in events):
        tenths += N_REGIONS - collected
        exhausted = True

    return tenths / 10.0, CheckpointTracker(collected, exhausted)
