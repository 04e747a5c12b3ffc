"""Simulation state: teams, ball, game mode, score, events.

Team data is stored as structure-of-arrays (numpy) because the per-frame
integration runs over whole teams in the compiled kernels.  ``PlayerState``
is a scalar snapshot view used by the per-player rule functions and tests;
``GameState.player`` / ``GameState.set_player`` convert between the two.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum, IntEnum
from typing import Optional

import numpy as np

from . import constants as C
from .actions import Action
from .rng import DeterministicRng


class Side(IntEnum):
    LEFT = 0
    RIGHT = 1

    @property
    def other(self) -> "Side":
        return Side(1 - int(self))

    @property
    def attack_sign(self) -> float:
        """+1 if this side attacks toward x = +1, else -1."""
        return 1.0 if self is Side.LEFT else -1.0


class Role(IntEnum):
    Keeper = 0
    Defender = 1
    Midfielder = 2
    Forward = 3


class GameMode(IntEnum):
    Normal = 0
    KickOff = 1
    GoalKick = 2
    FreeKick = 3
    Corner = 4
    ThrowIn = 5
    Penalty = 6


N_GAME_MODES = 7


class EventKind(Enum):
    GOAL = "goal"
    OWN_GOAL = "own_goal"
    OUT_THROW_IN = "out_throw_in"
    OUT_GOAL_LINE = "out_goal_line"
    OFFSIDE = "offside"
    FOUL = "foul"
    YELLOW_CARD = "yellow_card"
    RED_CARD = "red_card"
    POSSESSION_CHANGE = "possession_change"
    KICK = "kick"
    EPISODE_END = "episode_end"


@dataclass(frozen=True)
class Event:
    """One rule transition emitted by a tick.

    ``side`` is the side the event is about (scorer for GOAL, team conceding
    against itself for OWN_GOAL, offender for FOUL/cards, new owner for
    POSSESSION_CHANGE, kicker for KICK).  ``detail`` carries the kick kind,
    the restart awarded for ball-out events ("corner"/"goal_kick"), or the
    episode end reason.
    """

    kind: EventKind
    side: Optional[Side] = None
    player: Optional[int] = None
    detail: Optional[str] = None


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass
class PlayerState:
    """Scalar view of one player; see the team arrays for the hot path."""

    position: Vec2
    velocity: Vec2
    facing: Vec2
    tiredness: float
    sticky_direction: Optional[int]  # 0..7 or None
    sticky_sprint: bool
    sticky_dribble: bool
    yellow_cards: int
    sent_off: bool
    base_speed: float
    role: Role

    def copy(self) -> "PlayerState":
        return replace(self)


@dataclass
class BallState:
    position: Vec2
    z: float
    velocity: tuple[float, float, float]
    owned_by: Optional[tuple[Side, int]]


class TeamArrays:
    """Structure-of-arrays for one team of n players."""

    __slots__ = (
        "n", "pos", "vel", "facing", "tiredness", "base_speed",
        "sticky_dir", "sticky_sprint", "sticky_dribble",
        "yellow_cards", "sent_off", "roles",
    )

    def __init__(self, roles: list[Role], positions: np.ndarray):
        n = len(roles)
        self.n = n
        self.pos = np.array(positions, dtype=np.float64).reshape(n, 2)
        self.vel = np.zeros((n, 2), dtype=np.float64)
        self.facing = np.zeros((n, 2), dtype=np.float64)
        self.tiredness = np.zeros(n, dtype=np.float64)
        self.base_speed = np.array(
            [C.ROLE_BASE_SPEED[Role(r).name] for r in roles], dtype=np.float64
        )
        self.sticky_dir = np.full(n, -1, dtype=np.int8)
        # flags are uint8 (0/1) so both kernel backends share one buffer type
        self.sticky_sprint = np.zeros(n, dtype=np.uint8)
        self.sticky_dribble = np.zeros(n, dtype=np.uint8)
        self.yellow_cards = np.zeros(n, dtype=np.int8)
        self.sent_off = np.zeros(n, dtype=np.uint8)
        self.roles = np.array([int(r) for r in roles], dtype=np.int8)

    def clone(self) -> "TeamArrays":
        c = object.__new__(TeamArrays)
        c.n = self.n
        for name in self.__slots__[1:]:
            setattr(c, name, getattr(self, name).copy())
        return c

    def equals(self, other: "TeamArrays") -> bool:
        return self.n == other.n and all(
            np.array_equal(getattr(self, name), getattr(other, name))
            for name in self.__slots__[1:]
        )


@dataclass
class GameState:
    """Complete simulation state; everything a tick reads or writes."""

    frame: int
    duration_frames: int
    left: TeamArrays
    right: TeamArrays
    ball: BallState
    mode: GameMode
    mode_owner: Side
    score: tuple[int, int]
    active_player: list[int]          # per-side index
    rng: DeterministicRng
    stochastic: bool
    offsides_enabled: bool = True
    theta: tuple[float, float] = (0.6, 0.6)   # per-side difficulty (keeper saves)
    # rule bookkeeping
    last_touch: Optional[tuple[Side, int]] = None
    last_possession_side: Optional[Side] = None
    offside_flags: frozenset = frozenset()     # of (Side, int)
    kick_id: int = 0
    last_kick_kind: Optional[Action] = None
    last_kicker: Optional[tuple[Side, int]] = None
    kick_grace_until: int = -1                 # frame until which kicker can't reclaim
    save_attempted_kick: tuple[int, int] = (-1, -1)   # per-side last kick id contested
    restart_taker: Optional[tuple[Side, int]] = None
    # formation the teams return to on kick-off restarts (captured at reset)
    kickoff_pos_left: Optional[np.ndarray] = None
    kickoff_pos_right: Optional[np.ndarray] = None

    def team(self, side: Side) -> TeamArrays:
        return self.left if side is Side.LEFT else self.right

    def player(self, side: Side, index: int) -> PlayerState:
        t = self.team(side)
        d = int(t.sticky_dir[index])
        return PlayerState(
            position=Vec2(float(t.pos[index, 0]), float(t.pos[index, 1])),
            velocity=Vec2(float(t.vel[index, 0]), float(t.vel[index, 1])),
            facing=Vec2(float(t.facing[index, 0]), float(t.facing[index, 1])),
            tiredness=float(t.tiredness[index]),
            sticky_direction=None if d < 0 else d,
            sticky_sprint=bool(t.sticky_sprint[index]),
            sticky_dribble=bool(t.sticky_dribble[index]),
            yellow_cards=int(t.yellow_cards[index]),
            sent_off=bool(t.sent_off[index]),
            base_speed=float(t.base_speed[index]),
            role=Role(int(t.roles[index])),
        )

    def set_player(self, side: Side, index: int, p: PlayerState) -> None:
        t = self.team(side)
        t.pos[index] = (p.position.x, p.position.y)
        t.vel[index] = (p.velocity.x, p.velocity.y)
        t.facing[index] = (p.facing.x, p.facing.y)
        t.tiredness[index] = p.tiredness
        t.sticky_dir[index] = -1 if p.sticky_direction is None else p.sticky_direction
        t.sticky_sprint[index] = p.sticky_sprint
        t.sticky_dribble[index] = p.sticky_dribble
        t.yellow_cards[index] = p.yellow_cards
        t.sent_off[index] = p.sent_off
        t.base_speed[index] = p.base_speed
        t.roles[index] = int(p.role)

    def clone(self) -> "GameState":
        return GameState(
            frame=self.frame,
            duration_frames=self.duration_frames,
            left=self.left.clone(),
            right=self.right.clone(),
            ball=BallState(
                position=self.ball.position,
                z=self.ball.z,
                velocity=self.ball.velocity,
                owned_by=self.ball.owned_by,
            ),
            mode=self.mode,
            mode_owner=self.mode_owner,
            score=self.score,
            active_player=list(self.active_player),
            rng=self.rng.clone(),
            stochastic=self.stochastic,
            offsides_enabled=self.offsides_enabled,
            theta=self.theta,
            last_touch=self.last_touch,
            last_possession_side=self.last_possession_side,
            offside_flags=self.offside_flags,
            kick_id=self.kick_id,
            last_kick_kind=self.last_kick_kind,
            last_kicker=self.last_kicker,
            kick_grace_until=self.kick_grace_until,
            save_attempted_kick=self.save_attempted_kick,
            restart_taker=self.restart_taker,
            kickoff_pos_left=None if self.kickoff_pos_left is None
            else self.kickoff_pos_left.copy(),
            kickoff_pos_right=None if self.kickoff_pos_right is None
            else self.kickoff_pos_right.copy(),
        )

    def equals(self, other: "GameState") -> bool:
        """Bit-exact state equality (used by determinism tests)."""
        return (
            self.frame == other.frame
            and self.duration_frames == other.duration_frames
            and self.left.equals(other.left)
            and self.right.equals(other.right)
            and self.ball.position == other.ball.position
            and self.ball.z == other.ball.z
            and self.ball.velocity == other.ball.velocity
            and self.ball.owned_by == other.ball.owned_by
            and self.mode == other.mode
            and self.mode_owner == other.mode_owner
            and self.score == other.score
            and self.active_player == other.active_player
            and self.rng == other.rng
            and self.stochastic == other.stochastic
            and self.offside_flags == other.offside_flags
            and self.kick_id == other.kick_id
            and self.last_touch == other.last_touch
            and self.last_possession_side == other.last_possession_side
            and self.kick_grace_until == other.kick_grace_until
            and self.save_attempted_kick == other.save_attempted_kick
            and self.restart_taker == other.restart_taker
        )
