"""Fixed-timestep football simulation core.

One tick advances the world a single frame: sticky flags, player movement
with fatigue, the carried or free ball, kicks, slide tackles, keeper saves,
possession contests, and the rules state machine (goals, outs, offside,
fouls, cards, restarts).  Evaluation order is frozen; with stochasticity off
the tick is a pure function of (state, actions).

Deterministic mode seeds the episode RNG with a fixed constant so that
trajectories depend only on the action sequence, never on the caller's seed;
foul/card draws still flow through the RNG in both modes, but kick-direction
noise and keeper-save draws are the stochastic-mode extras.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from . import constants as C
from . import kernels
from .actions import Action, KICK_ACTIONS, direction_slot
from .errors import ConfigurationError, ContractViolation
from .rng import DeterministicRng
from .state import (
    BallState,
    Event,
    EventKind,
    GameMode,
    GameState,
    PlayerState,
    Role,
    Side,
    TeamArrays,
    Vec2,
)

# Fixed RNG seed used when stochastic=False (see module docstring).
_DETERMINISTIC_SEED = 0x00C0FFEE

_CONTROL_R2 = C.CONTROL_RADIUS * C.CONTROL_RADIUS
_SLIDE_R2 = C.SLIDE_RADIUS * C.SLIDE_RADIUS
_KEEPER_R2 = C.KEEPER_REACH * C.KEEPER_REACH

_KICK_SPEED = {
    Action.ShortPass: C.SHORT_PASS_SPEED,
    Action.HighPass: C.HIGH_PASS_SPEED,
    Action.LongPass: C.LONG_PASS_SPEED,
    Action.Shot: C.SHOT_SPEED,
}

_PASS_KINDS = (Action.ShortPass, Action.HighPass, Action.LongPass)
_KICK_IDS = frozenset(int(a) for a in KICK_ACTIONS)


# --------------------------------------------------------------------------
# per-player rule functions (scalar; the tick uses the array kernels, which
# are parity-tested against these)
# --------------------------------------------------------------------------

def apply_sticky(player: PlayerState, action: Action) -> PlayerState:
    """Sticky-flag transition for one action.

    Direction actions set the held direction, Sprint/Dribble set their
    flags, the three stop actions clear them; kicks, Sliding and Idle leave
    every flag untouched.
    """
    p = player.copy()
    slot = direction_slot(action)
    if slot >= 0:
        p.sticky_direction = slot
    elif action == Action.StopMoving:
        p.sticky_direction = None
    elif action == Action.Sprint:
        p.sticky_sprint = True
    elif action == Action.StopSprint:
        p.sticky_sprint = False
    elif action == Action.Dribble:
        p.sticky_dribble = True
    elif action == Action.StopDribble:
        p.sticky_dribble = False
    return p


def update_fatigue(player: PlayerState, sprinting: bool, moving: bool) -> PlayerState:
    """Tiredness update for one frame, clamped to [0, 1].

    Sprinting drains fastest, plain movement slower, rest recovers toward 0.
    """
    p = player.copy()
    t = p.tiredness
    if sprinting:
        t += C.FATIGUE_SPRINT
    elif moving:
        t += C.FATIGUE_MOVE
    else:
        t -= C.FATIGUE_RECOVERY
    p.tiredness = min(1.0, max(0.0, t))
    return p


def speed_multiplier(tiredness: float) -> float:
    return 1.0 - C.FATIGUE_SPEED_PENALTY * tiredness


# --------------------------------------------------------------------------
# reset
# --------------------------------------------------------------------------

def _build_team(placements, label: str) -> TeamArrays:
    if not 1 <= len(placements) <= 11:
        raise ConfigurationError(
            f"{label}: team must have 1..11 players, got {len(placements)}"
        )
    roles = []
    coords = []
    for k, (role, x, y) in enumerate(placements):
        if not (-C.PITCH_HALF_X <= x <= C.PITCH_HALF_X
                and -C.PITCH_HALF_Y <= y <= C.PITCH_HALF_Y):
            raise ConfigurationError(
                f"{label} player {k} ({Role(role).name}) placed outside the "
                f"pitch at ({x}, {y})"
            )
        roles.append(Role(role))
        coords.append((x, y))
    return TeamArrays(roles, np.array(coords, dtype=np.float64))


def reset_state(config, seed: int) -> GameState:
    """Fresh episode state from a scenario configuration and a seed.

    Placements are validated against the pitch; tiredness, cards and score
    start at zero.  In stochastic mode the RNG is seeded with ``seed``, in
    deterministic mode with a fixed constant (seed-independent episodes).
    """
    bx, by = config.ball_start
    if not (-C.PITCH_HALF_X <= bx <= C.PITCH_HALF_X
            and -C.PITCH_HALF_Y <= by <= C.PITCH_HALF_Y):
        raise ConfigurationError(f"ball placed outside the pitch at ({bx}, {by})")

    left = _build_team(config.left_placements, "left")
    right = _build_team(config.right_placements, "right")
    left.facing[:] = (1.0, 0.0)
    right.facing[:] = (-1.0, 0.0)

    rng = DeterministicRng(seed if config.stochastic else _DETERMINISTIC_SEED)
    theta_l = getattr(config, "difficulty_left", None)
    theta_r = getattr(config, "difficulty_right", None)
    state = GameState(
        frame=0,
        duration_frames=config.duration_frames,
        left=left,
        right=right,
        ball=BallState(position=Vec2(bx, by), z=0.0, velocity=(0.0, 0.0, 0.0),
                       owned_by=None),
        mode=GameMode.Normal,
        mode_owner=Side.LEFT,
        score=(0, 0),
        active_player=[0, 0],
        rng=rng,
        stochastic=config.stochastic,
        offsides_enabled=config.offsides_enabled,
        theta=(
            config.difficulty if theta_l is None else theta_l,
            config.difficulty if theta_r is None else theta_r,
        ),
        kickoff_pos_left=left.pos.copy(),
        kickoff_pos_right=right.pos.copy(),
    )

    start_mode = GameMode(config.start_mode)
    if start_mode != GameMode.Normal:
        _setup_restart(state, start_mode, Side.LEFT, (bx, by), [])
    else:
        # a player placed on the ball takes possession immediately
        _possession_contest(state, [])
    _update_active(state)
    return state


# --------------------------------------------------------------------------
# tick
# --------------------------------------------------------------------------

def tick(state: GameState, actions: Sequence[Optional[Action]]):
    """Advance one frame; mutates ``state`` and returns ``(state, events)``.

    ``actions`` lists one entry per player, left team indices first then
    right; entries must be ``None`` exactly for sent-off players.
    """
    if state.frame >= state.duration_frames:
        raise ContractViolation("episode is over; reset before ticking again")
    n_left, n_right = state.left.n, state.right.n
    if len(actions) != n_left + n_right:
        raise ContractViolation(
            f"need {n_left + n_right} actions (left then right), got {len(actions)}"
        )
    ids_left = _action_ids(actions[:n_left], state.left, Side.LEFT)
    ids_right = _action_ids(actions[n_left:], state.right, Side.RIGHT)

    events: list[Event] = []
    mode_at_start = state.mode

    # the restart taker acting (anything but Idle) resumes open play
    if mode_at_start != GameMode.Normal and state.restart_taker is not None:
        ts, ti = state.restart_taker
        ids = ids_left if ts is Side.LEFT else ids_right
        if ids[ti] > 0:
            state.mode = GameMode.Normal
            state.restart_taker = None

    lt, rt = state.left, state.right
    kernels.advance_team(ids_left, lt.pos, lt.vel, lt.facing, lt.tiredness,
                         lt.base_speed, lt.sticky_dir, lt.sticky_sprint,
                         lt.sticky_dribble, lt.sent_off)
    kernels.advance_team(ids_right, rt.pos, rt.vel, rt.facing, rt.tiredness,
                         rt.base_speed, rt.sticky_dir, rt.sticky_sprint,
                         rt.sticky_dribble, rt.sent_off)

    if state.ball.owned_by is not None:
        _carry_ball(state)

    owner = state.ball.owned_by
    if owner is not None:
        side, idx = owner
        ids = ids_left if side is Side.LEFT else ids_right
        act = int(ids[idx])
        if act in _KICK_IDS:
            _execute_kick(state, side, idx, Action(act), mode_at_start, events)

    if state.ball.owned_by is None:
        b = state.ball
        arr = np.array([b.position.x, b.position.y, b.z, *b.velocity],
                       dtype=np.float64)
        kernels.integrate_ball(arr)
        state.ball = BallState(position=Vec2(arr[0], arr[1]), z=float(arr[2]),
                               velocity=(float(arr[3]), float(arr[4]),
                                         float(arr[5])),
                               owned_by=None)

    if state.mode == GameMode.Normal:
        _resolve_slides(state, ids_left, ids_right, events)
    if state.mode == GameMode.Normal:
        _keeper_save_check(state, events)
    if state.mode == GameMode.Normal:
        _possession_contest(state, events)
    if state.mode == GameMode.Normal:
        _boundary_checks(state, events)

    _update_active(state)
    state.frame += 1
    return state, events


def _action_ids(actions, team: TeamArrays, side: Side) -> np.ndarray:
    ids = np.empty(team.n, dtype=np.int64)
    for i, a in enumerate(actions):
        if team.sent_off[i]:
            if a is not None:
                raise ContractViolation(
                    f"{side.name.lower()} player {i} is sent off and may not act"
                )
            ids[i] = -1
        else:
            if a is None:
                raise ContractViolation(
                    f"missing action for {side.name.lower()} player {i}"
                )
            ids[i] = int(a)
            if not 0 <= ids[i] < 19:
                raise ContractViolation(f"invalid action id {ids[i]}")
    return ids


def _carry_ball(state: GameState) -> None:
    side, idx = state.ball.owned_by
    t = state.team(side)
    off = C.CARRY_OFFSET_DRIBBLE if t.sticky_dribble[idx] else C.CARRY_OFFSET
    bx = float(t.pos[idx, 0] + t.facing[idx, 0] * off)
    by = float(t.pos[idx, 1] + t.facing[idx, 1] * off)
    state.ball = BallState(
        position=Vec2(bx, by), z=0.0,
        velocity=(float(t.vel[idx, 0]), float(t.vel[idx, 1]), 0.0),
        owned_by=state.ball.owned_by,
    )


# --------------------------------------------------------------------------
# kicks
# --------------------------------------------------------------------------

def pass_target(state: GameState, side: Side, from_idx: int):
    """Best pass option: (teammate index or None, its score).

    Score = forward progress toward the attacked goal minus a crowding
    penalty for nearby opponents.  Shared by the kick resolver and the bots.
    """
    team = state.team(side)
    opp = state.team(side.other)
    attack = side.attack_sign
    opp_alive = (opp.sent_off == 0).astype(np.uint8)
    best_idx, best_score = None, -math.inf
    for j in range(team.n):
        if j == from_idx or team.sent_off[j]:
            continue
        progress = float(team.pos[j, 0]) * attack
        _, d2 = kernels.masked_nearest(float(team.pos[j, 0]),
                                       float(team.pos[j, 1]),
                                       opp.pos, opp_alive)
        d = math.sqrt(d2) if d2 != np.inf else math.inf
        crowd = max(0.0, 0.25 - d)
        score = progress - 2.0 * crowd
        if score > best_score:
            best_idx, best_score = j, score
    return best_idx, best_score


def resolve_kick(state: GameState, kicker: tuple[Side, int], kind: Action) -> BallState:
    """Ball state after a kick; a no-op returning the current ball when the
    kicker does not own it (kick inputs are forgiving, never an error).

    Short and long passes aim at the best-scored teammate, shots at the
    middle of the goal mouth; high passes are lofted so they clear control
    height mid-flight.  Stochastic mode perturbs the direction with RNG
    noise; deterministic mode applies none.
    """
    if state.ball.owned_by != kicker:
        return state.ball
    side, idx = kicker
    attack = side.attack_sign
    origin = state.ball.position
    speed = _KICK_SPEED[kind]
    lift = C.HIGH_PASS_LIFT if kind == Action.HighPass else 0.0

    if kind == Action.Shot:
        tx, ty = attack * C.PITCH_HALF_X, 0.0
    else:
        target_idx, _ = pass_target(state, side, idx)
        if target_idx is None:
            tx, ty = attack * C.PITCH_HALF_X, 0.0
        else:
            team = state.team(side)
            tx, ty = float(team.pos[target_idx, 0]), float(team.pos[target_idx, 1])

    dx, dy = tx - origin.x, ty - origin.y
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        dx, dy = attack, 0.0
    else:
        dx, dy = dx / norm, dy / norm
    if state.stochastic:
        angle = math.atan2(dy, dx) + C.KICK_NOISE_STD * state.rng.normal()
        dx, dy = math.cos(angle), math.sin(angle)

    return BallState(
        position=origin,
        z=state.ball.z,
        velocity=(dx * speed, dy * speed, lift),
        owned_by=None,
    )


def _execute_kick(state: GameState, side: Side, idx: int, kind: Action,
                  mode_at_start: GameMode, events: list[Event]) -> None:
    new_ball = resolve_kick(state, (side, idx), kind)
    if new_ball.owned_by is not None:  # no-op kick
        return
    # face the kick direction so a later carry resumes sensibly
    vx, vy = new_ball.velocity[0], new_ball.velocity[1]
    norm = math.hypot(vx, vy)
    if norm > 0.0:
        t = state.team(side)
        t.facing[idx, 0] = vx / norm
        t.facing[idx, 1] = vy / norm
    state.ball = new_ball
    state.kick_id += 1
    state.last_kick_kind = kind
    state.last_kicker = (side, idx)
    state.last_touch = (side, idx)
    state.kick_grace_until = state.frame + C.KICK_GRACE_FRAMES
    if (kind in _PASS_KINDS and state.offsides_enabled
            and mode_at_start == GameMode.Normal):
        state.offside_flags = frozenset(offside_check(state, (side, idx)))
    else:
        state.offside_flags = frozenset()
    events.append(Event(EventKind.KICK, side, idx, kind.name))


def offside_check(state: GameState, passer: tuple[Side, int]) -> list[tuple[Side, int]]:
    """Teammates of the passer in an offside position at this frame.

    A receiver is flagged when, in the passer's attacking frame, they are
    (a) in the opponent half, (b) strictly ahead of the ball, and
    (c) strictly ahead of the second-last opponent.  With fewer than two
    opponents on the pitch nobody is flagged.
    """
    side, pidx = passer
    attack = side.attack_sign
    team = state.team(side)
    opp = state.team(side.other)
    opp_x = sorted(
        (float(opp.pos[i, 0]) * attack for i in range(opp.n) if not opp.sent_off[i]),
        reverse=True,
    )
    if len(opp_x) < 2:
        return []
    second_last = opp_x[1]
    ball_x = state.ball.position.x * attack
    flagged = []
    for j in range(team.n):
        if j == pidx or team.sent_off[j]:
            continue
        px = float(team.pos[j, 0]) * attack
        if px > 0.0 and px > ball_x and px > second_last:
            flagged.append((side, j))
    return flagged


# --------------------------------------------------------------------------
# tackles, cards, keeper
# --------------------------------------------------------------------------

def _resolve_slides(state: GameState, ids_left, ids_right, events) -> None:
    for side, ids in ((Side.LEFT, ids_left), (Side.RIGHT, ids_right)):
        team = state.team(side)
        for idx in range(team.n):
            if ids[idx] != int(Action.Sliding) or team.sent_off[idx]:
                continue
            _slide(state, side, idx, events)
            if state.mode != GameMode.Normal:  # a foul stopped play
                return


def _slide(state: GameState, side: Side, idx: int, events) -> None:
    team = state.team(side)
    opp = state.team(side.other)
    px, py = float(team.pos[idx, 0]), float(team.pos[idx, 1])

    ball = state.ball
    ball_eligible = (
        ball.z <= C.CONTROL_HEIGHT
        and (ball.owned_by is None or ball.owned_by[0] != side)
    )
    if ball_eligible:
        dbx, dby = ball.position.x - px, ball.position.y - py
        d2_ball = dbx * dbx + dby * dby
    else:
        d2_ball = math.inf

    opp_alive = (opp.sent_off == 0).astype(np.uint8)
    opp_idx, d2_opp = kernels.masked_nearest(px, py, opp.pos, opp_alive)

    if d2_ball <= _SLIDE_R2 and d2_ball <= d2_opp:
        if (side, idx) in state.offside_flags:
            # a flagged receiver touching first is still offside
            events.append(Event(EventKind.OFFSIDE, side, idx))
            spot = (
                max(-0.98, min(0.98, ball.position.x)),
                max(-0.40, min(0.40, ball.position.y)),
            )
            _setup_restart(state, GameMode.FreeKick, side.other, spot, events)
            return
        # clean tackle: ball won, snapped to the tackler
        _grant_possession(state, side, idx, events, snap=True)
        state.last_kick_kind = None
    elif d2_opp <= _SLIDE_R2:
        _foul(state, side, idx, opp_idx, events)


def _foul(state: GameState, side: Side, idx: int, victim_idx: int, events) -> None:
    events.append(Event(EventKind.FOUL, side, idx))
    if state.rng.uniform() < C.FOUL_CARD_PROB:
        _book(state, side, idx, events)
    opp = state.team(side.other)
    spot = (float(opp.pos[victim_idx, 0]), float(opp.pos[victim_idx, 1]))
    # foul inside the offender's own box concedes a penalty
    own_box = (spot[0] * side.attack_sign <= -C.BOX_MIN_X
               and abs(spot[1]) <= C.BOX_HALF_Y)
    if own_box:
        pen_spot = (-side.attack_sign * C.PENALTY_SPOT_X, 0.0)
        _setup_restart(state, GameMode.Penalty, side.other, pen_spot, events)
    else:
        _setup_restart(state, GameMode.FreeKick, side.other, spot, events)


def _book(state: GameState, side: Side, idx: int, events) -> None:
    team = state.team(side)
    team.yellow_cards[idx] += 1
    events.append(Event(EventKind.YELLOW_CARD, side, idx))
    if team.yellow_cards[idx] >= 2:
        events.append(Event(EventKind.RED_CARD, side, idx))
        _send_off(state, side, idx)


def _send_off(state: GameState, side: Side, idx: int) -> None:
    team = state.team(side)
    team.sent_off[idx] = 1
    team.pos[idx] = (-C.PITCH_HALF_X, -C.PITCH_HALF_Y)
    team.vel[idx] = 0.0
    team.sticky_dir[idx] = -1
    team.sticky_sprint[idx] = 0
    team.sticky_dribble[idx] = 0
    if state.ball.owned_by == (side, idx):
        state.ball = BallState(position=state.ball.position, z=state.ball.z,
                               velocity=state.ball.velocity, owned_by=None)


def _keeper_save_check(state: GameState, events) -> None:
    ball = state.ball
    if ball.owned_by is not None or state.last_kick_kind != Action.Shot:
        return
    if ball.z > C.CROSSBAR_Z:
        return
    vx = ball.velocity[0]
    for side in (Side.LEFT, Side.RIGHT):
        if state.save_attempted_kick[int(side)] == state.kick_id:
            continue
        goal_x = -side.attack_sign  # own goal line
        if vx * goal_x <= 0.0:      # shot not heading at this side's goal
            continue
        team = state.team(side)
        keeper = next(
            (i for i in range(team.n)
             if team.roles[i] == int(Role.Keeper) and not team.sent_off[i]),
            None,
        )
        if keeper is None:
            continue
        dx = float(team.pos[keeper, 0]) - ball.position.x
        dy = float(team.pos[keeper, 1]) - ball.position.y
        if dx * dx + dy * dy > _KEEPER_R2:
            continue
        attempted = list(state.save_attempted_kick)
        attempted[int(side)] = state.kick_id
        state.save_attempted_kick = tuple(attempted)
        p_save = C.KEEPER_SAVE_BASE + C.KEEPER_SAVE_THETA_GAIN * state.theta[int(side)]
        if state.rng.uniform() < p_save:
            _grant_possession(state, side, keeper, events, snap=True)
            state.last_kick_kind = None
        return


# --------------------------------------------------------------------------
# possession
# --------------------------------------------------------------------------

def _grant_possession(state: GameState, side: Side, idx: int, events,
                      snap: bool = False) -> None:
    team = state.team(side)
    if snap:
        pos = Vec2(float(team.pos[idx, 0]), float(team.pos[idx, 1]))
    else:
        pos = state.ball.position
    state.ball = BallState(position=pos, z=0.0, velocity=(0.0, 0.0, 0.0),
                           owned_by=(side, idx))
    state.last_touch = (side, idx)
    state.offside_flags = frozenset()
    if state.last_possession_side != side:
        events.append(Event(EventKind.POSSESSION_CHANGE, side, idx))
        state.last_possession_side = side


def _contest_candidates(state: GameState):
    """Nearest eligible claimant per team as (side, idx, d2) entries."""
    ball = state.ball
    bx, by = ball.position.x, ball.position.y
    owner = ball.owned_by
    out = []
    for side in (Side.LEFT, Side.RIGHT):
        team = state.team(side)
        mask = (team.sent_off == 0).astype(np.uint8)
        if owner is not None:
            if owner[0] == side:
                # teammates never take the ball off their own carrier
                mask[:] = 0
                mask[owner[1]] = 1
        elif (state.frame < state.kick_grace_until
              and state.last_kicker is not None
              and state.last_kicker[0] == side):
            mask[state.last_kicker[1]] = 0
        idx, d2 = kernels.masked_nearest(bx, by, team.pos, mask)
        if idx >= 0:
            out.append((side, idx, d2))
    return out


def _possession_contest(state: GameState, events) -> None:
    ball = state.ball
    if ball.z > C.CONTROL_HEIGHT:
        return
    candidates = [
        (d2, int(side), idx, side)
        for side, idx, d2 in _contest_candidates(state)
        if d2 <= _CONTROL_R2
    ]
    if not candidates:
        return
    d2, _, idx, side = min(candidates)  # ties: left before right, low index
    winner = (side, idx)
    if winner == ball.owned_by:
        return
    if winner in state.offside_flags:
        events.append(Event(EventKind.OFFSIDE, side, idx))
        spot = (
            max(-0.98, min(0.98, ball.position.x)),
            max(-0.40, min(0.40, ball.position.y)),
        )
        _setup_restart(state, GameMode.FreeKick, side.other, spot, events)
        return
    _grant_possession(state, side, idx, events)


# --------------------------------------------------------------------------
# boundaries and restarts
# --------------------------------------------------------------------------

def _boundary_checks(state: GameState, events) -> None:
    ball = state.ball
    x, y, z = ball.position.x, ball.position.y, ball.z
    owned = ball.owned_by is not None

    if abs(x) > C.PITCH_HALF_X and abs(y) <= C.GOAL_HALF_WIDTH and z <= C.CROSSBAR_Z:
        scoring = Side.LEFT if x > 0 else Side.RIGHT
        conceding = scoring.other
        toucher = state.last_touch
        if toucher is not None and toucher[0] == conceding:
            events.append(Event(EventKind.OWN_GOAL, conceding, toucher[1]))
        else:
            player = toucher[1] if toucher and toucher[0] == scoring else None
            events.append(Event(EventKind.GOAL, scoring, player))
        score = list(state.score)
        score[int(scoring)] += 1
        state.score = tuple(score)
        _setup_restart(state, GameMode.KickOff, conceding, (0.0, 0.0), events)
        return

    if owned:
        return

    last_side = state.last_touch[0] if state.last_touch else Side.RIGHT

    if abs(x) > C.PITCH_HALF_X:
        line_side = Side.RIGHT if x > 0 else Side.LEFT  # side defending that line
        sx = math.copysign(C.PITCH_HALF_X, x)
        if last_side == line_side:
            new_owner = line_side.other
            cy = C.PITCH_HALF_Y if y >= 0 else -C.PITCH_HALF_Y
            events.append(Event(EventKind.OUT_GOAL_LINE, new_owner, None, "corner"))
            _setup_restart(state, GameMode.Corner, new_owner, (sx, cy), events)
        else:
            events.append(Event(EventKind.OUT_GOAL_LINE, line_side, None, "goal_kick"))
            _setup_restart(state, GameMode.GoalKick, line_side,
                           (math.copysign(C.GOAL_KICK_X, x), 0.0), events)
        return

    if abs(y) > C.PITCH_HALF_Y:
        new_owner = last_side.other
        spot = (max(-1.0, min(1.0, x)), math.copysign(C.PITCH_HALF_Y, y))
        events.append(Event(EventKind.OUT_THROW_IN, new_owner))
        _setup_restart(state, GameMode.ThrowIn, new_owner, spot, events)


def _setup_restart(state: GameState, mode: GameMode, owner: Side,
                   spot: tuple[float, float], events) -> None:
    """Place the ball (and for kick-offs, both teams), hand it to a taker.

    The taker is the owner side's nearest player, teleported onto the spot;
    play resumes (mode returns to Normal) on the taker's first action.
    """
    state.mode = mode
    state.mode_owner = owner
    if mode == GameMode.KickOff:
        spot = (0.0, 0.0)
        for side in (Side.LEFT, Side.RIGHT):
            team = state.team(side)
            formation = (state.kickoff_pos_left if side is Side.LEFT
                         else state.kickoff_pos_right)
            alive = team.sent_off == 0
            team.pos[alive] = formation[alive]
            team.vel[:] = 0.0
            team.sticky_dir[:] = -1
            team.sticky_sprint[:] = 0
            team.sticky_dribble[:] = 0
            team.facing[:] = (side.attack_sign, 0.0)

    state.ball = BallState(position=Vec2(*spot), z=0.0,
                           velocity=(0.0, 0.0, 0.0), owned_by=None)
    state.offside_flags = frozenset()
    state.last_kick_kind = None
    state.last_kicker = None
    state.kick_grace_until = -1

    team = state.team(owner)
    mask = (team.sent_off == 0).astype(np.uint8)
    taker, _ = kernels.masked_nearest(spot[0], spot[1], team.pos, mask)
    if taker < 0:
        state.restart_taker = None
        return
    team.pos[taker] = spot
    team.vel[taker] = 0.0
    team.facing[taker] = (owner.attack_sign, 0.0)
    state.restart_taker = (owner, taker)
    _grant_possession(state, owner, taker, events, snap=True)


def _update_active(state: GameState) -> None:
    owner = state.ball.owned_by
    bx, by = state.ball.position.x, state.ball.position.y
    for side in (Side.LEFT, Side.RIGHT):
        if owner is not None and owner[0] == side:
            state.active_player[int(side)] = owner[1]
            continue
        team = state.team(side)
        mask = (team.sent_off == 0).astype(np.uint8)
        idx, _ = kernels.masked_nearest(bx, by, team.pos, mask)
        if idx >= 0:
            state.active_player[int(side)] = idx
