"""Pure-numpy kernel backend.

The compiled backend in ``_fast.pyx`` implements the same three functions
with scalar loops.  Both must stay bit-identical: elementwise operations in
the same order, no reassociation, no fused multiply-add.  The parity test
suite compares them on random inputs and on long simulations.
"""

from __future__ import annotations

import numpy as np

from .. import constants as C

# direction slot -> unit vector; shared with the compiled backend so both
# read the exact same float table
DIR_TABLE = np.array(
    [
        (-1.0, 0.0),
        (-np.sqrt(0.5), np.sqrt(0.5)),
        (0.0, 1.0),
        (np.sqrt(0.5), np.sqrt(0.5)),
        (1.0, 0.0),
        (np.sqrt(0.5), -np.sqrt(0.5)),
        (0.0, -1.0),
        (-np.sqrt(0.5), -np.sqrt(0.5)),
    ],
    dtype=np.float64,
)

_CLAMP_X = C.PITCH_HALF_X + C.CONTAIN_MARGIN
_CLAMP_Y = C.PITCH_HALF_Y + C.CONTAIN_MARGIN


def advance_team(actions, pos, vel, facing, tiredness, base_speed,
                 sticky_dir, sticky_sprint, sticky_dribble, sent_off):
    """Apply sticky-action updates, movement and fatigue for one team, in place.

    ``actions`` holds action ids (int64), -1 for players given no action
    (sent off).  Flag arrays are uint8.  Speed factors multiply in the fixed
    order fatigue, sprint, dribble; changing the order changes low bits and
    breaks backend parity.
    """
    alive = sent_off == 0

    # sticky updates
    is_dir = alive & (actions >= 1) & (actions <= 8)
    sticky_dir[is_dir] = (actions[is_dir] - 1).astype(np.int8)
    sticky_dir[alive & (actions == 17)] = -1       # StopMoving
    sticky_sprint[alive & (actions == 16)] = 1     # Sprint
    sticky_sprint[alive & (actions == 18)] = 0     # StopSprint
    sticky_dribble[alive & (actions == 14)] = 1    # Dribble
    sticky_dribble[alive & (actions == 15)] = 0    # StopDribble

    moving = alive & (sticky_dir >= 0)
    spr = sticky_sprint != 0
    drb = sticky_dribble != 0

    speed = base_speed * (1.0 - C.FATIGUE_SPEED_PENALTY * tiredness)
    speed = np.where(spr, speed * C.SPRINT_MULT, speed)
    speed = np.where(drb, speed * C.DRIBBLE_MULT, speed)

    dvec = DIR_TABLE[np.where(sticky_dir >= 0, sticky_dir, 0)]
    step = dvec * speed[:, None]
    vel[:] = np.where(moving[:, None], step, 0.0)
    pos += vel
    # sent-off players are frozen entirely, including the clamp
    pos[alive, 0] = np.clip(pos[alive, 0], -_CLAMP_X, _CLAMP_X)
    pos[alive, 1] = np.clip(pos[alive, 1], -_CLAMP_Y, _CLAMP_Y)
    facing[:] = np.where(moving[:, None], dvec, facing)

    sprinting = moving & spr
    new_t = np.where(
        sprinting,
        tiredness + C.FATIGUE_SPRINT,
        np.where(moving, tiredness + C.FATIGUE_MOVE, tiredness - C.FATIGUE_RECOVERY),
    )
    new_t = np.where(alive, new_t, tiredness)
    tiredness[:] = np.clip(new_t, 0.0, 1.0)


def integrate_ball(ball):
    """One frame of free-ball physics on (x, y, z, vx, vy, vz), in place.

    Position first, then the landing check zeroes vertical motion, then
    horizontal friction; airborne balls get gravity applied to vz.
    """
    ball[0] = ball[0] + ball[3]
    ball[1] = ball[1] + ball[4]
    z_new = ball[2] + ball[5]
    if z_new <= 0.0:
        ball[2] = 0.0
        ball[5] = 0.0
    else:
        ball[2] = z_new
        ball[5] = ball[5] - C.GRAVITY
    ball[3] = ball[3] * C.BALL_FRICTION
    ball[4] = ball[4] * C.BALL_FRICTION


def masked_nearest(px, py, pos, mask):
    """Index and squared distance of the nearest masked-in row, (-1, inf) if none.

    ``mask`` is uint8; ties go to the lowest index (argmin keeps the first
    minimum).
    """
    keep = mask != 0
    if not keep.any():
        return -1, np.inf
    dx = pos[:, 0] - px
    dy = pos[:, 1] - py
    d2 = dx * dx + dy * dy
    d2 = np.where(keep, d2, np.inf)
    idx = int(np.argmin(d2))
    return idx, float(d2[idx])
