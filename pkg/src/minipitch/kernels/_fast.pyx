# cython: language_level=3
"""Compiled kernel backend: scalar loops over the team arrays.

Must stay bit-identical to kernels/reference.py; speed factors multiply in
the order fatigue, sprint, dribble, and the build disables FMA contraction.
"""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.math cimport INFINITY

from .. import constants as C
from .reference import DIR_TABLE

cdef double CLAMP_X = C.PITCH_HALF_X + C.CONTAIN_MARGIN
cdef double CLAMP_Y = C.PITCH_HALF_Y + C.CONTAIN_MARGIN
cdef double FATIGUE_SPEED_PENALTY = C.FATIGUE_SPEED_PENALTY
cdef double SPRINT_MULT = C.SPRINT_MULT
cdef double DRIBBLE_MULT = C.DRIBBLE_MULT
cdef double FATIGUE_SPRINT = C.FATIGUE_SPRINT
cdef double FATIGUE_MOVE = C.FATIGUE_MOVE
cdef double FATIGUE_RECOVERY = C.FATIGUE_RECOVERY
cdef double BALL_FRICTION = C.BALL_FRICTION
cdef double GRAVITY = C.GRAVITY

cdef double[:, ::1] _DIRS = np.ascontiguousarray(DIR_TABLE)


def advance_team(cnp.int64_t[::1] actions,
                 double[:, ::1] pos,
                 double[:, ::1] vel,
                 double[:, ::1] facing,
                 double[::1] tiredness,
                 double[::1] base_speed,
                 cnp.int8_t[::1] sticky_dir,
                 cnp.uint8_t[::1] sticky_sprint,
                 cnp.uint8_t[::1] sticky_dribble,
                 cnp.uint8_t[::1] sent_off):
    cdef Py_ssize_t i, n = pos.shape[0]
    cdef cnp.int64_t a
    cdef double speed, t, dx, dy, x, y
    cdef bint moving, sprinting

    for i in range(n):
        if sent_off[i]:
            vel[i, 0] = 0.0
            vel[i, 1] = 0.0
            continue
        a = actions[i]
        if 1 <= a <= 8:
            sticky_dir[i] = <cnp.int8_t> (a - 1)
        elif a == 17:
            sticky_dir[i] = -1
        elif a == 16:
            sticky_sprint[i] = 1
        elif a == 18:
            sticky_sprint[i] = 0
        elif a == 14:
            sticky_dribble[i] = 1
        elif a == 15:
            sticky_dribble[i] = 0

        moving = sticky_dir[i] >= 0
        speed = base_speed[i] * (1.0 - FATIGUE_SPEED_PENALTY * tiredness[i])
        if sticky_sprint[i]:
            speed = speed * SPRINT_MULT
        if sticky_dribble[i]:
            speed = speed * DRIBBLE_MULT

        if moving:
            dx = _DIRS[sticky_dir[i], 0]
            dy = _DIRS[sticky_dir[i], 1]
            vel[i, 0] = dx * speed
            vel[i, 1] = dy * speed
            facing[i, 0] = dx
            facing[i, 1] = dy
        else:
            vel[i, 0] = 0.0
            vel[i, 1] = 0.0

        x = pos[i, 0] + vel[i, 0]
        y = pos[i, 1] + vel[i, 1]
        if x < -CLAMP_X:
            x = -CLAMP_X
        elif x > CLAMP_X:
            x = CLAMP_X
        if y < -CLAMP_Y:
            y = -CLAMP_Y
        elif y > CLAMP_Y:
            y = CLAMP_Y
        pos[i, 0] = x
        pos[i, 1] = y

        sprinting = moving and sticky_sprint[i]
        if sprinting:
            t = tiredness[i] + FATIGUE_SPRINT
        elif moving:
            t = tiredness[i] + FATIGUE_MOVE
        else:
            t = tiredness[i] - FATIGUE_RECOVERY
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        tiredness[i] = t


def integrate_ball(double[::1] ball):
    cdef double z_new
    ball[0] = ball[0] + ball[3]
    ball[1] = ball[1] + ball[4]
    z_new = ball[2] + ball[5]
    if z_new <= 0.0:
        ball[2] = 0.0
        ball[5] = 0.0
    else:
        ball[2] = z_new
        ball[5] = ball[5] - GRAVITY
    ball[3] = ball[3] * BALL_FRICTION
    ball[4] = ball[4] * BALL_FRICTION


def masked_nearest(double px, double py, double[:, ::1] pos, cnp.uint8_t[::1] mask):
    cdef Py_ssize_t i, n = pos.shape[0]
    cdef Py_ssize_t best = -1
    cdef double best_d2 = INFINITY
    cdef double dx, dy, d2
    for i in range(n):
        if not mask[i]:
            continue
        dx = pos[i, 0] - px
        dy = pos[i, 1] - py
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best_d2 = d2
            best = i
    return best, best_d2
