"""Tunable simulation constants.

All speeds and rates are per frame at the nominal 10 Hz timestep.  The pitch
is the rectangle x in [-1, 1], y in [-0.42, 0.42] (roughly a 105:68 aspect);
the left team attacks toward x = +1.  Everything gameplay-related that is a
number lives here so the whole physical model can be audited in one screen.
"""

# --- pitch geometry -------------------------------------------------------
PITCH_HALF_X = 1.0
PITCH_HALF_Y = 0.42
CONTAIN_MARGIN = 0.02        # players may overrun the lines by this much
GOAL_HALF_WIDTH = 0.044      # goal mouth spans y in [-0.044, 0.044]
CROSSBAR_Z = 0.05
BOX_MIN_X = 0.7              # penalty box: |x| >= BOX_MIN_X, |y| <= BOX_HALF_Y
BOX_HALF_Y = 0.25
PENALTY_SPOT_X = 0.8
GOAL_KICK_X = 0.9

# --- player movement ------------------------------------------------------
SPRINT_MULT = 1.4
DRIBBLE_MULT = 0.9           # close control is slower
FATIGUE_SPEED_PENALTY = 0.3  # speed multiplier = 1 - 0.3 * tiredness

# per-role base speed, units/frame (the only per-player statistic)
ROLE_BASE_SPEED = {
    "Keeper": 0.0095,
    "Defender": 0.0100,
    "Midfielder": 0.0102,
    "Forward": 0.0105,
}

# --- fatigue, per frame ---------------------------------------------------
FATIGUE_SPRINT = 0.0005
FATIGUE_MOVE = 0.0001
FATIGUE_RECOVERY = 0.0002

# --- ball physics ---------------------------------------------------------
BALL_FRICTION = 0.95         # horizontal velocity decay per frame
GRAVITY = 0.002              # vertical acceleration, units/frame^2
CONTROL_RADIUS = 0.015       # claim/interception radius
CONTROL_HEIGHT = 0.02        # ball above this cannot be controlled
CARRY_OFFSET = 0.008         # carried ball sits this far ahead of the owner
CARRY_OFFSET_DRIBBLE = 0.004
KICK_GRACE_FRAMES = 5        # kicker cannot reclaim its own kick for this long

# --- kicks ----------------------------------------------------------------
SHORT_PASS_SPEED = 0.018
LONG_PASS_SPEED = 0.036
SHOT_SPEED = 0.045
HIGH_PASS_SPEED = 0.030
HIGH_PASS_LIFT = 0.018       # initial vertical velocity of a lofted pass
KICK_NOISE_STD = 0.08        # radians, stochastic mode only

# --- tackles and fouls ----------------------------------------------------
SLIDE_RADIUS = 0.025
FOUL_CARD_PROB = 0.25        # chance a foul draws a yellow card

# --- keeper ---------------------------------------------------------------
KEEPER_REACH = 0.03
KEEPER_SAVE_BASE = 0.30
KEEPER_SAVE_THETA_GAIN = 0.65  # save prob = BASE + GAIN * theta of own team

# --- bots -----------------------------------------------------------------
BOT_SHOT_RANGE = 0.3
BOT_SPRINT_DISTANCE = 0.2
BOT_PASS_MARGIN = 0.1        # teammate must score this much better to get the ball
BOT_LONG_PASS_DISTANCE = 0.3
BOT_AIM_NOISE_MAX = 0.4      # radians at theta = 0
