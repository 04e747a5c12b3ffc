"""The compiled and numpy kernel backends must agree bit for bit."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minipitch import kernels
from minipitch.actions import Action
from minipitch.digest import state_digest
from minipitch.engine import reset_state, tick
from minipitch.kernels import reference
from minipitch.scenarios import builtin

compiled = pytest.importorskip(
    "minipitch.kernels._fast", reason="compiled kernel backend not built"
)


def _random_team(rng, n=11):
    return dict(
        actions=np.array([rng.randrange(-1, 19) for _ in range(n)], dtype=np.int64),
        pos=np.array([[rng.uniform(-1.1, 1.1), rng.uniform(-0.5, 0.5)]
                      for _ in range(n)]),
        vel=np.array([[rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02)]
                      for _ in range(n)]),
        facing=np.array([[1.0, 0.0]] * n),
        tiredness=np.array([rng.uniform(0, 1) for _ in range(n)]),
        base_speed=np.array([rng.uniform(0.009, 0.011) for _ in range(n)]),
        sticky_dir=np.array([rng.randrange(-1, 8) for _ in range(n)], dtype=np.int8),
        sticky_sprint=np.array([rng.randrange(2) for _ in range(n)], dtype=np.uint8),
        sticky_dribble=np.array([rng.randrange(2) for _ in range(n)], dtype=np.uint8),
        sent_off=np.array([rng.random() < 0.1 for _ in range(n)], dtype=np.uint8),
    )


def _copy(team):
    return {k: v.copy() for k, v in team.items()}


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_advance_team_bitwise_equal(seed):
    rng = random.Random(seed)
    team = _random_team(rng)
    a, b = _copy(team), _copy(team)
    reference.advance_team(a["actions"], a["pos"], a["vel"], a["facing"],
                           a["tiredness"], a["base_speed"], a["sticky_dir"],
                           a["sticky_sprint"], a["sticky_dribble"], a["sent_off"])
    compiled.advance_team(b["actions"], b["pos"], b["vel"], b["facing"],
                          b["tiredness"], b["base_speed"], b["sticky_dir"],
                          b["sticky_sprint"], b["sticky_dribble"], b["sent_off"])
    for key in ("pos", "vel", "facing", "tiredness", "sticky_dir",
                "sticky_sprint", "sticky_dribble"):
        assert np.array_equal(a[key], b[key]), key


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_integrate_ball_bitwise_equal(seed):
    rng = random.Random(seed)
    ball = np.array([rng.uniform(-1, 1), rng.uniform(-0.4, 0.4),
                     rng.uniform(0, 0.1), rng.uniform(-0.05, 0.05),
                     rng.uniform(-0.05, 0.05), rng.uniform(-0.02, 0.02)])
    a, b = ball.copy(), ball.copy()
    for _ in range(30):
        reference.integrate_ball(a)
        compiled.integrate_ball(b)
        assert np.array_equal(a, b)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_masked_nearest_equal(seed):
    rng = random.Random(seed)
    n = rng.randrange(1, 12)
    pos = np.array([[rng.uniform(-1, 1), rng.uniform(-0.4, 0.4)]
                    for _ in range(n)])
    mask = np.array([rng.randrange(2) for _ in range(n)], dtype=np.uint8)
    px, py = rng.uniform(-1, 1), rng.uniform(-0.4, 0.4)
    ra = reference.masked_nearest(px, py, pos, mask)
    rb = compiled.masked_nearest(px, py, pos, mask)
    assert ra == rb


def test_full_episode_digest_parity():
    """Whole simulations must match across backends, not just kernels."""
    config = builtin("11_vs_11_medium")
    rnd = random.Random(7)
    script = [[Action(rnd.randrange(19)) for _ in range(22)] for _ in range(600)]

    digests = {}
    previous = kernels.backend_name()
    try:
        for backend in kernels.available_backends():
            kernels.set_backend(backend)
            state = reset_state(config, seed=11)
            for actions in script:
                tick(state, list(actions))
            digests[backend] = state_digest(state)
    finally:
        kernels.set_backend(previous)
    assert len(set(digests.values())) == 1, digests
