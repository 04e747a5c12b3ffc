"""The bound environment: array observations, gym tuple returns."""

from __future__ import annotations

import random
from typing import Optional, Sequence, Union

import numpy as np

from minipitch import Action, EnvOptions, N_ACTIONS, create_environment as _create


class DiscreteActionSpace:
    """19-way discrete action space with the usual sample()/contains()."""

    def __init__(self, n: int = N_ACTIONS, seed: Optional[int] = None):
        self.n = n
        self._rng = random.Random(seed)

    def seed(self, value: int) -> None:
        self._rng.seed(value)

    def sample(self) -> int:
        return self._rng.randrange(self.n)

    def contains(self, value) -> bool:
        try:
            return 0 <= int(value) < self.n
        except (TypeError, ValueError):
            return False

    def __repr__(self) -> str:
        return f"Discrete({self.n})"


def _to_array(obs, representation: str):
    if representation == "float115":
        return np.asarray(obs, dtype=np.float64)
    if representation == "smm":
        return np.asarray(obs, dtype=np.uint8)
    if representation == "pixels":
        return obs.array
    return obs  # raw passes through untouched


def _stack_arrays(frames, representation: str):
    arrays = [_to_array(f, representation) for f in frames]
    if representation == "float115":
        return np.concatenate(arrays, axis=0)
    if representation == "smm":
        return np.concatenate(arrays, axis=0)
    if representation == "pixels":
        return np.concatenate(arrays, axis=2)
    return tuple(arrays)


class BoundEnv:
    """One minipitch environment behind the gym calling convention."""

    def __init__(self, env, representation: str, stacked: bool):
        self._env = env
        self._representation = representation
        self._stacked = stacked
        self.action_space = DiscreteActionSpace()
        self._n_agents = sum(env.controlled_counts())

    @property
    def unwrapped(self):
        return self._env

    def _convert_one(self, obs):
        if self._stacked:
            return _stack_arrays(obs, self._representation)
        return _to_array(obs, self._representation)

    def _convert(self, observations: list):
        converted = [self._convert_one(o) for o in observations]
        if self._n_agents == 1:
            return converted[0]
        if self._representation == "raw":
            return converted
        return np.stack(converted, axis=0)

    def seed(self, value: int) -> None:
        self._env.seed(value)
        self.action_space.seed(value)

    def reset(self):
        return self._convert(self._env.reset())

    def step(self, action: Union[int, Sequence[int]]):
        scalar = np.isscalar(action) or isinstance(action, (int, np.integer, Action))
        actions = [int(action)] if scalar else [int(a) for a in action]
        result = self._env.step(actions)
        observation = self._convert(result.observations)
        if scalar:
            reward = float(result.rewards[0])
        else:
            reward = np.asarray(result.rewards, dtype=np.float64)
        return observation, reward, result.done, result.info

    def set_opponent_policy(self, policy) -> None:
        self._env.set_opponent_policy(policy)

    def render_frame(self):
        """Current frame as (h, w, 3) uint8 regardless of representation."""
        from minipitch.observations import to_pixels

        w, h = self._env.options.render_size
        return to_pixels(self._env.state, w, h).array


def create_environment(
    env_name: str = "11_vs_11_stochastic",
    representation: str = "float115",
    rewards: str = "scoring",
    stacked: bool = False,
    render: bool = False,
    seed: int = 0,
    stacking: int = 4,
    render_size: tuple = (96, 72),
    stochastic: Optional[bool] = None,
) -> BoundEnv:
    """Gym-style factory mirroring the core create_environment.

    ``render=True`` selects the pixel representation (the deterministic
    rasterizer stands in for a live renderer); ``stacked=True`` stacks
    ``stacking`` consecutive frames (default 4).
    """
    rep = "pixels" if render else representation
    options = EnvOptions(
        representation=rep,
        stacking=stacking if stacked else 1,
        reward=rewards,
        seed=seed,
        render_size=render_size,
        stochastic=stochastic,
    )
    return BoundEnv(_create(env_name, options), rep, stacked)
