"""Gym-style calling convention over minipitch environments.

The usual loop works unchanged::

    import minipitch_gym as football_env

    env = football_env.create_environment(
        env_name="11_vs_11_stochastic",
        render=True)
    env.reset()
    done = False
    while not done:
        action = env.action_space.sample()
        observation, reward, done, info = env.step(action)

Observations come back as numpy arrays (float vector ``(115,)`` or
``(115*k,)`` stacked; occupancy planes ``(4, 72, 96)`` or ``(4k, 72, 96)``;
pixels ``(h, w, 3)`` or ``(h, w, 3k)``).  A single controlled player uses
scalar actions and rewards; multi-agent control uses sequences, mirrored in
the return arity.
"""

from .env import BoundEnv, DiscreteActionSpace, create_environment

__all__ = ["BoundEnv", "DiscreteActionSpace", "create_environment"]
__version__ = "0.1.0"
