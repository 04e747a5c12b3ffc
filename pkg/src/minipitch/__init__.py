"""minipitch: a deterministic top-down football simulation for RL research.

Quick start::

    from minipitch import create_environment

    env = create_environment("11_vs_11_stochastic")
    obs = env.reset()
    done = False
    while not done:
        result = env.step([0])
        done = result.done

Key pieces: the fixed-timestep engine (``minipitch.engine``), difficulty
bots (``minipitch.bots``), observation transforms (``minipitch.observations``),
goal and shaped rewards (``minipitch.rewards``), scenario configs and the
builtin set (``minipitch.scenarios``), the environment facade
(``minipitch.env``), replays, the throughput benchmark, and the viewer wire
server behind the ``minipitch`` CLI.
"""

from .actions import Action, N_ACTIONS
from .env import Environment, EnvOptions, StepResult, create_environment
from .errors import ConfigurationError, ContractViolation, ReplayError
from .rewards import CheckpointTracker, checkpoint_step, checkpoint_thresholds, scoring_reward
from .scenarios import (
    ACADEMY_NAMES,
    BENCHMARK_NAMES,
    BUILTIN_NAMES,
    ScenarioConfig,
    builtin,
    is_episode_done,
    load_scenario,
    parse_scenario,
    serialize_scenario,
)
from .state import (
    BallState,
    Event,
    EventKind,
    GameMode,
    GameState,
    PlayerState,
    Role,
    Side,
    Vec2,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "N_ACTIONS",
    "Environment",
    "EnvOptions",
    "StepResult",
    "create_environment",
    "ConfigurationError",
    "ContractViolation",
    "ReplayError",
    "CheckpointTracker",
    "checkpoint_step",
    "checkpoint_thresholds",
    "scoring_reward",
    "ScenarioConfig",
    "builtin",
    "load_scenario",
    "parse_scenario",
    "serialize_scenario",
    "is_episode_done",
    "ACADEMY_NAMES",
    "BENCHMARK_NAMES",
    "BUILTIN_NAMES",
    "BallState",
    "Event",
    "EventKind",
    "GameMode",
    "GameState",
    "PlayerState",
    "Role",
    "Side",
    "Vec2",
    "__version__",
]
