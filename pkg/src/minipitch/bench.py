"""Throughput benchmark: independent environments on a process pool.

Each worker owns one environment, drives it with uniformly random actions
(resetting at episode end) for a fixed number of steps, and reports its
count; the parent measures wall time around the whole pool.  Environments
never share state, so throughput scales with cores until the machine
saturates.  A backend comparison mode reruns the measurement on each kernel
backend.
"""

from __future__ import annotations

import multiprocessing as mp
import os
import random
import time
from dataclasses import dataclass

from .env import EnvOptions, create_environment

_SECONDS_PER_DAY = 86_400.0


@dataclass(frozen=True)
class BenchmarkRow:
    n_envs: int
    steps: int
    seconds: float
    steps_per_sec: float
    steps_per_day: float
    backend: str

    def csv(self) -> str:
        return (f"{self.n_envs},{self.steps},{self.seconds:.4f},"
                f"{self.steps_per_sec:.1f},{self.steps_per_day:.0f}")


CSV_HEADER = "n_envs,steps,seconds,steps_per_sec,steps_per_day"


@dataclass(frozen=True)
class ThroughputReport:
    rows: tuple[BenchmarkRow, ...]

    def csv(self) -> str:
        return "\n".join([CSV_HEADER] + [row.csv() for row in self.rows]) + "\n"


def _worker(args) -> int:
    scenario, representation, steps, seed, backend = args
    if backend:
        from . import kernels

        kernels.set_backend(backend)
    env = create_environment(
        scenario, EnvOptions(representation=representation, seed=seed)
    )
    rng = random.Random(seed)
    n_actions = sum(env.controlled_counts())
    env.reset()
    done_steps = 0
    while done_steps < steps:
        result = env.step([rng.randrange(19) for _ in range(n_actions)])
        done_steps += 1
        if result.done:
            env.reset()
    return done_steps


def run_benchmark(n_envs: int, steps_per_env: int, representation: str = "raw",
                  scenario: str = "11_vs_11_medium", seed: int = 0,
                  backend: str = "") -> BenchmarkRow:
    """One benchmark row: n_envs workers, steps_per_env steps each."""
    if n_envs < 1:
        raise ValueError("n_envs must be >= 1")
    jobs = [
        (scenario, representation, steps_per_env, seed + i, backend)
        for i in range(n_envs)
    ]
    # every row goes through a pool (n=1 included) so startup overhead and
    # backend switching affect all measurements equally
    start = time.perf_counter()
    ctx = mp.get_context("fork" if os.name == "posix" else "spawn")
    with ctx.Pool(processes=n_envs) as pool:
        counts = pool.map(_worker, jobs)
    seconds = time.perf_counter() - start
    total = sum(counts)
    per_sec = total / seconds if seconds > 0 else float("inf")
    from . import kernels

    return BenchmarkRow(
        n_envs=n_envs,
        steps=total,
        seconds=seconds,
        steps_per_sec=per_sec,
        steps_per_day=per_sec * _SECONDS_PER_DAY,
        backend=backend or kernels.backend_name(),
    )


def run_scaling(env_counts, steps_per_env: int, representation: str = "raw",
                scenario: str = "11_vs_11_medium", seed: int = 0,
                backend: str = "") -> ThroughputReport:
    rows = tuple(
        run_benchmark(n, steps_per_env, representation, scenario, seed, backend)
        for n in env_counts
    )
    return ThroughputReport(rows)


def compare_backends(steps_per_env: int = 2000, representation: str = "raw",
                     scenario: str = "11_vs_11_medium",
                     seed: int = 0) -> dict[str, BenchmarkRow]:
    """Single-environment throughput per kernel backend."""
    from . import kernels

    return {
        name: run_benchmark(1, steps_per_env, representation, scenario, seed,
                            backend=name)
        for name in kernels.available_backends()
    }
