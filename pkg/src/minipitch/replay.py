"""Deterministic episode recordings: record, load, verify.

Binary layout (little-endian): magic ``MPRP``, version u16, u32 header
length, a JSON header (scenario name or inline config text, seed, options
and their digest, checkpoint cadence, actions per step), then a record
stream: 0x01 frame records (u8 count + that many action bytes), 0x02
checkpoint records (u64 digest) after every 100th frame, and a 0x03 end
record (u64 final digest + u32 step count).

Checkpoint digests mix the canonical state hash with a running hash of all
recorded action bytes, so a verify pass re-simulating the file detects any
action byte change even when the mutated action is behaviorally inert.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .digest import combine_digest, state_digest
from .env import Environment, EnvOptions, create_environment
from .errors import ReplayError
from .scenarios import BUILTIN_NAMES, parse_scenario, serialize_scenario

MAGIC = b"MPRP"
VERSION = 1
DIGEST_EVERY = 100

_REC_FRAME = 0x01
_REC_CHECKPOINT = 0x02
_REC_END = 0x03

# an action source feeds the controlled players each step:
# (step_index, observations) -> sequence of action ids
ActionSource = Callable[[int, list], Sequence[int]]


@dataclass(frozen=True)
class Replay:
    """Parsed recording: header fields plus per-step actions and digests."""

    scenario: Optional[str]
    config_text: Optional[str]
    seed: int
    options: dict
    frames: tuple[tuple[int, ...], ...]
    checkpoints: tuple[tuple[int, int], ...]  # (frame, digest)
    final_digest: int
    steps: int


@dataclass(frozen=True)
class Verdict:
    ok: bool
    first_mismatch_frame: Optional[int]
    steps_checked: int

    def __str__(self) -> str:
        if self.ok:
            return f"ok ({self.steps_checked} steps)"
        return f"mismatch at frame {self.first_mismatch_frame}"


def _options_dict(options: EnvOptions) -> dict:
    return {
        "representation": options.representation,
        "stacking": options.stacking,
        "reward": options.reward,
        "stochastic": options.stochastic,
        "render_size": list(options.render_size),
    }


def _options_digest(options: dict) -> str:
    blob = json.dumps(options, sort_keys=True).encode()
    return hashlib.blake2b(blob, digest_size=8).hexdigest()


def record_episode(env: Environment, source: ActionSource, path: str) -> Replay:
    """Run one episode, recording controlled actions and periodic digests.

    The environment's seed stream is rewound to its base seed so the header
    pins exactly the episode that runs; recording mid-episode is an error.
    """
    env.seed(env._base_seed)
    scenario_name = env.config.name if env.config.name in BUILTIN_NAMES else None
    config_text = None if scenario_name else serialize_scenario(env.config)
    options = _options_dict(env.options)
    header = {
        "scenario": scenario_name,
        "config": config_text,
        "seed": env._base_seed,
        "options": options,
        "options_digest": _options_digest(options),
        "digest_every": DIGEST_EVERY,
        "actions_per_step": sum(env.controlled_counts()),
    }
    header_blob = json.dumps(header).encode("utf-8")

    frames: list[tuple[int, ...]] = []
    checkpoints: list[tuple[int, int]] = []
    actions_hash = hashlib.blake2b(digest_size=8)

    try:
        out = open(path, "wb")
    except OSError as exc:
        raise ReplayError(f"cannot write replay to {path}: {exc}") from exc
    with out:
        out.write(MAGIC)
        out.write(struct.pack("<H", VERSION))
        out.write(struct.pack("<I", len(header_blob)))
        out.write(header_blob)

        obs = env.reset()
        step_index = 0
        done = False
        while not done:
            actions = tuple(int(a) for a in source(step_index, obs))
            blob = bytes(actions)
            actions_hash.update(blob)
            out.write(struct.pack("<BB", _REC_FRAME, len(actions)))
            out.write(blob)
            frames.append(actions)
            result = env.step(actions)
            obs = result.observations
            done = result.done
            step_index += 1
            if env.state.frame % DIGEST_EVERY == 0:
                d = combine_digest(state_digest(env.state), actions_hash.digest())
                checkpoints.append((env.state.frame, d))
                out.write(struct.pack("<BQ", _REC_CHECKPOINT, d))
        final = combine_digest(state_digest(env.state), actions_hash.digest())
        out.write(struct.pack("<BQI", _REC_END, final, step_index))

    return Replay(
        scenario=scenario_name,
        config_text=config_text,
        seed=header["seed"],
        options=options,
        frames=tuple(frames),
        checkpoints=tuple(checkpoints),
        final_digest=final,
        steps=step_index,
    )


class _Reader:
    def __init__(self, blob: bytes, path: str):
        self.blob = blob
        self.off = 0
        self.path = path

    def take(self, n: int) -> bytes:
        if self.off + n > len(self.blob):
            raise ReplayError(f"{self.path}: truncated replay file")
        out = self.blob[self.off:self.off + n]
        self.off += n
        return out

    def done(self) -> bool:
        return self.off >= len(self.blob)


def load_replay(path: str) -> Replay:
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise ReplayError(f"cannot read replay {path}: {exc}") from exc
    r = _Reader(blob, path)
    if r.take(4) != MAGIC:
        raise ReplayError(f"{path}: not a replay file (bad magic)")
    (version,) = struct.unpack("<H", r.take(2))
    if version != VERSION:
        raise ReplayError(f"{path}: unsupported replay version {version}")
    (hlen,) = struct.unpack("<I", r.take(4))
    try:
        header = json.loads(r.take(hlen).decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ReplayError(f"{path}: corrupt header: {exc}") from exc

    frames: list[tuple[int, ...]] = []
    checkpoints: list[tuple[int, int]] = []
    final_digest = None
    steps = None
    frame_counter = 0
    while not r.done():
        (tag,) = struct.unpack("<B", r.take(1))
        if tag == _REC_FRAME:
            (count,) = struct.unpack("<B", r.take(1))
            frames.append(tuple(r.take(count)))
            frame_counter += 1
        elif tag == _REC_CHECKPOINT:
            (d,) = struct.unpack("<Q", r.take(8))
            checkpoints.append((frame_counter, d))
        elif tag == _REC_END:
            final_digest, steps = struct.unpack("<QI", r.take(12))
            break
        else:
            raise ReplayError(f"{path}: unknown record tag {tag:#x}")
    if final_digest is None:
        raise ReplayError(f"{path}: missing end record (truncated?)")
    if steps != len(frames):
        raise ReplayError(
            f"{path}: header says {steps} steps but {len(frames)} frame records"
        )
    return Replay(
        scenario=header.get("scenario"),
        config_text=header.get("config"),
        seed=header["seed"],
        options=header.get("options", {}),
        frames=tuple(frames),
        checkpoints=tuple(checkpoints),
        final_digest=final_digest,
        steps=steps,
    )


def _env_from_replay(recording: Replay) -> Environment:
    opts = recording.options
    options = EnvOptions(
        representation=opts.get("representation", "float115"),
        stacking=opts.get("stacking", 1),
        reward=opts.get("reward", "scoring"),
        seed=recording.seed,
        render_size=tuple(opts.get("render_size", (96, 72))),
        stochastic=opts.get("stochastic"),
    )
    if recording.scenario is not None:
        return create_environment(recording.scenario, options)
    return Environment(parse_scenario(recording.config_text), options)


def verify_replay(path: str) -> Verdict:
    """Re-simulate a recording and compare every checkpoint digest."""
    recording = load_replay(path)
    env = _env_from_replay(recording)
    env.seed(recording.seed)
    obs = env.reset()
    actions_hash = hashlib.blake2b(digest_size=8)
    expected = dict(recording.checkpoints)

    done = False
    for step_index, actions in enumerate(recording.frames):
        if done:  # recording claims more steps than the episode has
            return Verdict(False, env.state.frame, step_index)
        actions_hash.update(bytes(actions))
        try:
            result = env.step(actions)
        except Exception:
            return Verdict(False, env.state.frame, step_index)
        done = result.done
        want = expected.get(step_index + 1)
        if want is not None:
            got = combine_digest(state_digest(env.state), actions_hash.digest())
            if got != want:
                return Verdict(False, step_index + 1, step_index + 1)
    final = combine_digest(state_digest(env.state), actions_hash.digest())
    if final != recording.final_digest or not done:
        return Verdict(False, env.state.frame, recording.steps)
    return Verdict(True, None, recording.steps)
