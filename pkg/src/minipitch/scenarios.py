"""Scenario configuration: text format, frozen builtins, episode termination.

Scenarios are flat key-value text files (``#`` comments, UTF-8) with repeated
``left_player`` / ``right_player`` entries.  The builtin set (three full-game
difficulty tiers plus the eleven drill scenarios) ships as data files in this
same format, parsed on lookup, so the format has exactly one implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources
from typing import Optional, Sequence

from . import constants as C
from .errors import ConfigurationError
from .state import Event, EventKind, GameMode, GameState, Role, Side

Placement = tuple[Role, float, float]

_DEFAULTS = dict(
    name="custom",
    duration_frames=400,
    difficulty=0.6,
    stochastic=True,
    offsides=True,
    end_on_score=True,
    end_on_possession_loss=True,
    end_on_out_of_play=True,
    controlled_left=1,
    controlled_right=0,
    teammate_bot=True,
    lazy_opponents=False,
    ball=(0.0, 0.0),
    start_mode=GameMode.Normal,
)

_BOOL_KEYS = frozenset(
    ["stochastic", "offsides", "end_on_score", "end_on_possession_loss",
     "end_on_out_of_play", "teammate_bot", "lazy_opponents"]
)
_INT_KEYS = frozenset(["duration_frames", "controlled_left", "controlled_right"])

BENCHMARK_NAMES = ("11_vs_11_easy", "11_vs_11_medium", "11_vs_11_hard")
ACADEMY_NAMES = (
    "empty_goal_close",
    "empty_goal",
    "run_to_score",
    "run_to_score_with_keeper",
    "pass_and_shoot_with_keeper",
    "run_pass_and_shoot_with_keeper",
    "3_vs_1_with_keeper",
    "corner",
    "counterattack_easy",
    "counterattack_hard",
    "11_vs_11_with_lazy_opponents",
)
_ALIASES = {"11_vs_11_stochastic": "11_vs_11_medium"}
BUILTIN_NAMES = BENCHMARK_NAMES + ACADEMY_NAMES + tuple(_ALIASES)


@dataclass(frozen=True)
class ScenarioConfig:
    """Frozen description of an episode: placements, rules, termination."""

    name: str
    duration_frames: int
    difficulty: float
    stochastic: bool
    offsides_enabled: bool
    left_placements: tuple[Placement, ...]
    right_placements: tuple[Placement, ...]
    ball_start: tuple[float, float]
    start_mode: GameMode
    controlled_left: int
    controlled_right: int
    teammate_bot_enabled: bool
    end_on_score: bool
    end_on_possession_loss: bool
    end_on_out_of_play: bool
    lazy_opponents: bool
    # per-side difficulty overrides (used by bot-vs-bot evaluation)
    difficulty_left: Optional[float] = None
    difficulty_right: Optional[float] = None

    def validate(self) -> "ScenarioConfig":
        if not 0.0 <= self.difficulty <= 1.0:
            raise ConfigurationError(
                f"difficulty must be within [0, 1], got {self.difficulty}"
            )
        if self.duration_frames < 1:
            raise ConfigurationError("duration_frames must be positive")
        for label, placements in (("left", self.left_placements),
                                  ("right", self.right_placements)):
            if not 1 <= len(placements) <= 11:
                raise ConfigurationError(
                    f"{label} team needs 1..11 players, got {len(placements)}"
                )
            for k, (role, x, y) in enumerate(placements):
                if not (-C.PITCH_HALF_X <= x <= C.PITCH_HALF_X
                        and -C.PITCH_HALF_Y <= y <= C.PITCH_HALF_Y):
                    raise ConfigurationError(
                        f"{label}_player {k} ({Role(role).name}) is outside "
                        f"the pitch at ({x}, {y})"
                    )
            if len(placements) == 11:
                keepers = sum(1 for role, _, _ in placements if role == Role.Keeper)
                if keepers != 1:
                    raise ConfigurationError(
                        f"a full {label} team needs exactly one Keeper, "
                        f"got {keepers}"
                    )
        bx, by = self.ball_start
        if not (-C.PITCH_HALF_X <= bx <= C.PITCH_HALF_X
                and -C.PITCH_HALF_Y <= by <= C.PITCH_HALF_Y):
            raise ConfigurationError(f"ball is outside the pitch at ({bx}, {by})")
        for label, count, n in (
            ("controlled_left", self.controlled_left, len(self.left_placements)),
            ("controlled_right", self.controlled_right, len(self.right_placements)),
        ):
            if not 0 <= count <= n:
                raise ConfigurationError(
                    f"{label} must be within [0, {n}], got {count}"
                )
        return self

    def with_overrides(self, **kwargs) -> "ScenarioConfig":
        return replace(self, **kwargs).validate()


def _parse_bool(raw: str, where: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigurationError(f"{where}: expected a boolean, got {raw!r}")


def _parse_player(raw: str, where: str) -> Placement:
    parts = raw.split()
    if len(parts) != 3:
        raise ConfigurationError(f"{where}: expected '<role> <x> <y>', got {raw!r}")
    role_name, xs, ys = parts
    try:
        role = Role[role_name]
    except KeyError:
        valid = ", ".join(r.name for r in Role)
        raise ConfigurationError(
            f"{where}: unknown role {role_name!r} (valid: {valid})"
        ) from None
    try:
        return (role, float(xs), float(ys))
    except ValueError:
        raise ConfigurationError(f"{where}: malformed coordinate in {raw!r}") from None


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse the scenario text format; absent keys take documented defaults."""
    values = dict(_DEFAULTS)
    left: list[Placement] = []
    right: list[Placement] = []
    for ln, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {ln}: expected 'key = value', got {rawline!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        where = f"line {ln} ({key})"
        if key == "left_player":
            left.append(_parse_player(raw, where))
        elif key == "right_player":
            right.append(_parse_player(raw, where))
        elif key == "ball":
            parts = raw.split()
            if len(parts) != 2:
                raise ConfigurationError(f"{where}: expected '<x> <y>'")
            try:
                values["ball"] = (float(parts[0]), float(parts[1]))
            except ValueError:
                raise ConfigurationError(f"{where}: malformed coordinate") from None
        elif key == "start_mode":
            try:
                values["start_mode"] = GameMode[raw]
            except KeyError:
                valid = ", ".join(m.name for m in GameMode)
                raise ConfigurationError(
                    f"{where}: unknown mode {raw!r} (valid: {valid})"
                ) from None
        elif key == "name":
            values["name"] = raw
        elif key == "difficulty":
            try:
                values["difficulty"] = float(raw)
            except ValueError:
                raise ConfigurationError(f"{where}: expected a number") from None
        elif key in _BOOL_KEYS:
            values[key] = _parse_bool(raw, where)
        elif key in _INT_KEYS:
            try:
                values[key] = int(raw)
            except ValueError:
                raise ConfigurationError(f"{where}: expected an integer") from None
        else:
            raise ConfigurationError(f"{where}: unknown key {key!r}")

    if not left or not right:
        raise ConfigurationError(
            "both teams need at least one left_player / right_player entry"
        )
    return ScenarioConfig(
        name=values["name"],
        duration_frames=values["duration_frames"],
        difficulty=values["difficulty"],
        stochastic=values["stochastic"],
        offsides_enabled=values["offsides"],
        left_placements=tuple(left),
        right_placements=tuple(right),
        ball_start=values["ball"],
        start_mode=values["start_mode"],
        controlled_left=values["controlled_left"],
        controlled_right=values["controlled_right"],
        teammate_bot_enabled=values["teammate_bot"],
        end_on_score=values["end_on_score"],
        end_on_possession_loss=values["end_on_possession_loss"],
        end_on_out_of_play=values["end_on_out_of_play"],
        lazy_opponents=values["lazy_opponents"],
    ).validate()


def serialize_scenario(config: ScenarioConfig) -> str:
    """Inverse of parse_scenario (parse(serialize(c)) == c)."""
    lines = [
        f"name = {config.name}",
        f"duration_frames = {config.duration_frames}",
        f"difficulty = {config.difficulty!r}",
        f"stochastic = {str(config.stochastic).lower()}",
        f"offsides = {str(config.offsides_enabled).lower()}",
        f"end_on_score = {str(config.end_on_score).lower()}",
        f"end_on_possession_loss = {str(config.end_on_possession_loss).lower()}",
        f"end_on_out_of_play = {str(config.end_on_out_of_play).lower()}",
        f"controlled_left = {config.controlled_left}",
        f"controlled_right = {config.controlled_right}",
        f"teammate_bot = {str(config.teammate_bot_enabled).lower()}",
        f"lazy_opponents = {str(config.lazy_opponents).lower()}",
        f"ball = {config.ball_start[0]!r} {config.ball_start[1]!r}",
        f"start_mode = {config.start_mode.name}",
    ]
    for role, x, y in config.left_placements:
        lines.append(f"left_player = {Role(role).name} {x!r} {y!r}")
    for role, x, y in config.right_placements:
        lines.append(f"right_player = {Role(role).name} {x!r} {y!r}")
    return "\n".join(lines) + "\n"


def builtin(name: str) -> ScenarioConfig:
    """Look up a frozen builtin scenario by name."""
    target = _ALIASES.get(name, name)
    if target not in BENCHMARK_NAMES + ACADEMY_NAMES:
        valid = ", ".join(sorted(BUILTIN_NAMES))
        raise ConfigurationError(f"unknown scenario {name!r}; valid names: {valid}")
    text = (
        resources.files("minipitch")
        .joinpath(f"data/scenarios/{target}.cfg")
        .read_text(encoding="utf-8")
    )
    config = parse_scenario(text)
    if name != target:
        config = replace(config, name=name)
    return config


def load_scenario(name_or_path: str) -> ScenarioConfig:
    """Builtin name, or a path to a scenario file."""
    try:
        return builtin(name_or_path)
    except ConfigurationError:
        pass
    try:
        with open(name_or_path, encoding="utf-8") as fh:
            return parse_scenario(fh.read())
    except FileNotFoundError:
        valid = ", ".join(sorted(BUILTIN_NAMES))
        raise ConfigurationError(
            f"{name_or_path!r} is neither a builtin scenario ({valid}) "
            f"nor a readable scenario file"
        ) from None


_STOP_EVENTS = frozenset(
    [EventKind.OUT_THROW_IN, EventKind.OUT_GOAL_LINE, EventKind.FOUL,
     EventKind.OFFSIDE]
)


def is_episode_done(state: GameState, config: ScenarioConfig,
                    events: Sequence[Event]) -> Optional[str]:
    """End-of-episode reason, or None while the episode continues."""
    if config.end_on_score and any(
        e.kind in (EventKind.GOAL, EventKind.OWN_GOAL) for e in events
    ):
        return "score"
    if config.end_on_possession_loss:
        uncontrolled = None
        if config.controlled_left > 0 and config.controlled_right == 0:
            uncontrolled = Side.RIGHT
        elif config.controlled_right > 0 and config.controlled_left == 0:
            uncontrolled = Side.LEFT
        if uncontrolled is not None and any(
            e.kind == EventKind.POSSESSION_CHANGE and e.side == uncontrolled
            for e in events
        ):
            return "possession_loss"
    if config.end_on_out_of_play and any(e.kind in _STOP_EVENTS for e in events):
        return "out_of_play"
    if state.frame >= config.duration_frames:
        return "time"
    return None
