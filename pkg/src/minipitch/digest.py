"""64-bit state digests over a canonical serialization.

Canonical order (all little-endian): frame u32, mode u8, mode owner u8,
score u16+u16, then per team (left first) the player count u8 followed by
each player's position and velocity as float64 pairs, then the ball position
(x, y, z) and velocity as six float64, then ownership as two bytes (side or
255, index or 255).  Digests are stable within one build, not across
platforms or versions.
"""

from __future__ import annotations

import hashlib
import struct

from .state import GameState


def _serialize(state: GameState) -> bytes:
    parts = [
        struct.pack("<IBBHH", state.frame, int(state.mode),
                    int(state.mode_owner), state.score[0], state.score[1])
    ]
    for team in (state.left, state.right):
        parts.append(struct.pack("<B", team.n))
        parts.append(team.pos.tobytes())
        parts.append(team.vel.tobytes())
    b = state.ball
    parts.append(struct.pack("<6d", b.position.x, b.position.y, b.z,
                             *b.velocity))
    if b.owned_by is None:
        parts.append(b"\xff\xff")
    else:
        parts.append(struct.pack("<BB", int(b.owned_by[0]), b.owned_by[1]))
    return b"".join(parts)


def state_digest(state: GameState) -> int:
    """64-bit hash of the canonical state serialization."""
    h = hashlib.blake2b(_serialize(state), digest_size=8)
    return int.from_bytes(h.digest(), "little")


def combine_digest(state_d: int, actions_digest: bytes) -> int:
    """Checkpoint digest chaining the state hash with the action stream hash.

    Replay checkpoints use this so that even behaviorally inert action
    mutations (e.g. a kick by a non-owner) are detected on verification.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(state_d.to_bytes(8, "little"))
    h.update(actions_digest)
    return int.from_bytes(h.digest(), "little")
