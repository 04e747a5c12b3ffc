"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy reference
backend is the fallback.  ``MINIPITCH_KERNEL=python|compiled`` forces a
backend at import time, and ``set_backend`` switches at runtime (used by the
backend-comparison benchmark and the parity tests).  Both backends are
bit-identical by contract.
"""

from __future__ import annotations

import os

from . import reference

_BACKENDS: dict[str, object] = {"python": reference}

try:
    from . import _fast  # type: ignore[attr-defined]

    _BACKENDS["compiled"] = _fast
except ImportError:  # extension not built; numpy fallback only
    _fast = None

_forced = os.environ.get("MINIPITCH_KERNEL", "").strip().lower()
if _forced and _forced not in ("auto",):
    if _forced not in _BACKENDS:
        raise ImportError(
            f"MINIPITCH_KERNEL={_forced!r} requested but that backend is "
            f"unavailable; have {sorted(_BACKENDS)}"
        )
    _active_name = _forced
else:
    _active_name = "compiled" if "compiled" in _BACKENDS else "python"

advance_team = _BACKENDS[_active_name].advance_team
integrate_ball = _BACKENDS[_active_name].integrate_ball
masked_nearest = _BACKENDS[_active_name].masked_nearest


def backend_name() -> str:
    return _active_name


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def set_backend(name: str) -> str:
    """Switch the active backend; returns the previous backend name."""
    global advance_team, integrate_ball, masked_nearest, _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; have {sorted(_BACKENDS)}")
    previous = _active_name
    _active_name = name
    mod = _BACKENDS[name]
    advance_team = mod.advance_team
    integrate_ball = mod.integrate_ball
    masked_nearest = mod.masked_nearest
    return previous
