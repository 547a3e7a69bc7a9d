"""Harness configuration profiles and presets"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

logger = logging.getLogger(__name__)

ORDER_ENV_VAR = "GERMCALC_ORDER"
DEFAULT_ORDER = 16


@dataclass(slots=True)
class HarnessProfile:
    """Tunables of the verification harness"""
    preset_name: str = "Full"
    order: int = DEFAULT_ORDER  # Truncation order of scenario jets
    seed: int = 0  # Base seed; case i uses seed + i
    coeff_bound: int = 9  # Bound on random numerators and denominators
    cases: int = 100  # Random-case scale (oracle runs use 2x, stability seeds 1/2x)
    degree: int = 6  # Blow-down round-trip degree k (jets of order 2k)
    trials: int = 20  # Tail perturbations per stability test
    workers: int = 1  # Threads for scenario batches

    def with_overrides(self, **changes: Optional[int]) -> "HarnessProfile":
        """Copy with every non-None keyword applied"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


# Preset configurations
PROFILE_PRESETS = {
    "Full": HarnessProfile(preset_name="Full"),
    "Quick": HarnessProfile(
        preset_name="Quick",
        order=10,
        cases=6,
        degree=3,
        trials=4,
    ),
}


def default_order() -> int:
    """Order from GERMCALC_ORDER if set and valid, else 16"""
    raw = os.environ.get(ORDER_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_ORDER
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r: not an integer", ORDER_ENV_VAR, raw)
        return DEFAULT_ORDER
    if value < 0:
        logger.warning("ignoring %s=%r: negative order", ORDER_ENV_VAR, raw)
        return DEFAULT_ORDER
    return value


def load_profile(name: str = "Full", order: Optional[int] = None, **overrides: Optional[int]) -> HarnessProfile:
    """Preset by name with the env order override and explicit overrides applied.

    An explicit `order` wins over GERMCALC_ORDER, which wins over the preset.
    """
    if name not in PROFILE_PRESETS:
        raise KeyError(f"unknown profile preset {name!r}")
    profile = replace(PROFILE_PRESETS[name])
    if order is None and os.environ.get(ORDER_ENV_VAR):
        order = default_order()
    return profile.with_overrides(order=order, **overrides)
