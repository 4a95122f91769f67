"""Linearized electrolyzer: concave production cuts, operating range, daily quota.

The non-convex hydrogen production curve is replaced by an outer approximation
with affine cuts. Storage/compression losses are folded into the cuts at
construction, so every hydrogen quantity downstream is sellable hydrogen.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class NonMonotoneAnchors(ValueError):
    pass


class PowerOutOfRange(ValueError):
    pass


#: Anchor points (power MW, hydrogen kg/h before storage loss) with the usual
#: min-load / max-efficiency / max-load structure. Configuration, not ground truth.
DEFAULT_ANCHORS = ((1.5, 27.0), (6.0, 110.0), (10.0, 170.0))


@dataclass(frozen=True)
class Cut:
    """Affine upper bound ``h <= slope * p + intercept`` on sellable hydrogen."""

    slope: float  # kg per MWh
    intercept: float  # kg per hour


def linearize_curve(
    anchors: Sequence[tuple[float, float]], storage_eff: float = 1.0
) -> tuple[Cut, ...]:
    """One cut through each consecutive anchor pair, scaled by storage_eff."""
    if len(anchors) < 2:
        raise NonMonotoneAnchors("need at least two anchor points")
    powers = [float(p) for p, _ in anchors]
    hydrogen = [float(h) for _, h in anchors]
    for (p0, h0), (p1, h1) in zip(zip(powers, hydrogen), zip(powers[1:], hydrogen[1:])):
        if p1 <= p0:
            raise NonMonotoneAnchors(f"anchor powers must strictly increase: {p0} -> {p1}")
        if h1 < h0:
            raise NonMonotoneAnchors(f"anchor hydrogen must not decrease: {h0} -> {h1}")
    cuts = []
    for (p0, h0), (p1, h1) in zip(zip(powers, hydrogen), zip(powers[1:], hydrogen[1:])):
        slope = (h1 - h0) / (p1 - p0)
        intercept = h0 - slope * p0
        cuts.append(Cut(slope=storage_eff * slope, intercept=storage_eff * intercept))
    return tuple(cuts)


@dataclass(frozen=True)
class ElectrolyzerSpec:
    """Operating range, production cuts (loss-adjusted), daily quota, contract price."""

    p_min: float  # MW, minimum consumption while running
    p_max: float  # MW
    cuts: tuple[Cut, ...]
    storage_eff: float = 1.0
    daily_min: float = 0.0  # kg sellable hydrogen per day
    h2_price: float = 0.0  # EUR per kg

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))
        if not 0 <= self.p_min < self.p_max:
            raise ValueError(f"need 0 <= p_min < p_max, got [{self.p_min}, {self.p_max}]")
        if not self.cuts:
            raise ValueError("need at least one production cut")
        if not 0 < self.storage_eff <= 1:
            raise ValueError(f"storage_eff must be in (0, 1], got {self.storage_eff}")
        if self.daily_min < 0:
            raise ValueError("daily_min must be >= 0")

    @classmethod
    def from_anchors(
        cls,
        p_min: float,
        p_max: float,
        anchors: Sequence[tuple[float, float]],
        storage_eff: float = 1.0,
        daily_min: float = 0.0,
        h2_price: float = 0.0,
    ) -> "ElectrolyzerSpec":
        return cls(
            p_min=p_min,
            p_max=p_max,
            cuts=linearize_curve(anchors, storage_eff),
            storage_eff=storage_eff,
            daily_min=daily_min,
            h2_price=h2_price,
        )

    @classmethod
    def disabled(cls, p_max: float) -> "ElectrolyzerSpec":
        """Zero-production stand-in for pure-wind studies.

        Keeps ``p_max`` as the plant's grid-purchase envelope but produces no
        hydrogen and enforces no quota or minimum load.
        """
        return cls(p_min=0.0, p_max=p_max, cuts=(Cut(0.0, 0.0),))


def max_hydrogen(p: float, spec: ElectrolyzerSpec, tol: float = 1e-9) -> float:
    """Sellable hydrogen rate at consumption ``p``: the lower envelope of the cuts."""
    if p < spec.p_min - tol or p > spec.p_max + tol:
        raise PowerOutOfRange(f"power {p} outside [{spec.p_min}, {spec.p_max}]")
    return float(min(c.slope * p + c.intercept for c in spec.cuts))
