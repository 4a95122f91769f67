"""Per-hour bidding curves: construction from policies, discretization, restoration.

A bidding curve maps the day-ahead price to a quantity: one affine piece per
price domain for the power trade and for the electrolyzer consumption. Raw
curves from trained policies can violate market rules on unseen features, so
they are discretized onto a price grid and projected onto the feasible set
(bounds, buy-side sign rules, monotonicity) before submission.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .electrolyzer import ElectrolyzerSpec
from .market_data import OutOfRange, PriceDomains
from .policy import DimensionMismatch, PolicySet

PERMITTED = "permitted"
RESTRICTED = "restricted"
CONDITIONAL = "conditional"
REGIMES = (PERMITTED, RESTRICTED, CONDITIONAL)

DEFAULT_GRID_STEP = 1.0
DEFAULT_LAMBDA_S = 20.0  # EUR/MWh green-purchase price cap


@dataclass(frozen=True)
class BiddingCurve:
    """Piecewise-affine price -> quantity map; piece k is valid on the k-th
    right-closed price domain. Quantity bounds are applied at restoration."""

    hour: int  # 1..24
    slopes: np.ndarray  # (K,)
    intercepts: np.ndarray  # (K,)
    domains: PriceDomains
    q_min: float
    q_max: float

    def __post_init__(self):
        slopes = np.asarray(self.slopes, dtype=float)
        intercepts = np.asarray(self.intercepts, dtype=float)
        k = self.domains.n_domains
        if slopes.shape != (k,) or intercepts.shape != (k,):
            raise DimensionMismatch(
                f"need {k} affine pieces, got {slopes.shape} / {intercepts.shape}"
            )
        object.__setattr__(self, "slopes", slopes)
        object.__setattr__(self, "intercepts", intercepts)

    def quantity_at(self, price: float) -> float:
        """Raw (unclamped) quantity of the piece owning ``price``."""
        if price < self.domains.floor or price > self.domains.ceiling:
            raise OutOfRange(f"price {price} outside curve domain")
        k0 = int(np.searchsorted(self.domains.boundaries, price, side="left"))
        return float(self.slopes[k0] * price + self.intercepts[k0])


@dataclass(frozen=True)
class DiscretizedCurve:
    """Step-curve samples on a strictly increasing price grid."""

    prices: np.ndarray
    quantities: np.ndarray

    def __post_init__(self):
        prices = np.asarray(self.prices, dtype=float)
        quantities = np.asarray(self.quantities, dtype=float)
        if prices.ndim != 1 or prices.shape != quantities.shape or prices.size == 0:
            raise DimensionMismatch("prices and quantities must be equal-length 1-D arrays")
        if not (np.diff(prices) > 0).all():
            raise DimensionMismatch("grid prices must be strictly increasing")
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "quantities", quantities)


def build_curves(
    ps: PolicySet,
    j: int,
    breve_x: np.ndarray,
    wind_capacity: float,
    spec: ElectrolyzerSpec,
) -> tuple[BiddingCurve, BiddingCurve]:
    """Power and electrolyzer-consumption curves for hour ``j`` (1-based) from
    the price-free feature tail.

    Power quantities live in [-p_max, wind capacity] (buy-side sign rules are a
    restoration concern), consumption in the electrolyzer operating range.
    """
    breve_x = np.asarray(breve_x, dtype=float)
    if breve_x.shape != (ps.n_features - 1,):
        raise DimensionMismatch(
            f"breve_x length {breve_x.shape}, expected ({ps.n_features - 1},)"
        )
    if not 1 <= j <= 24:
        raise DimensionMismatch(f"hour of day {j} outside 1..24")
    a_da = ps.q_da[j - 1, :, 0]
    b_da = ps.q_da[j - 1, :, 1:] @ breve_x
    a_h = ps.q_h[j - 1, :, 0]
    b_h = ps.q_h[j - 1, :, 1:] @ breve_x
    power = BiddingCurve(
        hour=j,
        slopes=a_da,
        intercepts=b_da,
        domains=ps.domains,
        q_min=-spec.p_max,
        q_max=wind_capacity,
    )
    hydrogen = BiddingCurve(
        hour=j,
        slopes=a_h,
        intercepts=b_h,
        domains=ps.domains,
        q_min=spec.p_min,
        q_max=spec.p_max,
    )
    return power, hydrogen


def price_grid(domains: PriceDomains, grid_step: float = DEFAULT_GRID_STEP) -> np.ndarray:
    """Uniform grid from floor to ceiling inclusive."""
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    span = domains.ceiling - domains.floor
    n = int(np.floor(span / grid_step + 1e-9)) + 1
    grid = domains.floor + grid_step * np.arange(n)
    if grid[-1] < domains.ceiling - 1e-9:
        grid = np.append(grid, domains.ceiling)
    return grid


def discretize(curve: BiddingCurve, grid_step: float = DEFAULT_GRID_STEP) -> DiscretizedCurve:
    """Sample the affine pieces on the uniform grid.

    A grid point exactly on an interior boundary takes the value of the domain
    it closes (right-closed convention), matching the domain lookup used in
    training.
    """
    grid = price_grid(curve.domains, grid_step)
    k0 = np.searchsorted(curve.domains.boundaries, grid, side="left")
    q = curve.slopes[k0] * grid + curve.intercepts[k0]
    return DiscretizedCurve(prices=grid, quantities=q)


def restore_feasibility(
    curve: DiscretizedCurve,
    regime: str,
    bounds: tuple[float, float],
    lambda_s: float = DEFAULT_LAMBDA_S,
) -> DiscretizedCurve:
    """Project a discretized curve onto the feasible set.

    In order: (1) clamp quantities to ``bounds``; (2) apply the regime's
    buy-side rule (restricted: no negative quantities; conditional: negative
    quantities only at prices below ``lambda_s``); (3) make the curve
    non-decreasing with a running-maximum sweep. Idempotent.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    lo, hi = bounds
    q = np.clip(curve.quantities, lo, hi)
    if regime == RESTRICTED:
        q = np.where(q < 0.0, 0.0, q)
    elif regime == CONDITIONAL:
        q = np.where((q < 0.0) & (curve.prices >= lambda_s), 0.0, q)
    q = np.maximum.accumulate(q)
    return DiscretizedCurve(prices=curve.prices, quantities=q)


def evaluate(curve: DiscretizedCurve, price: float) -> float:
    """Step-function lookup: quantity of the greatest grid price <= ``price``."""
    prices = curve.prices
    if price < prices[0] or price > prices[-1]:
        raise OutOfRange(f"price {price} outside grid [{prices[0]}, {prices[-1]}]")
    i = int(np.searchsorted(prices, price, side="right")) - 1
    return float(curve.quantities[i])
