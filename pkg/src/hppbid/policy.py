"""Learned linear decision policies and the curve coefficients derived from them.

A policy set holds one coefficient vector per (hour of day, price domain) for
each of the two decisions: the day-ahead power trade and the electrolyzer
consumption. Because the realized day-ahead price is the first feature and the
constant is last, each (hour, domain) cell directly yields an affine
price-quantity relation: slope = first coefficient, intercept = the rest
applied to the price-free feature tail.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .market_data import FeatureConfig, PriceDomains


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PolicySet:
    """Coefficient tensors of shape (24 hours, K domains, N features)."""

    q_da: np.ndarray
    q_h: np.ndarray
    feature_config: FeatureConfig
    domains: PriceDomains

    def __post_init__(self):
        q_da = np.array(self.q_da, dtype=float)
        q_h = np.array(self.q_h, dtype=float)
        expect = (24, self.domains.n_domains, self.feature_config.n_features)
        for name, q in (("q_da", q_da), ("q_h", q_h)):
            if q.shape != expect:
                raise DimensionMismatch(f"{name} shape {q.shape}, expected {expect}")
            if not np.isfinite(q).all():
                raise DimensionMismatch(f"{name} contains non-finite entries")
        q_da.flags.writeable = False
        q_h.flags.writeable = False
        object.__setattr__(self, "q_da", q_da)
        object.__setattr__(self, "q_h", q_h)

    @property
    def n_domains(self) -> int:
        return self.domains.n_domains

    @property
    def n_features(self) -> int:
        return self.feature_config.n_features


@dataclass(frozen=True)
class CurveCoefficients:
    """Affine price-quantity pieces for one (hour, domain) cell.

    power trade = a1 * price + b1, electrolyzer consumption = a2 * price + b2.
    """

    a1: float
    b1: float
    a2: float
    b2: float


def _check_cell(ps: PolicySet, j: int, k: int) -> None:
    if not 1 <= j <= 24:
        raise DimensionMismatch(f"hour of day {j} outside 1..24")
    if not 1 <= k <= ps.n_domains:
        raise DimensionMismatch(f"price domain {k} outside 1..{ps.n_domains}")


def evaluate_policy(ps: PolicySet, j: int, k: int, x: np.ndarray) -> tuple[float, float]:
    """Raw policy outputs (power trade MW, electrolyzer consumption MW) for the
    full feature vector ``x``; 1-based hour ``j`` and domain ``k``."""
    _check_cell(ps, j, k)
    x = np.asarray(x, dtype=float)
    if x.shape != (ps.n_features,):
        raise DimensionMismatch(f"feature vector length {x.shape}, expected ({ps.n_features},)")
    return float(ps.q_da[j - 1, k - 1] @ x), float(ps.q_h[j - 1, k - 1] @ x)


def curve_coefficients(ps: PolicySet, j: int, k: int, breve_x: np.ndarray) -> CurveCoefficients:
    """Slopes and intercepts of the two affine pieces for cell (j, k), given the
    price-free feature tail ``breve_x``."""
    _check_cell(ps, j, k)
    breve_x = np.asarray(breve_x, dtype=float)
    if breve_x.shape != (ps.n_features - 1,):
        raise DimensionMismatch(
            f"breve_x length {breve_x.shape}, expected ({ps.n_features - 1},)"
        )
    qd = ps.q_da[j - 1, k - 1]
    qh = ps.q_h[j - 1, k - 1]
    return CurveCoefficients(
        a1=float(qd[0]),
        b1=float(qd[1:] @ breve_x),
        a2=float(qh[0]),
        b2=float(qh[1:] @ breve_x),
    )


POLICY_CSV_HEADER = ("j", "k", "target", "n", "coefficient")


def save_policy_csv(ps: PolicySet, path: str | Path) -> None:
    """Flat full-precision table: one row per (hour, domain, target, feature)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(POLICY_CSV_HEADER)
        for j in range(24):
            for k in range(ps.n_domains):
                for target, q in (("da", ps.q_da), ("h", ps.q_h)):
                    for n in range(ps.n_features):
                        writer.writerow([j + 1, k + 1, target, n + 1, repr(float(q[j, k, n]))])


def load_policy_csv(
    path: str | Path, feature_config: FeatureConfig, domains: PriceDomains
) -> PolicySet:
    path = Path(path)
    kk = domains.n_domains
    nn = feature_config.n_features
    q = {"da": np.full((24, kk, nn), np.nan), "h": np.full((24, kk, nn), np.nan)}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(POLICY_CSV_HEADER):
            raise DimensionMismatch(f"unexpected policy header {reader.fieldnames}")
        for row in reader:
            j, k, n = int(row["j"]), int(row["k"]), int(row["n"])
            target = row["target"]
            if target not in q:
                raise DimensionMismatch(f"unknown target {target!r}")
            if not (1 <= j <= 24 and 1 <= k <= kk and 1 <= n <= nn):
                raise DimensionMismatch(f"index (j={j}, k={k}, n={n}) out of range")
            q[target][j - 1, k - 1, n - 1] = float(row["coefficient"])
    for target, arr in q.items():
        if np.isnan(arr).any():
            raise DimensionMismatch(f"policy table incomplete for target {target!r}")
    return PolicySet(q_da=q["da"], q_h=q["h"], feature_config=feature_config, domains=domains)
