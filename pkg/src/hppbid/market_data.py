"""Hourly market and wind data: CSV ingest, synthetic generation, features, price domains.

All prices are EUR/MWh, all powers MW. The global hour index ``t`` is 1-based
and gapless; the hour of day is ``j = (t - 1) % 24 + 1`` and day ``d`` covers
the 24 hours ``24(d-1)+1 .. 24d``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

PRICE_FEATURE = "da_price_realized"
CONSTANT_FEATURE = "constant_one"

#: Canonical CSV schema (comma separated, '.' decimal). Extra columns are ignored.
CSV_COLUMNS = (
    "t",
    "da_price_realized",
    "da_price_forecast",
    "balancing_price_realized",
    "wind_realized",
    "wind_forecast",
    "wind_forecast_agg",
)

#: Columns every file must carry; wind_forecast_agg is only needed when used as a feature.
CORE_COLUMNS = (
    "t",
    "da_price_realized",
    "da_price_forecast",
    "balancing_price_realized",
    "wind_realized",
    "wind_forecast",
)

DEFAULT_FEATURES = (
    "da_price_realized",
    "da_price_forecast",
    "wind_forecast",
    "wind_forecast_agg",
    "constant_one",
)

DEFAULT_PRICE_FLOOR = -500.0
DEFAULT_PRICE_CEILING = 4000.0


class DataError(ValueError):
    """Base class for dataset construction/lookup failures."""


class MissingColumn(DataError):
    pass


class NonNumericCell(DataError):
    def __init__(self, row: int, column: str, value: str):
        super().__init__(f"row {row}: column {column!r} is not numeric: {value!r}")
        self.row = row
        self.column = column


class GapInTimeIndex(DataError):
    pass


class PartialDay(DataError):
    pass


class MissingFeature(DataError):
    pass


class DegenerateDomains(DataError):
    pass


class OutOfRange(DataError):
    pass


@dataclass(frozen=True)
class HourlyRecord:
    """One hour of realized/forecast prices and wind."""

    t: int
    da_price_realized: float
    da_price_forecast: float
    balancing_price_realized: float
    wind_realized: float
    wind_forecast: float
    wind_forecast_agg: float = 0.0


@dataclass(frozen=True)
class Dataset:
    """Ordered, gapless, whole-day sequence of hourly records."""

    records: tuple[HourlyRecord, ...]
    role: str = "train"

    def __post_init__(self):
        recs = tuple(self.records)
        object.__setattr__(self, "records", recs)
        if not recs:
            raise PartialDay("dataset is empty")
        if len(recs) % 24 != 0:
            raise PartialDay(f"{len(recs)} rows is not a whole number of days")
        t0 = recs[0].t
        if t0 < 1:
            raise GapInTimeIndex(f"hour index must be >= 1, got {t0}")
        if (t0 - 1) % 24 != 0:
            raise PartialDay(f"dataset must start on a day boundary, got t={t0}")
        for i, rec in enumerate(recs):
            if rec.t != t0 + i:
                raise GapInTimeIndex(f"expected t={t0 + i}, got t={rec.t}")

    def __len__(self) -> int:
        return len(self.records)

    @property
    def n_hours(self) -> int:
        return len(self.records)

    @property
    def n_days(self) -> int:
        return len(self.records) // 24

    def column(self, name: str) -> np.ndarray:
        """Field values as a float array, in time order."""
        try:
            return np.array([getattr(r, name) for r in self.records], dtype=float)
        except AttributeError:
            raise MissingFeature(f"records have no field {name!r}") from None

    def hours_of_day(self) -> np.ndarray:
        """0-based hour of day per record."""
        return np.array([(r.t - 1) % 24 for r in self.records], dtype=int)

    def days(self) -> Iterator[tuple[HourlyRecord, ...]]:
        for d in range(self.n_days):
            yield self.records[24 * d : 24 * (d + 1)]

    def split(self, train_hours: int) -> tuple["Dataset", "Dataset"]:
        """Chronological split into a training and a testing set."""
        if train_hours % 24 != 0:
            raise PartialDay("split point must be a whole number of days")
        if not 0 < train_hours < len(self.records):
            raise DataError("split point must be strictly inside the dataset")
        return (
            Dataset(self.records[:train_hours], role="train"),
            Dataset(self.records[train_hours:], role="test"),
        )


@dataclass(frozen=True)
class FeatureConfig:
    """Ordered feature names; the realized day-ahead price comes first and a
    constant-one feature last, so curve slopes/intercepts can be read off the
    learned coefficients directly."""

    names: tuple[str, ...] = DEFAULT_FEATURES

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) < 2:
            raise DataError("need at least the realized price and the constant feature")
        if len(set(names)) != len(names):
            raise DataError(f"duplicate feature names: {names}")
        if names[0] != PRICE_FEATURE:
            raise DataError(f"first feature must be {PRICE_FEATURE!r}, got {names[0]!r}")
        if names[-1] != CONSTANT_FEATURE:
            raise DataError(f"last feature must be {CONSTANT_FEATURE!r}, got {names[-1]!r}")

    @property
    def n_features(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class FeatureVector:
    """Full feature vector ``x`` and its tail ``breve_x`` (``x`` without the
    realized day-ahead price), which is all that is known at bidding time."""

    x: np.ndarray
    breve_x: np.ndarray


def _feature_value(rec: HourlyRecord, name: str) -> float:
    if name == CONSTANT_FEATURE:
        return 1.0
    try:
        return float(getattr(rec, name))
    except AttributeError:
        raise MissingFeature(f"record has no feature {name!r}") from None


def build_feature_vector(rec: HourlyRecord, cfg: FeatureConfig) -> FeatureVector:
    x = np.array([_feature_value(rec, name) for name in cfg.names], dtype=float)
    return FeatureVector(x=x, breve_x=x[1:].copy())


def feature_matrix(ds: Dataset, cfg: FeatureConfig) -> np.ndarray:
    """(n_hours, n_features) matrix of feature vectors."""
    cols = []
    for name in cfg.names:
        if name == CONSTANT_FEATURE:
            cols.append(np.ones(len(ds)))
        else:
            cols.append(ds.column(name))
    return np.column_stack(cols)


@dataclass(frozen=True)
class PriceDomains:
    """Partition of the price axis into K right-closed intervals
    ``(boundary[k-1], boundary[k]]`` between an outer floor and ceiling."""

    boundaries: tuple[float, ...]
    floor: float = DEFAULT_PRICE_FLOOR
    ceiling: float = DEFAULT_PRICE_CEILING

    def __post_init__(self):
        bounds = tuple(float(b) for b in self.boundaries)
        object.__setattr__(self, "boundaries", bounds)
        seq = (self.floor,) + bounds + (self.ceiling,)
        for lo, hi in zip(seq, seq[1:]):
            if not lo < hi:
                raise DegenerateDomains(f"thresholds not strictly increasing: {seq}")

    @property
    def n_domains(self) -> int:
        return len(self.boundaries) + 1


def compute_price_domains(
    train: Dataset,
    k: int,
    floor: float = DEFAULT_PRICE_FLOOR,
    ceiling: float = DEFAULT_PRICE_CEILING,
) -> PriceDomains:
    """Domain boundaries at the i/k empirical quantiles (linear interpolation
    between order statistics) of the realized day-ahead prices."""
    if k < 1:
        raise DegenerateDomains(f"need at least one price domain, got k={k}")
    prices = train.column(PRICE_FEATURE)
    if k == 1:
        return PriceDomains(boundaries=(), floor=floor, ceiling=ceiling)
    qs = np.quantile(prices, np.arange(1, k) / k)
    distinct = np.unique(qs)
    if distinct.size < k - 1:
        raise DegenerateDomains(
            f"only {distinct.size} distinct boundaries for {k} domains; "
            "training prices have too few distinct values"
        )
    return PriceDomains(boundaries=tuple(distinct), floor=floor, ceiling=ceiling)


def domain_index(price: float, domains: PriceDomains) -> int:
    """1-based index k of the right-closed domain containing ``price``.

    The floor maps to k=1 and a price equal to an interior boundary belongs to
    the lower domain.
    """
    if price < domains.floor or price > domains.ceiling:
        raise OutOfRange(
            f"price {price} outside [{domains.floor}, {domains.ceiling}]"
        )
    return int(np.searchsorted(domains.boundaries, price, side="left")) + 1


def domain_indices(prices: np.ndarray, domains: PriceDomains) -> np.ndarray:
    """Vectorized 0-based variant of :func:`domain_index`."""
    prices = np.asarray(prices, dtype=float)
    bad = (prices < domains.floor) | (prices > domains.ceiling)
    if bad.any():
        i = int(np.argmax(bad))
        raise OutOfRange(
            f"price {prices[i]} outside [{domains.floor}, {domains.ceiling}]"
        )
    return np.searchsorted(domains.boundaries, prices, side="left")


def hour_of_day(t: int) -> int:
    """1-based hour of day for the 1-based global hour index."""
    if t < 1:
        raise DataError(f"hour index must be >= 1, got {t}")
    return (t - 1) % 24 + 1


def load_csv(path: str | Path, features: FeatureConfig | None = None) -> Dataset:
    """Load the canonical CSV schema into a Dataset.

    Columns named by ``features`` (beyond the constant) are required in the
    header; unknown extra columns are ignored.
    """
    path = Path(path)
    required = set(CORE_COLUMNS)
    if features is not None:
        required |= {n for n in features.names if n != CONSTANT_FEATURE}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = sorted(required - set(header))
        if missing:
            raise MissingColumn(f"{path.name}: missing columns {missing}")
        has_agg = "wind_forecast_agg" in header
        records = []
        for i, row in enumerate(reader, start=1):
            values = {}
            for col in CORE_COLUMNS + (("wind_forecast_agg",) if has_agg else ()):
                cell = row.get(col)
                if cell is None or cell.strip() == "":
                    raise NonNumericCell(i, col, "" if cell is None else cell)
                try:
                    values[col] = float(cell)
                except ValueError:
                    raise NonNumericCell(i, col, cell) from None
            t = values.pop("t")
            if t != int(t):
                raise NonNumericCell(i, "t", row["t"])
            records.append(HourlyRecord(t=int(t), **values))
    return Dataset(tuple(records))


def write_csv(ds: Dataset, path: str | Path) -> None:
    """Write a Dataset in the canonical CSV schema."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in ds.records:
            writer.writerow(
                [
                    r.t,
                    repr(r.da_price_realized),
                    repr(r.da_price_forecast),
                    repr(r.balancing_price_realized),
                    repr(r.wind_realized),
                    repr(r.wind_forecast),
                    repr(r.wind_forecast_agg),
                ]
            )


@dataclass(frozen=True)
class SyntheticGenConfig:
    """Parameters of the synthetic scenario generator.

    The day-ahead price follows a mean-reverting random walk, wind is a
    clipped AR(1) process, forecasts are realizations plus seeded noise, and
    the balancing price is the day-ahead price plus a signed spread so that
    both price orderings occur.
    """

    seed: int = 0
    hours: int = 2160
    price_mean: float = 50.0
    price_reversion: float = 0.15
    price_vol: float = 9.0
    price_forecast_std: float = 6.0
    wind_capacity: float = 10.0
    wind_autocorr: float = 0.97
    wind_vol: float = 1.1
    wind_forecast_std: float = 1.2
    wind_agg_scale: float = 5.0
    spread_mean: float = 0.0
    spread_std: float = 12.0

    def __post_init__(self):
        if self.hours <= 0 or self.hours % 24 != 0:
            raise DataError(f"hours must be a positive multiple of 24, got {self.hours}")
        for name in ("price_vol", "price_forecast_std", "wind_vol", "wind_forecast_std", "spread_std"):
            if getattr(self, name) < 0:
                raise DataError(f"{name} must be >= 0")
        if not 0 < self.price_reversion <= 1:
            raise DataError("price_reversion must be in (0, 1]")
        if not 0 <= self.wind_autocorr < 1:
            raise DataError("wind_autocorr must be in [0, 1)")
        if self.wind_capacity <= 0:
            raise DataError("wind_capacity must be positive")


def generate_synthetic(cfg: SyntheticGenConfig) -> Dataset:
    """Deterministic synthetic dataset; a pure function of the config."""
    rng = np.random.default_rng(cfg.seed)
    n = cfg.hours
    # All noise is drawn up front in a fixed order; this ordering is part of
    # the reproducibility contract.
    price_eps = rng.standard_normal(n)
    price_fc_eps = rng.standard_normal(n)
    wind_eps = rng.standard_normal(n)
    wind_fc_eps = rng.standard_normal(n)
    wind_agg_eps = rng.standard_normal(n)
    spread_eps = rng.standard_normal(n)

    prices = np.empty(n)
    level = cfg.price_mean
    for i in range(n):
        level = level + cfg.price_reversion * (cfg.price_mean - level) + cfg.price_vol * price_eps[i]
        prices[i] = level

    cap = cfg.wind_capacity
    wind = np.empty(n)
    w = cap / 2.0
    for i in range(n):
        w = cap / 2.0 + cfg.wind_autocorr * (w - cap / 2.0) + cfg.wind_vol * wind_eps[i]
        w = min(max(w, 0.0), cap)
        wind[i] = w

    price_fc = prices + cfg.price_forecast_std * price_fc_eps
    wind_fc = np.clip(wind + cfg.wind_forecast_std * wind_fc_eps, 0.0, cap)
    wind_agg = np.clip(
        cfg.wind_agg_scale * (wind + cfg.wind_forecast_std * wind_agg_eps),
        0.0,
        cfg.wind_agg_scale * cap,
    )
    balancing = prices + cfg.spread_mean + cfg.spread_std * spread_eps

    records = tuple(
        HourlyRecord(
            t=i + 1,
            da_price_realized=float(prices[i]),
            da_price_forecast=float(price_fc[i]),
            balancing_price_realized=float(balancing[i]),
            wind_realized=float(wind[i]),
            wind_forecast=float(wind_fc[i]),
            wind_forecast_agg=float(wind_agg[i]),
        )
        for i in range(n)
    )
    return Dataset(records)
