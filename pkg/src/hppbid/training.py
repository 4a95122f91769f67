"""Training optimization: learn linear decision policies from historical data.

One LP per model variant. A variant combines a grid-purchase regime
(permitted / restricted / conditional) with an optional risk constraint on the
absolute imbalance (mean / cvar / extreme). The conditional regime's binary
purchase indicators depend only on realized day-ahead prices, so they are
fixed in presolve and every variant solves as a pure LP.

Slack variables keep the restricted and conditional regimes feasible on hours
and days with too little wind: one relaxes the electrolyzer's minimum load,
one the daily hydrogen quota. Both are penalized in the objective so they stay
zero unless structurally necessary. When the minimum-load slack pulls
consumption below the power where the steepest production cut crosses zero,
the negative-intercept cuts are relaxed proportionally (never granting
positive output at zero power), which keeps zero-wind hours feasible for any
anchor geometry.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .curves import CONDITIONAL, PERMITTED, REGIMES, RESTRICTED
from .electrolyzer import ElectrolyzerSpec
from .lp import GE, LE, EQ, LinearProgram, Solution, solve_lp
from .market_data import (
    Dataset,
    FeatureConfig,
    PriceDomains,
    domain_indices,
    feature_matrix,
)
from .policy import PolicySet

RISK_NONE = "none"
RISK_MEAN = "mean"
RISK_CVAR = "cvar"
RISK_EXTREME = "extreme"
RISKS = (RISK_NONE, RISK_MEAN, RISK_CVAR, RISK_EXTREME)

DEFAULT_SLACK_PENALTY = 1e4  # EUR per slack unit; must dwarf any marginal profit


class EmptyDataset(ValueError):
    pass


class InconsistentDimensions(ValueError):
    pass


class EmptyImbalanceSeries(ValueError):
    pass


@dataclass(frozen=True)
class ModelVariant:
    """Risk constraint family plus grid-purchase regime."""

    risk: str = RISK_NONE
    regime: str = PERMITTED

    def __post_init__(self):
        if self.risk not in RISKS:
            raise ValueError(f"unknown risk {self.risk!r}, expected one of {RISKS}")
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}, expected one of {REGIMES}")

    @property
    def label(self) -> str:
        base = "betting" if self.risk == RISK_NONE else f"trading-{self.risk}"
        return f"{base}-{self.regime}"


def all_variants() -> tuple[ModelVariant, ...]:
    """The full 12-model matrix: 3 betting + 9 trading variants."""
    return tuple(ModelVariant(risk=r, regime=g) for r in RISKS for g in REGIMES)


def trading_variants() -> tuple[ModelVariant, ...]:
    return tuple(v for v in all_variants() if v.risk != RISK_NONE)


@dataclass(frozen=True)
class RiskConfig:
    """Limits on the absolute imbalance and the CVaR tail level."""

    limit_mean: float = np.inf
    limit_cvar: float = np.inf
    limit_ext: float = np.inf
    alpha: float = 0.95

    def __post_init__(self):
        for name in ("limit_mean", "limit_cvar", "limit_ext"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class ConditionalBuyConfig:
    """Green-purchase price condition: buying is allowed only in hours whose
    day-ahead price is below ``lambda_s``."""

    lambda_s: float = 20.0
    big_m: float | None = None  # None: derived from the data in use
    epsilon: float = 1e-3


def resolve_big_m(prices: np.ndarray, cond: ConditionalBuyConfig) -> float:
    """Big-M that keeps the purchase indicator well defined for every price.

    At least the maximum realized price; widened when prices fall far below
    the threshold so the indicator bounds stay within [0, 1].
    """
    hi = float(np.max(prices))
    lo = float(np.min(prices))
    m = max(hi, cond.lambda_s - lo, cond.lambda_s + 1.0)
    if cond.big_m is not None:
        if cond.big_m < hi:
            raise InconsistentDimensions(
                f"big_m {cond.big_m} below the maximum realized price {hi}"
            )
        m = float(cond.big_m)
    return m


def presolve_buy_flags(prices: np.ndarray, cond: ConditionalBuyConfig) -> np.ndarray:
    """Fix each hour's purchase indicator from its day-ahead price.

    The indicator bounds pin b=1 exactly when price <= lambda_s - epsilon and
    b=0 when price >= lambda_s; a price strictly inside the epsilon gap admits
    neither value and is rejected.
    """
    from .lp import Infeasible

    prices = np.asarray(prices, dtype=float)
    m = resolve_big_m(prices, cond)
    lo = (cond.lambda_s - prices) / m
    hi = (cond.lambda_s - prices + m - cond.epsilon) / m
    ok0 = (lo <= 0.0) & (hi >= 0.0)
    ok1 = (lo <= 1.0) & (hi >= 1.0)
    gap = ~(ok0 | ok1)
    if gap.any():
        i = int(np.argmax(gap))
        raise Infeasible(
            f"price {prices[i]} admits no purchase indicator "
            f"(inside the epsilon gap below {cond.lambda_s})"
        )
    return ok1  # prices < lambda_s (up to the epsilon gap)


@dataclass(frozen=True)
class _VarIndex:
    """Column indices of every variable family in the training LP."""

    p_da: np.ndarray
    p_h: np.ndarray
    h: np.ndarray
    dp: np.ndarray
    q_da: np.ndarray  # (24, K, N)
    q_h: np.ndarray
    dp_abs: np.ndarray | None = None
    xi: np.ndarray | None = None
    var: int | None = None
    s_elec: np.ndarray | None = None
    s_h2: np.ndarray | None = None


@dataclass(frozen=True)
class _ProblemData:
    """Raw inputs kept alongside the LP so solutions can be audited
    independently of the assembled rows."""

    da_price: np.ndarray
    bal_price: np.ndarray
    wind: np.ndarray
    x: np.ndarray  # (T, N) feature matrix
    j0: np.ndarray  # 0-based hour of day
    k0: np.ndarray  # 0-based price domain of the realized price
    day0: np.ndarray  # 0-based day index
    boundaries: np.ndarray
    buy_flags: np.ndarray | None  # conditional regime only


@dataclass(frozen=True)
class TrainingProblem:
    lp: LinearProgram
    idx: _VarIndex
    data: _ProblemData
    variant: ModelVariant
    risk: RiskConfig
    cond: "ConditionalBuyConfig"
    spec: ElectrolyzerSpec
    wind_capacity: float
    slack_penalty: float
    cut_relax: np.ndarray  # per-cut slack relaxation rates (zeros when unused)

    @property
    def num_variables(self) -> int:
        return self.lp.n_vars

    @property
    def num_constraints(self) -> int:
        return self.lp.n_rows


def _regime_lower_bounds(
    variant: ModelVariant,
    spec: ElectrolyzerSpec,
    wind_cap: float,
    buy_flags: np.ndarray | None,
    n_hours: int,
):
    """Per-hour lower bounds of the day-ahead trade and the imbalance.

    Buying is capped by the electrolyzer capacity day-ahead and by the plant
    envelope in the balancing stage; the restricted regime forbids both, and
    the conditional regime switches per hour on the presolved indicator.
    """
    full_da = -spec.p_max
    full_dp = -(wind_cap + spec.p_max)
    if variant.regime == PERMITTED:
        return np.full(n_hours, full_da), np.full(n_hours, full_dp)
    if variant.regime == RESTRICTED:
        return np.zeros(n_hours), np.zeros(n_hours)
    assert buy_flags is not None
    lb_da = np.where(buy_flags, full_da, 0.0)
    lb_dp = np.where(buy_flags, full_dp, 0.0)
    return lb_da, lb_dp


def cut_relaxation_rates(spec: ElectrolyzerSpec) -> np.ndarray:
    """Per-cut coefficients tying cut relaxation to the minimum-load slack.

    At full slack (consumption at zero) a negative-intercept cut is lifted to
    exactly zero, so zero production stays feasible without ever granting
    hydrogen for free.
    """
    if spec.p_min <= 0:
        return np.zeros(len(spec.cuts))
    return np.array([max(0.0, -c.intercept) / spec.p_min for c in spec.cuts])


def build_training_problem(
    train: Dataset,
    spec: ElectrolyzerSpec,
    wind_capacity: float,
    features: FeatureConfig,
    domains: PriceDomains,
    variant: ModelVariant,
    risk: RiskConfig | None = None,
    cond: ConditionalBuyConfig | None = None,
    slack_penalty: float = DEFAULT_SLACK_PENALTY,
) -> TrainingProblem:
    """Assemble the training LP for one model variant."""
    if train is None or len(train) == 0:
        raise EmptyDataset("training dataset is empty")
    risk = risk or RiskConfig()
    cond = cond or ConditionalBuyConfig()
    t_hours = len(train)
    n_days = train.n_days
    x = feature_matrix(train, features)
    n_feat = features.n_features
    k_dom = domains.n_domains
    if x.shape != (t_hours, n_feat):
        raise InconsistentDimensions(f"feature matrix {x.shape} vs {(t_hours, n_feat)}")
    da_price = train.column("da_price_realized")
    bal_price = train.column("balancing_price_realized")
    wind = train.column("wind_realized")
    j0 = train.hours_of_day()
    k0 = domain_indices(da_price, domains)
    day0 = np.arange(t_hours) // 24

    with_risk = variant.risk != RISK_NONE
    with_slack = variant.regime in (RESTRICTED, CONDITIONAL)
    buy_flags = None
    if variant.regime == CONDITIONAL:
        buy_flags = presolve_buy_flags(da_price, cond)

    lb_da, lb_dp = _regime_lower_bounds(variant, spec, wind_capacity, buy_flags, t_hours)

    lp = LinearProgram(name=f"train-{variant.label}")
    p_da = lp.add_vars(t_hours, lb=lb_da, ub=wind_capacity, obj=da_price)
    ph_lb = 0.0 if with_slack else spec.p_min
    p_h = lp.add_vars(t_hours, lb=ph_lb, ub=spec.p_max)
    h = lp.add_vars(t_hours, lb=0.0, ub=np.inf, obj=spec.h2_price)
    dp = lp.add_vars(t_hours, lb=lb_dp, ub=np.inf, obj=bal_price)

    dp_abs = xi = s_elec = s_h2 = None
    var_idx = None
    if with_risk:
        abs_ub = risk.limit_ext if variant.risk == RISK_EXTREME else np.inf
        dp_abs = lp.add_vars(t_hours, lb=0.0, ub=abs_ub)
    if variant.risk == RISK_CVAR:
        xi = lp.add_vars(t_hours, lb=0.0, ub=np.inf)
        var_idx = int(lp.add_vars(1, lb=-np.inf, ub=np.inf)[0])

    # policy tensors; the price-slope components carry the sign constraint that
    # keeps each in-domain curve piece non-decreasing
    q_lb = np.full((24, k_dom, n_feat), -np.inf)
    q_lb[:, :, 0] = 0.0
    q_da = lp.add_vars(24 * k_dom * n_feat, lb=q_lb.ravel(), ub=np.inf).reshape(24, k_dom, n_feat)
    q_h = lp.add_vars(24 * k_dom * n_feat, lb=-np.inf, ub=np.inf).reshape(24, k_dom, n_feat)

    cut_relax = np.zeros(len(spec.cuts))
    if with_slack:
        s_elec = lp.add_vars(t_hours, lb=0.0, ub=spec.p_min, obj=-slack_penalty)
        s_h2 = lp.add_vars(n_days, lb=0.0, ub=np.inf, obj=-slack_penalty)
        cut_relax = cut_relaxation_rates(spec)

    arange_t = np.arange(t_hours)
    ones_t = np.ones(t_hours)

    # policy links: each hour's decisions equal its cell's policy applied to x_t
    for target, q in ((p_da, q_da), (p_h, q_h)):
        q_cols = q[j0, k0, :]  # (T, N)
        lp.add_rows(
            EQ,
            np.zeros(t_hours),
            np.concatenate([arange_t, np.repeat(arange_t, n_feat)]),
            np.concatenate([target, q_cols.ravel()]),
            np.concatenate([ones_t, -x.ravel()]),
        )

    # plant power balance (curtailment allowed)
    lp.add_rows(
        LE,
        wind,
        np.concatenate([arange_t] * 3),
        np.concatenate([p_da, dp, p_h]),
        np.ones(3 * t_hours),
    )

    # electrolyzer minimum load, slack-relaxed outside the permitted regime
    if with_slack:
        lp.add_rows(
            GE,
            np.full(t_hours, spec.p_min),
            np.concatenate([arange_t] * 2),
            np.concatenate([p_h, s_elec]),
            np.ones(2 * t_hours),
        )

    # production cuts
    for s, cut in enumerate(spec.cuts):
        cols = [h, p_h]
        vals = [ones_t, np.full(t_hours, -cut.slope)]
        reps = 2
        if with_slack and cut_relax[s] > 0:
            cols.append(s_elec)
            vals.append(np.full(t_hours, -cut_relax[s]))
            reps = 3
        lp.add_rows(
            LE,
            np.full(t_hours, cut.intercept),
            np.concatenate([arange_t] * reps),
            np.concatenate(cols),
            np.concatenate(vals),
        )

    # daily hydrogen quota
    day_rows = [day0]
    day_cols = [h]
    day_vals = [ones_t]
    if with_slack:
        day_rows.append(np.arange(n_days))
        day_cols.append(s_h2)
        day_vals.append(np.ones(n_days))
    lp.add_rows(
        GE,
        np.full(n_days, spec.daily_min),
        np.concatenate(day_rows),
        np.concatenate(day_cols),
        np.concatenate(day_vals),
    )

    # cross-domain monotonicity of the power curve, enforced on every training
    # hour's price-free feature tail
    boundaries = np.asarray(domains.boundaries, dtype=float)
    x_tail = x[:, 1:]
    for kk in range(k_dom - 1):
        hi_slope = q_da[j0, kk + 1, 0]
        lo_slope = q_da[j0, kk, 0]
        hi_tail = q_da[j0, kk + 1, 1:]  # (T, N-1)
        lo_tail = q_da[j0, kk, 1:]
        lp.add_rows(
            GE,
            np.zeros(t_hours),
            np.concatenate(
                [arange_t, arange_t, np.repeat(arange_t, n_feat - 1), np.repeat(arange_t, n_feat - 1)]
            ),
            np.concatenate([hi_slope, lo_slope, hi_tail.ravel(), lo_tail.ravel()]),
            np.concatenate(
                [
                    np.full(t_hours, boundaries[kk]),
                    np.full(t_hours, -boundaries[kk]),
                    x_tail.ravel(),
                    -x_tail.ravel(),
                ]
            ),
        )

    if with_risk:
        # absolute-value epigraph
        for sign in (1.0, -1.0):
            lp.add_rows(
                GE,
                np.zeros(t_hours),
                np.concatenate([arange_t] * 2),
                np.concatenate([dp_abs, dp]),
                np.concatenate([ones_t, np.full(t_hours, -sign)]),
            )
        if variant.risk == RISK_MEAN:
            lp.add_row(dp_abs, np.full(t_hours, 1.0 / t_hours), LE, risk.limit_mean)
        elif variant.risk == RISK_CVAR:
            coeff = 1.0 / ((1.0 - risk.alpha) * t_hours)
            lp.add_row(
                np.concatenate([[var_idx], xi]),
                np.concatenate([[1.0], np.full(t_hours, coeff)]),
                LE,
                risk.limit_cvar,
            )
            lp.add_rows(
                GE,
                np.zeros(t_hours),
                np.concatenate([arange_t, arange_t, arange_t]),
                np.concatenate([xi, dp_abs, np.full(t_hours, var_idx)]),
                np.concatenate([ones_t, -ones_t, ones_t]),
            )
        # extreme: handled as an upper bound on dp_abs

    idx = _VarIndex(
        p_da=p_da,
        p_h=p_h,
        h=h,
        dp=dp,
        q_da=q_da,
        q_h=q_h,
        dp_abs=dp_abs,
        xi=xi,
        var=var_idx,
        s_elec=s_elec,
        s_h2=s_h2,
    )
    data = _ProblemData(
        da_price=da_price,
        bal_price=bal_price,
        wind=wind,
        x=x,
        j0=j0,
        k0=k0,
        day0=day0,
        boundaries=boundaries,
        buy_flags=buy_flags,
    )
    return TrainingProblem(
        lp=lp,
        idx=idx,
        data=data,
        variant=variant,
        risk=risk,
        cond=cond,
        spec=spec,
        wind_capacity=wind_capacity,
        slack_penalty=slack_penalty,
        cut_relax=cut_relax,
    )


@dataclass(frozen=True)
class TrainingReport:
    """Training-phase diagnostics for one variant."""

    variant: ModelVariant
    objective_value: float  # includes slack penalties
    training_profit: float  # revenue terms only
    revenue_da: float
    revenue_h2: float
    revenue_bal: float
    slack_elec_total: float
    slack_h2_total: float
    imbalance: np.ndarray  # trained per-hour balancing position
    p_da: np.ndarray
    p_h: np.ndarray
    hydrogen: np.ndarray
    mean_abs_imbalance: float
    cvar_abs_imbalance: float
    max_abs_imbalance: float
    alpha: float
    status: str
    iterations: int
    num_variables: int
    num_constraints: int
    solve_seconds: float


def empirical_cvar(values, alpha: float) -> float:
    """Discrete conditional value-at-risk: the alpha-quantile order statistic
    plus the scaled mean excess above it (tail average)."""
    v = np.sort(np.asarray(values, dtype=float))
    n = v.size
    if n == 0:
        raise EmptyImbalanceSeries("empty series")
    k = max(int(np.ceil(alpha * n)), 1)
    var = v[k - 1]
    return float(var + np.maximum(v - var, 0.0).sum() / ((1.0 - alpha) * n))


def train(
    train_ds: Dataset,
    spec: ElectrolyzerSpec,
    wind_capacity: float,
    features: FeatureConfig,
    domains: PriceDomains,
    variant: ModelVariant,
    risk: RiskConfig | None = None,
    cond: ConditionalBuyConfig | None = None,
    slack_penalty: float = DEFAULT_SLACK_PENALTY,
    solver: str = "auto",
    tol: float = 1e-9,
) -> tuple[PolicySet, TrainingReport]:
    """Build, solve, and summarize one variant's training problem."""
    problem = build_training_problem(
        train_ds, spec, wind_capacity, features, domains, variant, risk, cond, slack_penalty
    )
    started = time.perf_counter()
    sol = solve_lp(problem.lp, tol=tol, method=solver)
    elapsed = time.perf_counter() - started
    ps = PolicySet(
        q_da=sol.x[problem.idx.q_da],
        q_h=sol.x[problem.idx.q_h],
        feature_config=features,
        domains=domains,
    )
    report = summarize_training(problem, sol, elapsed)
    return ps, report


def summarize_training(
    problem: TrainingProblem, sol: Solution, solve_seconds: float = 0.0
) -> TrainingReport:
    idx = problem.idx
    data = problem.data
    x = sol.x
    p_da = x[idx.p_da]
    p_h = x[idx.p_h]
    hyd = x[idx.h]
    dp = x[idx.dp]
    rev_da = float(p_da @ data.da_price)
    rev_h2 = float(hyd.sum() * problem.spec.h2_price)
    rev_bal = float(dp @ data.bal_price)
    s_elec = float(x[idx.s_elec].sum()) if idx.s_elec is not None else 0.0
    s_h2 = float(x[idx.s_h2].sum()) if idx.s_h2 is not None else 0.0
    abs_dp = np.abs(dp)
    return TrainingReport(
        variant=problem.variant,
        objective_value=float(sol.objective),
        training_profit=rev_da + rev_h2 + rev_bal,
        revenue_da=rev_da,
        revenue_h2=rev_h2,
        revenue_bal=rev_bal,
        slack_elec_total=s_elec,
        slack_h2_total=s_h2,
        imbalance=dp.copy(),
        p_da=p_da.copy(),
        p_h=p_h.copy(),
        hydrogen=hyd.copy(),
        mean_abs_imbalance=float(abs_dp.mean()),
        cvar_abs_imbalance=empirical_cvar(abs_dp, problem.risk.alpha),
        max_abs_imbalance=float(abs_dp.max()),
        alpha=problem.risk.alpha,
        status=sol.status,
        iterations=sol.iterations,
        num_variables=problem.num_variables,
        num_constraints=problem.num_constraints,
        solve_seconds=solve_seconds,
    )


def calibrate_risk_limits(
    betting_report: TrainingReport, fraction: float, alpha: float = 0.95
) -> RiskConfig:
    """Risk limits as a fraction of the unconstrained betting model's
    imbalance statistics (its mean, CVaR, and maximum of |imbalance|)."""
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    series = np.abs(np.asarray(betting_report.imbalance, dtype=float))
    if series.size == 0:
        raise EmptyImbalanceSeries("betting report carries no imbalance series")
    return RiskConfig(
        limit_mean=fraction * float(series.mean()),
        limit_cvar=fraction * empirical_cvar(series, alpha),
        limit_ext=fraction * float(series.max()),
        alpha=alpha,
    )


def audit_training_solution(
    problem: TrainingProblem, sol: Solution, tol: float = 1e-6
) -> list[str]:
    """Re-check every active constraint from the raw inputs, independently of
    the assembled LP rows and of the solver. Returns violation descriptions."""
    v: list[str] = []
    idx = problem.idx
    data = problem.data
    spec = problem.spec
    variant = problem.variant
    risk = problem.risk
    x_sol = sol.x
    t_hours = data.da_price.size

    p_da = x_sol[idx.p_da]
    p_h = x_sol[idx.p_h]
    hyd = x_sol[idx.h]
    dp = x_sol[idx.dp]
    q_da = x_sol[idx.q_da]
    q_h = x_sol[idx.q_h]
    s_elec = x_sol[idx.s_elec] if idx.s_elec is not None else np.zeros(t_hours)
    s_h2 = x_sol[idx.s_h2] if idx.s_h2 is not None else np.zeros(t_hours // 24)

    def check(name: str, ok: np.ndarray | bool):
        arr = np.atleast_1d(np.asarray(ok))
        if not arr.all():
            v.append(f"{name}: {int((~arr).sum())} violation(s)")

    # policy links
    pred_da = np.einsum("tn,tn->t", q_da[data.j0, data.k0, :], data.x)
    pred_h = np.einsum("tn,tn->t", q_h[data.j0, data.k0, :], data.x)
    check("policy-link-da", np.abs(p_da - pred_da) <= tol)
    check("policy-link-h", np.abs(p_h - pred_h) <= tol)

    # power balance and trade bound
    check("power-balance", p_da + dp + p_h <= data.wind + tol)
    check("da-upper-bound", p_da <= problem.wind_capacity + tol)

    # electrolyzer range (minimum load slack-relaxed outside permitted)
    check("elec-upper", p_h <= spec.p_max + tol)
    check("elec-lower", p_h + s_elec >= spec.p_min - tol)
    if idx.s_elec is None:
        check("elec-lower-hard", p_h >= spec.p_min - tol)

    # production cuts (with the slack-tied relaxation) and hydrogen sign
    for s, cut in enumerate(spec.cuts):
        relax = problem.cut_relax[s] * s_elec
        check(f"cut-{s}", hyd <= cut.slope * p_h + cut.intercept + relax + tol)
    check("hydrogen-nonneg", hyd >= -tol)

    # daily quota
    daily = np.bincount(data.day0, weights=hyd, minlength=t_hours // 24)
    check("daily-quota", daily + s_h2 >= spec.daily_min - tol)

    # curve monotonicity
    check("slope-nonneg", q_da[:, :, 0].ravel() >= -tol)
    x_tail = data.x[:, 1:]
    for kk in range(len(data.boundaries)):
        lam = data.boundaries[kk]
        gap = (q_da[data.j0, kk + 1, 0] - q_da[data.j0, kk, 0]) * lam + np.einsum(
            "tn,tn->t", q_da[data.j0, kk + 1, 1:] - q_da[data.j0, kk, 1:], x_tail
        )
        check(f"cross-domain-{kk}", gap >= -tol)

    # regime bounds
    if variant.regime == PERMITTED:
        check("buy-bound-da", p_da >= -spec.p_max - tol)
    elif variant.regime == RESTRICTED:
        check("sell-only-da", p_da >= -tol)
        check("sell-only-dp", dp >= -tol)
    else:
        flags = data.buy_flags
        check("cond-da", p_da >= np.where(flags, -spec.p_max, 0.0) - tol)
        check(
            "cond-dp",
            dp >= np.where(flags, -(problem.wind_capacity + spec.p_max), 0.0) - tol,
        )
        check("cond-flags", flags == (data.da_price < problem.cond.lambda_s))

    # slack bounds
    check("slack-elec-range", (s_elec >= -tol) & (s_elec <= spec.p_min + tol))
    check("slack-h2-nonneg", s_h2 >= -tol)

    # risk constraints
    if variant.risk != RISK_NONE:
        dp_abs = x_sol[idx.dp_abs]
        check("abs-epigraph", (dp_abs >= dp - tol) & (dp_abs >= -dp - tol))
        if variant.risk == RISK_MEAN:
            check("risk-mean", dp_abs.mean() <= risk.limit_mean + tol)
        elif variant.risk == RISK_CVAR:
            xi = x_sol[idx.xi]
            var = x_sol[idx.var]
            lhs = var + xi.sum() / ((1.0 - risk.alpha) * t_hours)
            check("risk-cvar", lhs <= risk.limit_cvar + tol)
            check("risk-cvar-xi", (xi >= -tol) & (xi >= dp_abs - var - tol))
        else:
            check("risk-extreme", dp_abs <= risk.limit_ext + tol)
    return v
