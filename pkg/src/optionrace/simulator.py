"""Monte Carlo engine for the deployment race.

Each path owns counter-based random streams keyed by ``(seed, path_index)``,
so a path is reproduced exactly whether it is simulated alone, in a batch,
or on another thread. Paths are advanced in fixed-size chunks of time steps
and stop drawing once they have crossed their barrier.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .model import (
    BeliefState,
    DomainError,
    RaceParameters,
    follower_payoff,
    leader_payoff,
    liability_threshold,
    preemption_threshold,
    safety_probability,
    saviour_threshold,
    survival_threshold,
)

BARRIER_KINDS = ("preemption", "survival", "fixed", "saviour", "liability")
CHUNK = 512
BLOCK = 1024

# stream ids inside a path's spawn key
_NORMAL, _EVENT, _BRIDGE = 0, 1, 2


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SimConfig:
    v0: float = 1.0
    horizon: float = 20.0
    dt: float = 1.0 / 252.0
    n_paths: int = 10_000
    seed: int = 0
    barrier_kind: str = "preemption"
    barrier_level: float | None = None
    discounting: bool = False
    bridge_correction: bool = False

    def __post_init__(self):
        if not self.v0 > 0:
            raise DomainError(f"v0 must be > 0, got {self.v0!r}")
        if not (self.horizon > 0 and self.dt > 0 and self.dt <= self.horizon):
            raise DomainError(f"need 0 < dt <= horizon, got dt={self.dt!r}, horizon={self.horizon!r}")
        if self.n_paths < 1:
            raise DomainError(f"n_paths must be >= 1, got {self.n_paths!r}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.barrier_kind not in BARRIER_KINDS:
            raise DomainError(f"barrier_kind must be one of {BARRIER_KINDS}, got {self.barrier_kind!r}")
        if self.barrier_kind == "fixed" and (self.barrier_level is None or not self.barrier_level > 0):
            raise DomainError("a fixed barrier needs a positive barrier_level")
        if self.bridge_correction and self.barrier_kind != "fixed":
            raise DomainError("bridge correction is only available for a fixed barrier")

    @property
    def n_steps(self) -> int:
        return max(1, math.ceil(self.horizon / self.dt - 1e-9))

    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt

    def with_(self, **changes) -> "SimConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class RaceOutcome:
    path_index: int
    deployed: bool
    t_deploy: float
    v_deploy: float
    pi_at_deploy: float
    aligned: bool
    leader_id: int
    follower_id: int
    leader_payoff: float
    follower_payoff: float
    leader_payoff_discounted: float | None = None
    follower_payoff_discounted: float | None = None
    # continuous-time meeting point of the interpolated path with the barrier
    t_cross: float | None = None
    v_cross: float | None = None
    breakout: bool = False


@dataclass
class EnsembleStats:
    n_paths: int
    n_deployed: int
    deploy_probability: float
    t_deploy_mean: float | None
    t_deploy_quantiles: dict[str, float | None]
    pi_deploy_mean: float | None
    ruin_frequency: float | None
    ruin_frequency_se: float | None
    expected_ruin: float | None
    ruin_excess_mean: float | None
    ruin_excess_se: float | None
    leader_payoff_mean: float | None
    leader_payoff_se: float | None
    follower_payoff_mean: float | None
    follower_payoff_se: float | None
    leader_zero_share: float | None
    leader_payoff_discounted_mean: float | None = None
    follower_payoff_discounted_mean: float | None = None
    mean_abs_indifference_gap: float | None = None
    max_abs_indifference_gap: float | None = None


@dataclass
class RaceResult:
    stats: EnsembleStats
    outcomes: list[RaceOutcome] = field(repr=False)


@dataclass(frozen=True)
class ValidationReport:
    applicable: bool
    estimate: float | None
    target: float | None
    std_error: float | None
    rel_error: float | None
    beta1: float | None
    tolerance: float
    within_tolerance: bool
    n_paths: int
    crossed_fraction: float | None
    truncation_bound: float | None
    message: str = ""


@dataclass
class BreakoutReport:
    lag: float
    epsilon: float
    stats: EnsembleStats
    breakout_fraction: float
    deployer_counts: dict[str, int]
    pi_mean_breakout: float | None
    pi_mean_npv_rule: float | None
    survival_baseline: EnsembleStats
    no_monitoring_baseline: EnsembleStats
    outcomes: list[RaceOutcome] = field(repr=False)


def _stream(seed: int, path_index: int, kind: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(path_index, kind))
    return np.random.Generator(np.random.Philox(ss))


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("OPTIONRACE_THREADS", "1")))
    except ValueError:
        return 1


def _volatility(v: np.ndarray, params: RaceParameters) -> np.ndarray:
    return params.sigma * (v / params.v_ref) ** params.gamma


def _advance(x0: np.ndarray, z: np.ndarray, params: RaceParameters, dt: float) -> np.ndarray:
    """Log-values after each step of a chunk; rows are paths, columns are steps."""
    mu = params.mu
    if params.gamma == 0.0:
        sig = params.sigma
        incr = (mu - 0.5 * sig * sig) * dt + sig * math.sqrt(dt) * z
        return x0[:, None] + np.cumsum(incr, axis=1)
    # state-dependent volatility, frozen over each step
    out = np.empty_like(z)
    x = x0.copy()
    sq = math.sqrt(dt)
    for j in range(z.shape[1]):
        sig = _volatility(np.exp(x), params)
        x = x + (mu - 0.5 * sig * sig) * dt + sig * sq * z[:, j]
        out[:, j] = x
    return out


_LOG_MAX = math.log(np.finfo(float).max)


def _check_finite(x: np.ndarray, indices: Sequence[int], step: int) -> None:
    """Raise if any log-value is non-finite or would overflow on exponentiation."""
    ok = np.isfinite(x) & (x < _LOG_MAX)
    if not np.all(ok):
        bad = [int(indices[i]) for i in np.flatnonzero(~np.all(ok, axis=1))[:5]]
        raise SimulationError(f"non-finite asset value on paths {bad} near step {step}")


def simulate_path(config: SimConfig, params: RaceParameters, path_index: int) -> np.ndarray:
    """Asset values at every grid time ``0, dt, ..., n_steps * dt`` for one path."""
    if not 0 <= path_index < config.n_paths:
        raise DomainError(f"path_index {path_index} outside [0, {config.n_paths})")
    n = config.n_steps
    rng = _stream(config.seed, path_index, _NORMAL)
    x = np.empty(n + 1)
    x[0] = math.log(config.v0)
    for start in range(0, n, CHUNK):
        m = min(CHUNK, n - start)
        z = rng.standard_normal(m)[None, :]
        x[start + 1:start + 1 + m] = _advance(x[start:start + 1], z, params, config.dt)[0]
    _check_finite(x[None, :], [path_index], n)
    return np.exp(x)


def first_crossing(series: np.ndarray, barrier: Callable[[float], float] | float | np.ndarray,
                   dt: float) -> float | None:
    """Earliest grid time at which the series reaches the barrier, or None.

    ``barrier`` is a level, an array of levels aligned with ``series``, or a
    function of time. An infinite barrier is never reached.
    """
    series = np.asarray(series, dtype=float)
    times = np.arange(len(series)) * dt
    if callable(barrier):
        levels = np.array([barrier(t) for t in times])
    else:
        levels = np.broadcast_to(np.asarray(barrier, dtype=float), series.shape)
    hit = series >= levels
    if not hit.any():
        return None
    return float(times[int(np.argmax(hit))])


def _rival_rate(beliefs: BeliefState, lambda_rate: float) -> float:
    # rival learns at a rate that reproduces the belief gap at every horizon
    if beliefs.is_symmetric:
        return lambda_rate
    if not (0.0 < beliefs.pi_self < 1.0 and beliefs.pi_rival < 1.0):
        raise DomainError("a time-varying saviour barrier needs pi_self in (0, 1) and pi_rival < 1")
    return lambda_rate * math.log1p(-beliefs.pi_rival) / math.log1p(-beliefs.pi_self)


def barrier_function(config: SimConfig, params: RaceParameters,
                     beliefs: BeliefState | None = None) -> Callable[[float], float]:
    """Deployment barrier as a function of elapsed research time."""
    kind = config.barrier_kind
    lam = params.lambda_rate
    if kind == "fixed":
        level = float(config.barrier_level)
        return lambda t: level
    if kind == "preemption":
        return lambda t: preemption_threshold(safety_probability(lam, t), params)
    if kind == "survival":
        return lambda t: survival_threshold(safety_probability(lam, t), params)
    if kind == "liability":
        return lambda t: liability_threshold(safety_probability(lam, t), params)
    if kind == "saviour":
        if params.share != 0.0:
            raise DomainError("the saviour barrier requires share = 0")
        beliefs = beliefs or BeliefState.symmetric(0.5)
        lam_rival = _rival_rate(beliefs, lam)

        def saviour(t: float) -> float:
            pi_s = safety_probability(lam, t)
            pi_r = safety_probability(lam_rival, t) if lam_rival > 0 else 0.0
            return saviour_threshold(BeliefState(pi_s, pi_r), params)[0]

        return saviour
    raise DomainError(f"unknown barrier kind {kind!r}")


@dataclass
class _Crossings:
    step: np.ndarray      # -1 where the path never triggered
    x_prev: np.ndarray    # log value one step before the trigger
    x_hit: np.ndarray     # log value at the trigger step


def _walk(config: SimConfig, params: RaceParameters, indices: Sequence[int],
          trigger: Callable[[np.ndarray, int], np.ndarray],
          bridge_level: float | None = None) -> _Crossings:
    """Advance a block of paths until each triggers or the horizon is reached.

    ``trigger(values, first_step)`` returns a boolean array marking, for
    every path and column, whether the deployment condition holds at grid
    step ``first_step + column``.
    """
    n = config.n_steps
    k = len(indices)
    normals = [_stream(config.seed, i, _NORMAL) for i in indices]
    bridges = [_stream(config.seed, i, _BRIDGE) for i in indices] if bridge_level is not None else None
    step = np.full(k, -1, dtype=np.int64)
    x_prev = np.full(k, np.nan)
    x_hit = np.full(k, np.nan)
    x = np.full(k, math.log(config.v0))

    at0 = trigger(np.exp(x)[:, None], 0)[:, 0]
    step[at0] = 0
    x_prev[at0] = x_hit[at0] = x[at0]
    active = np.flatnonzero(~at0)

    sig2dt = params.sigma ** 2 * config.dt
    log_b = math.log(bridge_level) if bridge_level is not None else 0.0
    for start in range(0, n, CHUNK):
        if active.size == 0:
            break
        m = min(CHUNK, n - start)
        z = np.stack([normals[a].standard_normal(m) for a in active])
        xs = _advance(x[active], z, params, config.dt)
        _check_finite(xs, [indices[a] for a in active], start + m)
        hit = trigger(np.exp(xs), start + 1)
        if bridges is not None:
            u = np.stack([bridges[a].random(m) for a in active])
            left = np.concatenate([x[active][:, None], xs[:, :-1]], axis=1)
            with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                p_touch = np.exp(-2.0 * (log_b - left) * (log_b - xs) / sig2dt) if sig2dt > 0 else 0.0
            hit = hit | (u < p_touch)
        any_hit = hit.any(axis=1)
        first = np.argmax(hit, axis=1)
        for row in np.flatnonzero(any_hit):
            a = active[row]
            j = first[row]
            step[a] = start + 1 + j
            x_hit[a] = xs[row, j]
            x_prev[a] = xs[row, j - 1] if j > 0 else x[a]
        x[active] = xs[:, -1]
        active = active[~any_hit]
    return _Crossings(step, x_prev, x_hit)


def _blocks(n_paths: int) -> list[range]:
    return [range(s, min(s + BLOCK, n_paths)) for s in range(0, n_paths, BLOCK)]


def _map_blocks(fn: Callable[[range], list], n_paths: int) -> list:
    blocks = _blocks(n_paths)
    workers = min(thread_count(), len(blocks))
    if workers <= 1:
        parts = [fn(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, blocks))
    return [item for part in parts for item in part]


def _refine_crossing(t0: float, t1: float, x0: float, x1: float,
                     barrier: Callable[[float], float]) -> tuple[float, float]:
    """Bisect for where the linearly interpolated log path meets the barrier on ``[t0, t1]``."""
    def gap(t):
        level = barrier(t)
        if math.isinf(level):
            return -math.inf
        return x0 + (x1 - x0) * (t - t0) / (t1 - t0) - math.log(level)

    lo, hi = t0, t1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if gap(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi, math.exp(x0 + (x1 - x0) * (hi - t0) / (t1 - t0))


def _realize(index: int, t: float, v: float, pi: float, leader: int, aligned: bool,
             params: RaceParameters, discount: bool, **extra) -> RaceOutcome:
    s = params.share
    if aligned:
        lp = (1.0 - s) * v - params.invest_cost
        fp = s * v
    else:
        lp = -(params.d_social + params.d_private) - params.invest_cost
        fp = -params.d_social
    lpd = fpd = None
    if discount:
        df = math.exp(-params.r * t)
        lpd, fpd = lp * df, fp * df
    return RaceOutcome(index, True, t, v, pi, aligned, leader, 1 - leader, lp, fp, lpd, fpd, **extra)


def _not_deployed(index: int) -> RaceOutcome:
    nan = math.nan
    return RaceOutcome(index, False, nan, nan, nan, False, -1, -1, nan, nan)


def _event_draws(seed: int, index: int) -> tuple[float, float]:
    # coin for the tie-break, uniform for the alignment lottery; always both
    u = _stream(seed, index, _EVENT).random(2)
    return float(u[0]), float(u[1])


def _race_block(config: SimConfig, params: RaceParameters, beliefs: BeliefState | None,
                barrier: Callable[[float], float], levels: np.ndarray, block: range) -> list[RaceOutcome]:
    def trigger(values, first):
        return values >= levels[first:first + values.shape[1]]

    bridge = config.barrier_level if config.bridge_correction else None
    cr = _walk(config, params, block, trigger, bridge)
    out = []
    for row, index in enumerate(block):
        k = int(cr.step[row])
        if k < 0:
            out.append(_not_deployed(index))
            continue
        t = k * config.dt
        v = math.exp(cr.x_hit[row])
        pi = safety_probability(params.lambda_rate, t)
        coin, u = _event_draws(config.seed, index)
        extra = {}
        if config.barrier_kind == "preemption" and k > 0:
            extra["t_cross"], extra["v_cross"] = _refine_crossing(
                (k - 1) * config.dt, t, cr.x_prev[row], cr.x_hit[row], barrier)
        out.append(_realize(index, t, v, pi, 0 if coin < 0.5 else 1, u < pi,
                            params, config.discounting, **extra))
    return out


def _mean_se(values: np.ndarray) -> tuple[float | None, float | None]:
    if values.size == 0:
        return None, None
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
    return mean, se


def summarize(outcomes: Sequence[RaceOutcome], params: RaceParameters,
              indifference: bool = False) -> EnsembleStats:
    """Aggregate per-path outcomes; inputs are taken in path order so results never depend on scheduling."""
    dep = [o for o in outcomes if o.deployed]
    n = len(outcomes)
    t = np.array([o.t_deploy for o in dep])
    pi = np.array([o.pi_at_deploy for o in dep])
    ruin = np.array([0.0 if o.aligned else 1.0 for o in dep])
    lp = np.array([o.leader_payoff for o in dep])
    fp = np.array([o.follower_payoff for o in dep])

    qs = {f"q{int(q * 100):02d}": (float(np.quantile(t, q)) if t.size else None)
          for q in (0.05, 0.25, 0.5, 0.75, 0.95)}
    ruin_mean, ruin_se = _mean_se(ruin)
    excess_mean, excess_se = _mean_se(ruin - (1.0 - pi))
    lp_mean, lp_se = _mean_se(lp)
    fp_mean, fp_se = _mean_se(fp)
    stats = EnsembleStats(
        n_paths=n,
        n_deployed=len(dep),
        deploy_probability=len(dep) / n if n else 0.0,
        t_deploy_mean=float(t.mean()) if t.size else None,
        t_deploy_quantiles=qs,
        pi_deploy_mean=float(pi.mean()) if pi.size else None,
        ruin_frequency=ruin_mean,
        ruin_frequency_se=ruin_se,
        expected_ruin=float(np.mean(1.0 - pi)) if pi.size else None,
        ruin_excess_mean=excess_mean,
        ruin_excess_se=excess_se,
        leader_payoff_mean=lp_mean,
        leader_payoff_se=lp_se,
        follower_payoff_mean=fp_mean,
        follower_payoff_se=fp_se,
        leader_zero_share=float(np.mean([o.leader_id == 0 for o in dep])) if dep else None,
    )
    if dep and dep[0].leader_payoff_discounted is not None:
        stats.leader_payoff_discounted_mean = float(np.mean([o.leader_payoff_discounted for o in dep]))
        stats.follower_payoff_discounted_mean = float(np.mean([o.follower_payoff_discounted for o in dep]))
    if indifference:
        gaps = np.array([
            abs(leader_payoff(o.v_cross, safety_probability(params.lambda_rate, o.t_cross), params)
                - follower_payoff(o.v_cross, safety_probability(params.lambda_rate, o.t_cross), params))
            for o in dep if o.t_cross is not None])
        if gaps.size:
            stats.mean_abs_indifference_gap = float(gaps.mean())
            stats.max_abs_indifference_gap = float(gaps.max())
    return stats


def run_race(config: SimConfig, params: RaceParameters,
             beliefs: BeliefState | None = None) -> RaceResult:
    """Simulate the symmetric race: first barrier crossing, coin tie-break, alignment lottery."""
    barrier = barrier_function(config, params, beliefs)
    levels = np.array([barrier(t) for t in config.times()])
    outcomes = _map_blocks(lambda b: _race_block(config, params, beliefs, barrier, levels, b),
                           config.n_paths)
    stats = summarize(outcomes, params, indifference=config.barrier_kind == "preemption")
    return RaceResult(stats, outcomes)


def first_passage_beta(params: RaceParameters) -> float:
    """Larger root of ``0.5 sigma^2 b (b - 1) + mu b - r = 0``."""
    mu, r, s2 = params.mu, params.r, params.sigma ** 2
    if s2 == 0.0:
        if mu <= 0.0:
            raise DomainError("deterministic path with mu <= 0 never reaches a higher barrier")
        return r / mu
    a = 0.5 * s2
    b = mu - 0.5 * s2
    return (-b + math.sqrt(b * b + 4.0 * a * r)) / (2.0 * a)


def validate_engine(config: SimConfig, params: RaceParameters, barrier_level: float,
                    tolerance: float = 0.01) -> ValidationReport:
    """Compare the simulated discount factor at first passage with its closed form.

    Paths that have not crossed by the horizon contribute zero; the
    resulting bias is at most ``exp(-r * horizon)`` times the uncrossed
    fraction, which is reported as ``truncation_bound``.
    """
    if params.gamma != 0.0:
        raise DomainError("engine validation needs constant volatility (gamma = 0)")
    if not barrier_level >= config.v0:
        raise DomainError(f"barrier_level must be >= v0, got {barrier_level!r}")
    n = config.n_paths
    if params.r == 0.0 and params.mu <= 0.0:
        return ValidationReport(False, None, None, None, None, None, tolerance, False, n, None, None,
                                "first-passage identity inapplicable for r = 0 and mu <= 0")
    beta = first_passage_beta(params)
    target = (config.v0 / barrier_level) ** beta
    cfg = config.with_(barrier_kind="fixed", barrier_level=barrier_level)

    def block_fn(block):
        cr = _walk(cfg, params, block, lambda v, first: v >= barrier_level,
                   barrier_level if cfg.bridge_correction else None)
        return list(cr.step)

    steps = np.array(_map_blocks(block_fn, n))
    crossed = steps >= 0
    disc = np.where(crossed, np.exp(-params.r * steps * cfg.dt), 0.0)
    est, se = _mean_se(disc)
    rel = abs(est - target) / target
    return ValidationReport(
        applicable=True,
        estimate=est,
        target=target,
        std_error=se,
        rel_error=rel,
        beta1=beta,
        tolerance=tolerance,
        within_tolerance=rel <= tolerance,
        n_paths=n,
        crossed_fraction=float(crossed.mean()),
        truncation_bound=math.exp(-params.r * cfg.n_steps * cfg.dt) * float(1.0 - crossed.mean()),
    )


def _breakout_block(config: SimConfig, params: RaceParameters, levels: np.ndarray,
                    lag_factor: float, epsilon: float, block: range) -> list[RaceOutcome]:
    def ready(v, u, vs):
        # own NPV test, or the rival is inside the breakout window below the survival level
        a0 = (v >= vs) | ((u >= vs - epsilon) & (u < vs))
        a1 = (u >= vs) | ((v >= vs - epsilon) & (v < vs))
        return a0, a1

    def trigger(values, first):
        vs = levels[first:first + values.shape[1]]
        a0, a1 = ready(values, values * lag_factor, vs)
        return a0 | a1

    cr = _walk(config, params, block, trigger)
    out = []
    for row, index in enumerate(block):
        k = int(cr.step[row])
        if k < 0:
            out.append(_not_deployed(index))
            continue
        t = k * config.dt
        v0 = math.exp(cr.x_hit[row])
        v1 = v0 * lag_factor
        a0, a1 = ready(np.array(v0), np.array(v1), levels[k])
        coin, u = _event_draws(config.seed, index)
        if a0 and a1:
            leader = 0 if coin < 0.5 else 1
        else:
            leader = 0 if a0 else 1
        v = v0 if leader == 0 else v1
        pi = safety_probability(params.lambda_rate, t)
        out.append(_realize(index, t, v, pi, leader, u < pi, params, config.discounting,
                            breakout=bool(v < levels[k])))
    return out


def breakout_scenario(config: SimConfig, params: RaceParameters, lag: float,
                      epsilon: float) -> BreakoutReport:
    """Race under perfect monitoring.

    Agent 0 holds the asset value ``V``; agent 1 lags with ``V * exp(-lag)``.
    Each agent deploys once its own value clears the survival threshold, or
    at once (a breakout) when its rival's value is within ``epsilon`` below
    that threshold. Both baselines are reported: the same monitoring rule
    with ``epsilon = 0`` and the unmonitored preemption race.
    """
    if not lag >= 0:
        raise DomainError(f"lag must be >= 0, got {lag!r}")
    if not epsilon >= 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon!r}")
    cfg = config.with_(barrier_kind="survival", barrier_level=None, bridge_correction=False)
    barrier = barrier_function(cfg, params)
    levels = np.array([barrier(t) for t in cfg.times()])
    factor = math.exp(-lag)

    def run(eps):
        return _map_blocks(lambda b: _breakout_block(cfg, params, levels, factor, eps, b), cfg.n_paths)

    outcomes = run(epsilon)
    baseline = outcomes if epsilon == 0 else run(0.0)
    dep = [o for o in outcomes if o.deployed]
    brk = [o.pi_at_deploy for o in dep if o.breakout]
    npv = [o.pi_at_deploy for o in dep if not o.breakout]
    no_monitoring = run_race(cfg.with_(barrier_kind="preemption"), params)
    return BreakoutReport(
        lag=lag,
        epsilon=epsilon,
        stats=summarize(outcomes, params),
        breakout_fraction=len(brk) / len(dep) if dep else 0.0,
        deployer_counts={"0": sum(o.leader_id == 0 for o in dep), "1": sum(o.leader_id == 1 for o in dep)},
        pi_mean_breakout=float(np.mean(brk)) if brk else None,
        pi_mean_npv_rule=float(np.mean(npv)) if npv else None,
        survival_baseline=summarize(baseline, params),
        no_monitoring_baseline=no_monitoring.stats,
        outcomes=outcomes,
    )
