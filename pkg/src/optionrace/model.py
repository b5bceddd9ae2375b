"""Closed-form payoffs, deployment thresholds and the region classifier.

Every function here is pure. Thresholds that have no finite solution
(zero alignment probability, a follower share of one half or more) come
back as ``math.inf`` rather than raising, so parameter sweeps can cross
those boundaries without special-casing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Literal

INF = math.inf


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


@dataclass(frozen=True)
class RaceParameters:
    """Exogenous constants of the two-player deployment race.

    ``sigma`` may be zero, which makes the asset path deterministic; that
    degenerate case is useful for checking the simulator.
    """

    r: float = 0.05
    delta: float = 0.02
    sigma: float = 0.3
    gamma: float = 0.0
    v_ref: float = 1.0
    invest_cost: float = 1.0
    d_social: float = 10.0
    d_private: float = 0.0
    share: float = 0.0
    lambda_rate: float = 0.5

    def __post_init__(self):
        for name in ("r", "delta", "sigma", "d_social", "d_private"):
            if not getattr(self, name) >= 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)!r}")
        for name in ("invest_cost", "lambda_rate", "v_ref"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if not 0.0 <= self.share <= 1.0:
            raise DomainError(f"share must lie in [0, 1], got {self.share!r}")
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")

    @property
    def mu(self) -> float:
        """Risk-neutral drift of the asset value."""
        return self.r - self.delta

    def with_(self, **changes) -> "RaceParameters":
        return replace(self, **changes)


@dataclass(frozen=True)
class BeliefState:
    """Alignment probabilities a player assigns to its own and its rival's deployment."""

    pi_self: float
    pi_rival: float
    source: Literal["direct", "learned"] = "direct"
    tau: float | None = None

    def __post_init__(self):
        for name in ("pi_self", "pi_rival"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
        if self.source not in ("direct", "learned"):
            raise DomainError(f"unknown belief source {self.source!r}")
        if self.source == "learned" and self.tau is None:
            raise DomainError("learned beliefs must record tau")

    @classmethod
    def symmetric(cls, pi: float) -> "BeliefState":
        return cls(pi, pi)

    @classmethod
    def learned(cls, lambda_rate: float, tau: float) -> "BeliefState":
        pi = safety_probability(lambda_rate, tau)
        return cls(pi, pi, source="learned", tau=tau)

    @property
    def is_symmetric(self) -> bool:
        return self.pi_self == self.pi_rival


class Region(str, enum.Enum):
    WAIT_BELOW_ALL = "WaitBelowAll"
    SUICIDE_REGION = "SuicideRegion"
    PROFITABLE_WAIT = "ProfitableWait"
    RACE_VIABLE = "RaceViable"


@dataclass(frozen=True)
class RegionLabel:
    region: Region
    v_preempt: float
    v_survival: float

    def __str__(self):
        return self.region.value


@dataclass(frozen=True)
class ThresholdSet:
    """The critical asset values for one parameter point.

    ``v_saviour`` is ``None`` when the follower share is nonzero, because
    the saviour threshold is only defined for a strict winner-takes-all race.
    """

    v_preempt: float
    v_survival: float
    v_nuclear: float
    v_saviour: float | None
    v_liability: float
    immediate_deploy: bool = False
    pi: float = field(default=math.nan, compare=False)

    @property
    def suicide_band(self) -> tuple[float, float] | None:
        """Half-open interval ``[v_preempt, v_survival)``, or None when empty."""
        if self.v_preempt < self.v_survival:
            return (self.v_preempt, self.v_survival)
        return None


def _check_pi(pi: float, name: str = "pi") -> None:
    if not 0.0 <= pi <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {pi!r}")


def safety_probability(lambda_rate: float, tau: float) -> float:
    """Probability that a system deployed after ``tau`` units of safety research is aligned."""
    if not lambda_rate > 0:
        raise DomainError(f"lambda_rate must be > 0, got {lambda_rate!r}")
    if not tau >= 0:
        raise DomainError(f"tau must be >= 0, got {tau!r}")
    return -math.expm1(-lambda_rate * tau)


def research_time_for_safety(lambda_rate: float, pi: float) -> float:
    """Inverse of :func:`safety_probability`."""
    if not lambda_rate > 0:
        raise DomainError(f"lambda_rate must be > 0, got {lambda_rate!r}")
    if not 0.0 <= pi < 1.0:
        raise DomainError(f"pi must lie in [0, 1) for a finite research time, got {pi!r}")
    return -math.log1p(-pi) / lambda_rate


# The ruin term is summed with math.fsum so that leader and follower payoffs
# round identically; otherwise their difference at the preemption barrier is
# swamped by the ulp of a large D.

def leader_payoff(v: float, pi: float, params: RaceParameters) -> float:
    """Expected payoff of deploying first at asset value ``v``."""
    _check_pi(pi)
    ruin = (1.0 - pi) * (params.d_social + params.d_private)
    return math.fsum(((1.0 - params.share) * pi * v, -ruin, -params.invest_cost))


def follower_payoff(v: float, pi: float, params: RaceParameters) -> float:
    """Expected payoff of the non-deployer; it bears the shared ruin but no cost or liability."""
    _check_pi(pi)
    return math.fsum((params.share * pi * v, -(1.0 - pi) * params.d_social))


def preemption_threshold(pi: float, params: RaceParameters) -> float:
    """Asset value at which leading and following pay the same.

    Independent of ``d_social`` by construction: the shared ruin term
    cancels from the indifference condition.
    """
    _check_pi(pi)
    denom = (1.0 - 2.0 * params.share) * pi
    if denom <= 0.0:
        return INF
    return params.invest_cost / denom


def survival_threshold(pi: float, params: RaceParameters, include_private: bool = True) -> float:
    """Asset value at which the leader's expected payoff turns nonnegative.

    With ``include_private`` the leader's own liability ``d_private`` is
    added to the shared ruin it bears.
    """
    _check_pi(pi)
    if params.share >= 1.0:
        raise DomainError("survival threshold undefined for share = 1 (leader receives nothing)")
    if pi == 0.0:
        return INF
    d_eff = params.d_social + params.d_private if include_private else params.d_social
    return (params.invest_cost + (1.0 - pi) * d_eff) / ((1.0 - params.share) * pi)


def nuclear_threshold(pi: float, params: RaceParameters) -> float:
    """First-strike threshold of a standoff where waiting is safe (follower payoff zero)."""
    _check_pi(pi)
    if pi == 0.0:
        return INF
    return (params.invest_cost + (1.0 - pi) * params.d_social) / pi


def saviour_premium(beliefs: BeliefState, params: RaceParameters) -> float:
    return params.d_social * (beliefs.pi_self - beliefs.pi_rival)


def saviour_threshold(beliefs: BeliefState, params: RaceParameters) -> tuple[float, bool]:
    """Preemption threshold of a player who trusts its own safety more than its rival's.

    Returns ``(threshold, immediate_deploy)``. A nonpositive raw threshold is
    clamped to zero and flagged: preemption then pays at any positive value.
    Only defined for a winner-takes-all race (``share == 0``).
    """
    if params.share != 0.0:
        raise DomainError(f"saviour threshold requires share = 0, got {params.share!r}")
    if beliefs.pi_self == 0.0:
        return INF, False
    raw = (params.invest_cost - saviour_premium(beliefs, params)) / beliefs.pi_self
    if raw <= 0.0:
        return 0.0, True
    return raw, False


def liability_threshold(pi: float, params: RaceParameters) -> float:
    """Preemption threshold once the leader privately bears ``d_private`` on misalignment."""
    _check_pi(pi)
    denom = pi * (1.0 - 2.0 * params.share)
    if denom <= 0.0:
        return INF
    return (params.invest_cost + (1.0 - pi) * params.d_private) / denom


def suicide_bound_d(v: float, pi: float, params: RaceParameters) -> float:
    """Shared ruin magnitude above which ``(v, pi)`` sits in the suicide region.

    This is the ``D`` at which ``v`` equals the survival threshold (ruin
    counted without private liability). At ``share == 0`` it reads
    ``(pi v - I) / (1 - pi)``. Can be negative, in which case any ``D >= 0``
    qualifies provided ``v`` is at or above the preemption threshold.
    """
    _check_pi(pi)
    if pi == 1.0:
        raise DomainError("no ruin is possible at pi = 1")
    return ((1.0 - params.share) * pi * v - params.invest_cost) / (1.0 - pi)


def classify_region(v: float, pi: float, params: RaceParameters,
                    include_private: bool = True) -> RegionLabel:
    """Label ``v`` against the preemption and survival thresholds.

    Intervals are half-open: each lower bound is inclusive, each upper
    bound exclusive.
    """
    if not v >= 0:
        raise DomainError(f"v must be >= 0, got {v!r}")
    vp = preemption_threshold(pi, params)
    vs = survival_threshold(pi, params, include_private)
    if v < min(vp, vs):
        region = Region.WAIT_BELOW_ALL
    elif v >= max(vp, vs):
        region = Region.RACE_VIABLE
    elif vp <= v < vs:
        region = Region.SUICIDE_REGION
    else:
        region = Region.PROFITABLE_WAIT
    return RegionLabel(region, vp, vs)


def compute_thresholds(beliefs: BeliefState, params: RaceParameters,
                       include_private: bool = True) -> ThresholdSet:
    """All five thresholds, evaluated at the player's own alignment belief."""
    pi = beliefs.pi_self
    if params.share == 0.0:
        v_sav, immediate = saviour_threshold(beliefs, params)
    else:
        v_sav, immediate = None, False
    return ThresholdSet(
        v_preempt=preemption_threshold(pi, params),
        v_survival=survival_threshold(pi, params, include_private),
        v_nuclear=nuclear_threshold(pi, params),
        v_saviour=v_sav,
        v_liability=liability_threshold(pi, params),
        immediate_deploy=immediate,
        pi=pi,
    )
