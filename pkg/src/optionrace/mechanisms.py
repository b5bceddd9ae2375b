"""Policy levers that close the suicide region.

Private liability and windfall sharing are solved by bisection on a
monotone closure gap; the published closed form for the critical liability
is evaluated alongside so callers always see both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

from .model import (
    BeliefState,
    DomainError,
    RaceParameters,
    liability_threshold,
    preemption_threshold,
    saviour_threshold,
    survival_threshold,
)

SurvivalMode = Literal["excludes-private", "includes-private"]
SURVIVAL_MODES: tuple[str, ...] = ("excludes-private", "includes-private")

MAX_BRACKET = 1e12
MAX_ITER = 200


class SolverError(RuntimeError):
    """A root could not be bracketed or located."""


@dataclass(frozen=True)
class LiabilitySolution:
    d_private_paper: float
    d_private_numeric: float
    survival_mode: str
    discrepancy: float
    already_closed: bool = False
    closure_gap: float = 0.0


@dataclass(frozen=True)
class WarningShotReport:
    d_before: float
    d_after: float
    v_preempt_before: float
    v_preempt_after: float
    v_survival_before: float
    v_survival_after: float
    delta_v_preempt: float
    delta_v_survival: float
    delta_v_saviour: float | None
    region_width_change: float


def _bisect_first_true(pred: Callable[[float], bool], lo: float, hi: float) -> float:
    """Smallest x in ``(lo, hi]`` with ``pred(x)``, given ``pred(lo)`` false and ``pred(hi)`` true.

    Runs to full float resolution so the closure gap at the answer is at
    rounding level, not at a bracket-width tolerance.
    """
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def published_critical_liability(pi: float, params: RaceParameters) -> float:
    """The published closed form ``S (I + (1 - pi) D_social) / (1 - S)``."""
    s = params.share
    if s >= 1.0:
        return math.inf
    return s * (params.invest_cost + (1.0 - pi) * params.d_social) / (1.0 - s)


def _liability_gap(pi: float, params: RaceParameters, mode: str) -> Callable[[float], float]:
    include = mode == "includes-private"

    def gap(d_private: float) -> float:
        p = params.with_(d_private=d_private)
        return liability_threshold(pi, p) - survival_threshold(pi, p, include_private=include)

    return gap


def critical_private_liability(pi: float, params: RaceParameters,
                               survival_mode: SurvivalMode = "excludes-private") -> LiabilitySolution:
    """Smallest private liability at which the liability-adjusted preemption
    threshold meets the survival threshold.

    ``survival_mode`` selects whether the survival threshold counts the
    leader's private liability too. The bracket starts at
    ``[0, max(10 D, 10 I)]`` and grows tenfold up to 1e12.
    """
    if survival_mode not in SURVIVAL_MODES:
        raise DomainError(f"unknown survival mode {survival_mode!r}")
    if not 0.0 < pi < 1.0:
        raise DomainError(f"pi must lie in (0, 1), got {pi!r}")
    published = published_critical_liability(pi, params)

    if params.share >= 0.5:
        # liability threshold is +inf for every D_private
        return LiabilitySolution(published, 0.0, survival_mode, abs(published), already_closed=True,
                                 closure_gap=math.inf)

    gap = _liability_gap(pi, params, survival_mode)
    closed = lambda d: gap(d) >= 0.0  # noqa: E731
    if closed(0.0):
        return LiabilitySolution(published, 0.0, survival_mode, abs(published), already_closed=True,
                                 closure_gap=gap(0.0))

    hi = max(10.0 * params.d_social, 10.0 * params.invest_cost)
    while not closed(hi):
        if hi >= MAX_BRACKET:
            raise SolverError(
                f"region cannot be closed by liability alone (mode {survival_mode}, "
                f"gap {gap(hi):.3g} at D_private = {hi:.3g})")
        hi *= 10.0
    d_star = _bisect_first_true(closed, 0.0, hi)
    return LiabilitySolution(published, d_star, survival_mode, abs(published - d_star),
                             closure_gap=gap(d_star))


def critical_windfall_share(pi: float, params: RaceParameters, include_private: bool = True) -> float:
    """Smallest follower share at which preemption no longer undercuts survival.

    Share 0.5 always closes the region since the preemption threshold is
    infinite there.
    """
    if not 0.0 < pi < 1.0:
        raise DomainError(f"pi must lie in (0, 1), got {pi!r}")

    def closed(s: float) -> bool:
        p = params.with_(share=s)
        return preemption_threshold(pi, p) >= survival_threshold(pi, p, include_private)

    if closed(0.0):
        return 0.0
    return _bisect_first_true(closed, 0.0, 0.5)


def _delta(after: float, before: float) -> float:
    # equal infinities count as no change
    if after == before:
        return 0.0
    return after - before


def _band_width(vp: float, vs: float) -> float:
    if math.isinf(vp):
        return 0.0
    return max(0.0, vs - vp)


def warning_shot(beliefs: BeliefState | float, params: RaceParameters, d_after: float,
                 include_private: bool = True) -> WarningShotReport:
    """Compare thresholds before and after an upward jump of the shared ruin magnitude.

    ``beliefs`` may be a bare probability for the symmetric game. With
    asymmetric beliefs the preemption and survival thresholds use
    ``pi_self``; the saviour change is reported only for ``share == 0``.
    """
    if not isinstance(beliefs, BeliefState):
        beliefs = BeliefState.symmetric(float(beliefs))
    if not d_after >= params.d_social:
        raise DomainError(f"d_after ({d_after!r}) must be >= d_social ({params.d_social!r})")
    pi = beliefs.pi_self
    before, after = params, params.with_(d_social=d_after)

    vp0, vp1 = preemption_threshold(pi, before), preemption_threshold(pi, after)
    vs0 = survival_threshold(pi, before, include_private)
    vs1 = survival_threshold(pi, after, include_private)
    if params.share == 0.0:
        sav0, _ = saviour_threshold(beliefs, before)
        sav1, _ = saviour_threshold(beliefs, after)
        d_sav = _delta(sav1, sav0)
    else:
        d_sav = None
    return WarningShotReport(
        d_before=params.d_social,
        d_after=d_after,
        v_preempt_before=vp0,
        v_preempt_after=vp1,
        v_survival_before=vs0,
        v_survival_after=vs1,
        delta_v_preempt=_delta(vp1, vp0),
        delta_v_survival=_delta(vs1, vs0),
        delta_v_saviour=d_sav,
        region_width_change=_delta(_band_width(vp1, vs1), _band_width(vp0, vs0)),
    )
