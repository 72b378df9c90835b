"""Distances to stationarity and mixing times.

Metrics
-------
* ``tv``   : worst-case (or fixed-start) total variation ``max_x ||P^t(x,.) - pi||``
* ``sep``  : separation ``max_x max_y (1 - P^t(x,y)/pi(y))``
* ``dbar`` : pairwise total variation ``max_{x,x'} ||P^t(x,.) - P^t(x',.)||``

Time modes: ``discrete`` (the base kernel), ``lazy`` (the delta-lazy kernel,
integer times), ``continuous`` (the semigroup, real times, truncation
tolerance ``tol``).

Worst-case starts on birth-death chains default to the two endpoint states.
That is a deliberate shortcut, not a guarantee: it is exact for chains whose
stationary law bottoms out at an endpoint (all the built-in families), but
can undershoot at small times when pi has an interior valley.  The
``exhaustive`` flag restores full maximization and is the guard for anyone
feeding in such chains.

``mixing_time`` searches for the smallest time with distance <= eps by
exponential doubling followed by binary search, valid because all three
metrics are nonincreasing in time.  Searches give up at 10**7 time units
(NoConvergence: periodicity or a degenerate input).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain import Chain, _uniformized, as_probability_vector, _check_tol
from .errors import (
    BadDelta,
    BadEpsilon,
    BadShape,
    LengthMismatch,
    NoConvergence,
    NonIntegerTime,
)

SEARCH_CAP = 10_000_000

# Dense-power probing pays off for repeated large-m probes on small chains.
_POW_MIN_STEPS = 256
_POW_MAX_STATES = 300


def total_variation(a, b) -> float:
    """Total variation distance ``0.5 * sum |a - b|`` between two
    distributions of equal length."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise LengthMismatch(f"cannot compare shapes {x.shape} and {y.shape}")
    return 0.5 * float(np.abs(x - y).sum())


@dataclass(frozen=True, eq=False)
class DistanceQuery:
    """What to measure: metric, time parametrization, and start convention.

    ``start=None`` means worst case.  ``delta`` is required (in (0,1)) for
    lazy mode and must be omitted otherwise.  ``exhaustive`` forces full
    start maximization on birth-death chains.
    """

    time_mode: str
    metric: str
    delta: float | None = None
    start: object | None = None
    exhaustive: bool = False

    def __post_init__(self):
        if self.time_mode not in ("discrete", "lazy", "continuous"):
            raise ValueError(f"unknown time mode {self.time_mode!r}")
        if self.metric not in ("tv", "sep", "dbar"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.time_mode == "lazy":
            if not (isinstance(self.delta, (int, float)) and 0.0 < self.delta < 1.0):
                raise BadDelta(f"lazy mode needs delta in (0, 1), got {self.delta!r}")
        elif self.delta is not None:
            raise ValueError("delta only applies to lazy mode")
        if self.start is not None and self.metric == "dbar":
            raise ValueError("dbar is a pairwise metric; only worst_case applies")


class _Evaluator:
    """Caches the effective kernel and start set for repeated probes."""

    def __init__(self, chain: Chain, query: DistanceQuery, tol: float):
        _check_tol(tol)
        self.base = chain
        self.query = query
        self.tol = tol
        self.pi = chain.stationary
        if query.time_mode == "lazy":
            self.eff = chain.lazy(query.delta)
        else:
            self.eff = chain
        if query.start is not None:
            self.start_rows = as_probability_vector(query.start, chain.num_states)[None, :]
            self.start_idx = None
        else:
            self.start_rows = None
            if chain.is_birth_death and not query.exhaustive:
                self.start_idx = [0, chain.top_state]
            else:
                self.start_idx = list(range(chain.num_states))
        self._cache: dict[float, float] = {}

    def value(self, time) -> float:
        key = float(time)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._metric(self._rows(time))
            self._cache[key] = hit
        return hit

    def _initial_rows(self) -> np.ndarray:
        if self.start_rows is not None:
            return self.start_rows.copy()
        rows = np.zeros((len(self.start_idx), self.base.num_states))
        rows[np.arange(len(self.start_idx)), self.start_idx] = 1.0
        return rows

    def _rows(self, time) -> np.ndarray:
        if self.query.time_mode == "continuous":
            return _uniformized(self.base, self._initial_rows(), float(time), self.tol)
        steps = _as_steps(time)
        kernel = self.eff
        if (
            steps >= _POW_MIN_STEPS
            and kernel.num_states <= _POW_MAX_STATES
        ):
            power = np.linalg.matrix_power(kernel.dense_kernel, steps)
            if self.start_rows is not None:
                return self.start_rows @ power
            return power[self.start_idx]
        rows = self._initial_rows()
        for _ in range(steps):
            rows = kernel.apply(rows)
        return rows

    def _metric(self, rows: np.ndarray) -> float:
        metric = self.query.metric
        if metric == "tv":
            return float(0.5 * np.abs(rows - self.pi).sum(axis=1).max())
        if metric == "sep":
            worst = 1.0 - (rows / self.pi).min()
            return float(min(max(worst, 0.0), 1.0))
        best = 0.0
        for i in range(rows.shape[0] - 1):
            gap = 0.5 * np.abs(rows[i + 1 :] - rows[i]).sum(axis=1).max()
            best = max(best, float(gap))
        return min(best, 1.0)


def _as_steps(time) -> int:
    if isinstance(time, (int, np.integer)) and not isinstance(time, bool):
        steps = int(time)
    elif isinstance(time, float) and time.is_integer():
        steps = int(time)
    else:
        raise NonIntegerTime(f"discrete modes need integer times, got {time!r}")
    if steps < 0:
        raise BadShape(f"time must be nonnegative, got {time!r}")
    return steps


def distance(chain: Chain, query: DistanceQuery, time, tol: float = 1e-10) -> float:
    """Distance to stationarity at one time point.

    Continuous mode accepts real ``time >= 0`` and obeys the uniformization
    tolerance ``tol``; the discrete modes require integer times.
    """
    if query.time_mode == "continuous":
        if not (isinstance(time, (int, float)) and math.isfinite(time)):
            raise BadShape(f"time must be a finite number, got {time!r}")
        if time < 0:
            raise BadShape(f"time must be nonnegative, got {time!r}")
    return _Evaluator(chain, query, tol).value(time)


def mixing_time(chain: Chain, eps: float, query: DistanceQuery, tol: float = 1e-10):
    """Smallest time with distance <= eps.

    Discrete modes return the exact minimal integer.  Continuous mode
    bisects to a bracket of width <= max(1e-6, 1e-4 * t) and returns the
    bracket midpoint.  Raises NoConvergence if the distance is still above
    eps at 10**7.
    """
    if not (isinstance(eps, (int, float)) and 0.0 < eps < 1.0):
        raise BadEpsilon(f"eps must lie in (0, 1), got {eps!r}")
    ev = _Evaluator(chain, query, tol)
    if query.time_mode == "continuous":
        return _search_continuous(ev, eps)
    return _search_discrete(ev, eps)


def mixing_bracket(
    chain: Chain, eps: float, query: DistanceQuery, tol: float = 1e-10
) -> tuple[float, float]:
    """(lo, hi) enclosing the exact mixing time; equal endpoints in the
    discrete modes.  Inequality checks against a computed mixing time should
    compare with the safe end of this bracket, not the midpoint."""
    if not (isinstance(eps, (int, float)) and 0.0 < eps < 1.0):
        raise BadEpsilon(f"eps must lie in (0, 1), got {eps!r}")
    ev = _Evaluator(chain, query, tol)
    if query.time_mode == "continuous":
        return _continuous_bracket(ev, eps)
    m = _search_discrete(ev, eps)
    return float(m), float(m)


def _search_discrete(ev: _Evaluator, eps: float) -> int:
    if ev.value(0) <= eps:
        return 0
    m = 1
    while ev.value(m) > eps:
        m *= 2
        if m > SEARCH_CAP:
            if ev.value(SEARCH_CAP) <= eps:
                m = SEARCH_CAP
                break
            raise NoConvergence(
                f"distance stays above {eps} through {SEARCH_CAP} steps"
            )
    lo, hi = m // 2, m
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ev.value(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


def _search_continuous(ev: _Evaluator, eps: float) -> float:
    lo, hi = _continuous_bracket(ev, eps)
    return 0.5 * (lo + hi)


def _continuous_bracket(ev: _Evaluator, eps: float) -> tuple[float, float]:
    # The semigroup property lets every probe advance from the last time at
    # which the distance was still above eps, instead of integrating from 0.
    # Increments run at tol/128, so the composed truncation error over the
    # whole search stays below tol (well under 128 committed increments).
    inc_tol = ev.tol / 128.0
    anchor_t = 0.0
    anchor = ev._initial_rows()

    def probe(t: float):
        delta = t - anchor_t
        rows = anchor if delta <= 0.0 else _uniformized(ev.base, anchor, delta, inc_tol)
        return ev._metric(rows), rows

    val, _ = probe(0.0)
    if val <= eps:
        return 0.0, 0.0
    t = 1.0
    while True:
        val, rows = probe(t)
        if val <= eps:
            break
        anchor_t, anchor = t, rows
        t *= 2.0
        if t > SEARCH_CAP:
            val, _ = probe(float(SEARCH_CAP))
            if val <= eps:
                t = float(SEARCH_CAP)
                break
            raise NoConvergence(
                f"distance stays above {eps} through t = {SEARCH_CAP}"
            )
    lo, hi = anchor_t, t
    while hi - lo > max(1e-6, 1e-4 * hi):
        mid = 0.5 * (lo + hi)
        val, rows = probe(mid)
        if val <= eps:
            hi = mid
        else:
            lo = mid
            anchor_t, anchor = mid, rows
    return lo, hi


@dataclass(frozen=True, eq=False)
class DistanceCurve:
    """Distance samples along a time grid for one query."""

    query: DistanceQuery
    times: tuple
    values: tuple = field(default_factory=tuple)

    @property
    def samples(self) -> list:
        return list(zip(self.times, self.values))


def distance_curve(chain: Chain, query: DistanceQuery, times, tol: float = 1e-10) -> DistanceCurve:
    """Sample the distance at the given times (must be sorted ascending).

    Verifies the monotonicity invariant: values may not increase by more
    than 1e-9 from one sample to the next.
    """
    times = tuple(times)
    if any(b < a for a, b in zip(times, times[1:])):
        raise BadShape("time grid must be nondecreasing")
    ev = _Evaluator(chain, query, tol)
    values = tuple(ev.value(t) for t in times)
    for (t0, v0), (t1, v1) in zip(zip(times, values), zip(times[1:], values[1:])):
        if v1 > v0 + 1e-9:
            raise ArithmeticError(
                f"distance increased from {v0} at {t0} to {v1} at {t1}"
            )
    return DistanceCurve(query=query, times=times, values=values)
