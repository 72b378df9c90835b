"""Birth-death specializations: passage times, hitting bounds, and the
strong-stationary-time view of separation.

For an irreducible birth-death chain on 0..n the corner-to-corner passage
time tau_n from 0 satisfies two exact identities used here as mutual
cross-checks:

* rate form:      E[tau_n] = sum_k pi([0,k]) / (pi(k) p_k)
* spectral form:  E[tau_n] = sum_j 1/theta_j over the eigenvalues theta_j of
  I - K restricted to {0..n-1}

Separation from the corner in continuous time equals the tail P(S > t) of a
sum S of independent exponentials whose rates are the nonzero eigenvalues of
I - K.  ``sst_tail`` evaluates that tail by the classical alternating
product formula, switching to direct uniformization of the corner entry
whenever the formula would be numerically untrustworthy (clustered rates or
oversized intermediate terms).

All rate-side sums use the prefix recurrences
``S_{k+1} = S_k q_{k+1}/p_k + 1`` and ``R_k = R_{k+1} p_k/q_{k+1} + 1`` for
``pi([0,k])/pi(k)`` and ``pi([k,n])/pi(k)``; they stay O(1)-sized relative
to the local stationary weight, so nothing overflows even when pi itself
spans hundreds of orders of magnitude.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import Chain, _uniformized, _check_tol
from .errors import BadDelta, BadEpsilon, NonIntegerTime, NotBirthDeath
from .spectral import eigen_summary, tridiagonal_eigenvalues

# Alternating formula is abandoned when consecutive rates are closer than
# this fraction of the gap, or when the summed term magnitudes would leave
# fewer than ~8 trustworthy digits.
SPACING_FLOOR = 1e-6
STABILITY_CAP = 2e4


def _require_bd(chain: Chain) -> None:
    if not chain.is_birth_death:
        raise NotBirthDeath("operation requires the birth-death form")


def _prefix_weight_ratios(chain: Chain) -> np.ndarray:
    """S_k = pi([0,k]) / pi(k) for k = 0..n."""
    p, q = chain.birth, chain.death
    n1 = chain.num_states
    s = np.empty(n1)
    s[0] = 1.0
    for k in range(n1 - 1):
        s[k + 1] = s[k] * q[k + 1] / p[k] + 1.0
    return s


def _suffix_weight_ratios(chain: Chain) -> np.ndarray:
    """R_k = pi([k,n]) / pi(k) for k = 0..n."""
    p, q = chain.birth, chain.death
    n1 = chain.num_states
    r = np.empty(n1)
    r[-1] = 1.0
    for k in range(n1 - 2, -1, -1):
        r[k] = r[k + 1] * p[k] / q[k + 1] + 1.0
    return r


@dataclass(frozen=True)
class PassageReport:
    """Corner-to-corner expected passage time, computed both ways."""

    mean_by_rates: float
    mean_by_spectrum: float
    residual: float


def passage_time(chain: Chain) -> PassageReport:
    """E[tau_n] from state 0 via rates and via the restricted spectrum.

    ``residual`` is the relative difference between the two routes; it is an
    internal consistency certificate and should sit at rounding level.
    """
    _require_bd(chain)
    s = _prefix_weight_ratios(chain)
    terms = s[:-1] / chain.birth[:-1]
    by_rates = math.fsum(terms.tolist())

    # Principal submatrix of I - K on {0..n-1}; positive definite, so all
    # eigenvalues are strictly positive.
    diag = (1.0 - chain.hold)[:-1]
    off2 = (chain.birth[:-1] * chain.death[1:])[:-1]
    theta = tridiagonal_eigenvalues(diag, off2)
    if theta[0] <= 0.0:
        raise ArithmeticError(f"restricted spectrum not positive: {theta[0]}")
    by_spectrum = math.fsum((1.0 / theta).tolist())

    residual = abs(by_rates - by_spectrum) / max(abs(by_rates), abs(by_spectrum))
    return PassageReport(
        mean_by_rates=by_rates, mean_by_spectrum=by_spectrum, residual=residual
    )


def hitting_time_bound(chain: Chain) -> tuple[float, int]:
    """Two-sided hitting bound min_i [sum_{k<i} S_k/p_k + sum_{k>i} R_k/q_k].

    Returns (value, argmin index); ties resolve to the smallest index.  The
    value dominates the spectral sum of the full chain.
    """
    _require_bd(chain)
    s = _prefix_weight_ratios(chain)
    r = _suffix_weight_ratios(chain)
    n1 = chain.num_states
    left = np.zeros(n1)
    left[1:] = np.cumsum(s[:-1] / chain.birth[:-1])
    right = np.zeros(n1)
    right[:-1] = np.cumsum((r[1:] / chain.death[1:])[::-1])[::-1]
    values = left + right
    best = int(np.argmin(values))
    return float(values[best]), best


@dataclass(frozen=True)
class StationaryTimeSummary:
    """Exponential-rate view of the fastest strong stationary time.

    ``rates`` are the nonzero eigenvalues of I - K (ascending);
    ``mean = sum 1/rate`` equals the spectral sum, ``variance = sum 1/rate^2``,
    and ``min_spacing`` is the smallest consecutive rate gap.
    """

    rates: np.ndarray
    mean: float
    variance: float
    min_spacing: float


def stationary_time_summary(chain: Chain) -> StationaryTimeSummary:
    _require_bd(chain)
    rates = eigen_summary(chain).eigenvalues
    mean = math.fsum((1.0 / rates).tolist())
    variance = math.fsum((1.0 / rates**2).tolist())
    if variance > mean * mean * (1.0 + 1e-12):
        raise ArithmeticError("variance exceeded squared mean; spectrum corrupt")
    spacing = float(np.diff(rates).min()) if rates.shape[0] > 1 else math.inf
    return StationaryTimeSummary(
        rates=rates, mean=mean, variance=variance, min_spacing=spacing
    )


def _alternating_tail(rates: np.ndarray, time: float) -> float:
    """P(sum of independent exponentials > time) by the alternating product
    formula; raises ArithmeticError when the evaluation cannot be trusted.

    Rates ascending; with distinct rates the tail is
    sum_j [prod_{k != j} rate_k/(rate_k - rate_j)] exp(-rate_j t).
    Products are accumulated as log magnitudes (the sign of term j is
    (-1)^j for sorted rates) and the signed terms are added with exact
    compensated summation.
    """
    m = rates.shape[0]
    if m == 1:
        return math.exp(-rates[0] * time)
    log_rates = np.log(rates)
    diffs = np.abs(rates[:, None] - rates[None, :])
    np.fill_diagonal(diffs, 1.0)
    with np.errstate(divide="ignore"):
        log_mag = log_rates.sum() - log_rates - np.log(diffs).sum(axis=0)
    exponents = log_mag - rates * time
    if exponents.max() > 700.0:
        raise ArithmeticError("alternating terms overflow")
    terms = np.exp(exponents)
    if terms.sum() > STABILITY_CAP:
        raise ArithmeticError("alternating terms too large for 1e-8 accuracy")
    signs = np.where(np.arange(m) % 2 == 0, 1.0, -1.0)
    value = math.fsum((signs * terms).tolist())
    return min(max(value, 0.0), 1.0)


def sst_tail(chain: Chain, time: float, tol: float = 1e-10, method: str = "auto") -> float:
    """Tail P(S > time) of the strong stationary time from the corner.

    ``method="alternating"`` forces the product formula (erroring when it is
    unstable), ``"uniformized"`` forces the corner-entry evolution
    ``1 - H_t(0,n)/pi(n)``, and ``"auto"`` uses the formula whenever the
    rate spacing and term magnitudes allow, falling back otherwise.
    """
    _require_bd(chain)
    if not (isinstance(time, (int, float)) and math.isfinite(time) and time >= 0):
        raise ValueError(f"time must be a finite nonnegative number, got {time!r}")
    if method not in ("auto", "alternating", "uniformized"):
        raise ValueError(f"unknown method {method!r}")
    if method == "uniformized":
        return corner_separation(chain, float(time), mode="continuous", tol=tol)
    summary = stationary_time_summary(chain)
    if method == "alternating":
        if summary.min_spacing < SPACING_FLOOR * summary.rates[0]:
            raise ArithmeticError("rates too clustered for the alternating formula")
        return _alternating_tail(summary.rates, float(time))
    if summary.min_spacing < SPACING_FLOOR * summary.rates[0]:
        return corner_separation(chain, float(time), mode="continuous", tol=tol)
    try:
        return _alternating_tail(summary.rates, float(time))
    except ArithmeticError:
        return corner_separation(chain, float(time), mode="continuous", tol=tol)


def corner_separation(
    chain: Chain,
    time,
    mode: str = "continuous",
    delta: float | None = None,
    tol: float = 1e-10,
) -> float:
    """Separation seen from corner 0 at corner n: ``1 - P^t(0,n)/pi(n)``.

    In continuous time this equals full worst-case separation for every
    birth-death chain.  In lazy mode the identity needs laziness >= 1/2, so
    smaller deltas are refused.
    """
    _require_bd(chain)
    n = chain.top_state
    start = np.zeros(chain.num_states)
    start[0] = 1.0
    if mode == "continuous":
        _check_tol(tol)
        if not (isinstance(time, (int, float)) and math.isfinite(time) and time >= 0):
            raise ValueError(f"time must be a finite nonnegative number, got {time!r}")
        row = _uniformized(chain, start, float(time), tol)
    elif mode == "lazy":
        if not (isinstance(delta, (int, float)) and 0.5 <= delta < 1.0):
            raise BadDelta(f"lazy corner identity needs delta in [1/2, 1), got {delta!r}")
        if isinstance(time, float) and not time.is_integer():
            raise NonIntegerTime(f"lazy mode needs integer times, got {time!r}")
        steps = int(time)
        if steps < 0:
            raise ValueError(f"time must be nonnegative, got {time!r}")
        lazy = chain.lazy(float(delta))
        row = start
        for _ in range(steps):
            row = lazy.apply(row)
    else:
        raise ValueError(f"corner separation supports lazy or continuous, got {mode!r}")
    value = 1.0 - row[n] / chain.stationary[n]
    return min(max(float(value), 0.0), 1.0)


def sep_bounds(summary: StationaryTimeSummary, eps: float) -> tuple[float, float, float, float]:
    """Brackets for the continuous separation mixing time at level eps.

    Returns ``(lower, upper, lower_mean, upper_mean)``: the first pair is
    the one-sided Chebyshev bracket from (mean, variance); the second pair
    multiplies the mean alone by sqrt-based constants.  Lower bounds clamp
    at 0.
    """
    if not (isinstance(eps, (int, float)) and 0.0 < eps < 1.0):
        raise BadEpsilon(f"eps must lie in (0, 1), got {eps!r}")
    mean, var = summary.mean, summary.variance
    spread = math.sqrt(var / (1.0 / eps - 1.0))
    lower = max(0.0, mean - spread)
    upper = mean + math.sqrt((1.0 / eps - 1.0) * var)
    root_e, root_1e = math.sqrt(eps), math.sqrt(1.0 - eps)
    lower_mean = max(0.0, (root_1e - root_e) / root_1e * mean)
    upper_mean = (root_e + root_1e) / root_e * mean
    return lower, upper, lower_mean, upper_mean
