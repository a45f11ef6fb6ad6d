"""Individual-estimation baselines and asymptotic regime analysis.

The individual strategy splits the photon budget evenly, estimates each
phase with its own two-mode probe, and adds the per-phase variance
bounds. The asymptotic forms expose the Heisenberg-to-shot-noise
transition of the simultaneous strategy and the disappearance of its
O(d) advantage under loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import _maximize_scalar, ab_coefficients
from .fock import PureState
from .probes import ie_two_mode

#: kappa * N below this is the Heisenberg regime, above its inverse the
#: shot-noise regime
REGIME_EDGE = 0.1


@dataclass(frozen=True)
class IeResult:
    """Individual-estimation bound with the probe that attains it.

    ``info`` is the per-phase information value C, ``per_phase_bound`` is
    1/C, and ``total`` adds the phases up (equal to ``per_phase_bound``
    when the result describes a single phase).
    """

    per_phase_bound: float
    total: float
    probe: PureState
    m: int
    info: float


@dataclass(frozen=True)
class AsymptoticReport:
    """Shot-noise floor, closed-form simultaneous value, and regime label."""

    se_floor: float
    psi_s_value: float
    regime: str
    kappa: float


def single_phase_bound(mean: float, variance: float, eta: float) -> float:
    """Best single-phase information over the gauge, in closed form.

    Minimizing 4 (a^2 variance + b mean) over the gauge (a quadratic in
    1 + delta, minimized at 1 + delta = variance / ((1-eta) variance +
    eta mean)) gives C = 4 eta variance mean / ((1-eta) variance +
    eta mean). The per-phase variance bound is 1/C.
    """
    if mean <= 0.0:
        raise ValueError("need a positive phase-mode mean")
    if variance < 0.0:
        raise ValueError("variance cannot be negative")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    return 4.0 * eta * variance * mean / ((1.0 - eta) * variance + eta * mean)


def single_phase_bound_numeric(mean: float, variance: float, eta: float) -> float:
    """Same quantity by direct gauge minimization; cross-checks the algebra."""
    if mean <= 0.0:
        raise ValueError("need a positive phase-mode mean")
    if variance < 0.0:
        raise ValueError("variance cannot be negative")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")

    def negated(delta):
        a, b = ab_coefficients(eta, delta)
        return -4.0 * (a * a * variance + b * mean)

    hi = 10.0 / (1.0 - eta) if eta < 1.0 else 1.0
    delta_star = _maximize_scalar(negated, -1.0, hi, 1e-10, 129)
    return -negated(delta_star)


def _two_point_info(k: int, mean: float, eta: float) -> float:
    # support {0, k} in the phase mode: variance = mean (k - mean)
    return single_phase_bound(mean, mean * (k - mean), eta)


def _best_two_point_mean(k: int, eta: float) -> float:
    # stationary point of 4 eta (k - w) w / ((1 - eta) w + eta) in w = k - mean
    if eta == 1.0:
        w = k / 2.0
    else:
        w = (math.sqrt(eta * eta + eta * (1.0 - eta) * k) - eta) / (1.0 - eta)
    w = min(max(w, 0.0), float(k))
    return k - w


def ie_optimal(m: int, eta: float) -> IeResult:
    """Best two-mode probe with m photons for one lossy phase.

    The information depends on the probe only through the phase-mode mean
    and variance, and the best pair sits on the two-point boundary of the
    feasible set (all photons in the phase mode or none). Candidates on
    every support {0, k} are evaluated in closed form and the winner is
    polished by a golden search over the mean.
    """
    if m < 1:
        raise ValueError("need m >= 1 photons")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    best_k, best_mean, best_c = 0, 0.0, -1.0
    for k in range(1, m + 1):
        mean = _best_two_point_mean(k, eta)
        c = _two_point_info(k, mean, eta)
        if c > best_c:
            best_k, best_mean, best_c = k, mean, c
    lo = max(best_mean - 1.0, 1e-9)
    hi = min(best_mean + 1.0, best_k - 1e-9)
    mean = _maximize_scalar(
        lambda x, k=best_k: _two_point_info(k, x, eta), lo, hi, 1e-10, 33
    )
    if _two_point_info(best_k, mean, eta) < best_c:
        mean = best_mean
    info = _two_point_info(best_k, mean, eta)
    share = mean / best_k
    coeffs = np.zeros(m + 1)
    coeffs[m - best_k] = math.sqrt(share)
    coeffs[m] = math.sqrt(1.0 - share)
    probe = ie_two_mode(m, coeffs)
    return IeResult(
        per_phase_bound=1.0 / info,
        total=1.0 / info,
        probe=probe,
        m=m,
        info=info,
    )


def ie_total_variance(d: int, n: int, eta: float) -> IeResult:
    """Equal-split individual estimation: d phases, n/d photons each."""
    if d < 1:
        raise ValueError("need at least one phase")
    if n < 1:
        raise ValueError("need at least one photon")
    if n % d:
        raise ValueError(f"d={d} must divide the photon budget n={n}")
    part = ie_optimal(n // d, eta)
    return IeResult(
        per_phase_bound=part.per_phase_bound,
        total=d * part.per_phase_bound,
        probe=part.probe,
        m=part.m,
        info=part.info,
    )


def se_asymptotic(d: int, n: int, eta: float) -> float:
    """Shot-noise floor of the simultaneous strategy under loss.

    (1 - eta)/(4 eta) * d^2 / n: the equal-mean large-N limit of the
    decoupled-gauge bound. Defined only for 0 < eta < 1.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    if not 0.0 < eta < 1.0:
        raise ValueError("the shot-noise floor needs 0 < eta < 1")
    return (1.0 - eta) / (4.0 * eta) * d * d / n


def psi_s_asymptotic(d: int, n: int, eta: float) -> tuple[float, float]:
    """Large-N closed form of the optimized generalized N00N bound.

    With kappa = (1 - eta)/eta, returns
    (1/4) / [ (n/d)^2/(kappa n + 1)^2 + kappa n^2/(kappa n + 1)^2 * (n/d)/d ]
    and the matching gauge delta = (n/eta)/(kappa n + 1) - 1. The two
    denominator terms are the Heisenberg and shot-noise contributions;
    kappa n measures which one dominates. The per-mode photon share is
    approximated by n/d, so the value is exact only for d >> 1; at small
    d it understates the optimized bound by about (d + sqrt(d))/d.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    kappa = (1.0 - eta) / eta
    damp = kappa * n + 1.0
    share = n / d
    heisenberg = share * share / (damp * damp)
    shot = kappa * float(n) * n / (damp * damp) * share / d
    value = 0.25 / (heisenberg + shot)
    delta = (n / eta) / damp - 1.0
    return value, delta


def regime_classify(n: int, eta: float) -> str:
    """Label the scaling regime by kappa * N.

    ``heisenberg`` when kappa N <= 0.1, ``sql`` when kappa N >= 10, and
    ``crossover`` in between.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    kappa_n = (1.0 - eta) / eta * n
    if kappa_n <= REGIME_EDGE:
        return "heisenberg"
    if kappa_n >= 1.0 / REGIME_EDGE:
        return "sql"
    return "crossover"


def asymptotic_report(d: int, n: int, eta: float) -> AsymptoticReport:
    """Bundle the shot-noise floor, the closed-form value, and the regime."""
    value, _ = psi_s_asymptotic(d, n, eta)
    floor = se_asymptotic(d, n, eta) if 0.0 < eta < 1.0 else math.nan
    return AsymptoticReport(
        se_floor=floor,
        psi_s_value=value,
        regime=regime_classify(n, eta),
        kappa=(1.0 - eta) / eta,
    )
