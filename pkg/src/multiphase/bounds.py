"""Variational upper bound on the quantum Fisher information matrix.

Purifying the loss channel with a gauge freedom delta_i per phase mode
gives a matrix C(delta) >= QFI for every gauge, hence a family of
total-variance lower bounds Tr[C(delta)^-1]. Everything here needs only
the first and second number-operator moments of the probe, so photon
numbers far beyond any dense Fock space are fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import PhaseMoments, PureState, phase_moments

#: condition-number ceiling beyond which a bound matrix counts as singular
COND_LIMIT = 1e12

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class SingularBoundError(ValueError):
    """The bound matrix is singular: some phase combination carries no
    information in the given probe."""


@dataclass(frozen=True)
class DeltaGauge:
    """Per-phase-mode gauge parameters of the purified loss channel."""

    delta: tuple

    def __post_init__(self):
        delta = tuple(float(x) for x in self.delta)
        if len(delta) < 1:
            raise ValueError("need at least one gauge entry")
        if any(not math.isfinite(x) for x in delta):
            raise ValueError("gauge entries must be finite")
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class CqBound:
    """Bound matrix with the gauge it was evaluated at.

    ``trace_inverse`` is the total-variance lower bound Tr[matrix^-1]; it
    is +inf when the matrix is singular (condition number beyond
    COND_LIMIT), meaning some phase combination is unidentifiable.
    """

    matrix: np.ndarray
    delta: DeltaGauge
    trace_inverse: float

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def ab_coefficients(eta: float, delta: float) -> tuple[float, float]:
    """Linear and quadratic loss coefficients of the gauged generator.

    a = 1 - (1 + delta)(1 - eta) and b = (1 + delta)^2 eta (1 - eta).
    The choice delta = eta/(1 - eta) zeroes a, which decouples the phase
    modes; at eta = 1 the pair is (1, 0) for every gauge.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    s = 1.0 + delta
    return 1.0 - s * (1.0 - eta), s * s * eta * (1.0 - eta)


def _as_moments(probe) -> PhaseMoments:
    if isinstance(probe, PhaseMoments):
        return probe
    if isinstance(probe, PureState):
        return phase_moments(probe)
    raise TypeError("probe must be a PureState or PhaseMoments")


def _vector(value, d: int, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(d, float(arr))
    if arr.shape != (d,):
        raise ValueError(f"{name} must be a scalar or a length-{d} vector")
    return arr


def _trace_inverse(matrix: np.ndarray) -> float:
    eigs = np.linalg.eigvalsh(matrix)
    top = float(eigs[-1])
    if top <= 0.0 or float(eigs[0]) <= top / COND_LIMIT:
        return math.inf
    return float(np.sum(1.0 / eigs))


def cq_matrix(probe, eta, delta) -> CqBound:
    """Evaluate the bound matrix at a fixed gauge.

    Diagonal entries are 4 (a_i^2 Var(n_i) + b_i <n_i>), off-diagonal
    entries 4 a_i a_j Cov(n_i, n_j); only probe moments enter. ``eta``
    and ``delta`` may be scalars or per-phase-mode vectors.
    """
    mom = _as_moments(probe)
    d = mom.d
    eta_vec = _vector(eta, d, "eta")
    if isinstance(delta, DeltaGauge):
        delta_vec = _vector(delta.delta, d, "delta")
    else:
        delta_vec = _vector(delta, d, "delta")
    pairs = [ab_coefficients(e, x) for e, x in zip(eta_vec, delta_vec)]
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    matrix = 4.0 * np.outer(a, a) * mom.covariance + 4.0 * np.diag(b * mom.mean)
    matrix = 0.5 * (matrix + matrix.T)
    gauge = DeltaGauge(tuple(float(x) for x in delta_vec))
    return CqBound(matrix, gauge, _trace_inverse(matrix))


def bound_total_variance(bound: CqBound) -> float:
    """Total-variance lower bound Tr[matrix^-1]; raises when singular."""
    if not math.isfinite(bound.trace_inverse):
        raise SingularBoundError(
            "bound matrix is singular; some phase combination is unidentifiable"
        )
    return bound.trace_inverse


def _maximize_scalar(f, lo: float, hi: float, rel_tol: float, scan_points: int):
    # coarse scan to pick the best cell, then golden-section refinement
    xs = np.linspace(lo, hi, scan_points)
    vals = [f(float(x)) for x in xs]
    k = int(np.argmax(vals))
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, scan_points - 1)])
    span = max(hi - lo, 1.0)
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > rel_tol * span:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = f(x1)
    return 0.5 * (a + b)


def _gauge_bracket(mom: PhaseMoments, eta_vec: np.ndarray) -> tuple[float, float]:
    hi = 2.0 * max(float(mom.total_photons), 1.0)
    for e in eta_vec:
        if e < 1.0:
            hi = max(hi, 10.0 / (1.0 - e))
    return -1.0, hi


def optimize_delta(probe, eta, uniform: bool = True, *, rel_tol: float = 1e-8,
                   scan_points: int = 65):
    """Tighten the variance bound over the Kraus gauge.

    Maximizes Tr[C(delta)^-1] (the tightest lower bound the family
    offers). With ``uniform=True`` a single scalar gauge is searched by
    coarse scan plus golden-section refinement on
    [-1, max(2N, 10/(1 - eta))]; otherwise per-mode gauges are optimized
    cyclically, which suits asymmetric losses. Returns
    ``(delta_star, bound)``.
    """
    mom = _as_moments(probe)
    d = mom.d
    eta_vec = _vector(eta, d, "eta")
    if np.any(eta_vec < 0.0) or np.any(eta_vec > 1.0):
        raise ValueError("eta must lie in [0, 1]")
    if np.any(eta_vec == 0.0):
        raise ValueError("eta = 0 is complete loss; no finite bound exists")
    if np.any(mom.mean <= 0.0):
        raise SingularBoundError("probe sends no photons through some phase mode")
    if np.all(eta_vec == 1.0):
        # lossless: b = 0 and a = 1 for every gauge, the bound is gauge-free
        bound = cq_matrix(mom, eta_vec, 0.0)
        if not math.isfinite(bound.trace_inverse):
            raise SingularBoundError(
                "lossless covariance is singular; some phase combination "
                "is unidentifiable"
            )
        return (0.0 if uniform else np.zeros(d)), bound
    cov_eigs = np.linalg.eigvalsh(mom.covariance)
    if float(cov_eigs[-1]) <= 0.0 or float(cov_eigs[0]) <= float(cov_eigs[-1]) / COND_LIMIT:
        # a zero-variance direction stays dark for every gauge: the
        # supremum of the bound diverges and no maximizer exists
        raise SingularBoundError(
            "probe covariance is singular; some phase combination is "
            "unidentifiable"
        )
    lo, hi = _gauge_bracket(mom, eta_vec)
    if uniform:
        def objective(x):
            return cq_matrix(mom, eta_vec, x).trace_inverse

        delta_star = _maximize_scalar(objective, lo, hi, rel_tol, scan_points)
        return delta_star, cq_matrix(mom, eta_vec, delta_star)

    # cyclic coordinate ascent over per-mode gauges
    delta_vec = np.array([e / (1.0 - e) if e < 1.0 else 0.0 for e in eta_vec])
    for _ in range(3):
        for i in range(d):
            def objective(x, i=i):
                trial = delta_vec.copy()
                trial[i] = x
                return cq_matrix(mom, eta_vec, trial).trace_inverse

            delta_vec[i] = _maximize_scalar(objective, lo, hi, rel_tol, scan_points)
    return delta_vec, cq_matrix(mom, eta_vec, delta_vec)
