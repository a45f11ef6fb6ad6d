"""Multimode bosonic Fock-space engine.

Basis enumeration over photon-number occupations, annihilation-operator
action, and number-operator moments of pure states. Mode 0 is the
reference mode by convention; modes 1..d carry the phases being
estimated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cache

import numpy as np

FIXED_TOTAL = "fixed-total"
AT_MOST_TOTAL = "at-most-total"

#: photon-number cutoff beyond which basis construction is refused unless
#: the caller raises the cap explicitly
DEFAULT_N_CAP = 40

_NORM_TOL = 1e-12
_HERM_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIG_TOL = 1e-10


def _occupations(modes, budget, exact):
    # lexicographic enumeration; `exact` pins the total to the budget
    if modes == 1:
        if exact:
            yield (budget,)
        else:
            for n in range(budget + 1):
                yield (n,)
        return
    for head in range(budget + 1):
        for tail in _occupations(modes - 1, budget - head, exact):
            yield (head,) + tail


@dataclass(frozen=True)
class FockBasis:
    """Ordered photon-number basis over ``modes`` bosonic modes.

    ``kind`` is either ``fixed-total`` (every occupation sums to exactly
    ``n_max``) or ``at-most-total`` (sums bounded by ``n_max``). States
    are listed in lexicographic order on the occupation tuples and
    ``index`` inverts the listing.
    """

    modes: int
    n_max: int
    kind: str
    states: tuple = field(repr=False, compare=False)
    index: dict = field(repr=False, compare=False)
    occupations: np.ndarray = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def phase_modes(self) -> int:
        return self.modes - 1


@cache
def build_basis(
    modes: int,
    n_max: int,
    kind: str = FIXED_TOTAL,
    n_cap: int = DEFAULT_N_CAP,
) -> FockBasis:
    """Enumerate the occupation basis in deterministic lexicographic order."""
    if modes < 1:
        raise ValueError("need at least one mode")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max > n_cap:
        raise ValueError(
            f"n_max={n_max} exceeds the cap {n_cap}; large photon numbers are "
            "meant for the moment-only paths"
        )
    if kind not in (FIXED_TOTAL, AT_MOST_TOTAL):
        raise ValueError(f"unknown basis kind {kind!r}")
    states = tuple(_occupations(modes, n_max, kind == FIXED_TOTAL))
    index = {occ: k for k, occ in enumerate(states)}
    occupations = np.array(states, dtype=np.int64).reshape(len(states), modes)
    occupations.setflags(write=False)
    return FockBasis(modes, n_max, kind, states, index, occupations)


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector aligned with its basis order."""

    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.size,):
            raise ValueError("amplitude vector does not match the basis size")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm2}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def real_amplitudes(self) -> bool:
        """True when every amplitude is exactly real (saturation checks)."""
        return bool(np.all(self.amplitudes.imag == 0.0))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator over a basis."""

    basis: FockBasis
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (self.basis.size, self.basis.size):
            raise ValueError("matrix does not match the basis size")
        if float(np.max(np.abs(m - m.conj().T))) > _HERM_TOL:
            raise ValueError("matrix is not Hermitian")
        trace = complex(np.trace(m)).real
        if abs(trace - 1.0) > _TRACE_TOL:
            raise ValueError(f"trace is {trace}, expected 1")
        if float(np.linalg.eigvalsh(m)[0]) < -_EIG_TOL:
            raise ValueError("matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class PhaseMoments:
    """First and second number-operator moments over the phase modes.

    Enough to evaluate the variational bound at any photon number without
    building a Fock space: ``mean[i]`` is <n_i> and ``second[i, j]`` is
    <n_i n_j> for phase modes i, j = 1..d (stored 0-based).
    ``total_photons`` records the resource budget N for bracket sizing.
    """

    mean: np.ndarray
    second: np.ndarray
    total_photons: int

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        second = np.array(self.second, dtype=float)
        d = mean.shape[0] if mean.ndim == 1 else -1
        if d < 1 or second.shape != (d, d):
            raise ValueError("need mean of shape (d,) and second of shape (d, d)")
        if float(np.max(np.abs(second - second.T))) > 1e-12:
            raise ValueError("second-moment matrix must be symmetric")
        if np.any(mean < 0.0):
            raise ValueError("number-operator means cannot be negative")
        mean.setflags(write=False)
        second.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "second", second)

    @property
    def d(self) -> int:
        return self.mean.shape[0]

    @property
    def covariance(self) -> np.ndarray:
        return self.second - np.outer(self.mean, self.mean)


def annihilate(state: PureState, mode: int, power: int = 1) -> np.ndarray:
    """Apply the annihilation operator ``power`` times to one mode.

    Returns the (generally unnormalized) image vector expressed on the
    ``at-most-total`` basis with the same mode count and cutoff. Fock
    components with fewer than ``power`` photons in ``mode`` map to zero;
    each surviving component picks up sqrt(n (n-1) ... (n-power+1)).
    """
    basis = state.basis
    if not 0 <= mode < basis.modes:
        raise ValueError(f"mode {mode} out of range for {basis.modes} modes")
    if power < 0:
        raise ValueError("power must be non-negative")
    out_basis = build_basis(basis.modes, basis.n_max, AT_MOST_TOTAL)
    out = np.zeros(out_basis.size, dtype=complex)
    for occ, amp in zip(basis.states, state.amplitudes):
        if amp == 0:
            continue
        n = occ[mode]
        if n < power:
            continue
        lowered = occ[:mode] + (n - power,) + occ[mode + 1 :]
        out[out_basis.index[lowered]] += amp * math.sqrt(math.perm(n, power))
    return out


def moments(state: PureState, i: int, j: int) -> tuple[float, float, float]:
    """Mean, second moment, and covariance of phase-mode number operators.

    Returns ``(<n_i>, <n_i n_j>, Cov(n_i, n_j))``. Indices are phase
    modes (1-based; mode 0 is the reference and is rejected). Number
    operators are diagonal here, so everything reduces to probability-
    weighted occupation sums.
    """
    d = state.basis.phase_modes
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"phase-mode index out of range 1..{d}")
    probs = np.abs(state.amplitudes) ** 2
    ni = state.basis.occupations[:, i]
    nj = state.basis.occupations[:, j]
    mean_i = float(probs @ ni)
    mean_j = float(probs @ nj)
    second = float(probs @ (ni * nj))
    return mean_i, second, second - mean_i * mean_j


def phase_moments(state: PureState) -> PhaseMoments:
    """Collect all phase-mode first and second moments of a pure state."""
    probs = np.abs(state.amplitudes) ** 2
    occ = state.basis.occupations[:, 1:].astype(float)
    mean = probs @ occ
    second = occ.T @ (occ * probs[:, None])
    return PhaseMoments(mean, second, state.basis.n_max)
