"""Photon-loss channel in the beam-splitter Kraus form.

Each mode independently loses l photons with amplitude
sqrt((1-eta)^l / l!) * eta^(n_hat / 2) * a^l; the phase imprinting
exp(i theta n_hat) commutes through the loss branches, so states are
evolved at theta = 0 and the angles enter as an overall number-operator
unitary when needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    AT_MOST_TOTAL,
    FIXED_TOTAL,
    DensityOperator,
    FockBasis,
    PureState,
    build_basis,
)

#: largest cutoff for which dense density-matrix work is allowed by default
DEFAULT_DENSE_CAP = 12


@dataclass(frozen=True)
class LossChannel:
    """Independent per-mode photon loss; eta[i] survives in mode i."""

    eta: tuple
    n_max: int

    def __post_init__(self):
        eta = tuple(float(x) for x in self.eta)
        if len(eta) < 1:
            raise ValueError("need at least one mode")
        if any(not 0.0 <= x <= 1.0 for x in eta):
            raise ValueError("every transmissivity must lie in [0, 1]")
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")
        object.__setattr__(self, "eta", eta)

    @property
    def modes(self) -> int:
        return len(self.eta)


def uniform_loss(eta: float, modes: int, n_max: int) -> LossChannel:
    """Same transmissivity on every mode, reference included."""
    return LossChannel((eta,) * modes, n_max)


def _branch_amplitude(eta: float, lost: int, n: int) -> float:
    # sqrt((1-eta)^l / l! * n!/(n-l)!) * eta^((n-l)/2)
    if lost > n:
        return 0.0
    return math.sqrt(
        (1.0 - eta) ** lost / math.factorial(lost) * math.perm(n, lost)
    ) * eta ** ((n - lost) / 2.0)


def kraus_operator(eta: float, lost: int, basis: FockBasis) -> np.ndarray:
    """Single-mode Kraus branch for losing exactly ``lost`` photons.

    The branches over lost = 0..n_max resolve the identity on the
    at-most-total number space: sum_l K_l^dag K_l = I.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if lost < 0:
        raise ValueError("lost must be non-negative")
    if basis.modes != 1 or basis.kind != AT_MOST_TOTAL:
        raise ValueError("expected a single-mode at-most-total basis")
    k = np.zeros((basis.size, basis.size))
    for col, (n,) in enumerate(basis.states):
        if n < lost:
            continue
        k[basis.index[(n - lost,)], col] = _branch_amplitude(eta, lost, n)
    return k


def _check_geometry(basis: FockBasis, channel: LossChannel, dense_cap: int):
    if channel.modes != basis.modes or channel.n_max != basis.n_max:
        raise ValueError("channel geometry does not match the basis")
    if basis.n_max > dense_cap:
        raise ValueError(
            f"n_max={basis.n_max} exceeds the dense cap {dense_cap}; "
            "use the moment-only bound path for large photon numbers"
        )


def apply_loss(
    probe: PureState,
    channel: LossChannel,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> DensityOperator:
    """Evolve a fixed-total probe through independent per-mode loss.

    Sums the conditional branches K_l |psi> over all loss patterns l
    (one count per mode) and returns the mixed state on the matching
    at-most-total basis, evaluated at zero phases.
    """
    basis = probe.basis
    if basis.kind != FIXED_TOTAL:
        raise ValueError("probe must live on a fixed-total basis")
    _check_geometry(basis, channel, dense_cap)
    out_basis = build_basis(basis.modes, basis.n_max, AT_MOST_TOTAL)
    support = [
        (occ, amp) for occ, amp in zip(basis.states, probe.amplitudes) if amp != 0
    ]
    rho = np.zeros((out_basis.size, out_basis.size), dtype=complex)
    for pattern in out_basis.states:
        vec = np.zeros(out_basis.size, dtype=complex)
        hit = False
        for occ, amp in support:
            factor = 1.0
            for o, p, eta in zip(occ, pattern, channel.eta):
                factor *= _branch_amplitude(eta, p, o)
                if factor == 0.0:
                    break
            if factor == 0.0:
                continue
            left = tuple(o - p for o, p in zip(occ, pattern))
            vec[out_basis.index[left]] += amp * factor
            hit = True
        if hit:
            rho += np.outer(vec, vec.conj())
    return DensityOperator(out_basis, rho)


def _pattern_matrix(basis: FockBasis, pattern, eta):
    k = np.zeros((basis.size, basis.size))
    hit = False
    for col, occ in enumerate(basis.states):
        factor = 1.0
        for o, p, e in zip(occ, pattern, eta):
            factor *= _branch_amplitude(e, p, o)
            if factor == 0.0:
                break
        if factor == 0.0:
            continue
        k[basis.index[tuple(o - p for o, p in zip(occ, pattern))], col] = factor
        hit = True
    return k if hit else None


def apply_loss_density(
    rho: DensityOperator,
    channel: LossChannel,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> DensityOperator:
    """Channel action on a density operator; composes as eta1 * eta2."""
    basis = rho.basis
    if basis.kind != AT_MOST_TOTAL:
        raise ValueError("density evolution expects an at-most-total basis")
    _check_geometry(basis, channel, dense_cap)
    out = np.zeros_like(rho.matrix)
    for pattern in basis.states:
        k = _pattern_matrix(basis, pattern, channel.eta)
        if k is not None:
            out += k @ rho.matrix @ k.T
    return DensityOperator(basis, out)


def phase_factors(basis: FockBasis, theta) -> np.ndarray:
    """Diagonal of the phase unitary exp(i sum_j theta_j n_j).

    ``theta`` holds one angle per phase mode (mode 0 carries none).
    Conjugating an evolved state with this diagonal reproduces the full
    phase-dependent channel output.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (basis.modes - 1,):
        raise ValueError("need exactly one angle per phase mode")
    return np.exp(1j * (basis.occupations[:, 1:].astype(float) @ theta))
