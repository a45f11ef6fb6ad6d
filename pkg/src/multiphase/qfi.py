"""Exact quantum Fisher information for number-operator phase generators.

Pure probes reduce to four times the number covariance. Mixed states go
through the spectral formula, with symmetric logarithmic derivatives
built from the analytic state derivative d rho / d theta_i = i [n_i, rho]
(never finite differences). The attainability residual
max_{i<j} |Im Tr(rho L_i L_j)| measures whether one measurement can
saturate the multiparameter bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import DensityOperator, PhaseMoments, PureState, phase_moments

#: spectral pairs with combined weight below this (relative to the top
#: eigenvalue) are outside the support and are discarded
SUPPORT_CUTOFF = 1e-12

_COND_LIMIT = 1e12


@dataclass(frozen=True)
class QfiResult:
    """QFI matrix over the phase modes with derived scalars.

    ``trace_inverse`` is the total-variance bound Tr[matrix^-1], +inf
    when the matrix is singular. ``saturation_residual`` is
    max_{i<j} |Im Tr(rho L_i L_j)|; zero means the multiparameter bound
    is attainable by a single measurement.
    """

    matrix: np.ndarray
    trace_inverse: float
    saturation_residual: float

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def _trace_inverse(matrix: np.ndarray) -> float:
    eigs = np.linalg.eigvalsh(matrix)
    top = float(eigs[-1])
    if top <= 0.0 or float(eigs[0]) <= top / _COND_LIMIT:
        return math.inf
    return float(np.sum(1.0 / eigs))


def qfi_pure(probe) -> QfiResult:
    """QFI of a pure probe: four times the number-operator covariance.

    The generators are commuting diagonal operators, so the attainability
    residual vanishes identically for pure states.
    """
    mom = probe if isinstance(probe, PhaseMoments) else phase_moments(probe)
    matrix = 4.0 * mom.covariance
    matrix = 0.5 * (matrix + matrix.T)
    return QfiResult(matrix, _trace_inverse(matrix), 0.0)


def _spectral_parts(rho: DensityOperator, d: int):
    """Eigendecompose rho and express the phase generators in its eigenbasis."""
    basis = rho.basis
    if not 1 <= d <= basis.phase_modes:
        raise ValueError(f"need 1 <= d <= {basis.phase_modes}")
    lam, vecs = np.linalg.eigh(rho.matrix)
    lam = np.clip(lam, 0.0, None)
    occ = basis.occupations[:, 1 : 1 + d].astype(float)
    gens = [vecs.conj().T @ (occ[:, i][:, None] * vecs) for i in range(d)]
    pair_sum = lam[:, None] + lam[None, :]
    pair_diff = lam[:, None] - lam[None, :]
    keep = pair_sum > SUPPORT_CUTOFF * float(lam[-1])
    return lam, vecs, gens, pair_sum, pair_diff, keep


def _sld_eigenbasis(gens, pair_sum, pair_diff, keep):
    # <k|L_i|l> = 2 <k|d_i rho|l> / (lam_k + lam_l) with
    # <k|d_i rho|l> = i (lam_l - lam_k) <k|n_i|l>
    slds = []
    for g in gens:
        L = np.zeros_like(g)
        L[keep] = -2j * pair_diff[keep] * g[keep] / pair_sum[keep]
        slds.append(L)
    return slds


def _pair_traces(lam, slds):
    d = len(slds)
    traces = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            traces[i, j] = np.einsum("k,kl,lk->", lam, slds[i], slds[j])
    return traces


def _residual(traces: np.ndarray) -> float:
    d = traces.shape[0]
    worst = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            worst = max(worst, abs(float(traces[i, j].imag)))
    return worst


def qfi_mixed(rho: DensityOperator, d: int | None = None) -> QfiResult:
    """QFI matrix of a mixed state via the spectral formula.

    matrix[i][j] = sum over eigenpairs with lam_k + lam_l above the
    support cutoff of 2 (lam_k - lam_l)^2 / (lam_k + lam_l)
    Re(<k|n_i|l><l|n_j|k>); the residual comes from the symmetric
    logarithmic derivatives on the support.
    """
    if d is None:
        d = rho.basis.phase_modes
    lam, _, gens, pair_sum, pair_diff, keep = _spectral_parts(rho, d)
    weight = np.zeros_like(pair_sum)
    weight[keep] = 2.0 * pair_diff[keep] ** 2 / pair_sum[keep]
    matrix = np.empty((d, d))
    for i in range(d):
        for j in range(i, d):
            val = float(np.sum(weight * gens[i] * np.conj(gens[j])).real)
            matrix[i, j] = matrix[j, i] = val
    slds = _sld_eigenbasis(gens, pair_sum, pair_diff, keep)
    residual = _residual(_pair_traces(lam, slds))
    return QfiResult(matrix, _trace_inverse(matrix), residual)


def sld_and_residual(rho: DensityOperator, d: int | None = None):
    """Symmetric logarithmic derivatives in the original basis.

    Returns ``(slds, residual)`` where ``slds[i]`` solves
    d_i rho = (rho L_i + L_i rho) / 2 on the support of rho and the
    residual is max_{i<j} |Im Tr(rho L_i L_j)|.
    """
    if d is None:
        d = rho.basis.phase_modes
    lam, vecs, gens, pair_sum, pair_diff, keep = _spectral_parts(rho, d)
    slds_eig = _sld_eigenbasis(gens, pair_sum, pair_diff, keep)
    residual = _residual(_pair_traces(lam, slds_eig))
    slds = [vecs @ L @ vecs.conj().T for L in slds_eig]
    return slds, residual
