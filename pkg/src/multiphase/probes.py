"""Probe-state constructors.

Generalized N00N states for simultaneous estimation, free-form
superpositions over a basis, and two-mode probes for estimating a single
phase against a reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import DEFAULT_N_CAP, FockBasis, PhaseMoments, PureState, build_basis


def generalized_noon(d: int, n: int) -> PureState:
    """N-photon superposition across d phase modes plus a reference component.

    Amplitude alpha = sqrt(1/(d + sqrt(d))) on each component with all n
    photons in one phase mode, and beta = sqrt(1 - d alpha^2) on the
    component with all n photons in the reference mode; both real and
    non-negative. For d = 1 this is the two-mode N00N state.
    """
    if d < 1:
        raise ValueError("need at least one phase mode")
    if n < 1:
        raise ValueError("need at least one photon")
    basis = build_basis(d + 1, n)
    alpha = math.sqrt(1.0 / (d + math.sqrt(d)))
    beta = math.sqrt(1.0 - d * alpha * alpha)
    amps = np.zeros(basis.size, dtype=complex)
    amps[basis.index[(n,) + (0,) * d]] = beta
    for i in range(1, d + 1):
        occ = tuple(n if k == i else 0 for k in range(d + 1))
        amps[basis.index[occ]] = alpha
    return PureState(basis, amps)


def generalized_noon_moments(d: int, n: int) -> PhaseMoments:
    """Closed-form phase-mode moments of the generalized N00N state.

    <n_i> = alpha^2 n, <n_i^2> = alpha^2 n^2, and <n_i n_j> = 0 for
    i != j (no component populates two phase modes at once). Usable at
    photon numbers far beyond what a dense Fock space allows.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    alpha2 = 1.0 / (d + math.sqrt(d))
    mean = np.full(d, alpha2 * n, dtype=float)
    second = np.diag(np.full(d, alpha2 * float(n) * n, dtype=float))
    return PhaseMoments(mean, second, n)


def custom_probe(basis: FockBasis, terms) -> PureState:
    """Superpose (occupation, amplitude) pairs and normalize.

    Amplitudes may be complex; repeated occupations accumulate. Raises on
    occupations outside the basis and on an all-zero superposition.
    """
    amps = np.zeros(basis.size, dtype=complex)
    for occ, amp in terms:
        occ = tuple(int(x) for x in occ)
        if occ not in basis.index:
            raise ValueError(f"occupation {occ} is not in the basis")
        amps[basis.index[occ]] += amp
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ValueError("superposition has zero norm")
    return PureState(basis, amps / norm)


def ie_two_mode(m: int, coefficients) -> PureState:
    """Two-mode probe sum_n c_n |n, m - n> over (reference, phase) modes.

    ``coefficients`` has length m + 1, indexed by the reference-mode
    occupation n; the vector is normalized before use.
    """
    if m < 1:
        raise ValueError("need m >= 1 photons")
    coeffs = np.asarray(coefficients, dtype=complex)
    if coeffs.shape != (m + 1,):
        raise ValueError(f"need exactly m + 1 = {m + 1} coefficients")
    norm = float(np.linalg.norm(coeffs))
    if norm == 0.0:
        raise ValueError("all coefficients are zero")
    # a two-mode fixed-total basis has m + 1 states, so the combinatorial
    # cap that protects many-mode spaces is irrelevant here
    basis = build_basis(2, m, n_cap=max(m, DEFAULT_N_CAP))
    amps = np.zeros(basis.size, dtype=complex)
    for n in range(m + 1):
        amps[basis.index[(n, m - n)]] = coeffs[n] / norm
    return PureState(basis, amps)


@dataclass(frozen=True)
class ProbeSpec:
    """Declarative probe description, used by the command-line front end.

    ``family`` is one of ``generalized-noon``, ``custom``, or
    ``ie-two-mode``; ``parameters`` carries (occupation, amplitude) pairs
    for custom probes and the coefficient vector for two-mode probes.
    """

    family: str
    d: int
    n: int
    parameters: tuple = ()

    def build(self) -> PureState:
        if self.family == "generalized-noon":
            return generalized_noon(self.d, self.n)
        if self.family == "custom":
            basis = build_basis(self.d + 1, self.n)
            return custom_probe(basis, self.parameters)
        if self.family == "ie-two-mode":
            return ie_two_mode(self.n, np.asarray(self.parameters, dtype=complex))
        raise ValueError(f"unknown probe family {self.family!r}")
