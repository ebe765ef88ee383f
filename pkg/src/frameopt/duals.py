"""Trace-constrained optimal dual frames.

Every dual of a spanning frame F has frame operator S = S_F^{-1} + B with
B positive semidefinite of rank at most n - d.  Among duals whose operator
trace is at least t, the submajorization-minimal operator spectrum is the
waterfilling spectrum of the inverse-operator eigenvalues with rank bound
m = 2d - n, and a dual attaining it is built from the canonical dual by
adding mass supported on ker(synthesis) paired with the trailing
eigenvectors of S_F^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_linalg import HermitianPSD, null_space_onb
from .errors import BadTrace, InsufficientCorank, NotSpanning
from .frames import Frame, canonical_dual, frame_operator, frame_to_json
from .majorization import DEFAULT_TOL, SpectrumVec
from .spectra import NuBreakdown, minimizer_is_unique, nu


@dataclass(frozen=True)
class DualProblem:
    """Spanning frame plus a lower bound t on the dual operator trace."""

    frame: Frame
    t: float

    @property
    def m(self) -> int:
        return 2 * self.frame.d - self.frame.n


@dataclass(frozen=True)
class DualResult:
    dual: Frame
    operator: HermitianPSD
    nu: SpectrumVec
    unique_S: bool


def inverse_operator(frame: Frame) -> HermitianPSD:
    """S_F^{-1}, assembled on the eigenbasis of the frame operator."""
    if not frame.spanning:
        raise NotSpanning("inverse frame operator needs a spanning frame")
    op = frame_operator(frame)
    return HermitianPSD.from_eigensystem(1.0 / op.eigenvalues.values, op.eigenvectors)


def _checked_trace(lam: SpectrumVec, t: float) -> float:
    t0 = lam.trace()
    if t < t0 - 1e-9:
        raise BadTrace(
            f"trace bound {t} is below tr(S_F^-1) = {t0}; the constraint would be vacuous"
        )
    return max(float(t), t0)


def _check_redundancy(frame: Frame) -> None:
    if frame.n <= frame.d:
        raise InsufficientCorank(
            "a basis has no redundancy: its only dual is the canonical dual"
        )


def optimal_dual_spectrum(problem: DualProblem, tol: float = DEFAULT_TOL) -> NuBreakdown:
    """Minimal dual-operator spectrum among duals with trace at least t."""
    _check_redundancy(problem.frame)
    sinv = inverse_operator(problem.frame)
    t = _checked_trace(sinv.eigenvalues, problem.t)
    return nu(sinv.eigenvalues, problem.m, t, tol)


def optimal_dual(problem: DualProblem, tol: float = DEFAULT_TOL) -> DualResult:
    """Dual frame whose operator attains the minimal spectrum.

    The construction adds, on top of the canonical dual's analysis matrix,
    a block Z = sum_i sqrt(mass_i) u_i h_i* that maps the trailing
    eigenvectors h_i of S_F^{-1} onto orthonormal kernel directions u_i of
    the synthesis, so S_W = S_F^{-1} + Z*Z and duality is untouched.
    """
    frame = problem.frame
    _check_redundancy(frame)
    d, n = frame.d, frame.n
    m = problem.m
    sinv = inverse_operator(frame)
    lam = sinv.eigenvalues
    t = _checked_trace(lam, problem.t)
    breakdown = nu(lam, m, t, tol)
    r_prime = max(breakdown.r, m) if m >= 1 else breakdown.r
    q = d - r_prime
    if q > n - d:
        raise InsufficientCorank(f"need {q} kernel directions, frame offers {n - d}")
    mass = np.maximum(breakdown.c - lam.values[r_prime:], 0.0)
    # summation-order residue would be amplified by the square root below
    mass[mass <= 1e-12 * (1.0 + abs(breakdown.c))] = 0.0
    h = sinv.eigenvectors
    dual_analysis = canonical_dual(frame).analysis
    if q > 0:
        kernel = null_space_onb(frame.synthesis)
        z = (kernel[:, :q] * np.sqrt(mass)) @ h[:, r_prime:].conj().T
        dual_analysis = dual_analysis + z
    operator = HermitianPSD.from_eigensystem(
        np.concatenate((lam.values[:r_prime], np.full(q, breakdown.c))), h
    )
    return DualResult(
        dual=Frame(dual_analysis.conj().T),
        operator=operator,
        nu=breakdown.nu,
        unique_S=minimizer_is_unique(lam, m, t, tol),
    )


def tight_dual_exists(frame: Frame, tol: float = DEFAULT_TOL) -> bool:
    """Whether some dual of the frame is tight.

    Always true for n >= 2d; otherwise the smallest frame-operator
    eigenvalue must have multiplicity at least m = 2d - n.
    """
    if not frame.spanning:
        raise NotSpanning("duality needs a spanning frame")
    d, n = frame.d, frame.n
    m = 2 * d - n
    if m <= 0:
        return True
    w = frame_operator(frame).eigenvalues.values
    return bool(w[d - m] - w[d - 1] <= tol * (1.0 + w[0]))


def parseval_dual_exists(frame: Frame, tol: float = DEFAULT_TOL) -> bool:
    """Whether some dual of the frame has identity frame operator.

    For n >= 2d this is S_F >= I; otherwise the m = 2d - n smallest
    frame-operator eigenvalues must all equal 1 exactly.
    """
    if not frame.spanning:
        raise NotSpanning("duality needs a spanning frame")
    d, n = frame.d, frame.n
    m = 2 * d - n
    w = frame_operator(frame).eigenvalues.values
    if m <= 0:
        return bool(w[d - 1] >= 1.0 - tol)
    return bool(abs(w[d - m] - 1.0) <= tol and abs(w[d - 1] - 1.0) <= tol)


def dual_to_json(result: DualResult) -> dict:
    """Serialized form {"nu", "unique_S", "W", "trace"}."""
    return {
        "nu": [float(x) for x in result.nu.values],
        "unique_S": result.unique_S,
        "W": frame_to_json(result.dual),
        "trace": result.operator.trace(),
    }
