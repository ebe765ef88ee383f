"""Waterfilling spectral model for rank-limited PSD perturbations.

Given a base spectrum ``lam`` (nonincreasing, nonnegative, length d), an
integer rank bound ``m < d`` and a trace target ``t >= tr(lam)``, the set of
reachable spectra is

    {mu nonincreasing : mu >= lam entrywise, tr(mu) >= t,
     and (if m >= 1) mu_{d-m+i} <= lam_i for i = 1..m}.

This module computes the unique spectrum ``nu`` in that set which is
minimal for submajorization.  It has a waterfilling shape: the trailing
eigenvalues are raised to a common level ``c`` while at most the top ``r``
entries of ``lam`` survive unchanged.  ``irregularity`` finds that cutoff
``r``, ``c_lambda`` the level, and ``s_star`` / ``s_star_star`` the trace
thresholds where the rank bound starts to bite and where the level passes
the top of the spectrum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, BadM, BadTrace, LengthMismatch
from .majorization import DEFAULT_TOL, SpectrumVec, spectrum_values

# Slack used when comparing the waterfilling level against spectrum entries,
# so exact-rational ties resolve the way the closed-form math dictates.
TIE_SLACK = 1e-12


class Regime(enum.Enum):
    """Which piece of the minimal-spectrum rule applies at trace t."""

    AT_OR_BELOW_S_STAR = "at_or_below_s_star"
    BETWEEN = "between"
    AT_OR_ABOVE_S_STAR_STAR = "at_or_above_s_star_star"


@dataclass(frozen=True)
class NuBreakdown:
    """Minimal spectrum at trace t together with its building blocks."""

    r: int
    c: float
    s_star: float | None
    s_star_star: float | None
    nu: SpectrumVec
    regime: Regime


def _clamped_trace(values: np.ndarray, t, tol: float):
    """Validate t >= tr(values) - tol and clamp upstream rounding."""
    t0 = float(values.sum())
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < t0 - tol):
        raise BadTrace(f"trace target below tr(lambda) = {t0}")
    return np.maximum(t_arr, t0)


def p_lambda(lam, r: int, t) -> float:
    """Average mass left for the last d - r slots after keeping lam_1..lam_r."""
    values = spectrum_values(lam)
    d = values.size
    if not isinstance(r, (int, np.integer)) or not (0 <= r <= d - 1):
        raise BadIndex(f"r must be an integer in [0, {d - 1}]")
    head = float(values[:r].sum())
    return (np.asarray(t, dtype=float) - head) / (d - r)


def _r_lambda(values: np.ndarray, tt: np.ndarray) -> np.ndarray:
    d = values.size
    prefix = np.concatenate(([0.0], np.cumsum(values)))[:d]
    denom = (d - np.arange(d)).astype(float)
    levels = (tt[None, ...] - prefix.reshape((d,) + (1,) * tt.ndim)) / denom.reshape(
        (d,) + (1,) * tt.ndim
    )
    cond = levels >= values.reshape((d,) + (1,) * tt.ndim) - TIE_SLACK
    return np.argmax(cond, axis=0)


def irregularity(lam, t, tol: float = DEFAULT_TOL):
    """Smallest r such that the waterfilling level p(r, t) clears lam_{r+1}.

    Equals 0 once t >= d * lam_1.  Accepts a scalar trace or an array of
    traces (an array comes back for an array).
    """
    values = spectrum_values(lam)
    tt = _clamped_trace(values, t, tol)
    r = _r_lambda(values, np.atleast_1d(tt))
    return int(r[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else r.reshape(np.shape(t))


def c_lambda(lam, t, tol: float = DEFAULT_TOL):
    """Waterfilling level p(r_lambda(t), t); strictly increasing in t."""
    values = spectrum_values(lam)
    d = values.size
    tt = np.atleast_1d(_clamped_trace(values, t, tol))
    r = _r_lambda(values, tt)
    prefix = np.concatenate(([0.0], np.cumsum(values)))
    c = (tt - prefix[r]) / (d - r)
    return float(c[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else c.reshape(np.shape(t))


def _check_m(values: np.ndarray, m) -> int:
    if not isinstance(m, (int, np.integer)):
        raise BadM("m must be an integer")
    if m >= values.size:
        raise BadM(f"m must be smaller than d = {values.size}")
    return int(m)


def s_star(lam, m: int) -> float:
    """Trace at which the waterfilling level reaches lam_m."""
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    if mm < 1:
        raise BadM("m must be at least 1")
    return float(values[:mm].sum() + (values.size - mm) * values[mm - 1])


def s_star_star(lam, m: int) -> float:
    """Trace at which the rank-limited level reaches lam_1."""
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    if mm < 1:
        raise BadM("m must be at least 1")
    return float((values.size - mm) * values[0] + values[:mm].sum())


def c_lambda_m(lam, m: int, t, tol: float = DEFAULT_TOL):
    """Waterfilling level under a rank-(d-m) budget for the added mass."""
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    if mm <= 0:
        return c_lambda(values, t, tol)
    tt = np.atleast_1d(_clamped_trace(values, t, tol))
    sst = s_star(values, mm)
    base = np.atleast_1d(c_lambda(values, tt, tol))
    shifted = values[mm - 1] + (tt - sst) / (values.size - mm)
    c = np.where(tt <= sst, base, shifted)
    return float(c[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else c.reshape(np.shape(t))


def r_lambda_m(lam, m: int, t, tol: float = DEFAULT_TOL):
    """Smallest r with lam_{r+1} <= the rank-limited waterfilling level."""
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    if mm <= 0:
        return irregularity(values, t, tol)
    c = np.atleast_1d(c_lambda_m(values, mm, t, tol))
    cond = values.reshape((values.size,) + (1,) * c.ndim) <= c[None, ...] + TIE_SLACK
    r = np.argmax(cond, axis=0)
    return int(r[0]) if np.isscalar(t) or np.asarray(t).ndim == 0 else r.reshape(np.shape(t))


def nu(lam, m: int, t, tol: float = DEFAULT_TOL) -> NuBreakdown:
    """Submajorization-minimal spectrum reachable at trace t.

    Assembles the three-regime waterfilling rule.  The result has trace
    exactly t and is nonincreasing; whether it is entrywise above ``lam``
    at the capped positions is the caller's membership question.
    """
    values = spectrum_values(lam)
    d = values.size
    mm = _check_m(values, m)
    tt = float(_clamped_trace(values, np.float64(t), tol))
    c = float(c_lambda_m(values, mm, tt, tol))
    r = int(r_lambda_m(values, mm, tt, tol))
    if mm <= 0:
        sst = sstst = None
        regime = Regime.AT_OR_BELOW_S_STAR
        vec = np.concatenate((values[:r], np.full(d - r, c)))
    else:
        sst = s_star(values, mm)
        sstst = s_star_star(values, mm)
        if tt <= sst:
            regime = Regime.AT_OR_BELOW_S_STAR
            vec = np.concatenate((values[:r], np.full(d - r, c)))
        elif tt >= sstst:
            regime = Regime.AT_OR_ABOVE_S_STAR_STAR
            vec = np.concatenate((np.full(d - mm, c), values[:mm]))
        else:
            regime = Regime.BETWEEN
            vec = np.concatenate((values[:r], np.full(d - mm, c), values[r:mm]))
    spectrum = SpectrumVec(vec)
    if abs(spectrum.trace() - tt) > 1e-9 * (1.0 + abs(tt)):
        raise ArithmeticError("assembled spectrum lost trace mass")
    return NuBreakdown(r=r, c=c, s_star=sst, s_star_star=sstst, nu=spectrum, regime=regime)


def minimizer_is_unique(lam, m: int, t, tol: float = DEFAULT_TOL) -> bool:
    """Whether the minimal spectrum is reached by a unique perturbed operator.

    True when m <= 0, when lam_m exceeds lam_{m+1}, or when t does not
    exceed the rank threshold s*; otherwise the perturbation can be rotated
    inside the tied eigenspace.
    """
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    if mm <= 0:
        return True
    tie = tol * (1.0 + float(values[0]))
    if values[mm - 1] - values[mm] > tie:
        return True
    return float(t) <= s_star(values, mm) + tie


def in_lambda_set(lam, m: int, t, mu, tol: float = DEFAULT_TOL) -> bool:
    """Membership test for the reachable-spectra set at trace t.

    Checks mu >= lam entrywise, tr(mu) >= t, and for m >= 1 the shifted
    caps mu_{d-m+i} <= lam_i, all within tol.
    """
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    mu_v = np.asarray(getattr(mu, "values", mu), dtype=float).reshape(-1)
    if mu_v.size != values.size:
        raise LengthMismatch(f"lengths differ: {mu_v.size} vs {values.size}")
    mu_v = spectrum_values(mu_v)
    if not np.all(mu_v >= values - tol):
        return False
    if mu_v.sum() < float(t) - tol:
        return False
    if mm >= 1 and not np.all(mu_v[values.size - mm :] <= values[:mm] + tol):
        return False
    return True


def sample_lambda_set(lam, m: int, t, rng_seed, scale: float | None = None) -> SpectrumVec:
    """Random member of the reachable-spectra set at trace t.

    Perturbs the minimal spectrum upward with nonnegative mass, respecting
    the shifted caps and the nonincreasing order, so the result is a member
    by construction (verified; falls back to the minimal spectrum itself).
    ``scale=0`` returns the minimal spectrum unchanged.
    """
    values = spectrum_values(lam)
    mm = _check_m(values, m)
    base = nu(values, mm, t).nu.values
    d = values.size
    if scale is None:
        scale = 0.25 * (1.0 + float(values[0]))
    if scale == 0.0:
        return SpectrumVec(base)
    rng = np.random.default_rng(rng_seed)
    cap = np.full(d, np.inf)
    if mm >= 1:
        cap[d - mm :] = values[:mm]
    draw = rng.uniform(0.0, scale, size=d) * (rng.random(d) < 0.7)
    out = np.empty(d)
    for j in range(d - 1, -1, -1):
        lower = base[j] if j == d - 1 else max(base[j], out[j + 1])
        out[j] = min(cap[j], lower + draw[j])
    if not in_lambda_set(values, mm, t, out):
        return SpectrumVec(base)
    return SpectrumVec(out)
