"""Vector preorders (majorization, submajorization, entrywise) and tracial sums.

All predicates work on plain 1-d real arrays; ``SpectrumVec`` is the
validated container used wherever a vector is known to be an eigenvalue
list (nonincreasing, nonnegative).
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DomainError, LengthMismatch

# Absolute tolerance on prefix sums and traces.  Inputs typically come out
# of an eigensolver accurate to ~1e-10, so 1e-9 absorbs that noise.
DEFAULT_TOL = 1e-9


class SpectrumVec:
    """Nonincreasing, nonnegative real vector (an eigenvalue list).

    Entries within a small negative tolerance are clamped to zero;
    genuinely negative or out-of-order input is rejected.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        v = np.array(values, dtype=float, copy=True).reshape(-1)
        if v.size == 0:
            raise ValueError("spectrum must have at least one entry")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum entries must be finite")
        scale = 1.0 + float(np.max(np.abs(v)))
        slack = DEFAULT_TOL * scale
        if np.any(v[1:] > v[:-1] + slack):
            raise ValueError("spectrum entries must be nonincreasing")
        if v[-1] < -slack:
            raise ValueError("spectrum entries must be nonnegative")
        np.clip(v, 0.0, None, out=v)
        v.flags.writeable = False
        self.values = v

    @property
    def d(self) -> int:
        return self.values.size

    def trace(self) -> float:
        return float(self.values.sum())

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectrumVec):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(
            np.all(self.values == other.values)
        )

    def __repr__(self) -> str:
        return f"SpectrumVec({self.values.tolist()!r})"


def spectrum_values(x) -> np.ndarray:
    """Coerce a SpectrumVec or array-like spectrum to its validated ndarray."""
    if isinstance(x, SpectrumVec):
        return x.values
    return SpectrumVec(x).values


class PotentialKind(enum.Enum):
    """Convex potentials applied entrywise to a spectrum."""

    FRAME_POTENTIAL = "fp"  # x^2
    MEAN_SQUARE_ERROR = "mse"  # 1/x, needs x > 0
    NEG_ENTROPY = "xlogx"  # x log x, with 0 log 0 := 0

    @classmethod
    def from_name(cls, name: str) -> "PotentialKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown potential kind {name!r}")


def sort_desc(x) -> np.ndarray:
    """Rearrangement of x in nonincreasing order (stable, returns a copy)."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("entries must be finite")
    return -np.sort(-v, kind="stable")


def _pair(x, y):
    xv = np.asarray(getattr(x, "values", x), dtype=float).reshape(-1)
    yv = np.asarray(getattr(y, "values", y), dtype=float).reshape(-1)
    if xv.size != yv.size:
        raise LengthMismatch(f"lengths differ: {xv.size} vs {yv.size}")
    return xv, yv


def submajorizes(y, x, tol: float = DEFAULT_TOL) -> bool:
    """True iff x is submajorized by y: every k-prefix sum of the descending
    rearrangement of x is at most that of y, within tol."""
    xv, yv = _pair(x, y)
    cx = np.cumsum(sort_desc(xv))
    cy = np.cumsum(sort_desc(yv))
    return bool(np.all(cx <= cy + tol))


def majorizes(y, x, tol: float = DEFAULT_TOL) -> bool:
    """True iff x is majorized by y: submajorized plus equal trace within tol."""
    xv, yv = _pair(x, y)
    if abs(xv.sum() - yv.sum()) > tol:
        return False
    return submajorizes(yv, xv, tol)


def entrywise_leq(x, y, tol: float = DEFAULT_TOL) -> bool:
    """True iff x_i <= y_i + tol for every position i."""
    xv, yv = _pair(x, y)
    return bool(np.all(xv <= yv + tol))


def trace_f(x, kind: PotentialKind) -> float:
    """Sum of f(x_i) for the convex potential selected by ``kind``."""
    v = np.asarray(getattr(x, "values", x), dtype=float).reshape(-1)
    if kind is PotentialKind.FRAME_POTENTIAL:
        return float(np.sum(v * v))
    if kind is PotentialKind.MEAN_SQUARE_ERROR:
        if np.any(v <= 0.0):
            raise DomainError("mean square error needs strictly positive entries")
        return float(np.sum(1.0 / v))
    if kind is PotentialKind.NEG_ENTROPY:
        if np.any(v < 0.0):
            raise DomainError("x log x needs nonnegative entries")
        pos = v[v > 0.0]
        return float(np.sum(pos * np.log(pos)))
    raise TypeError(f"unsupported potential kind {kind!r}")
