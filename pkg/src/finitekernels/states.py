"""Amplitude profiles and embeddings of scalar data into finite feature Hilbert spaces.

Two input conventions coexist and are never converted implicitly:

* ``"interference"`` -- scalar inputs live on [-1/2, 1/2) and are encoded as
  relative phases of a fixed amplitude profile.
* ``"cosine"`` -- inputs live on [-pi/2, pi/2) per coordinate and are encoded
  through binomial sin/cos amplitudes.

All value types are immutable; every function here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12

INTERFERENCE_DOMAIN = (-0.5, 0.5)
COSINE_DOMAIN = (-math.pi / 2.0, math.pi / 2.0)

DOMAINS = {
    "interference": INTERFERENCE_DOMAIN,
    "cosine": COSINE_DOMAIN,
}


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class AmplitudeProfile:
    """Nonnegative weights r_0..r_{L-1} of an interference feature map.

    The weights are the squared amplitudes of the encoded state and must sum
    to 1 within 1e-12.  Use :meth:`from_unnormalized` to build one from raw
    nonnegative values.
    """

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("profile weights must form a nonempty 1-D vector")
        if not np.all(np.isfinite(w)):
            raise ValueError("profile weights must be finite")
        if np.any(w < 0.0):
            raise ValueError("profile weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > NORM_TOL:
            raise ValueError("profile weights must sum to 1 within 1e-12")
        object.__setattr__(self, "weights", _frozen_array(w, float))

    @classmethod
    def from_unnormalized(cls, weights) -> "AmplitudeProfile":
        w = np.asarray(weights, dtype=float)
        total = float(w.sum())
        if not math.isfinite(total) or total <= 0.0:
            raise ValueError("profile weights must have a positive finite sum")
        return cls(w / total)

    def __len__(self) -> int:
        return int(self.weights.size)

    @property
    def amplitudes(self) -> np.ndarray:
        """Square roots of the weights."""
        return np.sqrt(self.weights)


@dataclass(frozen=True)
class FeatureState:
    """Unit-norm complex amplitude vector of an embedded data point."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("state amplitudes must form a nonempty 1-D vector")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError("state amplitudes must have unit norm within 1e-12")
        object.__setattr__(self, "amplitudes", _frozen_array(a, complex))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)


@dataclass(frozen=True)
class DataPoint:
    """A D-dimensional input, optionally carrying one encoding phase per coordinate.

    When ``phases`` is present its first entry is the fixed reference and must
    be 0; the remaining entries are free parameters of the phase-augmented
    embedding.
    """

    coords: np.ndarray
    phases: np.ndarray | None = None

    def __post_init__(self) -> None:
        c = np.atleast_1d(np.asarray(self.coords, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coords must form a nonempty 1-D vector")
        if not np.all(np.isfinite(c)):
            raise ValueError("coords must be finite")
        object.__setattr__(self, "coords", _frozen_array(c, float))
        if self.phases is not None:
            p = np.atleast_1d(np.asarray(self.phases, dtype=float))
            if p.shape != c.shape:
                raise ValueError("phases must have one entry per coordinate")
            if not np.all(np.isfinite(p)):
                raise ValueError("phases must be finite")
            if p[0] != 0.0:
                raise ValueError("the first phase is the reference and must be 0")
            object.__setattr__(self, "phases", _frozen_array(p, float))

    @property
    def dimension(self) -> int:
        return int(self.coords.size)


def as_coords(x) -> np.ndarray:
    """Coordinate vector of a DataPoint or any array-like input."""
    if isinstance(x, DataPoint):
        return x.coords
    return np.atleast_1d(np.asarray(x, dtype=float))


def _check_domain(values: np.ndarray, convention: str) -> None:
    lo, hi = DOMAINS[convention]
    if np.any(values < lo) or np.any(values >= hi):
        raise ValueError(
            f"input outside the {convention} domain [{lo:.6g}, {hi:.6g})"
        )


# ---------- profile constructors ----------


def msi_profile(n_terms: int) -> AmplitudeProfile:
    """Equal weights 1/L over L consecutive modes (multi-slit interference)."""
    if n_terms < 2:
        raise ValueError("msi_profile needs at least 2 terms")
    return AmplitudeProfile(np.full(n_terms, 1.0 / n_terms))


def tsq_profile(n_terms: int, squeezing: float) -> AmplitudeProfile:
    """Truncated squeezed-vacuum weights, renormalized to sum 1.

    The n-th weight is proportional to (2n)! tanh^(2n)(z) / (4^n (n!)^2),
    n = 0..L-1.  Factorials are evaluated in log space; the ratio of
    consecutive weights is ((2n+1)/(2n+2)) tanh^2(z) < 1, so the weights
    decrease strictly for any positive squeezing.
    """
    if n_terms < 1:
        raise ValueError("tsq_profile needs at least 1 term")
    if not math.isfinite(squeezing) or squeezing <= 0.0:
        raise ValueError("squeezing must be a finite positive real")
    n = np.arange(n_terms, dtype=float)
    log_tanh = math.log(math.tanh(squeezing))
    # lgamma(2n+1) - 2 lgamma(n+1) - n log 4 + 2n log tanh(z); cosh cancels on renormalization
    log_w = (
        np.array([math.lgamma(2 * k + 1) - 2 * math.lgamma(k + 1) for k in range(n_terms)])
        - n * math.log(4.0)
        + 2.0 * n * log_tanh
    )
    log_w -= log_w.max()
    return AmplitudeProfile.from_unnormalized(np.exp(log_w))


# ---------- embeddings ----------


def _interference_amplitudes(x: float, profile: AmplitudeProfile) -> np.ndarray:
    n = np.arange(len(profile))
    return profile.amplitudes * np.exp(2.0j * math.pi * n * x)


def embed_interference(x: float, profile: AmplitudeProfile) -> FeatureState:
    """Encode a scalar on [-1/2, 1/2) as phases over the profile's modes."""
    x = float(x)
    _check_domain(np.asarray([x]), "interference")
    return FeatureState(_interference_amplitudes(x, profile))


def _binomial_factor(coord: float, power: int) -> np.ndarray:
    c, s = math.cos(coord), math.sin(coord)
    k = np.arange(power + 1)
    comb = np.array([math.comb(power, int(j)) for j in k], dtype=float)
    return np.sqrt(comb) * (s ** k) * (c ** (power - k))


def embed_cosine(x, power: int = 1) -> FeatureState:
    """Binomial sin/cos embedding of a point on [-pi/2, pi/2)^D.

    Each coordinate contributes an (N+1)-dimensional factor with amplitudes
    sqrt(C(N,k)) sin^k cos^(N-k); the full state is their tensor product.
    """
    if power < 1:
        raise ValueError("power must be a positive integer")
    coords = as_coords(x)
    _check_domain(coords, "cosine")
    state = np.ones(1, dtype=complex)
    for coord in coords:
        state = np.kron(state, _binomial_factor(float(coord), power))
    return FeatureState(state)


def embed_phase_augmented(x: DataPoint, power: int = 1) -> FeatureState:
    """Cosine embedding with one relative-phase qubit per added dimension.

    Coordinates n = 2..D each carry a factor (|0> + e^{2i y_{n-1}} |1>)/sqrt(2),
    so overlaps pick up cos(y_{n-1} - y'_{n-1}) per extra dimension.  The first
    coordinate's phase is the fixed reference y_0 = 0 and contributes nothing.
    Total dimension: (N+1)^D * 2^(D-1).
    """
    if not isinstance(x, DataPoint) or x.phases is None:
        raise ValueError("embed_phase_augmented needs a DataPoint carrying phases")
    base = embed_cosine(x.coords, power).amplitudes
    state = np.asarray(base, dtype=complex)
    for y in x.phases[1:]:
        qubit = np.array([1.0, np.exp(2.0j * y)], dtype=complex) / math.sqrt(2.0)
        state = np.kron(state, qubit)
    return FeatureState(state)


# ---------- dataset normalization ----------


def rescale_dataset(points, convention: str) -> np.ndarray:
    """Affinely map each coordinate onto the convention's half-open domain.

    The raw minimum lands on the lower bound; the raw maximum lands at
    (upper bound - 1e-9 * range) so rescaled values stay strictly inside the
    half-open interval.
    """
    if convention not in DOMAINS:
        raise ValueError(f"unknown convention {convention!r}")
    pts = np.asarray(points, dtype=float)
    squeeze = pts.ndim == 1
    pts = np.atleast_2d(pts.T).T if squeeze else pts
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two points to rescale")
    lo, hi = DOMAINS[convention]
    hi_eff = hi - 1e-9 * (hi - lo)
    mn = pts.min(axis=0)
    mx = pts.max(axis=0)
    if np.any(mx - mn <= 0.0):
        raise ValueError("each coordinate needs at least two distinct values")
    out = lo + (pts - mn) / (mx - mn) * (hi_eff - lo)
    return out[:, 0] if squeeze else out
