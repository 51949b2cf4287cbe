"""Two-photon linear-optical circuit that evaluates cosine-power kernels.

Each photon lives in a 4-dimensional space spanned by polarization (H, V)
and rail (T, B), ordered ``(HT, HB, VB, VT)``.  A photon entering as H in
the bottom rail is routed through a splitter plate, a beam divider that lifts
V light to the top rail, and one wave plate per rail, producing the cubic
binomial feature state

    c^3 |HT> + sqrt(3) s c^2 |HB> + sqrt(3) c s^2 |VB> + s^3 |VT>,

with c = cos(x), s = sin(x).  Every element is an exact rotation, so the
composed circuit is unitary and the post-selected two-photon amplitude gives
the kernel cos^6 per input dimension.  Shot noise is modeled by binomial
coincidence counting with per-call random streams, so sampled Gram matrices
are reproducible regardless of evaluation order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .states import DataPoint

MODE_BASIS = ("HT", "HB", "VB", "VT")
_HT, _HB, _VB, _VT = range(4)

UNITARY_TOL = 1e-12


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(matrix)
    eye = np.eye(m.shape[0])
    return bool(np.max(np.abs(m.conj().T @ m - eye)) < tol)


def plate_element(mu: float, nu: float, target: str) -> np.ndarray:
    """Wave-plate rotation on one rail's polarization subspace, identity elsewhere.

    ``target="T"`` rotates V in the top rail onto (mu |HT> + nu |VT>) / h;
    ``target="B"`` rotates H in the bottom rail onto (mu |HB> + nu |VB>) / h,
    with h = sqrt(mu^2 + nu^2).  The stated plate parameters may carry
    prefactors up to sqrt(2) in norm (mu^2 + nu^2 <= 2); the internal
    normalization by h makes each plate an exact rotation, so composed maps
    stay trace-preserving on the post-selected subspace.
    """
    h_sq = mu * mu + nu * nu
    if not math.isfinite(h_sq) or h_sq <= 0.0:
        raise ValueError("plate parameters must not both vanish")
    if h_sq > 2.0 + 1e-9:
        raise ValueError("plate parameters must satisfy mu^2 + nu^2 <= 2")
    h = math.sqrt(h_sq)
    m, n = mu / h, nu / h
    u = np.eye(4)
    if target == "T":
        # columns: image of HT, image of VT
        u[_HT, _HT] = n
        u[_HT, _VT] = m
        u[_VT, _HT] = -m
        u[_VT, _VT] = n
    elif target == "B":
        u[_HB, _HB] = m
        u[_VB, _HB] = n
        u[_HB, _VB] = -n
        u[_VB, _VB] = m
    else:
        raise ValueError("target must be 'T' or 'B'")
    return u


def beam_divider() -> np.ndarray:
    """Routes V polarization from the bottom rail to the top rail (VB <-> VT)."""
    u = np.eye(4)
    u[[_VB, _VT]] = u[[_VT, _VB]]
    return u


def feature_plate_settings(coord: float) -> tuple[float, float, float, float]:
    """Plate parameters (mu_T, nu_T, mu_B, nu_B) realizing the cubic feature state.

    mu_T = sqrt(2) c^3, nu_T = sqrt(2) s^3, mu_B = sqrt(6) c^2 s,
    nu_B = sqrt(6) c s^2; the four squares always sum to exactly 2.
    """
    c, s = math.cos(coord), math.sin(coord)
    return (
        math.sqrt(2.0) * c**3,
        math.sqrt(2.0) * s**3,
        math.sqrt(6.0) * c**2 * s,
        math.sqrt(6.0) * c * s**2,
    )


def _single_photon_unitary(coord: float, power: int) -> np.ndarray:
    if power == 1:
        # single-rail reduction: polarization rotation |H> -> c|H> + s|V>
        c, s = math.cos(coord), math.sin(coord)
        return np.array([[c, -s], [s, c]])
    mu_t, nu_t, mu_b, nu_b = feature_plate_settings(coord)
    h_b = math.hypot(mu_b, nu_b)
    h_t = math.hypot(mu_t, nu_t)
    # the splitter feeds each rail the weight its plate would post-select,
    # folding the stated sqrt(2)/sqrt(6) prefactors into one exact rotation
    u = plate_element(h_b, h_t, "B")
    u = beam_divider() @ u
    if h_t > 1e-15:
        u = plate_element(mu_t, nu_t, "T") @ u
    if h_b > 1e-15:
        u = plate_element(mu_b, nu_b, "B") @ u
    return u


def input_state(dimension: int, power: int = 3) -> np.ndarray:
    """Canonical circuit input: each photon H-polarized in the bottom rail."""
    single = np.zeros(2 if power == 1 else 4)
    single[0 if power == 1 else _HB] = 1.0
    state = np.ones(1)
    for _ in range(dimension):
        state = np.kron(state, single)
    return state


def build_feature_unitary(x, power: int = 3) -> np.ndarray:
    """Composed circuit unitary for a point with up to two coordinates.

    One photon per coordinate; the full matrix is the tensor product of the
    per-photon circuits (4^D-dimensional for the cubic encoding, 2^D for the
    power-1 reduction).  Applied to :func:`input_state` it produces the
    binomial feature state of each photon exactly.
    """
    if power not in (1, 3):
        raise ValueError("the optical circuit realizes powers 1 and 3 only")
    coords = np.atleast_1d(np.asarray(x, dtype=float))
    if coords.ndim != 1 or not 1 <= coords.size <= 2:
        raise ValueError("the circuit hosts one or two photons")
    full = np.ones((1, 1))
    for coord in coords:
        full = np.kron(full, _single_photon_unitary(float(coord), power))
    return full


def kernel_circuit(x, xp, power: int = 3) -> float:
    """Post-selected two-photon kernel |<in| U(x')^T U(x) |in>|^2.

    Equals the closed-form cos^(2*power) product over coordinates.
    """
    ua = build_feature_unitary(x, power)
    ub = build_feature_unitary(xp, power)
    coords = np.atleast_1d(np.asarray(x, dtype=float))
    vin = input_state(coords.size, power)
    amp = complex(vin @ (ub.conj().T @ ua @ vin))
    return min(1.0, abs(amp) ** 2)


def phase_interference_amplitude(y: float, yp: float) -> complex:
    """Diagonal-basis interference of the two post-selected H photons.

    The pre-selection phase e^{2iy} and post-selection phase e^{-2iy'} leave
    a relative phase between the upper and lower photons; comparing them in
    the diagonal polarization basis yields the amplitude (1 + e^{2i(y-y')})/2,
    whose squared modulus is cos^2(y - y').
    """
    return 0.5 * (1.0 + np.exp(2.0j * (y - yp)))


def kernel_circuit_phase(x, xp, power: int = 3) -> float:
    """Circuit kernel with encoding-phase stages on every photon after the first.

    Accepts DataPoints carrying phases (reference phase fixed at 0); returns
    kernel_circuit(x, xp) times cos^2 of each phase difference.
    """
    if not isinstance(x, DataPoint) or not isinstance(xp, DataPoint):
        raise ValueError("kernel_circuit_phase needs DataPoint arguments")
    if x.phases is None or xp.phases is None:
        raise ValueError("kernel_circuit_phase needs phases on both points")
    if x.phases.shape != xp.phases.shape:
        raise ValueError("points must have the same dimension")
    ua = build_feature_unitary(x.coords, power)
    ub = build_feature_unitary(xp.coords, power)
    vin = input_state(x.coords.size, power)
    base_amp = complex(vin @ (ub.conj().T @ ua @ vin))
    for y, yp_val in zip(x.phases[1:], xp.phases[1:]):
        base_amp *= phase_interference_amplitude(float(y), float(yp_val))
    return min(1.0, abs(base_amp) ** 2)


# ---------- shot noise ----------


@dataclass(frozen=True)
class ShotNoiseConfig:
    """Coincidence-counting noise model of one kernel measurement.

    ``fidelity`` blends the true kernel with a flat background: the success
    probability per event is f * kappa + (1 - f) * background.
    """

    events_per_point: int = 2500
    fidelity: float = 0.98
    seed: int = 0
    background: float = 0.5

    def __post_init__(self) -> None:
        if self.events_per_point < 1:
            raise ValueError("events_per_point must be a positive integer")
        if not (0.0 < self.fidelity <= 1.0):
            raise ValueError("fidelity must lie in (0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if not (0.0 <= self.background <= 1.0):
            raise ValueError("background must lie in [0, 1]")


@dataclass(frozen=True)
class CoincidenceRecord:
    """Raw counts of one sampled kernel value.

    ``counts["signal"]`` aggregates the coincidence-pair combination entering
    the kernel numerator; ``counts["rest"]`` is every other detection event.
    """

    counts: dict
    total: int
    seed: int

    def __post_init__(self) -> None:
        if self.total < 1:
            raise ValueError("total must be positive")
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("counts must be nonnegative")
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts must sum to the total")

    def to_json(self) -> str:
        return json.dumps(
            {"pairs": dict(self.counts), "total": self.total, "seed": self.seed},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "CoincidenceRecord":
        data = json.loads(text)
        return cls(
            counts={k: int(v) for k, v in data["pairs"].items()},
            total=int(data["total"]),
            seed=int(data["seed"]),
        )


def sample_kernel(
    true_kappa: float, config: ShotNoiseConfig, key: tuple[int, ...] = ()
) -> tuple[float, CoincidenceRecord]:
    """Binomial estimate of one kernel value from coincidence counting.

    ``key`` extends the seed into a per-call stream (e.g. the Gram indices of
    the entry being measured), so batches of measurements are reproducible
    independent of evaluation order.  The estimate is unbiased at fidelity 1
    with standard deviation sqrt(kappa (1 - kappa) / events).
    """
    if not (0.0 <= true_kappa <= 1.0):
        raise ValueError("true_kappa must lie in [0, 1]")
    if any(int(k) < 0 for k in key):
        raise ValueError("stream key entries must be nonnegative")
    p = config.fidelity * true_kappa + (1.0 - config.fidelity) * config.background
    rng = np.random.default_rng([config.seed, *[int(k) for k in key]])
    signal = int(rng.binomial(config.events_per_point, p))
    estimate = signal / config.events_per_point
    record = CoincidenceRecord(
        counts={"signal": signal, "rest": config.events_per_point - signal},
        total=config.events_per_point,
        seed=config.seed,
    )
    return estimate, record


def coincidence_rate_budget(
    pairs: int, rate_cps: float, events_needed: int
) -> float:
    """Seconds of wall time to collect the requested events for every pair."""
    if pairs < 0:
        raise ValueError("pairs must be nonnegative")
    if not math.isfinite(rate_cps) or rate_cps <= 0.0:
        raise ValueError("rate_cps must be a finite positive rate")
    if events_needed < 0:
        raise ValueError("events_needed must be nonnegative")
    return pairs * events_needed / rate_cps
