"""Kernel SVM on precomputed Gram matrices, matching the slack-variable program

    minimize    sum_m a_m^2 + gamma * sum_m u_m
    subject to  y_i * sum_m a_m G_im >= 1 - u_i,   u_i >= 0,

with no bias term.  The regularizer is the plain squared norm of the
coefficients, so the program stays convex for any symmetric Gram matrix,
indefinite sampled ones included.  The solver maximizes the box-constrained
dual by cyclic coordinate ascent (a projected-gradient-family method) and
terminates on the KKT residual.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-12
KKT_TOL = 1e-8


@dataclass(frozen=True)
class GramMatrix:
    """Square kernel matrix with measurement provenance.

    ``provenance`` is ``"exact"`` for closed-form evaluation or ``"sampled"``
    for shot-noise estimates; ``n_evaluations`` counts the kernel
    determinations that produced it.
    """

    values: np.ndarray
    provenance: str = "exact"
    seed: int | None = None
    n_evaluations: int = 0

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] == 0:
            raise ValueError("Gram values must form a nonempty square matrix")
        if np.max(np.abs(v - v.T)) > SYMMETRY_TOL:
            raise ValueError("Gram matrix must be symmetric")
        if self.provenance not in ("exact", "sampled"):
            raise ValueError("provenance must be 'exact' or 'sampled'")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def size(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class TrainDiagnostics:
    """Solver byproducts: dual variables, slacks, residual, objective."""

    dual: np.ndarray
    slack: np.ndarray
    kkt_residual: float
    objective: float
    sweeps: int


@dataclass(frozen=True)
class TrainedModel:
    """Decision-function coefficients over the training kernel rows."""

    coefficients: np.ndarray
    gamma: float
    train_id: str = ""
    diagnostics: TrainDiagnostics | None = None

    def __post_init__(self) -> None:
        a = np.asarray(self.coefficients, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("coefficients must form a nonempty vector")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "coefficients", a)

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": [float(v) for v in self.coefficients],
                "gamma": self.gamma,
                "train_id": self.train_id,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "TrainedModel":
        data = json.loads(text)
        return cls(
            coefficients=np.asarray(data["a"], dtype=float),
            gamma=float(data["gamma"]),
            train_id=str(data.get("train_id", "")),
        )


def _as_gram_values(gram) -> np.ndarray:
    if isinstance(gram, GramMatrix):
        return np.asarray(gram.values, dtype=float)
    v = np.asarray(gram, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise ValueError("Gram values must form a square matrix")
    if np.max(np.abs(v - v.T)) > SYMMETRY_TOL:
        raise ValueError("Gram matrix must be symmetric")
    return v


def _check_labels(labels, size: int) -> np.ndarray:
    y = np.asarray(labels, dtype=float)
    if y.shape != (size,):
        raise ValueError("labels must match the Gram size")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValueError("labels must be +1 or -1")
    return y


def training_objective(gram, labels, gamma: float, coefficients) -> float:
    """Primal objective sum a^2 + gamma * sum hinge(1 - y f) at given coefficients."""
    g = _as_gram_values(gram)
    y = _check_labels(labels, g.shape[0])
    a = np.asarray(coefficients, dtype=float)
    scores = g @ a
    slack = np.maximum(0.0, 1.0 - y * scores)
    return float(a @ a + gamma * slack.sum())


def kkt_residual(gram, labels, gamma: float, coefficients, dual) -> float:
    """Max violation of stationarity, feasibility, and complementary slackness."""
    g = _as_gram_values(gram)
    y = _check_labels(labels, g.shape[0])
    a = np.asarray(coefficients, dtype=float)
    alpha = np.asarray(dual, dtype=float)
    scores = g @ a
    slack = np.maximum(0.0, 1.0 - y * scores)
    stationarity = float(np.max(np.abs(2.0 * a - g @ (y * alpha))))
    dual_box = float(max(np.max(-alpha, initial=0.0), np.max(alpha - gamma, initial=0.0)))
    comp_margin = float(np.max(np.abs(alpha * (1.0 - slack - y * scores))))
    comp_slack = float(np.max(np.abs((gamma - alpha) * slack)))
    return max(stationarity, dual_box, comp_margin, comp_slack)


def train(
    gram,
    labels,
    gamma: float,
    train_id: str = "",
    max_sweeps: int = 200_000,
    tol: float = KKT_TOL,
) -> TrainedModel:
    """Fit the margin program on a precomputed Gram matrix.

    Parameters
    ----------
    gram : GramMatrix or square symmetric array
        Kernel values between all training pairs.  Indefinite matrices are
        accepted; convexity comes from the coefficient regularizer.
    labels : array of +1/-1
    gamma : float
        Positive slack penalty.  Larger values buy training accuracy at the
        price of larger coefficients; as gamma -> 0 the coefficients vanish.
    train_id : str
        Identifier stored with the model (propagated into serialization).

    Returns
    -------
    TrainedModel with diagnostics attached (dual variables, slacks, KKT
    residual, primal objective, sweep count).

    Notes
    -----
    The dual is  max_{0 <= alpha <= gamma} 1'alpha - alpha' Q alpha  with
    Q = (1/4) diag(y) G^2 diag(y), always positive semidefinite.  Cyclic
    coordinate ascent with a cached gradient converges for any symmetric G;
    primal recovery is a = G (y * alpha) / 2.
    """
    g = _as_gram_values(gram)
    m = g.shape[0]
    y = _check_labels(labels, m)
    if not math.isfinite(gamma) or gamma <= 0.0:
        raise ValueError("gamma must be a finite positive real")

    q = (g @ g) * np.outer(y, y) / 4.0
    q_diag = np.diag(q).copy()
    alpha = np.zeros(m)
    grad_cache = np.zeros(m)  # holds Q @ alpha

    def recover():
        a = 0.5 * (g @ (y * alpha))
        return a

    residual = math.inf
    sweeps_done = 0
    for sweep in range(max_sweeps):
        moved = 0.0
        for i in range(m):
            slope = 1.0 - 2.0 * grad_cache[i]
            if q_diag[i] > 1e-30:
                new = alpha[i] + slope / (2.0 * q_diag[i])
                new = min(gamma, max(0.0, new))
            else:
                # dual objective is linear in this coordinate
                new = gamma if slope > 0.0 else 0.0
            delta = new - alpha[i]
            if delta != 0.0:
                alpha[i] = new
                grad_cache += delta * q[:, i]
                moved = max(moved, abs(delta))
        sweeps_done = sweep + 1
        if moved == 0.0 or sweep % 8 == 7:
            residual = kkt_residual(g, y, gamma, recover(), alpha)
            if residual < tol:
                break
            if moved == 0.0:
                break
    else:
        residual = kkt_residual(g, y, gamma, recover(), alpha)

    a = recover()
    if residual > 1e-6:
        raise RuntimeError(
            f"QP solver stalled at KKT residual {residual:.3e} after "
            f"{sweeps_done} sweeps"
        )
    scores = g @ a
    slack = np.maximum(0.0, 1.0 - y * scores)
    diagnostics = TrainDiagnostics(
        dual=alpha.copy(),
        slack=slack,
        kkt_residual=residual,
        objective=float(a @ a + gamma * slack.sum()),
        sweeps=sweeps_done,
    )
    return TrainedModel(
        coefficients=a, gamma=float(gamma), train_id=train_id, diagnostics=diagnostics
    )


def decide(model: TrainedModel, kernel_row) -> float:
    """Decision score sum_m a_m k(x, x_m) for one evaluation point."""
    row = np.asarray(kernel_row, dtype=float)
    if row.shape != model.coefficients.shape:
        raise ValueError("kernel row length must match the coefficient count")
    return float(row @ model.coefficients)


def accuracy(model: TrainedModel, kernel_rows, labels) -> float:
    """Fraction of points whose label matches the sign of the decision score.

    A score of exactly 0 counts as misclassified.
    """
    rows = np.asarray(kernel_rows, dtype=float)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise ValueError("kernel_rows must be a nonempty matrix")
    if rows.shape[1] != model.coefficients.size:
        raise ValueError("kernel row length must match the coefficient count")
    y = _check_labels(labels, rows.shape[0])
    scores = rows @ model.coefficients
    return float(np.mean(y * scores > 0.0))


def condition_gram(gram: GramMatrix, policy: str = "clip") -> GramMatrix:
    """Repair an indefinite sampled Gram matrix ahead of training.

    ``"clip"`` floors negative eigenvalues at zero, ``"shift"`` adds
    |lambda_min| to the diagonal when the smallest eigenvalue is negative,
    ``"none"`` returns the input unchanged.  The result is exactly
    resymmetrized.
    """
    if policy == "none":
        return gram
    if policy not in ("clip", "shift"):
        raise ValueError("policy must be 'clip', 'shift', or 'none'")
    v = np.asarray(gram.values, dtype=float)
    if policy == "clip":
        evals, evecs = np.linalg.eigh(v)
        repaired = (evecs * np.maximum(evals, 0.0)) @ evecs.T
    else:
        lam_min = float(np.linalg.eigvalsh(v)[0])
        repaired = v.copy()
        if lam_min < 0.0:
            repaired[np.diag_indices_from(repaired)] -= lam_min
    repaired = 0.5 * (repaired + repaired.T)
    return GramMatrix(
        values=repaired,
        provenance=gram.provenance,
        seed=gram.seed,
        n_evaluations=gram.n_evaluations,
    )
