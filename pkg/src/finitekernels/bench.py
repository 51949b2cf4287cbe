"""End-to-end benchmark harness: data, Gram, training, accuracy, decision grid.

Kernel measurements are instrumented (each Gram build counts its kernel
determinations) and shot-noise streams are keyed per entry, so a sampled
pipeline is reproducible no matter how its evaluations are ordered or
parallelized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .datasets import DATASET_NAMES, LabeledSet, generate_dataset
from .kernels import KernelSpec
from .optics import ShotNoiseConfig, sample_kernel
from .states import DOMAINS
from .svm import GramMatrix, TrainedModel, accuracy, condition_gram, train

# stream namespaces: one per measurement context, so index pairs never collide
STREAM_GRAM = 0
STREAM_ROWS = 1
STREAM_GRID = 2

CONDITION_POLICIES = ("clip", "shift", "none")


def compute_gram(
    points,
    kernel: KernelSpec,
    noise: ShotNoiseConfig | None = None,
    pin_diagonal: bool = False,
) -> GramMatrix:
    """Kernel matrix over one point set; upper triangle evaluated, then mirrored.

    Exact path: M(M-1)/2 kernel evaluations, unit diagonal by construction.
    Sampled path: each off-diagonal entry is measured once with a stream keyed
    by its indices; the diagonal is measured too unless ``pin_diagonal`` pins
    it to 1.
    """
    pts = points.points if isinstance(points, LabeledSet) else np.asarray(points, float)
    m = pts.shape[0]
    values = np.zeros((m, m))
    evaluations = 0
    for i in range(m):
        for j in range(i + 1, m):
            kappa = kernel.evaluate(pts[i], pts[j])
            if noise is not None:
                kappa, _ = sample_kernel(kappa, noise, key=(STREAM_GRAM, i, j))
            values[i, j] = values[j, i] = kappa
            evaluations += 1
    if noise is None or pin_diagonal:
        np.fill_diagonal(values, 1.0)
    else:
        for i in range(m):
            est, _ = sample_kernel(1.0, noise, key=(STREAM_GRAM, i, i))
            values[i, i] = est
            evaluations += 1
    return GramMatrix(
        values=values,
        provenance="exact" if noise is None else "sampled",
        seed=None if noise is None else noise.seed,
        n_evaluations=evaluations,
    )


def kernel_rows(
    points,
    train_points,
    kernel: KernelSpec,
    noise: ShotNoiseConfig | None = None,
    stream: int = STREAM_ROWS,
) -> np.ndarray:
    """Kernel values of each query point against every training point."""
    qpts = points.points if isinstance(points, LabeledSet) else np.asarray(points, float)
    tpts = (
        train_points.points
        if isinstance(train_points, LabeledSet)
        else np.asarray(train_points, float)
    )
    rows = np.zeros((qpts.shape[0], tpts.shape[0]))
    for i in range(qpts.shape[0]):
        for j in range(tpts.shape[0]):
            kappa = kernel.evaluate(qpts[i], tpts[j])
            if noise is not None:
                kappa, _ = sample_kernel(kappa, noise, key=(stream, i, j))
            rows[i, j] = kappa
    return rows


@dataclass(frozen=True)
class BoundaryGrid:
    """Decision scores on a regular grid spanning the kernel's input domain."""

    xs: np.ndarray
    ys: np.ndarray
    scores: np.ndarray  # scores[i, j] = f(xs[i], ys[j])

    def __post_init__(self) -> None:
        if self.scores.shape != (self.xs.size, self.ys.size):
            raise ValueError("scores shape must match the axes")

    @property
    def side(self) -> int:
        return int(self.xs.size)

    def interpolate(self, points) -> np.ndarray:
        """Bilinear interpolation; exact at grid nodes."""
        interp = RegularGridInterpolator(
            (self.xs, self.ys), self.scores, method="linear"
        )
        return np.asarray(interp(np.atleast_2d(points)))

    def to_rows(self) -> np.ndarray:
        """Flat (x1, x2, score) rows, x-major."""
        xg, yg = np.meshgrid(self.xs, self.ys, indexing="ij")
        return np.column_stack([xg.ravel(), yg.ravel(), self.scores.ravel()])


def boundary_grid(
    model: TrainedModel,
    train_set,
    kernel: KernelSpec,
    side: int = 35,
    noise: ShotNoiseConfig | None = None,
) -> BoundaryGrid:
    """Decision scores on a side x side grid over the full convention domain.

    Grid nodes sample the half-open domain uniformly (endpoint excluded);
    every node's kernel row is evaluated directly, side^2 rows total.
    """
    if side < 2:
        raise ValueError("grid side must be at least 2")
    lo, hi = DOMAINS[kernel.convention]
    axis = np.linspace(lo, hi, side, endpoint=False)
    tpts = (
        train_set.points if isinstance(train_set, LabeledSet) else np.asarray(train_set)
    )
    nodes = np.array([[x, y] for x in axis for y in axis])
    scores = np.zeros(len(nodes))
    for idx, node in enumerate(nodes):
        row = np.zeros(tpts.shape[0])
        for j in range(tpts.shape[0]):
            kappa = kernel.evaluate(node, tpts[j])
            if noise is not None:
                kappa, _ = sample_kernel(kappa, noise, key=(STREAM_GRID, idx, j))
            row[j] = kappa
        scores[idx] = float(row @ model.coefficients)
    return BoundaryGrid(
        xs=axis, ys=axis.copy(), scores=scores.reshape(side, side)
    )


@dataclass(frozen=True)
class BenchmarkConfig:
    """Everything one benchmark run depends on."""

    dataset: str
    seed: int
    kernel: KernelSpec
    gamma: float = 1.0
    train_size: int = 40
    test_size: int = 60
    noise: ShotNoiseConfig | None = None
    grid_side: int = 35
    condition_policy: str = "clip"
    pin_noisy_diagonal: bool = False

    def __post_init__(self) -> None:
        if self.dataset not in DATASET_NAMES:
            raise ValueError(f"unknown dataset {self.dataset!r}")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.condition_policy not in CONDITION_POLICIES:
            raise ValueError(f"unknown condition policy {self.condition_policy!r}")
        if self.grid_side < 2:
            raise ValueError("grid side must be at least 2")


@dataclass(frozen=True)
class BenchReport:
    """All artifacts of one benchmark run."""

    config: BenchmarkConfig
    train_set: LabeledSet
    test_set: LabeledSet
    gram: GramMatrix
    gram_conditioned: GramMatrix
    model: TrainedModel
    train_accuracy: float
    test_accuracy: float
    grid: BoundaryGrid

    def summary(self) -> dict:
        """Scalar facts of the run, JSON-ready."""
        cfg = self.config
        noise = cfg.noise
        return {
            "dataset": cfg.dataset,
            "seed": cfg.seed,
            "train_size": cfg.train_size,
            "test_size": cfg.test_size,
            "kernel": cfg.kernel.kernel_id(),
            "gamma": cfg.gamma,
            "grid_side": cfg.grid_side,
            "condition_policy": cfg.condition_policy,
            "noise": None
            if noise is None
            else {
                "events_per_point": noise.events_per_point,
                "fidelity": noise.fidelity,
                "seed": noise.seed,
                "background": noise.background,
            },
            "gram_provenance": self.gram.provenance,
            "gram_evaluations": self.gram.n_evaluations,
            "train_accuracy": self.train_accuracy,
            "test_accuracy": self.test_accuracy,
            "train_id": self.model.train_id,
        }


def run_benchmark(config: BenchmarkConfig, out_dir=None, formats=("csv", "json", "svg")) -> BenchReport:
    """Generate data, build the Gram, train, score, and map the decision boundary.

    When ``out_dir`` is given the full artifact set (dataset/Gram/grid CSV,
    model and report JSON, boundary SVG) is written there.
    """
    train_set, test_set = generate_dataset(
        config.dataset,
        config.seed,
        train_size=config.train_size,
        test_size=config.test_size,
        convention=config.kernel.convention,
    )
    gram = compute_gram(
        train_set, config.kernel, noise=config.noise, pin_diagonal=config.pin_noisy_diagonal
    )
    conditioned = condition_gram(gram, config.condition_policy)
    train_id = f"{config.dataset}-seed{config.seed}-m{config.train_size}"
    model = train(conditioned, train_set.labels, config.gamma, train_id=train_id)
    train_acc = accuracy(model, conditioned.values, train_set.labels)
    test_rows = kernel_rows(
        test_set, train_set, config.kernel, noise=config.noise, stream=STREAM_ROWS
    )
    test_acc = accuracy(model, test_rows, test_set.labels)
    grid = boundary_grid(
        model, train_set, config.kernel, side=config.grid_side, noise=config.noise
    )
    report = BenchReport(
        config=config,
        train_set=train_set,
        test_set=test_set,
        gram=gram,
        gram_conditioned=conditioned,
        model=model,
        train_accuracy=train_acc,
        test_accuracy=test_acc,
        grid=grid,
    )
    if out_dir is not None:
        from .reports import emit_report

        emit_report(report, out_dir, formats=formats)
    return report
