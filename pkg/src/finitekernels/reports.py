"""Deterministic artifact emission: CSV tables, JSON reports, SVG boundary plots.

All floats in CSV output carry 17 significant digits (lossless for float64),
JSON keys are sorted, and the SVG contains no clock or environment data, so a
repeated run with the same configuration reproduces every byte.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .bench import BenchReport, BoundaryGrid
from .datasets import LabeledSet
from .resolution import SweepPoint
from .svm import GramMatrix, TrainedModel


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


# ---------- CSV ----------


def write_dataset_csv(path, dataset: LabeledSet) -> None:
    """Columns x1..xD,label; one row per point."""
    dim = dataset.points.shape[1]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{i + 1}" for i in range(dim)] + ["label"])
        for point, label in zip(dataset.points, dataset.labels):
            writer.writerow([_fmt(v) for v in point] + [str(int(label))])


def load_dataset_csv(path) -> LabeledSet:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[-1] != "label":
            raise ValueError("dataset CSV must end with a 'label' column")
        points, labels = [], []
        for row in reader:
            points.append([float(v) for v in row[:-1]])
            labels.append(float(row[-1]))
    return LabeledSet(np.asarray(points), np.asarray(labels))


def write_gram_csv(path, gram: GramMatrix) -> None:
    """Dense square matrix with a c1..cM header row."""
    m = gram.size
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"c{i + 1}" for i in range(m)])
        for row in gram.values:
            writer.writerow([_fmt(v) for v in row])


def load_gram_csv(path, provenance: str = "exact", seed=None) -> GramMatrix:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        values = np.asarray([[float(v) for v in row] for row in reader])
    return GramMatrix(values=values, provenance=provenance, seed=seed)


def write_grid_csv(path, grid: BoundaryGrid) -> None:
    """Columns x1,x2,score; side^2 rows, x-major."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "score"])
        for row in grid.to_rows():
            writer.writerow([_fmt(v) for v in row])


def write_resolution_csv(path, rows) -> None:
    """Columns family,L,variance,resolution, one row per sweep point."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["family", "L", "variance", "resolution"])
        for point in rows:
            if not isinstance(point, SweepPoint):
                raise ValueError("rows must be SweepPoint instances")
            writer.writerow(
                [point.family, str(point.length), _fmt(point.variance), _fmt(point.resolution)]
            )


# ---------- JSON ----------


def write_model_json(path, model: TrainedModel) -> None:
    Path(path).write_text(model.to_json() + "\n")


def load_model_json(path) -> TrainedModel:
    return TrainedModel.from_json(Path(path).read_text())


def write_report_json(path, report: BenchReport) -> None:
    Path(path).write_text(json.dumps(report.summary(), sort_keys=True, indent=2) + "\n")


def load_report_json(path) -> dict:
    return json.loads(Path(path).read_text())


# ---------- SVG boundary plot ----------


def _zero_contour_segments(grid: BoundaryGrid) -> list[tuple[float, float, float, float]]:
    """Marching-squares segments of the score's zero level, in data coordinates."""
    xs, ys, z = grid.xs, grid.ys, grid.scores
    segments: list[tuple[float, float, float, float]] = []

    def cross(v0, v1):
        return (v0 > 0.0) != (v1 > 0.0)

    def lerp(p0, p1, v0, v1):
        t = 0.5 if v0 == v1 else v0 / (v0 - v1)
        return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))

    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            corners = [
                ((xs[i], ys[j]), z[i, j]),
                ((xs[i + 1], ys[j]), z[i + 1, j]),
                ((xs[i + 1], ys[j + 1]), z[i + 1, j + 1]),
                ((xs[i], ys[j + 1]), z[i, j + 1]),
            ]
            crossings = []
            for k in range(4):
                (p0, v0), (p1, v1) = corners[k], corners[(k + 1) % 4]
                if cross(v0, v1):
                    crossings.append(lerp(p0, p1, v0, v1))
            if len(crossings) == 2:
                (ax, ay), (bx, by) = crossings
                segments.append((ax, ay, bx, by))
            elif len(crossings) == 4:
                # saddle cell: pair edges by the sign of the center average
                center = sum(v for _, v in corners) / 4.0
                first = (z[i, j] > 0.0) == (center > 0.0)
                order = [(0, 1), (2, 3)] if first else [(0, 3), (1, 2)]
                for a, b in order:
                    (ax, ay), (bx, by) = crossings[a], crossings[b]
                    segments.append((ax, ay, bx, by))
    return segments


def render_boundary_svg(
    grid: BoundaryGrid,
    train_set: LabeledSet | None = None,
    test_set: LabeledSet | None = None,
    test_accuracy: float | None = None,
    size: int = 480,
) -> str:
    """Decision-boundary figure: sign heatmap, zero contour, triangle markers.

    Training points draw as up (+1) / down (-1) triangles, test points as
    right (+1) / left (-1) triangles; the test accuracy prints in the bottom
    right corner.
    """
    xs, ys, z = grid.xs, grid.ys, grid.scores
    margin = 6.0
    span_x = xs[-1] - xs[0]
    span_y = ys[-1] - ys[0]
    # half-open grids carry one trailing cell of the same pitch
    pitch_x = xs[1] - xs[0]
    pitch_y = ys[1] - ys[0]

    def to_px(x, y):
        px = margin + (x - xs[0]) / (span_x + pitch_x) * (size - 2 * margin)
        py = margin + (ys[-1] + pitch_y - y) / (span_y + pitch_y) * (size - 2 * margin)
        return px, py

    cell_w = (size - 2 * margin) / len(xs)
    cell_h = (size - 2 * margin) / len(ys)
    zmax = float(np.abs(z).max()) or 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            value = z[i, j]
            color = "#2166ac" if value > 0.0 else "#b2182b"
            opacity = 0.08 + 0.5 * min(1.0, abs(value) / zmax)
            px, py = to_px(x, y + pitch_y)
            parts.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{cell_w:.2f}" '
                f'height="{cell_h:.2f}" fill="{color}" opacity="{opacity:.3f}"/>'
            )
    for ax, ay, bx, by in _zero_contour_segments(grid):
        (pax, pay), (pbx, pby) = to_px(ax, ay), to_px(bx, by)
        parts.append(
            f'<line x1="{pax:.2f}" y1="{pay:.2f}" x2="{pbx:.2f}" y2="{pby:.2f}" '
            f'stroke="black" stroke-width="1.4"/>'
        )

    def triangle(px, py, orientation, fill):
        r = 5.0
        if orientation == "up":
            pts = [(px, py - r), (px - r, py + r), (px + r, py + r)]
        elif orientation == "down":
            pts = [(px, py + r), (px - r, py - r), (px + r, py - r)]
        elif orientation == "right":
            pts = [(px + r, py), (px - r, py - r), (px - r, py + r)]
        else:
            pts = [(px - r, py), (px + r, py - r), (px + r, py + r)]
        coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in pts)
        return (
            f'<polygon points="{coords}" fill="{fill}" stroke="black" '
            f'stroke-width="0.8"/>'
        )

    for subset, orientations in (
        (train_set, ("up", "down")),
        (test_set, ("right", "left")),
    ):
        if subset is None:
            continue
        for point, label in zip(subset.points, subset.labels):
            px, py = to_px(point[0], point[1])
            orientation = orientations[0] if label > 0 else orientations[1]
            fill = "#4393c3" if label > 0 else "#d6604d"
            parts.append(triangle(px, py, orientation, fill))
    if test_accuracy is not None:
        parts.append(
            f'<text x="{size - margin - 4:.0f}" y="{size - margin - 6:.0f}" '
            f'text-anchor="end" font-family="sans-serif" font-size="16">'
            f"test {test_accuracy:.2f}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_report(report: BenchReport, out_dir, formats=("csv", "json", "svg")) -> list[Path]:
    """Write the artifact set of one benchmark run; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def note(path: Path):
        written.append(path)
        return path

    if "csv" in formats:
        write_dataset_csv(note(out / "train.csv"), report.train_set)
        write_dataset_csv(note(out / "test.csv"), report.test_set)
        write_gram_csv(note(out / "gram.csv"), report.gram)
        write_grid_csv(note(out / "grid.csv"), report.grid)
    if "json" in formats:
        write_model_json(note(out / "model.json"), report.model)
        write_report_json(note(out / "report.json"), report)
    if "svg" in formats:
        note(out / "boundary.svg").write_text(
            render_boundary_svg(
                report.grid,
                train_set=report.train_set,
                test_set=report.test_set,
                test_accuracy=report.test_accuracy,
            )
        )
    return written
