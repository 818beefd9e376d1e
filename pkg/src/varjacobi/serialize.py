"""CSV / JSON / SVG emission for contours, zero sets, and field samples.

CSV files carry headers and full double precision; JSON documents carry a
versioned top-level "format": "jacobi-rh/1" field so downstream consumers
can detect schema changes.  SVG output draws contour polylines and zero
atoms only, with a y-flip so the complex plane reads the usual way.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .engine import ZeroSet
from .geometry import Contour

FORMAT_TAG = "jacobi-rh/1"


def format_float(x: float) -> str:
    return repr(float(x))


def contour_to_csv(contour: Contour, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["index", "re", "im"])
        for i, z in enumerate(contour.points):
            wr.writerow([i, format_float(z.real), format_float(z.imag)])


def contour_from_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if header != ["index", "re", "im"]:
            raise ValueError(f"unexpected contour CSV header: {header}")
        pts = [complex(float(row[1]), float(row[2])) for row in rd]
    return np.array(pts)


def contour_to_json(contour: Contour) -> dict:
    return {
        "format": FORMAT_TAG,
        "kind": contour.kind,
        "r": contour.r,
        "closed": contour.closed,
        "orientation": contour.orientation,
        "points": [[z.real, z.imag] for z in contour.points],
    }


def zeros_to_csv(zs: ZeroSet, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["re", "im"])
        for z in zs.as_complex():
            wr.writerow([format_float(z.real), format_float(z.imag)])


def zeros_to_json(zs: ZeroSet) -> dict:
    return {
        "format": FORMAT_TAG,
        "n": zs.spec.n,
        "alpha": zs.spec.alpha,
        "beta": zs.spec.beta,
        "precision_bits": zs.spec.precision_bits,
        "residual": zs.residual,
        "zeros": [[z.real, z.imag] for z in zs.as_complex()],
    }


def write_json(obj: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def svg_scene(contours, point_sets, path, size: int = 640, margin: float = 0.08) -> None:
    """Minimal SVG: contour polylines plus small circles for zero atoms.

    point_sets is a list of (points, color) pairs; contours a list of
    (Contour, color).
    """
    xs, ys = [], []
    for c, _ in contours:
        xs.extend(c.points.real)
        ys.extend(c.points.imag)
    for pts, _ in point_sets:
        xs.extend(np.asarray(pts).real)
        ys.extend(np.asarray(pts).imag)
    if not xs:
        raise ValueError("nothing to draw")
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9) * (1 + 2 * margin)
    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
    scale = size / span

    def map_pt(z):
        return ((z.real - cx) * scale + size / 2,
                (cy - z.imag) * scale + size / 2)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">']
    for c, color in contours:
        coords = " ".join("%.2f,%.2f" % map_pt(z) for z in c.points)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
    for pts, color in point_sets:
        for z in np.asarray(pts):
            x, y = map_pt(z)
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.2" fill="{color}"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))
