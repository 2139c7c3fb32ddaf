"""Planar geometry on an axis-aligned rectangular window.

Disc-rectangle intersection areas are evaluated in closed form by
integrating the clipped chord of the disc piecewise; the pieces are
delimited by the abscissae where the circle crosses the horizontal
window edges, so every piece is either a straight strip or a circular
segment with an elementary antiderivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Window", "window_area", "ball_window_area", "min_pairwise_distance"]


@dataclass(frozen=True)
class Window:
    """Axis-aligned rectangle [x_min, x_max] x [y_min, y_max]."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(
                f"degenerate window: [{self.x_min}, {self.x_max}] x "
                f"[{self.y_min}, {self.y_max}]"
            )

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        """Boundary-inclusive membership test."""
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


def window_area(w: Window) -> float:
    """Area of the rectangular window."""
    return w.area()


def _chord_antiderivative(t: float, r: float) -> float:
    """Antiderivative of sqrt(r^2 - t^2), clamped against round-off at |t| = r."""
    u = min(max(t / r, -1.0), 1.0)
    return 0.5 * (t * math.sqrt(max(r * r - t * t, 0.0)) + r * r * math.asin(u))


def ball_window_area(center: tuple[float, float], radius: float, w: Window) -> float:
    """Exact area of the intersection of a closed disc with the window.

    The center may lie anywhere in the plane. Works by translating the
    window so the disc is centred at the origin, then integrating
    min(top, h(t)) - max(bottom, -h(t)) over t, split at the abscissae
    where h(t) = sqrt(r^2 - t^2) crosses the horizontal edges.
    """
    if radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius}")
    cx, cy = center
    ax, bx = w.x_min - cx, w.x_max - cx
    ay, by = w.y_min - cy, w.y_max - cy

    lo, hi = max(ax, -radius), min(bx, radius)
    if lo >= hi or ay >= radius or by <= -radius:
        return 0.0

    cuts = {lo, hi}
    for edge in (ay, by):
        if abs(edge) < radius:
            t = math.sqrt(radius * radius - edge * edge)
            for s in (-t, t):
                if lo < s < hi:
                    cuts.add(s)
    grid = sorted(cuts)

    area = 0.0
    for t0, t1 in zip(grid[:-1], grid[1:]):
        tm = 0.5 * (t0 + t1)
        h = math.sqrt(max(radius * radius - tm * tm, 0.0))
        top_is_arc = h < by
        bot_is_arc = -h > ay
        if min(by, h) <= max(ay, -h):
            continue
        if top_is_arc:
            area += _chord_antiderivative(t1, radius) - _chord_antiderivative(t0, radius)
        else:
            area += by * (t1 - t0)
        if bot_is_arc:
            area += _chord_antiderivative(t1, radius) - _chord_antiderivative(t0, radius)
        else:
            area -= ay * (t1 - t0)
    return area


def min_pairwise_distance(points: np.ndarray | list[tuple[float, float]]) -> float:
    """Minimum Euclidean distance over distinct pairs; +inf below 2 points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = pts.shape[0]
    if n < 2:
        return math.inf
    diff = pts[:, None, :] - pts[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    iu = np.triu_indices(n, k=1)
    return float(np.sqrt(d2[iu].min()))
