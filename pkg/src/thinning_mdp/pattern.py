"""Finite simple marked point patterns: the decision-process state.

A pattern stores planar locations and marks in parallel numpy arrays.
Point order is an implementation convenience; equality and the CSV
round-trip treat a pattern as a set of (x, y, mark) triples. Actions
are retained-index subsets, so mark ties never make two actions
ambiguous.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .geometry import Window, min_pairwise_distance

__all__ = ["MarkedPoint", "Pattern", "Action", "reward", "is_hardcore", "mark_sum"]


@dataclass(frozen=True)
class MarkedPoint:
    x: float
    y: float
    mark: float


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Pattern:
    """Immutable marked point pattern; set-like semantics."""

    locations: np.ndarray  # shape (n, 2)
    marks: np.ndarray  # shape (n,)

    def __post_init__(self) -> None:
        loc = _freeze(np.asarray(self.locations, dtype=float).reshape(-1, 2))
        marks = _freeze(np.asarray(self.marks, dtype=float).reshape(-1))
        if loc.shape[0] != marks.shape[0]:
            raise ValueError(
                f"{loc.shape[0]} locations but {marks.shape[0]} marks"
            )
        seen = set(map(tuple, loc))
        if len(seen) != loc.shape[0]:
            raise ValueError("pattern is not simple: duplicate locations")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "marks", marks)

    @classmethod
    def empty(cls) -> "Pattern":
        return cls(np.empty((0, 2)), np.empty(0))

    @classmethod
    def from_points(cls, points: Iterable[MarkedPoint]) -> "Pattern":
        pts = list(points)
        return cls(
            np.array([[p.x, p.y] for p in pts]).reshape(-1, 2),
            np.array([p.mark for p in pts]),
        )

    def __len__(self) -> int:
        return self.locations.shape[0]

    def __iter__(self) -> Iterator[MarkedPoint]:
        for (x, y), m in zip(self.locations, self.marks):
            yield MarkedPoint(float(x), float(y), float(m))

    def sorted_triples(self) -> tuple[tuple[float, float, float], ...]:
        """Canonical (x, y, mark) tuples, bit-exact, for set-like comparison."""
        return tuple(sorted((float(x), float(y), float(m))
                            for (x, y), m in zip(self.locations, self.marks)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.sorted_triples() == other.sorted_triples()

    def __hash__(self) -> int:
        return hash(self.sorted_triples())

    def validate(self, window: Window | None = None, k_max: float | None = None) -> None:
        """Raise ValueError if a point leaves the window or a mark leaves [0, K]."""
        if k_max is not None:
            bad = np.flatnonzero((self.marks < 0.0) | (self.marks > k_max))
            if bad.size:
                i = int(bad[0])
                raise ValueError(
                    f"mark {self.marks[i]} at point {i} outside [0, {k_max}]"
                )
        if window is not None:
            for i, (x, y) in enumerate(self.locations):
                if not window.contains(float(x), float(y)):
                    raise ValueError(f"point {i} at ({x}, {y}) outside window")

    # -- CSV round-trip: `x,y,mark` header, repr floats (exact) ------------

    def to_csv(self, target: str | Path | io.TextIOBase, header_comment: str | None = None) -> None:
        buf = io.StringIO()
        if header_comment is not None:
            buf.write(f"# {header_comment}\n")
        buf.write("x,y,mark\n")
        for (x, y), m in zip(self.locations, self.marks):
            buf.write(f"{float(x)!r},{float(y)!r},{float(m)!r}\n")
        if isinstance(target, (str, Path)):
            Path(target).write_text(buf.getvalue())
        else:
            target.write(buf.getvalue())

    @classmethod
    def from_csv(cls, source: str | Path | io.TextIOBase) -> "Pattern":
        if isinstance(source, (str, Path)):
            text = Path(source).read_text()
        else:
            text = source.read()
        locs: list[tuple[float, float]] = []
        marks: list[float] = []
        saw_header = False
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not saw_header:
                if [c.strip() for c in line.split(",")] != ["x", "y", "mark"]:
                    raise ValueError(f"row {lineno}: expected header 'x,y,mark', got {line!r}")
                saw_header = True
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(f"row {lineno}: expected 3 fields, got {len(parts)}")
            try:
                x, y, m = (float(p) for p in parts)
            except ValueError as exc:
                raise ValueError(f"row {lineno}: {exc}") from None
            locs.append((x, y))
            marks.append(m)
        if not saw_header:
            raise ValueError("row 1: missing header 'x,y,mark'")
        return cls(np.array(locs).reshape(-1, 2), np.array(marks))


@dataclass(frozen=True)
class Action:
    """Retained subset of a pattern, as sorted indices into the parent."""

    retained: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "retained", tuple(sorted(int(i) for i in self.retained)))

    @classmethod
    def keep_mask(cls, mask: np.ndarray) -> "Action":
        return cls(tuple(int(i) for i in np.flatnonzero(np.asarray(mask, dtype=bool))))

    def validate(self, x: Pattern) -> None:
        n = len(x)
        if len(set(self.retained)) != len(self.retained):
            raise ValueError(f"duplicate indices in action: {self.retained}")
        for i in self.retained:
            if not 0 <= i < n:
                raise ValueError(f"action index {i} out of range for pattern of size {n}")

    def apply(self, x: Pattern) -> Pattern:
        """The retained sub-pattern."""
        self.validate(x)
        idx = list(self.retained)
        return Pattern(x.locations[idx], x.marks[idx])

    def removed_mark_sum(self, x: Pattern) -> float:
        self.validate(x)
        keep = np.zeros(len(x), dtype=bool)
        keep[list(self.retained)] = True
        return float(np.sum(x.marks[~keep]))


def mark_sum(x: Pattern) -> float:
    return float(np.sum(x.marks))


def reward(x: Pattern, a: Action, reward_scale: float) -> float:
    """Reward of taking action a in state x: scale times removed mark sum."""
    return reward_scale * a.removed_mark_sum(x)


def is_hardcore(x: Pattern, hc_distance: float) -> bool:
    """True iff all pairwise distances exceed hc_distance (ties violate)."""
    if hc_distance <= 0.0:
        raise ValueError(f"hc_distance must be positive, got {hc_distance}")
    return min_pairwise_distance(x.locations) > hc_distance
