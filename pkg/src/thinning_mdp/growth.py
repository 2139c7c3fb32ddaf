"""Mark growth functions.

The default is the Verhulst logistic flow sampled at integer times, for
which n-step growth has a closed form. Arbitrary user-supplied single-step
maps are supported as long as they are non-shrinking and stay within the
mark range [0, K]; that contract is checked on a dense grid at
construction time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

__all__ = ["GrowthFunction", "logistic_n"]

_CUSTOM_GRID_POINTS = 10_001


def _check_mark(m: float, k_max: float) -> None:
    if not 0.0 <= m <= k_max:
        raise ValueError(f"mark {m} outside [0, {k_max}]")


def logistic_n(m0: float, n: int, growth_rate: float, k_max: float) -> float:
    """Mark after n epochs of logistic growth from m0.

    Closed form K / (1 + (K/m0 - 1) e^{-lambda n}); 0 is a fixed point by
    convention and K is the carrying capacity.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    _check_mark(m0, k_max)
    if m0 == 0.0:
        return 0.0
    if n == 0:
        return m0
    return k_max / (1.0 + (k_max / m0 - 1.0) * math.exp(-growth_rate * n))


@dataclass(frozen=True)
class GrowthFunction:
    """Single-step mark growth map on [0, K], iterable to any horizon.

    Use :meth:`logistic` for the closed-form logistic flow or
    :meth:`custom` for an arbitrary bounded non-shrinking step map.
    """

    k_max: float
    growth_rate: Optional[float] = None
    step_map: Optional[Callable[[float], float]] = field(default=None, repr=False)

    @classmethod
    def logistic(cls, growth_rate: float, k_max: float) -> "GrowthFunction":
        if growth_rate <= 0.0:
            raise ValueError(f"growth_rate must be positive, got {growth_rate}")
        if k_max <= 0.0:
            raise ValueError(f"k_max must be positive, got {k_max}")
        return cls(k_max=k_max, growth_rate=growth_rate)

    @classmethod
    def custom(cls, step_map: Callable[[float], float], k_max: float) -> "GrowthFunction":
        """Wrap a user step map, validating m <= g(m) <= K on a dense grid."""
        if k_max <= 0.0:
            raise ValueError(f"k_max must be positive, got {k_max}")
        for i in range(_CUSTOM_GRID_POINTS):
            m = k_max * i / (_CUSTOM_GRID_POINTS - 1)
            gm = step_map(m)
            if not m <= gm <= k_max:
                raise ValueError(
                    f"step map violates m <= g(m) <= K at m={m}: g(m)={gm}"
                )
        return cls(k_max=k_max, step_map=step_map)

    @property
    def is_logistic(self) -> bool:
        return self.growth_rate is not None

    def step(self, m: float) -> float:
        """One epoch of growth."""
        _check_mark(m, self.k_max)
        if self.is_logistic:
            return logistic_n(m, 1, self.growth_rate, self.k_max)
        return self.step_map(m)

    def iterate(self, m: float, n: int) -> float:
        """n-fold composition of the step map; n = 0 is the identity."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        _check_mark(m, self.k_max)
        if self.is_logistic:
            # The logistic flow is a semigroup, so the closed form is the
            # exact n-fold composition.
            return logistic_n(m, n, self.growth_rate, self.k_max)
        for _ in range(n):
            m = self.step_map(m)
        return m
