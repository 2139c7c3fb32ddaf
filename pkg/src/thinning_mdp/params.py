"""Model constants, mark distributions and integration settings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, special, stats

from .geometry import Window

__all__ = ["MarkLaw", "ModelParams", "IntegrationSpec", "mark_law_expectation"]


@dataclass(frozen=True)
class MarkLaw:
    """Distribution of newborn marks on [0, K].

    kinds: ``scaled_beta`` (a Beta(a, b) draw multiplied by K), ``uniform``
    on [0, K], and ``point_mass`` at m0.
    """

    kind: str
    a: float = 0.0
    b: float = 0.0
    m0: float = 0.0

    @classmethod
    def scaled_beta(cls, a: float, b: float) -> "MarkLaw":
        if a <= 0.0 or b <= 0.0:
            raise ValueError(f"beta shape parameters must be positive, got ({a}, {b})")
        return cls(kind="scaled_beta", a=a, b=b)

    @classmethod
    def uniform(cls) -> "MarkLaw":
        return cls(kind="uniform")

    @classmethod
    def point_mass(cls, m0: float) -> "MarkLaw":
        if m0 < 0.0:
            raise ValueError(f"point mass must be nonnegative, got {m0}")
        return cls(kind="point_mass", m0=m0)

    def mean(self, k_max: float) -> float:
        if self.kind == "scaled_beta":
            return k_max * self.a / (self.a + self.b)
        if self.kind == "uniform":
            return 0.5 * k_max
        return self.m0

    def sample(self, k_max: float, gen: np.random.Generator, size: int) -> np.ndarray:
        """i.i.d. draws; always lands in [0, K]."""
        if self.kind == "scaled_beta":
            return k_max * gen.beta(self.a, self.b, size=size)
        if self.kind == "uniform":
            return gen.uniform(0.0, k_max, size=size)
        return np.full(size, self.m0)

    def spec_string(self) -> str:
        if self.kind == "scaled_beta":
            return f"beta:{self.a!r}:{self.b!r}"
        if self.kind == "uniform":
            return "uniform"
        return f"pointmass:{self.m0!r}"

    @classmethod
    def from_spec(cls, spec: str) -> "MarkLaw":
        parts = spec.strip().split(":")
        try:
            if parts[0] == "beta" and len(parts) == 3:
                return cls.scaled_beta(float(parts[1]), float(parts[2]))
            if parts[0] == "uniform" and len(parts) == 1:
                return cls.uniform()
            if parts[0] == "pointmass" and len(parts) == 2:
                return cls.point_mass(float(parts[1]))
        except ValueError as exc:
            raise ValueError(f"bad mark_law spec {spec!r}: {exc}") from None
        raise ValueError(
            f"bad mark_law spec {spec!r}; expected beta:<a>:<b>, uniform or pointmass:<m0>"
        )


def mark_law_expectation(
    law: MarkLaw, k_max: float, f: Callable[[float], float], rel_tol: float = 1e-9
) -> float:
    """E[f(M)] for M distributed by the mark law, via adaptive quadrature.

    Point masses are evaluated directly; the beta case integrates on the
    unit interval against the Beta(a, b) density.
    """
    if law.kind == "point_mass":
        if law.m0 > k_max:
            raise ValueError(f"point mass {law.m0} above mark cap {k_max}")
        return f(law.m0)
    if law.kind == "uniform":
        val, _ = integrate.quad(f, 0.0, k_max, epsrel=rel_tol, epsabs=0.0, limit=200)
        return val / k_max
    dist = stats.beta(law.a, law.b)
    val, _ = integrate.quad(
        lambda u: f(k_max * u) * dist.pdf(u), 0.0, 1.0,
        epsrel=rel_tol, epsabs=0.0, limit=200,
    )
    return val


def mark_law_nodes(law: MarkLaw, k_max: float, order: int = 128) -> tuple[np.ndarray, np.ndarray]:
    """Fixed quadrature nodes/weights (marks, weights) with sum(weights) = 1.

    Gauss-Legendre against the mark density; used where a deterministic
    shared node set is wanted (e.g. so upper/lower bound integrals use the
    same marks). A point mass degenerates to a single node.
    """
    if law.kind == "point_mass":
        return np.array([law.m0]), np.array([1.0])
    u, w = np.polynomial.legendre.leggauss(order)
    u = 0.5 * (u + 1.0)
    w = 0.5 * w
    if law.kind == "uniform":
        return k_max * u, w
    dens = np.exp(
        (law.a - 1.0) * np.log(u)
        + (law.b - 1.0) * np.log1p(-u)
        - special.betaln(law.a, law.b)
    )
    return k_max * u, w * dens


@dataclass(frozen=True)
class IntegrationSpec:
    """How mark-law (and window) integrals are evaluated.

    ``quadrature`` is deterministic; ``monte_carlo`` uses a seeded shared
    sample set so results are reproducible and sandwich inequalities hold
    sample-wise.
    """

    kind: str
    rel_tol: float = 1e-9
    samples: int = 1000
    seed: int = 0

    @classmethod
    def quadrature(cls, rel_tol: float = 1e-9) -> "IntegrationSpec":
        if rel_tol <= 0.0:
            raise ValueError(f"rel_tol must be positive, got {rel_tol}")
        return cls(kind="quadrature", rel_tol=rel_tol)

    @classmethod
    def monte_carlo(cls, samples: int = 1000, seed: int = 0) -> "IntegrationSpec":
        if samples < 1:
            raise ValueError(f"samples must be >= 1, got {samples}")
        return cls(kind="monte_carlo", samples=samples, seed=seed)

    def spec_string(self) -> str:
        if self.kind == "quadrature":
            return f"quad:{self.rel_tol!r}"
        return f"mc:{self.samples}:{self.seed}"

    @classmethod
    def from_spec(cls, spec: str) -> "IntegrationSpec":
        parts = spec.strip().split(":")
        try:
            if parts[0] == "quad" and len(parts) == 2:
                return cls.quadrature(float(parts[1]))
            if parts[0] == "mc" and len(parts) == 3:
                return cls.monte_carlo(int(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise ValueError(f"bad integration spec {spec!r}: {exc}") from None
        raise ValueError(
            f"bad integration spec {spec!r}; expected quad:<rel_tol> or mc:<samples>:<seed>"
        )


@dataclass(frozen=True)
class ModelParams:
    """All model constants.

    k_max is both the mark cap and, in the hard-core model, the exclusion
    distance. growth_rate is the logistic rate; alpha must be strictly
    below 1 or the total discounted reward is infinite.
    """

    k_max: float
    growth_rate: float
    p_d: float
    beta: float
    alpha: float
    reward_scale: float
    window: Window
    mark_law: MarkLaw

    def __post_init__(self) -> None:
        checks = [
            ("K", self.k_max > 0.0, "must be positive"),
            ("lambda", self.growth_rate > 0.0, "must be positive"),
            ("p_d", 0.0 < self.p_d < 1.0, "must be in (0, 1)"),
            ("beta", self.beta > 0.0, "must be positive"),
            ("alpha", 0.0 <= self.alpha < 1.0, "must be in [0, 1)"),
            ("R", self.reward_scale > 0.0, "must be positive"),
        ]
        for key, ok, msg in checks:
            if not ok:
                raise ValueError(f"{key} {msg}, got {getattr(self, _FIELD_OF[key])}")
        if self.mark_law.kind == "point_mass" and self.mark_law.m0 > self.k_max:
            raise ValueError(
                f"mark_law point mass {self.mark_law.m0} above K={self.k_max}"
            )

    @property
    def survival_factor(self) -> float:
        """alpha * (1 - p_d): one-epoch discount times survival probability."""
        return self.alpha * (1.0 - self.p_d)


_FIELD_OF = {
    "K": "k_max",
    "lambda": "growth_rate",
    "p_d": "p_d",
    "beta": "beta",
    "alpha": "alpha",
    "R": "reward_scale",
}
