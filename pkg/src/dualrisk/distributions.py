"""Jump-size laws for the dual risk surplus process.

Only exponential laws and finite mixtures of exponentials are supported.
Every functional the solvers and the simulator need (Laplace transform,
survival function, mean-excess integral) is then available in closed form,
which keeps the value-function integrator quadrature-free in the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

WEIGHT_SUM_TOL = 1e-12

# Largest v < 1 admissible in -log1p(-v); guards against a mixture pick
# landing exactly on a component boundary after rounding.
_V_MAX = 1.0 - 2.0 ** -53


class JumpDistribution:
    """Positive jump law built from weighted exponential components.

    Subclasses expose ``weights`` and ``rates`` tuples of equal length;
    all functionals below are evaluated analytically from them.
    Instances are immutable and safe to share across threads.
    """

    weights: tuple[float, ...]
    rates: tuple[float, ...]

    def mean(self) -> float:
        """E[Y] = sum_i w_i / nu_i."""
        return sum(w / r for w, r in zip(self.weights, self.rates))

    def _check_transform_arg(self, a: float) -> None:
        if a <= -min(self.rates):
            raise ValueError(
                f"transform argument {a} outside domain (must exceed {-min(self.rates)})"
            )

    def laplace(self, a: float) -> float:
        """E[e^{-aY}] = sum_i w_i nu_i / (nu_i + a), for a > -min(rates)."""
        self._check_transform_arg(a)
        return sum(w * r / (r + a) for w, r in zip(self.weights, self.rates))

    def laplace_weighted_mean(self, a: float) -> float:
        """E[Y e^{-aY}] = sum_i w_i nu_i / (nu_i + a)^2.

        Equals -d/da of :meth:`laplace`; the solvers use it as the analytic
        derivative in Newton polishing.
        """
        self._check_transform_arg(a)
        return sum(w * r / (r + a) ** 2 for w, r in zip(self.weights, self.rates))

    def survival(self, u: float) -> float:
        """P(Y > u) = sum_i w_i e^{-nu_i u}, u >= 0."""
        if u < 0:
            raise ValueError(f"survival argument must be >= 0, got {u}")
        return sum(w * math.exp(-r * u) for w, r in zip(self.weights, self.rates))

    def mean_excess_integral(self, u: float) -> float:
        """int_u^inf (y - u) p(y) dy = sum_i w_i e^{-nu_i u} / nu_i, u >= 0."""
        if u < 0:
            raise ValueError(f"mean_excess_integral argument must be >= 0, got {u}")
        return sum(w * math.exp(-r * u) / r for w, r in zip(self.weights, self.rates))

    def pdf(self, y: float) -> float:
        """Density sum_i w_i nu_i e^{-nu_i y} for y >= 0, else 0."""
        if y < 0:
            return 0.0
        return sum(w * r * math.exp(-r * y) for w, r in zip(self.weights, self.rates))

    def pdf_array(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for w, r in zip(self.weights, self.rates):
            out += w * r * np.exp(-r * y)
        return np.where(y >= 0, out, 0.0)

    def cdf(self, u: float) -> float:
        return 1.0 - self.survival(u) if u > 0 else 0.0

    def sample_from_uniform(self, u: float) -> float:
        """Map one uniform draw in [0, 1) to a jump size.

        The uniform both picks the mixture component (via the cumulative
        weights) and, rescaled within the chosen stratum, drives the
        exponential inverse CDF.  One uniform per jump keeps simulated
        streams reproducible.
        """
        return float(self.sample_array(np.asarray([u]))[0])

    def sample_array(self, u: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`sample_from_uniform`."""
        u = np.asarray(u, dtype=float)
        if len(self.rates) == 1:
            v = np.minimum(u, _V_MAX)
            return -np.log1p(-v) / self.rates[0]
        cw = np.cumsum(self.weights)
        cw[-1] = 1.0
        idx = np.searchsorted(cw, u, side="right")
        idx = np.minimum(idx, len(self.rates) - 1)
        lo = np.concatenate(([0.0], cw[:-1]))[idx]
        v = (u - lo) / np.asarray(self.weights)[idx]
        v = np.clip(v, 0.0, _V_MAX)
        return -np.log1p(-v) / np.asarray(self.rates)[idx]

    def sample(self, rng: np.random.Generator) -> float:
        return self.sample_from_uniform(rng.random())

    def to_fragment(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Exponential(JumpDistribution):
    """Exponential jump law with rate ``nu`` (mean 1/nu)."""

    nu: float

    def __post_init__(self):
        if not (self.nu > 0 and math.isfinite(self.nu)):
            raise ValueError(f"rate nu must be positive and finite, got {self.nu}")

    @property
    def weights(self) -> tuple[float, ...]:
        return (1.0,)

    @property
    def rates(self) -> tuple[float, ...]:
        return (self.nu,)

    def to_fragment(self) -> dict:
        return {"type": "exponential", "nu": self.nu}


@dataclass(frozen=True)
class MixtureExponential(JumpDistribution):
    """Finite mixture of exponentials (hyperexponential law)."""

    weights: tuple[float, ...]
    rates: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if len(self.weights) != len(self.rates) or not self.weights:
            raise ValueError("weights and rates must be non-empty and of equal length")
        if any(w < 0 for w in self.weights):
            raise ValueError(f"weights must be nonnegative, got {self.weights}")
        if abs(sum(self.weights) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(
                f"weights must sum to 1 within {WEIGHT_SUM_TOL}, got sum {sum(self.weights)!r}"
            )
        if any(not (r > 0 and math.isfinite(r)) for r in self.rates):
            raise ValueError(f"rates must be positive and finite, got {self.rates}")

    def to_fragment(self) -> dict:
        return {"type": "mixture", "weights": list(self.weights), "rates": list(self.rates)}


def jump_distribution_from_fragment(fragment: dict) -> JumpDistribution:
    """Build a jump law from its JSON fragment.

    Accepted forms: ``{"type": "exponential", "nu": 1.0}`` and
    ``{"type": "mixture", "weights": [...], "rates": [...]}``.
    """
    if not isinstance(fragment, dict) or "type" not in fragment:
        raise ValueError("jump distribution fragment must be an object with a 'type' key")
    kind = fragment["type"]
    if kind == "exponential":
        extra = set(fragment) - {"type", "nu"}
        if extra:
            raise ValueError(f"unknown keys in exponential fragment: {sorted(extra)}")
        return Exponential(nu=float(fragment["nu"]))
    if kind == "mixture":
        extra = set(fragment) - {"type", "weights", "rates"}
        if extra:
            raise ValueError(f"unknown keys in mixture fragment: {sorted(extra)}")
        return MixtureExponential(
            weights=tuple(fragment["weights"]), rates=tuple(fragment["rates"])
        )
    raise ValueError(f"unknown jump distribution type {kind!r}")
