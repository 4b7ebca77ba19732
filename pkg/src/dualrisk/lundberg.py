"""Exponent equations of the dual risk model and their root solvers.

The surplus drifts down at the cost rate and jumps up at Poisson epochs.
Under positive net drift the ruin probability from surplus x is
e^{-alpha x}, where alpha is the unique positive root of

    rho * a + lambda * (E[e^{-aY}] - 1) = 0.

This module solves that equation, its discounted variant (theta-shifted),
the yield-tilted variant used by threshold-yield strategies, and evaluates
the closed-form defective mean ruin time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import JumpDistribution

BRACKET_LO = 1e-12
BRACKET_CAP = 2.0 ** 60
BISECT_WIDTH = 1e-10
NEWTON_STEPS = 5
RESIDUAL_RTOL = 1e-12


class NoPositiveRoot(ValueError):
    """The exponent equation has no positive root for these parameters."""


@dataclass(frozen=True)
class ModelParams:
    """Full parameterization of the controlled surplus process.

    rho    -- deterministic cost rate (currency/time), >= 0
    lam    -- jump intensity (1/time), > 0
    delta  -- discount rate (1/time), >= 0
    jumps  -- jump-size law
    x0     -- initial surplus (currency), > 0
    """

    rho: float
    lam: float
    delta: float
    jumps: JumpDistribution
    x0: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be positive and finite, got {self.lam}")
        if not (self.rho >= 0 and math.isfinite(self.rho)):
            raise ValueError(f"rho must be >= 0 and finite, got {self.rho}")
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise ValueError(f"delta must be >= 0 and finite, got {self.delta}")
        if not (self.x0 > 0 and math.isfinite(self.x0)):
            raise ValueError(f"x0 must be positive and finite, got {self.x0}")

    @property
    def net_drift(self) -> float:
        """Mean growth rate of the uncontrolled surplus: lambda E[Y] - rho."""
        return self.lam * self.jumps.mean() - self.rho

    def require_profitable(self) -> None:
        if not self.net_drift > 0:
            raise NoPositiveRoot(
                f"model not profitable: lambda*E[Y]={self.lam * self.jumps.mean()!r} "
                f"must exceed rho={self.rho!r}"
            )


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    iterations: int


def _exponent_root(effective_rho: float, lam: float, jumps: JumpDistribution,
                   theta: float) -> RootResult:
    """Positive root of f(a) = effective_rho*a + lam*(laplace(a) - 1) - theta.

    Bracketed bisection followed by a short Newton polish with the analytic
    derivative effective_rho - lam*laplace_weighted_mean(a).  f is convex
    with f(0) = -theta, so once a sign change is bracketed the root is
    unique and the doubling search always terminates for solvable inputs.
    """

    def f(a: float) -> float:
        return effective_rho * a + lam * (jumps.laplace(a) - 1.0) - theta

    def fprime(a: float) -> float:
        return effective_rho - lam * jumps.laplace_weighted_mean(a)

    iterations = 0
    lo = BRACKET_LO
    if f(lo) >= 0:
        raise NoPositiveRoot(
            "exponent equation has no positive root (nonnegative at the lower bracket)"
        )
    hi = 1.0
    while f(hi) <= 0:
        hi *= 2.0
        iterations += 1
        if hi > BRACKET_CAP:
            raise NoPositiveRoot("no sign change found up to bracket cap 2^60")

    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid

    root = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        step = f(root) / fprime(root)
        candidate = root - step
        if not (lo <= candidate <= hi):
            candidate = min(max(candidate, lo), hi)
        root = candidate
        iterations += 1

    residual = f(root)
    scale = max(1.0, effective_rho * root + lam + theta)
    if abs(residual) > RESIDUAL_RTOL * scale:
        raise RuntimeError(
            f"root polish failed: residual {residual!r} exceeds tolerance at root {root!r}"
        )
    return RootResult(value=root, residual=residual, iterations=iterations)


def solve_alpha(m: ModelParams) -> RootResult:
    """Ruin exponent: positive root of rho*a + lambda*(E[e^{-aY}] - 1) = 0.

    Requires rho > 0 and positive net drift; otherwise no positive root
    exists (ruin is certain and the equation only vanishes at 0).
    """
    if m.rho <= 0:
        raise NoPositiveRoot("rho must be positive for a ruin exponent to exist")
    m.require_profitable()
    return _exponent_root(m.rho, m.lam, m.jumps, 0.0)


def solve_beta(m: ModelParams, theta: float) -> RootResult:
    """Discounted exponent: positive root of rho*b + lambda*(E[e^{-bY}] - 1) = theta.

    E_x[e^{-theta tau} 1{tau < inf}] = e^{-beta x} for the uncontrolled
    process.  theta = 0 reduces to :func:`solve_alpha`.
    """
    if theta < 0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    if theta == 0:
        return solve_alpha(m)
    if m.rho <= 0:
        # f(b) = lam*(laplace(b)-1) - theta < 0 for every b > 0
        raise NoPositiveRoot("rho = 0 with theta > 0 admits no positive root")
    return _exponent_root(m.rho, m.lam, m.jumps, theta)


def solve_alpha_tilted(m: ModelParams, eps: float) -> RootResult:
    """Ruin exponent of the yield-tilted dynamics.

    When a constant dividend yield (1-eps)*(lambda E[Y] - rho) is paid on
    top of the cost rate, the effective drain becomes
    rho_eff = rho + (1-eps)*(lambda E[Y] - rho) and the ruin probability
    from level x is e^{-alpha_eps x} with alpha_eps solving
    rho_eff*a + lambda*(E[e^{-aY}] - 1) = 0.  eps = 0 removes the whole
    net drift and leaves no positive root.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    m.require_profitable()
    if eps == 0:
        raise NoPositiveRoot("eps = 0 consumes the whole net drift; no positive root")
    rho_eff = m.rho + (1.0 - eps) * m.net_drift
    return _exponent_root(rho_eff, m.lam, m.jumps, 0.0)


def defective_mean_ruin_time(m: ModelParams, x: float) -> tuple[float, float]:
    """(E_x[tau 1{tau < inf}], E_x[tau | tau < inf]) for the uncontrolled process.

    defective mean   = x e^{-alpha x} / (rho - lambda E[Y e^{-alpha Y}])
    conditional mean = x           / (rho - lambda E[Y e^{-alpha Y}])

    The denominator is positive whenever alpha solves the ruin-exponent
    equation, since it equals lambda * E[1 - e^{-aY} - aY e^{-aY}] / a
    there and the integrand is positive for positive jumps.
    """
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    alpha = solve_alpha(m).value
    denom = m.rho - m.lam * m.jumps.laplace_weighted_mean(alpha)
    if denom <= 0:
        raise RuntimeError(
            f"mean ruin time denominator {denom!r} not positive; violated invariant"
        )
    conditional = x / denom
    return conditional * math.exp(-alpha * x), conditional
