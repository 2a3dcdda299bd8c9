"""Mixed strategies of the skier and the adversary.

The skier buys at a time drawn from the truncated exponential density

    p(x) = e^{x/B} / (B (e^z - 1))   on [0, B z),

and the adversary places mass ``alpha`` on ``[0, B]`` with density
proportional to ``y e^{-y/B}`` and the remaining ``1 - alpha`` on a season
that never ends.

Densities, CDFs and inverse CDFs accept scalars or numpy arrays. Sampling
is a deterministic function of uniform variates so that seeded runs are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .markers import INFINITE, UNBOUNDED, InfiniteSeason
from .solver import check_probability, optimal_cutoff_z

__all__ = [
    "SkierPolicy",
    "AdversaryPolicy",
    "SeasonLength",
    "skier_density",
    "skier_cdf",
    "skier_inverse_cdf",
    "sample_skier",
    "adversary_density",
    "adversary_conditional_cdf",
    "adversary_conditional_inverse_cdf",
    "sample_adversary",
]

SeasonLength = float | InfiniteSeason

# Mass of t e^{-t} on [0, 1] is 1 - 2/e = (e - 2)/e.
_FINITE_MASS = (math.e - 2.0) / math.e
INVERSION_TOL = 1e-10


def _check_buy_cost(buy_cost: float) -> float:
    buy_cost = float(buy_cost)
    if not (buy_cost > 0.0 and math.isfinite(buy_cost)):
        raise DomainError(f"buy_cost must be positive and finite, got {buy_cost!r}")
    return buy_cost


@dataclass(frozen=True)
class SkierPolicy:
    """Truncated exponential buy-time distribution with cutoff ``buy_cost * z``."""

    buy_cost: float
    z: float

    def __post_init__(self):
        _check_buy_cost(self.buy_cost)
        if not (self.z > 0.0 and math.isfinite(self.z)):
            raise DomainError(f"cutoff ratio z must be positive and finite, got {self.z!r}")

    @property
    def cutoff(self) -> float:
        return self.buy_cost * self.z

    @classmethod
    def optimal(cls, alpha: float, buy_cost: float = 10.0) -> "SkierPolicy":
        z = optimal_cutoff_z(alpha)
        if z is UNBOUNDED:
            raise DomainError("alpha = 1: the optimal skier never buys")
        if z == 0.0:
            raise DomainError("alpha = 0: the optimal skier buys at once (degenerate cutoff)")
        return cls(buy_cost, z)

    @classmethod
    def no_information(cls, buy_cost: float = 10.0) -> "SkierPolicy":
        """The classic strategy with cutoff exactly ``buy_cost``."""
        return cls(buy_cost, 1.0)


@dataclass(frozen=True)
class AdversaryPolicy:
    """Season-length distribution with mass ``alpha`` on ``[0, buy_cost]``."""

    alpha: float
    buy_cost: float = 10.0

    def __post_init__(self):
        check_probability(self.alpha)
        _check_buy_cost(self.buy_cost)

    @property
    def infinite_mass(self) -> float:
        return 1.0 - self.alpha


def skier_density(policy: SkierPolicy, x):
    x = np.asarray(x, dtype=float)
    B = policy.buy_cost
    inside = (x >= 0.0) & (x < policy.cutoff)
    value = np.where(inside, np.exp(np.where(inside, x, 0.0) / B) / (B * math.expm1(policy.z)), 0.0)
    return value[()] if value.ndim == 0 else value


def skier_cdf(policy: SkierPolicy, x):
    x = np.clip(np.asarray(x, dtype=float), 0.0, policy.cutoff)
    value = np.expm1(x / policy.buy_cost) / math.expm1(policy.z)
    return value[()] if value.ndim == 0 else value


def skier_inverse_cdf(policy: SkierPolicy, u):
    """``B log(1 + u (e^z - 1))``, the buy time at CDF level ``u``."""
    u = np.asarray(u, dtype=float)
    if np.any(~((u >= 0.0) & (u <= 1.0))):
        raise DomainError("u must lie in [0, 1]")
    value = policy.buy_cost * np.log1p(u * math.expm1(policy.z))
    value = np.minimum(value, policy.cutoff)
    return value[()] if value.ndim == 0 else value


def sample_skier(policy: SkierPolicy, rng: np.random.Generator, size=None):
    """Draw buy times by inverting the CDF at ``rng.random()``."""
    return skier_inverse_cdf(policy, rng.random(size))


def adversary_density(policy: AdversaryPolicy, y):
    y = np.asarray(y, dtype=float)
    B = policy.buy_cost
    if np.any(~((y >= 0.0) & (y <= B))):
        raise DomainError(f"the finite part of the adversary lives on [0, {B}]")
    value = policy.alpha * y * np.exp(1.0 - y / B) / ((math.e - 2.0) * B * B)
    return value[()] if value.ndim == 0 else value


def _conditional_cdf_unit(t):
    # CDF of t e^{-t} on [0, 1], normalized.
    return -(np.expm1(-t) + t * np.exp(-t)) / _FINITE_MASS


def adversary_conditional_cdf(policy: AdversaryPolicy, y):
    """CDF of the finite part conditioned on ``y <= B``.

    ``G(y) = (1 - (1 + y/B) e^{-y/B}) e / (e - 2)``.
    """
    y = np.asarray(y, dtype=float)
    B = policy.buy_cost
    if np.any(~((y >= 0.0) & (y <= B))):
        raise DomainError(f"the finite part of the adversary lives on [0, {B}]")
    value = np.clip(_conditional_cdf_unit(y / B), 0.0, 1.0)
    return value[()] if value.ndim == 0 else value


def adversary_conditional_inverse_cdf(policy: AdversaryPolicy, u):
    """Invert ``G`` by vectorized bisection to ``INVERSION_TOL`` in y."""
    u = np.asarray(u, dtype=float)
    if np.any(~((u >= 0.0) & (u <= 1.0))):
        raise DomainError("u must lie in [0, 1]")
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    # Bisection on t = y/B; halving width 1 below INVERSION_TOL / B.
    n_iter = max(1, math.ceil(math.log2(policy.buy_cost / INVERSION_TOL)) + 1)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        below = _conditional_cdf_unit(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    value = policy.buy_cost * 0.5 * (lo + hi)
    return value[()] if value.ndim == 0 else value


def sample_adversary(policy: AdversaryPolicy, rng: np.random.Generator) -> SeasonLength:
    """One season length: ``INFINITE`` with probability ``1 - alpha``."""
    u_atom, u_len = rng.random(2)
    if u_atom >= policy.alpha:
        return INFINITE
    return float(adversary_conditional_inverse_cdf(policy, u_len))


def sample_adversary_block(policy: AdversaryPolicy, u_atom, u_len):
    """Vectorized counterpart of ``sample_adversary`` on given uniforms.

    Returns ``(finite, y)``: a boolean mask of finite seasons and their
    lengths. Entries of ``y`` where ``finite`` is false carry no meaning.
    """
    u_atom = np.asarray(u_atom, dtype=float)
    finite = u_atom < policy.alpha
    y = adversary_conditional_inverse_cdf(policy, np.asarray(u_len, dtype=float))
    return finite, np.where(finite, y, 0.0)
