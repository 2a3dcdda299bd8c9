"""Payoffs of the ski-rental game.

Buying at ``x`` when the season lasts ``y`` costs ``x + B`` if ``x < y`` and
``y`` otherwise; the offline optimum pays ``min(y, B)``. The competitive
ratio of a play is their quotient, with ``CR(x, 0) := 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError
from .markers import INFINITE
from .strategies import AdversaryPolicy, SeasonLength, SkierPolicy, adversary_density, skier_density

__all__ = [
    "PurePlay",
    "cost",
    "opt_cost",
    "competitive_ratio",
    "competitive_ratios",
    "expected_cost_vs_y",
    "expected_cr_vs_adversary",
    "expected_cr",
    "dominance_holds",
]

QUAD_EPSABS = 1e-11
QUAD_EPSREL = 1e-11


def _check_play(x: float, B: float) -> None:
    if not x >= 0.0:
        raise DomainError(f"buy time must be nonnegative, got {x!r}")
    if not B > 0.0:
        raise DomainError(f"buy cost must be positive, got {B!r}")


def _check_season(y: SeasonLength) -> None:
    if y is not INFINITE and not y >= 0.0:
        raise DomainError(f"season length must be nonnegative or INFINITE, got {y!r}")


@dataclass(frozen=True)
class PurePlay:
    x: float
    y: SeasonLength

    def __post_init__(self):
        if not self.x >= 0.0:
            raise DomainError(f"buy time must be nonnegative, got {self.x!r}")
        _check_season(self.y)

    def competitive_ratio(self, B: float) -> float:
        return competitive_ratio(self.x, self.y, B)


def cost(x: float, y: SeasonLength, B: float) -> float:
    """Skier's cost; a tie ``x == y`` counts as having rented to the end."""
    _check_play(x, B)
    _check_season(y)
    if y is INFINITE or x < y:
        return x + B
    return float(y)


def opt_cost(y: SeasonLength, B: float) -> float:
    _check_season(y)
    if y is INFINITE:
        return float(B)
    return float(min(y, B))


def competitive_ratio(x: float, y: SeasonLength, B: float) -> float:
    _check_play(x, B)
    _check_season(y)
    if y is INFINITE:
        return (x + B) / B
    if y == 0.0:
        return 1.0
    return cost(x, y, B) / opt_cost(y, B)


def competitive_ratios(x, finite, y, B: float):
    """Vectorized ``competitive_ratio``.

    ``finite`` marks plays with a finite season; ``y`` is ignored elsewhere.
    """
    x = np.asarray(x, dtype=float)
    finite = np.asarray(finite, dtype=bool)
    y = np.where(finite, np.asarray(y, dtype=float), 1.0)
    bought = x < y
    safe_y = np.where(y > 0.0, y, 1.0)
    with np.errstate(over="ignore"):
        finite_ratio = np.where(bought & (y > 0.0), (x + B) / np.minimum(safe_y, B), 1.0)
    # y >= B never occurs for the adversaries here, but cost y vs OPT B is y/B.
    finite_ratio = np.where(~bought & (y > B), y / B, finite_ratio)
    return np.where(finite, finite_ratio, (x + B) / B)


def expected_cost_vs_y(policy: SkierPolicy, y: float) -> float:
    """Expected cost of ``policy`` against a season of length ``y`` in ``[0, B]``.

    Equals ``e^z / (e^z - 1) * min(y, cutoff)``.
    """
    if not 0.0 <= y <= policy.buy_cost:
        raise DomainError(f"y must lie in [0, {policy.buy_cost}], got {y!r}")
    return min(y, policy.cutoff) / -math.expm1(-policy.z)


def expected_cr_vs_adversary(x: float, policy: AdversaryPolicy) -> float:
    """Expected competitive ratio of buying at ``x`` against ``policy``.

    Seasons ending by ``x`` contribute ratio 1; seasons in ``(x, B]``
    contribute ``(x + B) / y``; the atom contributes ``(x + B) / B``.
    """
    B = policy.buy_cost
    _check_play(x, B)
    atom = policy.infinite_mass * (x + B) / B
    if policy.alpha == 0.0:
        return atom
    split = min(x, B)
    ended = policy.alpha * adversary_conditional_mass(policy, split)
    running = 0.0
    if split < B:
        # q(y) / y is smooth, so the integrand has no pole at 0.
        scale = policy.alpha / ((math.e - 2.0) * B * B)
        running, _ = integrate.quad(
            lambda y: (x + B) * scale * math.exp(1.0 - y / B),
            split,
            B,
            epsabs=QUAD_EPSABS,
            epsrel=QUAD_EPSREL,
        )
    return ended + running + atom


def adversary_conditional_mass(policy: AdversaryPolicy, upper: float) -> float:
    """Quadrature of the normalized finite density over ``[0, upper]``."""
    if upper <= 0.0:
        return 0.0
    value, _ = integrate.quad(
        lambda y: float(adversary_density(policy, y)) / policy.alpha,
        0.0,
        upper,
        epsabs=QUAD_EPSABS,
        epsrel=QUAD_EPSREL,
    )
    return value


def expected_cr(skier: SkierPolicy, adversary: AdversaryPolicy) -> float:
    """Expected competitive ratio of two mixed strategies, by nested quadrature."""
    if skier.buy_cost != adversary.buy_cost:
        raise DomainError("skier and adversary must share the buy cost")
    B = skier.buy_cost
    points = [B] if skier.cutoff > B else None
    value, _ = integrate.quad(
        lambda x: expected_cr_vs_adversary(x, adversary) * float(skier_density(skier, x)),
        0.0,
        skier.cutoff,
        points=points,
        epsabs=1e-10,
        epsrel=1e-10,
        limit=200,
    )
    return value


def dominance_holds(x_grid, y: float, y_prime: float, B: float) -> bool:
    """Check that season ``y_prime`` is at least as bad as ``y`` for the skier.

    True iff ``CR(x, y_prime) >= CR(x, y)`` at every grid point and strictly
    so at some grid point ``x >= y``.
    """
    if not B > 0.0:
        raise DomainError(f"buy cost must be positive, got {B!r}")
    if not y >= B:
        raise DomainError(f"dominance needs y >= B, got y={y!r}, B={B!r}")
    if not y_prime > y:
        raise DomainError(f"dominance needs y_prime > y, got {y_prime!r} <= {y!r}")
    weak = True
    strict = False
    for x in x_grid:
        before = competitive_ratio(x, y, B)
        after = competitive_ratio(x, y_prime, B)
        if after < before:
            weak = False
            break
        if x >= y and after > before:
            strict = True
    return weak and strict
