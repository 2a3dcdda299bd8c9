"""Optimal cutoff, guaranteed competitive ratio, and sensitivity to prediction error.

The skier's optimal strategy for a prediction ``alpha`` is the truncated
exponential buy-time density with cutoff ratio ``z*(alpha)``, the root of
``(1 - alpha) (e^z - z) = 1``. Its worst-case expected competitive ratio is
the dual objective

    L(z; alpha) = e^z (z + alpha (1 - z)) / (e^z - 1)

evaluated at ``z*``. Both ``z*`` and ``L(z*)`` are computed twice, by
bisection and through the W_{-1} closed form, and the two routes must agree.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, NumericError
from .markers import UNBOUNDED, Unbounded
from .numerics import Bracket, find_root, lambert_w_neg1

__all__ = [
    "NO_INFORMATION_ALPHA",
    "NO_INFORMATION_CR",
    "Prediction",
    "GuaranteeReport",
    "cutoff_via_bisection",
    "cutoff_via_lambert",
    "optimal_cutoff_z",
    "dual_objective",
    "objective_at",
    "optimal_cr",
    "optimal_cr_via_lambert",
    "sensitivity_delta",
    "sensitivity_delta_via_lambert",
    "cr_interval",
    "cross_expected_cr",
    "guarantee_report",
]

Extended = Union[float, Unbounded]

NO_INFORMATION_ALPHA = (math.e - 2.0) / (math.e - 1.0)
NO_INFORMATION_CR = math.e / (math.e - 1.0)

ROOT_TOL = 1e-13
AGREEMENT_TOL = 1e-9


def check_probability(value: float, name: str = "alpha") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def _check_open_alpha(alpha: float) -> float:
    alpha = check_probability(alpha)
    if alpha == 1.0:
        raise DomainError("alpha = 1 has no finite cutoff")
    return alpha


def cutoff_via_bisection(alpha: float) -> float:
    """Root of ``e^z - z = 1 / (1 - alpha)`` by bisection."""
    alpha = _check_open_alpha(alpha)
    if alpha == 0.0:
        return 0.0
    excess = alpha / (1.0 - alpha)

    def f(z):
        return math.expm1(z) - z - excess

    # e^z - z exceeds 1/(1-alpha) at z = log(1/(1-alpha)) + 2 for every alpha.
    hi = -math.log1p(-alpha) + 2.0
    return find_root(f, Bracket(0.0, hi), tol=ROOT_TOL)


def _agreement_tol(alpha: float) -> float:
    # Near the branch point 1 + e*x cancels; the Lambert route loses ~eps/sqrt(alpha).
    return AGREEMENT_TOL + 1e-15 / math.sqrt(alpha)


def _lambert_argument(alpha: float) -> float | None:
    # -exp(1/(alpha-1)) underflows for alpha very close to 1.
    x = -math.exp(1.0 / (alpha - 1.0))
    if -x < sys.float_info.min:
        return None
    return x


def cutoff_via_lambert(alpha: float) -> float:
    """``z* = 1/(alpha-1) - W_{-1}(-exp(1/(alpha-1)))``."""
    alpha = _check_open_alpha(alpha)
    x = _lambert_argument(alpha)
    if x is None:
        raise DomainError(f"W_-1 argument underflows for alpha={alpha!r}")
    return 1.0 / (alpha - 1.0) - lambert_w_neg1(x)


def optimal_cutoff_z(alpha: float) -> Extended:
    """Optimal cutoff ratio ``z*(alpha)``; the buy time is drawn from ``[0, B z*)``.

    ``alpha = 1`` means the season is surely short, so the skier never buys
    and ``UNBOUNDED`` is returned. The bisection result is cross-checked
    against the Lambert form wherever its argument is representable.
    """
    alpha = check_probability(alpha)
    if alpha == 1.0:
        return UNBOUNDED
    if alpha == 0.0:
        return 0.0
    z = cutoff_via_bisection(alpha)
    if _lambert_argument(alpha) is not None:
        z_lambert = cutoff_via_lambert(alpha)
        if abs(z - z_lambert) > _agreement_tol(alpha) * max(1.0, z):
            raise NumericError(
                f"cutoff routes disagree at alpha={alpha!r}: {z!r} vs {z_lambert!r}"
            )
    return z


def dual_objective(z: float, alpha: float) -> float:
    """Expected worst-case competitive ratio of the cutoff-``z`` strategy."""
    z = float(z)
    alpha = check_probability(alpha)
    if not z > 0.0 or not math.isfinite(z):
        raise DomainError(f"dual objective needs a finite z > 0, got {z!r}")
    # e^z / (e^z - 1) written so that large z does not overflow.
    return (z + alpha * (1.0 - z)) / -math.expm1(-z)


def objective_at(z: Extended, alpha: float) -> Extended:
    """``L(z; alpha)`` extended to the limits ``z = 0`` and ``z = UNBOUNDED``."""
    alpha = check_probability(alpha)
    if z is UNBOUNDED:
        return 1.0 if alpha == 1.0 else UNBOUNDED
    if z == 0.0:
        return 1.0 if alpha == 0.0 else UNBOUNDED
    return dual_objective(z, alpha)


def optimal_cr_via_lambert(alpha: float) -> float:
    """``(alpha - 1) W_{-1}(-exp(1/(alpha-1)))``."""
    alpha = _check_open_alpha(alpha)
    x = _lambert_argument(alpha)
    if x is None:
        raise DomainError(f"W_-1 argument underflows for alpha={alpha!r}")
    return (alpha - 1.0) * lambert_w_neg1(x)


def optimal_cr(alpha: float) -> float:
    """Optimal worst-case expected competitive ratio ``J(alpha)``.

    Both endpoints give 1: at ``alpha = 0`` the skier buys at once, and
    ``alpha = 1`` is taken as the limit of never buying.
    """
    alpha = check_probability(alpha)
    if alpha in (0.0, 1.0):
        return 1.0
    value = dual_objective(optimal_cutoff_z(alpha), alpha)
    if _lambert_argument(alpha) is not None:
        closed = optimal_cr_via_lambert(alpha)
        if abs(value - closed) > _agreement_tol(alpha):
            raise NumericError(
                f"optimal ratio routes disagree at alpha={alpha!r}: {value!r} vs {closed!r}"
            )
    return value


def _slope_in_alpha(z: float) -> float:
    # L is affine in alpha; this is its slope at fixed z.
    return (1.0 - z) / -math.expm1(-z)


def sensitivity_delta(alpha_hat: float) -> Extended:
    """Worst-case growth of the expected ratio per unit of prediction error.

    ``UNBOUNDED`` at ``alpha_hat`` in ``{0, 1}``.
    """
    alpha_hat = check_probability(alpha_hat, "alpha_hat")
    if alpha_hat in (0.0, 1.0):
        return UNBOUNDED
    return abs(_slope_in_alpha(optimal_cutoff_z(alpha_hat)))


def sensitivity_delta_via_lambert(alpha_hat: float) -> float:
    """The same sensitivity written directly in terms of W_{-1}."""
    alpha_hat = _check_open_alpha(alpha_hat)
    if alpha_hat == 0.0:
        raise DomainError("sensitivity diverges at alpha_hat = 0")
    x = _lambert_argument(alpha_hat)
    if x is None:
        raise DomainError(f"W_-1 argument underflows for alpha_hat={alpha_hat!r}")
    w = lambert_w_neg1(x)
    return abs(1.0 / (1.0 - alpha_hat) + w + 1.0 / ((alpha_hat - 1.0) * (1.0 + w)))


@dataclass(frozen=True)
class Prediction:
    """A reported probability ``alpha_hat`` that the season lasts at most B days.

    ``eps`` is the radius within which the true probability is known to lie.
    """

    alpha_hat: float
    eps: float = 0.0

    def __post_init__(self):
        check_probability(self.alpha_hat, "alpha_hat")
        if not self.eps >= 0.0:
            raise DomainError(f"eps must be nonnegative, got {self.eps!r}")
        if self.eps > self.max_eps + 1e-15:
            raise DomainError(
                f"eps={self.eps!r} exceeds max(alpha_hat, 1 - alpha_hat)={self.max_eps!r}"
            )

    @property
    def max_eps(self) -> float:
        return max(self.alpha_hat, 1.0 - self.alpha_hat)

    @classmethod
    def worst_case(cls, alpha_hat: float) -> "Prediction":
        """The prediction with the largest admissible error radius."""
        alpha_hat = check_probability(alpha_hat, "alpha_hat")
        return cls(alpha_hat, max(alpha_hat, 1.0 - alpha_hat))


def _ordered(a: Extended, b: Extended) -> tuple[Extended, Extended]:
    if a is UNBOUNDED:
        return b, a
    if b is UNBOUNDED:
        return a, b
    return (a, b) if a <= b else (b, a)


def cr_interval(pred: Prediction) -> tuple[Extended, Extended]:
    """Range of the expected ratio when the true alpha is within ``eps`` of the prediction.

    The cutoff is tuned to ``alpha_hat``; ``L`` is then evaluated at
    ``alpha_hat - eps`` and ``alpha_hat + eps`` clipped to ``[0, 1]``. The
    pair is returned in increasing order, so for predictions above the
    no-information point the lower endpoint comes from ``alpha_hat + eps``.
    """
    z = optimal_cutoff_z(pred.alpha_hat)
    below = objective_at(z, max(0.0, pred.alpha_hat - pred.eps))
    above = objective_at(z, min(1.0, pred.alpha_hat + pred.eps))
    return _ordered(below, above)


def cross_expected_cr(alpha_used: float, alpha_true: float) -> Extended:
    """Exact expected worst-case ratio when the cutoff is tuned to ``alpha_used``
    but the adversary is constrained by ``alpha_true``."""
    alpha_true = check_probability(alpha_true, "alpha_true")
    return objective_at(optimal_cutoff_z(check_probability(alpha_used, "alpha_used")), alpha_true)


@dataclass(frozen=True)
class GuaranteeReport:
    alpha_hat: float
    eps: float
    buy_cost: float
    z_star: Extended
    cutoff_days: Extended
    cr_optimal: float
    cr_best: Extended
    cr_worst: Extended
    delta: Extended


def guarantee_report(pred: Prediction, buy_cost: float = 10.0) -> GuaranteeReport:
    """Cutoff, optimal ratio, error interval and sensitivity for one prediction."""
    buy_cost = float(buy_cost)
    if not (buy_cost > 0.0 and math.isfinite(buy_cost)):
        raise DomainError(f"buy_cost must be positive, got {buy_cost!r}")
    z = optimal_cutoff_z(pred.alpha_hat)
    best, worst = cr_interval(pred)
    return GuaranteeReport(
        alpha_hat=pred.alpha_hat,
        eps=pred.eps,
        buy_cost=buy_cost,
        z_star=z,
        cutoff_days=UNBOUNDED if z is UNBOUNDED else buy_cost * z,
        cr_optimal=optimal_cr(pred.alpha_hat),
        cr_best=best,
        cr_worst=worst,
        delta=sensitivity_delta(pred.alpha_hat),
    )
