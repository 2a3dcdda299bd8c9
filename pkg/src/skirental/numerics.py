"""Root finding, the lower real branch of Lambert W, and finite differences.

Nothing here knows about ski rental; the solver builds on these primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, DomainError, NumericError

__all__ = ["Bracket", "find_root", "lambert_w_neg1", "finite_difference"]

DEFAULT_TOL = 1e-12
MAX_BISECTIONS = 200

_NEG_INV_E = -1.0 / math.e
# A few ulps of slack around -1/e: exp(-1) and 1/e need not round identically.
_BRANCH_SLACK = 4.0 * math.ulp(1.0 / math.e)


def _evaluate(f: Callable[[float], float], x: float) -> float:
    value = float(f(x))
    if not math.isfinite(value):
        raise NumericError(f"function evaluated to {value} at x={x!r}")
    return value


@dataclass(frozen=True)
class Bracket:
    """An interval ``[lo, hi]`` that is expected to contain a sign change."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"bracket endpoints must be finite, got ({self.lo}, {self.hi})")
        if not self.lo < self.hi:
            raise DomainError(f"bracket requires lo < hi, got ({self.lo}, {self.hi})")

    @classmethod
    def around(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        """Build a bracket and check that ``f`` changes sign (or vanishes) on it."""
        bracket = cls(lo, hi)
        flo, fhi = _evaluate(f, lo), _evaluate(f, hi)
        if flo * fhi > 0:
            raise BracketError(
                f"no sign change on [{lo}, {hi}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}"
            )
        return bracket


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_BISECTIONS,
) -> float:
    """Locate a root of ``f`` inside ``bracket`` by bisection.

    An endpoint where ``f`` is exactly zero is returned as is. Iteration
    stops once the bracket is narrower than ``tol``, after ``max_iter``
    halvings, or when the midpoint can no longer be represented between the
    endpoints. The iterate never leaves the initial bracket.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    lo, hi = bracket.lo, bracket.hi
    flo = _evaluate(f, lo)
    if flo == 0.0:
        return lo
    fhi = _evaluate(f, hi)
    if fhi == 0.0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}")

    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = lo + 0.5 * (hi - lo)
        if mid <= lo or mid >= hi:
            break
        fmid = _evaluate(f, mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return lo + 0.5 * (hi - lo)


def lambert_w_neg1(x: float) -> float:
    """Lower real branch W_{-1} of the Lambert W function.

    Returns the solution ``w <= -1`` of ``w * exp(w) = x`` for
    ``-1/e <= x < 0``.

    Near the branch point the start value comes from the series in
    ``p = -sqrt(2 (1 + e x))`` and is polished with Halley steps on
    ``w e^w - x``. Elsewhere the start value is the log-log asymptote and
    Newton steps run on the logarithmic form ``w + log(-w) = log(-x)``,
    which stays accurate for subnormal ``x`` where ``e^w`` underflows.
    """
    x = float(x)
    if math.isnan(x) or x >= 0.0:
        raise DomainError(f"W_-1 is defined on [-1/e, 0), got {x!r}")
    if x <= _NEG_INV_E:
        if x >= _NEG_INV_E - _BRANCH_SLACK:
            return -1.0
        raise DomainError(f"W_-1 is defined on [-1/e, 0), got {x!r}")

    if x < -0.25:
        p = -math.sqrt(2.0 * (1.0 + math.e * x))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
        for _ in range(50):
            ew = math.exp(w)
            resid = w * ew - x
            wp1 = w + 1.0
            if resid == 0.0 or wp1 == 0.0:
                break
            step = resid / (ew * wp1 - (w + 2.0) * resid / (2.0 * wp1))
            w_next = min(w - step, -1.0)
            if abs(w_next - w) <= 4e-16 * abs(w):
                w = w_next
                break
            w = w_next
        return w

    log_mx = math.log(-x)
    l2 = math.log(-log_mx)
    w = log_mx - l2 + l2 / log_mx
    for _ in range(50):
        step = (w + math.log(-w) - log_mx) / (1.0 + 1.0 / w)
        w_next = w - step
        if w_next > -1.0:
            w_next = 0.5 * (w - 1.0)
        if abs(w_next - w) <= 4e-16 * abs(w):
            w = w_next
            break
        w = w_next
    return w


def finite_difference(f: Callable[[float], float], x: float, h: float = 1e-5) -> float:
    """Central difference ``(f(x + h) - f(x - h)) / (2 h)``."""
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    return (_evaluate(f, x + h) - _evaluate(f, x - h)) / (2.0 * h)
