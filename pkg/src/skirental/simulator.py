"""Seeded Monte-Carlo play of skier policies against adversary policies.

Random streams
--------------
Trials are grouped into fixed blocks of ``BLOCK_SIZE`` consecutive indices.
Block ``b`` draws from ``PCG64(SeedSequence(seed, spawn_key=(b,)))``: first
``BLOCK_SIZE`` uniforms for the buy time, then ``BLOCK_SIZE`` for the
finite-or-infinite choice, then ``BLOCK_SIZE`` for the season length. The
draws of trial ``i`` therefore depend only on ``(seed, i)``, and results
are identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .game import competitive_ratios
from .markers import UNBOUNDED
from .solver import (
    NO_INFORMATION_CR,
    Prediction,
    check_probability,
    cr_interval,
    cross_expected_cr,
    optimal_cr,
    optimal_cutoff_z,
)
from .strategies import (
    AdversaryPolicy,
    SkierPolicy,
    sample_adversary_block,
    skier_inverse_cdf,
)

__all__ = [
    "BLOCK_SIZE",
    "TrialConfig",
    "SimulationSummary",
    "Table1Row",
    "block_generator",
    "run",
    "run_table1",
    "estimate_vs_fixed_x",
]

BLOCK_SIZE = 4096
Z_95 = 1.959963984540054

TABLE1_CORRECT_ALPHA = 0.15
TABLE1_WRONG_ALPHA = 0.60


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


@dataclass(frozen=True)
class TrialConfig:
    buy_cost: float
    skier_z: float
    adversary_alpha: float
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not (isinstance(self.trials, int) and self.trials >= 1):
            raise DomainError(f"trials must be a positive integer, got {self.trials!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise DomainError(f"seed must be a 64-bit nonnegative integer, got {self.seed!r}")
        check_probability(self.adversary_alpha, "adversary_alpha")
        # Validates buy_cost and skier_z.
        SkierPolicy(self.buy_cost, self.skier_z)


@dataclass(frozen=True)
class SimulationSummary:
    """Competitive-ratio statistics of a batch of trials.

    ``std_err`` and the confidence bounds are ``None`` for a single trial.
    """

    trials: int
    seed: int
    mean_cr: float
    std_err: float | None
    ci95_lo: float | None
    ci95_hi: float | None
    infinite_season_fraction: float


def _summarize(ratios: np.ndarray, infinite: np.ndarray, seed: int) -> SimulationSummary:
    n = ratios.size
    mean = math.fsum(ratios) / n
    if n < 2:
        std_err = lo = hi = None
    else:
        var = math.fsum((ratios - mean) ** 2) / (n - 1)
        std_err = math.sqrt(var / n)
        lo, hi = mean - Z_95 * std_err, mean + Z_95 * std_err
    return SimulationSummary(
        trials=n,
        seed=seed,
        mean_cr=mean,
        std_err=std_err,
        ci95_lo=lo,
        ci95_hi=hi,
        infinite_season_fraction=float(np.count_nonzero(infinite)) / n,
    )


def _play(trials: int, seed: int, adversary: AdversaryPolicy, buy_times, workers: int):
    """Ratios and infinite-season mask for all trials, block by block.

    ``buy_times`` maps a block of uniforms to buy times.
    """
    B = adversary.buy_cost
    n_blocks = -(-trials // BLOCK_SIZE)

    def one_block(b):
        rng = block_generator(seed, b)
        u_x = rng.random(BLOCK_SIZE)
        u_atom = rng.random(BLOCK_SIZE)
        u_len = rng.random(BLOCK_SIZE)
        n = min(BLOCK_SIZE, trials - b * BLOCK_SIZE)
        x = buy_times(u_x[:n])
        finite, y = sample_adversary_block(adversary, u_atom[:n], u_len[:n])
        return competitive_ratios(x, finite, y, B), ~finite

    if workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_block, range(n_blocks)))
    else:
        parts = [one_block(b) for b in range(n_blocks)]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _check_workers(workers: int) -> None:
    if not (isinstance(workers, int) and workers >= 1):
        raise DomainError(f"workers must be a positive integer, got {workers!r}")


def run(config: TrialConfig, workers: int = 1) -> SimulationSummary:
    """Play ``config.trials`` independent rounds and summarize the ratios."""
    _check_workers(workers)
    skier = SkierPolicy(config.buy_cost, config.skier_z)
    adversary = AdversaryPolicy(config.adversary_alpha, config.buy_cost)
    ratios, infinite = _play(
        config.trials, config.seed, adversary, lambda u: skier_inverse_cdf(skier, u), workers
    )
    return _summarize(ratios, infinite, config.seed)


def estimate_vs_fixed_x(
    x: float, adversary: AdversaryPolicy, trials: int = 10_000, seed: int = 0, workers: int = 1
) -> SimulationSummary:
    """Monte-Carlo estimate of the expected ratio of always buying at ``x``."""
    _check_workers(workers)
    if not x >= 0.0:
        raise DomainError(f"buy time must be nonnegative, got {x!r}")
    if not (isinstance(trials, int) and trials >= 1):
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    ratios, infinite = _play(trials, seed, adversary, lambda u: np.full(u.shape, float(x)), workers)
    return _summarize(ratios, infinite, seed)


@dataclass(frozen=True)
class Table1Row:
    """One arm of the B = 10 experiment.

    ``theoretical`` is the exact expected worst-case ratio of the arm's
    cutoff when the true probability is 0.15. ``bound`` is the guarantee
    the skier can state from its own prediction and error radius.
    """

    label: str
    summary: SimulationSummary
    theoretical: float
    bound: float


def run_table1(
    buy_cost: float = 10.0, trials: int = 10_000, seed: int = 0, workers: int = 1
) -> list[Table1Row]:
    """Correct prediction 0.15, no prediction, and wrong prediction 0.60.

    In every arm the adversary draws from its equilibrium strategy for the
    true probability 0.15. The three arms share ``seed``, so they see the
    same uniforms.
    """
    true_alpha = TABLE1_CORRECT_ALPHA
    wrong = TABLE1_WRONG_ALPHA
    arms = [
        ("correct_alpha_0.15", optimal_cutoff_z(true_alpha), optimal_cr(true_alpha),
         optimal_cr(true_alpha)),
        ("no_information", 1.0, NO_INFORMATION_CR, NO_INFORMATION_CR),
        ("wrong_alpha_0.60", optimal_cutoff_z(wrong), cross_expected_cr(wrong, true_alpha),
         _printed_bound(true_alpha, wrong)),
    ]
    rows = []
    for label, z, theoretical, bound in arms:
        config = TrialConfig(buy_cost, z, true_alpha, trials, seed)
        rows.append(Table1Row(label, run(config, workers=workers), theoretical, bound))
    return rows


def _printed_bound(true_alpha: float, used_alpha: float) -> float:
    # Interval around the true alpha with radius equal to the prediction error.
    hi = cr_interval(Prediction(true_alpha, abs(used_alpha - true_alpha)))[1]
    assert hi is not UNBOUNDED
    return hi
