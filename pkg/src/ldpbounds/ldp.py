"""Privacy budgets, local-DP certification, and mechanism constructors.

A channel is (epsilon, delta)-locally differentially private exactly when
its hockey-stick contraction coefficient at order e^epsilon is at most
delta; certification, the tightest budget in either coordinate, and the
extremal binary mechanism all follow from that equivalence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .divergence import Channel, _d_max_smooth, contraction_coefficient_hs
from .errors import DomainError

# Certification slack: covers float rounding in the pairwise scan, nothing more.
LDP_ATOL = 1e-12

_SAMPLER_RETRIES = 50


@dataclass(frozen=True)
class PrivacyBudget:
    """An (epsilon, delta) privacy budget; epsilon in nats."""

    epsilon: float
    delta: float

    def __post_init__(self) -> None:
        if not (self.epsilon >= 0.0 and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be finite and non-negative, got {self.epsilon!r}")
        if not 0.0 <= self.delta <= 1.0:
            raise DomainError(f"delta must lie in [0, 1], got {self.delta!r}")


def is_ldp(a: Channel, budget: PrivacyBudget) -> bool:
    """Whether ``a`` satisfies the (epsilon, delta) guarantee.

    The pairwise scan runs over ordered row pairs, so both orderings of the
    defining inequality are certified.
    """
    return tightest_delta(a, budget.epsilon) <= budget.delta + LDP_ATOL


def tightest_delta(a: Channel, epsilon: float) -> float:
    """The least delta for which ``a`` is (epsilon, delta)-LDP."""
    if not epsilon >= 0.0:
        raise DomainError(f"epsilon must be non-negative, got {epsilon!r}")
    try:
        gamma = math.exp(epsilon)
    except OverflowError:
        gamma = math.inf
    return contraction_coefficient_hs(a, gamma)


def tightest_epsilon(a: Channel, delta: float) -> float:
    """The least epsilon for which ``a`` is (epsilon, delta)-LDP.

    +inf when some row pair has mass mismatch that ``delta`` cannot absorb;
    clipped below at 0 since negative budgets are meaningless.
    """
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta!r}")
    rows = a.matrix
    best = 0.0
    for i in range(rows.shape[0]):
        for j in range(rows.shape[0]):
            if i == j:
                continue
            value = _d_max_smooth(rows[i], rows[j], delta)
            if value > best:
                best = value
    return best


def make_bsc(epsilon: float, delta: float) -> Channel:
    """Binary symmetric channel with flip probability (1 - delta) / (e^eps + 1).

    This is the extremal (epsilon, delta)-LDP mechanism: its tightest delta
    at the given epsilon is exactly delta.
    """
    budget = PrivacyBudget(epsilon, delta)
    p = (1.0 - budget.delta) / (math.exp(budget.epsilon) + 1.0)
    return Channel([[1.0 - p, p], [p, 1.0 - p]])


def make_randomized_response(epsilon: float, k: int) -> Channel:
    """k-ary randomized response: keep the symbol w.p. e^eps / (e^eps + k - 1)."""
    if not epsilon >= 0.0:
        raise DomainError(f"epsilon must be non-negative, got {epsilon!r}")
    if k < 2:
        raise DomainError(f"randomized response needs k >= 2, got {k!r}")
    denom = math.exp(epsilon) + k - 1.0
    matrix = np.full((k, k), 1.0 / denom)
    np.fill_diagonal(matrix, math.exp(epsilon) / denom)
    return Channel(matrix)


def sample_ldp_channel(budget: PrivacyBudget, in_size: int, out_size: int, seed: int) -> Channel:
    """Draw a random channel guaranteed to satisfy ``budget``, deterministically in ``seed``.

    Construction: a random base row is tilted row-wise by exponential factors
    bounded by e^epsilon (with per-row tilt rescaling so the normalizers
    match, which pins every cross-row likelihood ratio inside [e^-eps,
    e^eps]), then mixed with weight delta toward an independent random
    channel. The result is certified with ``is_ldp`` and redrawn on the
    (never observed) event of a numerical failure.
    """
    if not 2 <= in_size <= 8 or not 2 <= out_size <= 8:
        raise DomainError("in_size and out_size must lie in [2, 8]")
    rng = np.random.default_rng(seed)
    return _sample_ldp_channel(budget, in_size, out_size, rng)


def _sample_ldp_channel(
    budget: PrivacyBudget, in_size: int, out_size: int, rng: np.random.Generator
) -> Channel:
    for _ in range(_SAMPLER_RETRIES):
        base = rng.dirichlet(np.ones(out_size))
        tilts = rng.uniform(size=(in_size, out_size))
        core = _tilted_core(base, tilts, budget.epsilon)
        if budget.delta > 0.0:
            noise = rng.dirichlet(np.ones(out_size), size=in_size)
            matrix = (1.0 - budget.delta) * core + budget.delta * noise
        else:
            matrix = core
        channel = Channel(matrix)
        if is_ldp(channel, budget):
            return channel
    raise RuntimeError(
        "sample_ldp_channel exhausted its retry budget; this indicates a construction bug"
    )


def _tilted_core(base: np.ndarray, tilts: np.ndarray, epsilon: float) -> np.ndarray:
    """Rows base(y) * exp(eps * beta_x * tilt_x(y)) / Z with a shared normalizer Z.

    beta_x in [0, 1] is chosen per row so that every row's normalizer equals
    the smallest one; with a common Z, cross-row ratios reduce to
    exp(eps * (beta_x s_x - beta_x' s_x')) which stays within e^eps.
    """
    if epsilon == 0.0:
        return np.tile(base, (tilts.shape[0], 1))
    normalizers = (base * np.exp(epsilon * tilts)).sum(axis=1)
    target = float(normalizers.min())
    rows = np.empty_like(tilts)
    for x, (row_tilt, z) in enumerate(zip(tilts, normalizers)):
        if z <= target:
            beta = 1.0
        else:
            beta = optimize.brentq(
                lambda b: float((base * np.exp(epsilon * b * row_tilt)).sum()) - target,
                0.0,
                1.0,
                xtol=1e-15,
                rtol=8.9e-16,
            )
        rows[x] = base * np.exp(epsilon * beta * row_tilt) / target
    return rows
