"""Randomized verification suites: brute-force checks of every bound at desk scale.

Each suite draws its trials from per-trial random streams derived from
(seed, trial index), so reports are reproducible byte for byte and trials
could run in any order. The slack convention is bound minus exact value;
equality-style suites report tolerance minus absolute gap instead, so a
correct implementation never produces slack below -1e-9 in any suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .divergence import (
    CHI2_GENERATOR,
    KL_GENERATOR,
    Channel,
    Distribution,
    _e_gamma,
    d_max,
    d_max_smooth,
    e_gamma,
    f_divergence,
    f_divergence_integral,
    kl,
    pushforward,
)
from .errors import DomainError, ValidationError
from .fdiv_bounds import FdivBoundInputs, f_div_contraction_bound, kl_contraction_bound, lam_from_output
from .ldp import PrivacyBudget, _sample_ldp_channel, make_bsc
from .sdpi import (
    CompositionParams,
    SdpiParams,
    achievability_value,
    composition_bound,
    dmax_from_egamma,
    dmax_from_smooth,
    e_gamma_vanishes,
    linear_sdpi_coeff,
    nonlinear_sdpi_bound,
)

SLACK_TOL = 1e-9
EQUALITY_TOL_ACHIEVABILITY = 1e-10
EQUALITY_TOL_INTEGRAL = 1e-6
EQUALITY_TOL_COMPOSITION = 1e-12

_FULL_SUPPORT_FLOOR = 1e-3
_REJECTION_LIMIT = 10_000


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one suite run; deterministic given (suite, seed, params)."""

    suite: str
    trials: int
    violations: int
    max_violation: float  # most negative slack observed across all checks
    seed: int
    params: Dict[str, float]


def sample_distribution_pair(
    alphabet_size: int, seed: int, full_support: bool = False
) -> Tuple[Distribution, Distribution]:
    """Two independent draws from the uniform (Dirichlet) law on the simplex.

    With ``full_support`` every entry is rejected below 1e-3, which keeps
    likelihood ratios bounded for quadrature and max-divergence checks.
    """
    if not 2 <= alphabet_size <= 8:
        raise DomainError(f"alphabet_size must lie in [2, 8], got {alphabet_size!r}")
    rng = np.random.default_rng(seed)
    return (
        _sample_distribution(rng, alphabet_size, full_support),
        _sample_distribution(rng, alphabet_size, full_support),
    )


def _sample_distribution(rng: np.random.Generator, size: int, full_support: bool) -> Distribution:
    for _ in range(_REJECTION_LIMIT):
        v = rng.dirichlet(np.ones(size))
        if not full_support or v.min() >= _FULL_SUPPORT_FLOOR:
            return Distribution(v)
    raise RuntimeError("rejection sampling failed to produce a full-support distribution")


def _sample_pair(rng: np.random.Generator, size: int, full_support: bool):
    return (
        _sample_distribution(rng, size, full_support),
        _sample_distribution(rng, size, full_support),
    )


def empirical_contraction(
    a: Channel, p: Distribution, q: Distribution, gamma: float
) -> Tuple[float, float]:
    """(input divergence, output divergence) for one channel application."""
    t_in = e_gamma(p, q, gamma)
    t_out = e_gamma(pushforward(a, p), pushforward(a, q), gamma)
    return t_in, t_out


def iterate_composition_oracle(t: float, a: float, b: float, t_star: float, delta: float, n: int) -> float:
    """Literal iteration of the one-step envelope, switching branches at t_star."""
    x = t
    for _ in range(n):
        if x > t_star:
            x = a * x - b
        else:
            x = delta * x
    return x


def _default_params(params: Optional[Dict]) -> Dict:
    merged = {
        "eps": math.log(6.0),
        "delta": 0.01,
        "gamma_prime": 2.5,
        "max_alphabet": 6,
        "pairs_per_trial": 10,
        "chain_length": 3,
    }
    if params:
        merged.update(params)
    return merged


def _trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _rand_size(rng: np.random.Generator, max_alphabet: int) -> int:
    return int(rng.integers(2, max_alphabet + 1))


# ---------------------------------------------------------------------------
# Suite bodies. Each returns the list of slack values for one trial.
# ---------------------------------------------------------------------------


def _suite_dpi_and_sdpi(rng: np.random.Generator, p: Dict) -> List[float]:
    budget = PrivacyBudget(p["eps"], p["delta"])
    params = SdpiParams(budget, p["gamma_prime"])
    gp = params.gamma_prime
    ee = math.exp(budget.epsilon)
    t_star = (gp - 1.0) / (ee - 1.0) if ee > 1.0 else math.inf
    in_size = _rand_size(rng, p["max_alphabet"])
    out_size = _rand_size(rng, p["max_alphabet"])
    channel = _sample_ldp_channel(budget, in_size, out_size, rng)
    coeff = linear_sdpi_coeff(params)
    slacks: List[float] = []
    for _ in range(int(p["pairs_per_trial"])):
        pd, qd = _sample_pair(rng, in_size, full_support=False)
        t_in, t_out = empirical_contraction(channel, pd, qd, gp)
        envelope = nonlinear_sdpi_bound(params, t_in)
        slacks.append(envelope - t_out)
        slacks.append(coeff * t_in - envelope)
        slacks.append(t_in - coeff * t_in)
        if t_in >= t_star:
            # In this regime the achievable value coincides with the envelope
            # and slots into the chain between the exact value and the bound.
            achievable = achievability_value(params, t_in)
            slacks.append(achievable - t_out)
            slacks.append(envelope - achievable)
    return slacks


def _suite_achievability(rng: np.random.Generator, p: Dict) -> List[float]:
    budget = PrivacyBudget(p["eps"], p["delta"])
    params = SdpiParams(budget, p["gamma_prime"])
    gp = params.gamma_prime
    threshold = (gp - 1.0) / (math.exp(budget.epsilon) + 1.0)
    bsc = make_bsc(budget.epsilon, budget.delta)
    for _ in range(_REJECTION_LIMIT):
        alpha, beta = rng.uniform(size=2)
        pd = Distribution([alpha, 1.0 - alpha])
        qd = Distribution([beta, 1.0 - beta])
        t_in = e_gamma(pd, qd, gp)
        if t_in >= threshold:
            break
    else:
        raise RuntimeError("failed to sample a pair inside the equality regime")
    _, t_out = empirical_contraction(bsc, pd, qd, gp)
    gap = abs(t_out - achievability_value(params, t_in))
    return [EQUALITY_TOL_ACHIEVABILITY - gap]


def _suite_vanishing(rng: np.random.Generator, p: Dict) -> List[float]:
    size = _rand_size(rng, p["max_alphabet"])
    pd, qd = _sample_pair(rng, size, full_support=True)
    gamma_lo = 1.0 + rng.uniform(0.0, 1.0)
    min_q = float(qd.probs.min())
    span = e_gamma(pd, qd, gamma_lo) / min_q
    # A hair above the threshold so rounding cannot resurrect a positive term.
    gamma_hi = gamma_lo + span * (1.0 + 1e-9) + 1e-12
    if not e_gamma_vanishes(pd, qd, gamma_lo, gamma_hi):
        return [-1.0]
    residual = e_gamma(pd, qd, gamma_hi)
    return [0.0 if residual == 0.0 else -max(residual, 2.0 * SLACK_TOL)]


def _suite_dmax_corollaries(rng: np.random.Generator, p: Dict) -> List[float]:
    size = _rand_size(rng, p["max_alphabet"])
    pd, qd = _sample_pair(rng, size, full_support=True)
    exact = d_max(pd, qd)
    min_q = float(qd.probs.min())
    slacks = []
    for gamma in (1.0, 1.25, 1.5, 2.0, 1.0 + 3.0 * rng.uniform()):
        bound = dmax_from_egamma(e_gamma(pd, qd, gamma), gamma, min_q)
        slacks.append(bound - exact)
    for delta in (0.0, 0.05, 0.1, 0.3, rng.uniform(0.0, 0.9)):
        bound = dmax_from_smooth(d_max_smooth(pd, qd, delta), delta, min_q)
        slacks.append(bound - exact)
    return slacks


def _suite_integral_rep(rng: np.random.Generator, p: Dict) -> List[float]:
    size = _rand_size(rng, p["max_alphabet"])
    pd, qd = _sample_pair(rng, size, full_support=True)
    slacks = []
    for generator in (KL_GENERATOR, CHI2_GENERATOR):
        direct = f_divergence(pd, qd, generator)
        quadrature = f_divergence_integral(pd, qd, generator)
        slacks.append(EQUALITY_TOL_INTEGRAL - abs(direct - quadrature))
    return slacks


def _suite_fdiv_bounds(rng: np.random.Generator, p: Dict) -> List[float]:
    budget = PrivacyBudget(p["eps"], p["delta"])
    if budget.epsilon == 0.0:
        raise DomainError("the fdiv_bounds suite requires eps > 0")
    in_size = _rand_size(rng, p["max_alphabet"])
    out_size = _rand_size(rng, p["max_alphabet"])
    channel = _sample_ldp_channel(budget, in_size, out_size, rng)
    pd, qd = _sample_pair(rng, in_size, full_support=False)
    out_p = pushforward(channel, pd)
    out_q = pushforward(channel, qd)
    inputs = FdivBoundInputs(
        budget, tau=e_gamma(pd, qd, 1.0), lam=lam_from_output(channel, pd)
    )
    return [
        kl_contraction_bound(inputs) - kl(out_p, out_q),
        f_div_contraction_bound(CHI2_GENERATOR, inputs) - f_divergence(out_p, out_q, CHI2_GENERATOR),
    ]


def _suite_composition(rng: np.random.Generator, p: Dict) -> List[float]:
    budget = PrivacyBudget(p["eps"], p["delta"])
    n = int(p["chain_length"])
    params = CompositionParams(budget, p["gamma_prime"], n)
    size = _rand_size(rng, p["max_alphabet"])
    matrix = np.eye(size)
    for _ in range(n):
        matrix = matrix @ _sample_ldp_channel(budget, size, size, rng).matrix
    composed = Channel(matrix)
    pd, qd = _sample_pair(rng, size, full_support=False)
    t_in, t_out = empirical_contraction(composed, pd, qd, params.gamma_prime)
    return [composition_bound(params, t_in) - t_out]


def _composition_grid_slacks(p: Dict, grid_size: int = 50) -> List[float]:
    # Closed form vs the literal branch-switching iteration on a (t, n) grid.
    budget = PrivacyBudget(p["eps"], p["delta"])
    slacks = []
    for t in np.linspace(0.0, 1.0, grid_size):
        for n in range(1, grid_size + 1):
            params = CompositionParams(budget, p["gamma_prime"], n)
            closed = composition_bound(params, float(t))
            iterated = iterate_composition_oracle(
                float(t), params.a, params.b, params.t_star, budget.delta, n
            )
            slacks.append(EQUALITY_TOL_COMPOSITION - abs(closed - iterated))
    return slacks


_SUITES = {
    "dpi_and_sdpi": _suite_dpi_and_sdpi,
    "achievability": _suite_achievability,
    "vanishing": _suite_vanishing,
    "dmax_corollaries": _suite_dmax_corollaries,
    "integral_rep": _suite_integral_rep,
    "fdiv_bounds": _suite_fdiv_bounds,
    "composition": _suite_composition,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(
    suite: str, params: Optional[Dict] = None, trials: int = 1000, seed: int = 0
) -> VerificationReport:
    """Run ``trials`` independent checks of one suite and tally violations.

    A trial counts as a violation when any of its slack values falls below
    -1e-9 (equality suites fold their own tolerance into the slack). The
    composition suite additionally checks its closed form against the
    branch-switching iteration on a 50x50 grid before the random trials.
    """
    if suite not in _SUITES:
        raise ValidationError(f"unknown suite {suite!r}; choose from {sorted(_SUITES)}")
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials!r}")
    merged = _default_params(params)
    body = _SUITES[suite]

    violations = 0
    worst = math.inf
    if suite == "composition":
        grid_slacks = _composition_grid_slacks(merged)
        worst = min(worst, min(grid_slacks))
        if any(s < -SLACK_TOL for s in grid_slacks):
            violations += 1
    for index in range(trials):
        slacks = body(_trial_rng(seed, index), merged)
        worst = min(worst, min(slacks))
        if any(s < -SLACK_TOL for s in slacks):
            violations += 1
    return VerificationReport(
        suite=suite,
        trials=trials,
        violations=violations,
        max_violation=worst,
        seed=seed,
        params={k: merged[k] for k in sorted(merged)},
    )
