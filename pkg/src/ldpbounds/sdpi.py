"""Closed-form contraction bounds for the hockey-stick divergence under LDP.

Everything here is a pure scalar formula: the linear coefficient bound, the
non-linear envelope it tightens into, the matching achievable value, the
n-fold sequential-composition envelope, the chord interpolation bound, and
the two max-divergence corollaries. No output is silently clamped to [0, 1];
values outside the trivial range indicate a precondition violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .divergence import Distribution, e_gamma
from .errors import DomainError
from .ldp import PrivacyBudget


def _check_unit_interval(t: float, name: str = "t") -> None:
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {t!r}")


@dataclass(frozen=True)
class SdpiParams:
    """A privacy budget together with the order gamma' being contracted."""

    budget: PrivacyBudget
    gamma_prime: float

    def __post_init__(self) -> None:
        if not self.gamma_prime >= 1.0:
            raise DomainError(f"gamma_prime must be at least 1, got {self.gamma_prime!r}")


def linear_sdpi_coeff(params: SdpiParams) -> float:
    """Contraction coefficient bound max{(e^eps - g' + delta(g'+1))/(e^eps+1), delta}.

    For gamma_prime >= e^eps the first branch drops below delta, so the
    formula covers both regimes.
    """
    eps, delta = params.budget.epsilon, params.budget.delta
    gp = params.gamma_prime
    ee = math.exp(eps)
    return max((ee - gp + delta * (gp + 1.0)) / (ee + 1.0), delta)


def nonlinear_sdpi_bound(params: SdpiParams, t: float) -> float:
    """Non-linear envelope on the output divergence given input divergence ``t``.

    max{((e^eps + 2 delta - 1) t - (g' - 1)(1 - delta)) / (e^eps + 1), delta * t}.
    """
    _check_unit_interval(t)
    eps, delta = params.budget.epsilon, params.budget.delta
    gp = params.gamma_prime
    ee = math.exp(eps)
    first = ((ee + 2.0 * delta - 1.0) * t - (gp - 1.0) * (1.0 - delta)) / (ee + 1.0)
    return max(first, delta * t)


def f_gamma_upper(params: SdpiParams, t: float) -> float:
    """Upper bound on the largest-output-divergence curve; alias of the envelope."""
    return nonlinear_sdpi_bound(params, t)


def achievability_value(params: SdpiParams, t: float) -> float:
    """Output divergence attained by the extremal binary mechanism at input ``t``.

    max{t (e^eps - 1 + 2 delta)/(e^eps + 1) + (1 - delta)(1 - g')/(e^eps + 1), 0};
    equals the envelope's first branch whenever that branch is positive.
    """
    eps, delta = params.budget.epsilon, params.budget.delta
    gp = params.gamma_prime
    ee = math.exp(eps)
    value = t * (ee - 1.0 + 2.0 * delta) / (ee + 1.0) + (1.0 - delta) * (1.0 - gp) / (ee + 1.0)
    return max(value, 0.0)


@dataclass(frozen=True)
class CompositionParams:
    """Parameters of the n-fold composition envelope.

    Requires the strict regime 1 < gamma_prime < e^epsilon and
    0 < delta < 1; the derived quantities are
    a = (e^eps + 2 delta - 1)/(e^eps + 1), b = (g' - 1)(1 - delta)/(e^eps + 1)
    and the branch-crossover point t_star = (g' - 1)/(e^eps - 1).
    """

    budget: PrivacyBudget
    gamma_prime: float
    n: int
    a: float = field(init=False)
    b: float = field(init=False)
    t_star: float = field(init=False)

    def __post_init__(self) -> None:
        eps, delta = self.budget.epsilon, self.budget.delta
        ee = math.exp(eps)
        if not 1.0 < self.gamma_prime < ee:
            raise DomainError(
                f"composition requires 1 < gamma_prime < e^epsilon, got gamma_prime={self.gamma_prime!r}"
            )
        if not 0.0 < delta < 1.0:
            raise DomainError(f"composition requires 0 < delta < 1, got {delta!r}")
        if self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "a", (ee + 2.0 * delta - 1.0) / (ee + 1.0))
        object.__setattr__(self, "b", (self.gamma_prime - 1.0) * (1.0 - delta) / (ee + 1.0))
        object.__setattr__(self, "t_star", (self.gamma_prime - 1.0) / (ee - 1.0))


def _affine_iterate(k: int, t: float, a: float, b: float) -> float:
    # Closed form of the k-fold map t -> a t - b.
    c = b / (1.0 - a)
    return a**k * (t + c) - c


def _k_star(t: float, a: float, b: float, t_star: float) -> int:
    # Least k with the k-fold affine iterate at or below the crossover point.
    num = t_star * (1.0 - a) + b
    den = t * (1.0 - a) + b
    if den <= num:  # equivalent to t <= t_star
        return 0
    return max(0, math.ceil(math.log(num / den) / math.log(a)))


def composition_bound(params: CompositionParams, t: float) -> float:
    """Envelope on the output divergence after n sequential private channels.

    Applies the affine contraction t -> a t - b until the iterate falls to
    the crossover point t_star, then decays geometrically with factor delta.
    """
    _check_unit_interval(t)
    a, b, t_star = params.a, params.b, params.t_star
    k_star = _k_star(t, a, b, t_star)
    if params.n <= k_star:
        return _affine_iterate(params.n, t, a, b)
    return params.budget.delta ** (params.n - k_star) * _affine_iterate(k_star, t, a, b)


def hs_interpolation(e_g1: float, e_g2: float, g1: float, g: float, g2: float) -> float:
    """Chord upper bound on the divergence at ``g`` from its values at g1 <= g <= g2.

    Valid because the divergence is convex in its order.
    """
    if not (1.0 <= g1 <= g <= g2):
        raise DomainError(f"need 1 <= g1 <= g <= g2, got g1={g1!r}, g={g!r}, g2={g2!r}")
    for name, value in (("e_g1", e_g1), ("e_g2", e_g2)):
        _check_unit_interval(value, name)
    if g1 == g2:
        return e_g1
    return ((g2 - g) * e_g1 + (g - g1) * e_g2) / (g2 - g1)


def e_gamma_vanishes(
    p: Distribution, q: Distribution, gamma_lo: float, gamma_hi: float
) -> bool:
    """Whether the divergence at gamma_lo is small enough to force zero at gamma_hi.

    True when e_gamma(p, q, gamma_lo) <= (gamma_hi - gamma_lo) * min_x q(x);
    in that case the divergence at gamma_hi is exactly zero.
    """
    if not gamma_lo >= 1.0:
        raise DomainError(f"gamma_lo must be at least 1, got {gamma_lo!r}")
    if not gamma_hi >= gamma_lo:
        raise DomainError(f"gamma_hi must be at least gamma_lo, got {gamma_hi!r}")
    min_q = float(q.probs.min())
    if min_q <= 0.0:
        raise DomainError("q must have full support")
    return e_gamma(p, q, gamma_lo) <= (gamma_hi - gamma_lo) * min_q


def dmax_from_egamma(e_g: float, gamma: float, min_q: float) -> float:
    """Upper bound log(gamma + e_g / min_q) on the max-divergence."""
    if not 0.0 < min_q <= 1.0:
        raise DomainError(f"min_q must lie in (0, 1], got {min_q!r}")
    if not gamma >= 1.0:
        raise DomainError(f"gamma must be at least 1, got {gamma!r}")
    _check_unit_interval(e_g, "e_g")
    return math.log(gamma + e_g / min_q)


def dmax_from_smooth(d_smooth: float, delta: float, min_q: float) -> float:
    """Upper bound log(exp(d_smooth) + delta / min_q) on the max-divergence."""
    if not 0.0 < min_q <= 1.0:
        raise DomainError(f"min_q must lie in (0, 1], got {min_q!r}")
    _check_unit_interval(delta, "delta")
    return math.log(math.exp(d_smooth) + delta / min_q)
