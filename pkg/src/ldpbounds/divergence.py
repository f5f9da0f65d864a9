"""Exact divergence computations on finite alphabets.

Distributions are probability vectors and channels are row-stochastic
matrices; both are validated on construction and immutable afterwards.
All logarithms are natural, so every divergence here is measured in nats.
Every function is pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import DomainError, ValidationError

# Absolute tolerance for probability normalization checks.
PROB_ATOL = 1e-12
# Per-segment absolute tolerance for the f-divergence quadrature.
QUAD_ATOL = 1e-9

_CONVEXITY_ATOL = 1e-9
_CONVEXITY_GRID = np.geomspace(0.05, 20.0, 41)


class Distribution:
    """A probability vector on a finite alphabet.

    Entries must be non-negative and sum to one within ``PROB_ATOL``.
    """

    __slots__ = ("_probs",)

    def __init__(self, probs) -> None:
        arr = np.asarray(probs, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError("a distribution must be a non-empty 1-D vector")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ValidationError("probabilities must be finite and non-negative")
        total = float(arr.sum())
        if abs(total - 1.0) > PROB_ATOL:
            raise ValidationError(
                f"probabilities sum to {total!r}; expected 1 within {PROB_ATOL}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        self._probs = arr

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def alphabet_size(self) -> int:
        return self._probs.size

    @classmethod
    def uniform(cls, size: int) -> "Distribution":
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def point_mass(cls, index: int, size: int) -> "Distribution":
        v = np.zeros(size)
        v[index] = 1.0
        return cls(v)

    def __repr__(self) -> str:
        return f"Distribution({self._probs.tolist()})"


class Channel:
    """A row-stochastic matrix mapping input symbols to output distributions."""

    __slots__ = ("_matrix",)

    def __init__(self, matrix) -> None:
        arr = np.asarray(matrix, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValidationError("a channel must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ValidationError("channel entries must be finite and non-negative")
        row_sums = arr.sum(axis=1)
        if np.any(np.abs(row_sums - 1.0) > PROB_ATOL):
            worst = float(row_sums[np.argmax(np.abs(row_sums - 1.0))])
            raise ValidationError(
                f"channel rows must sum to 1 within {PROB_ATOL}; found row sum {worst!r}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        self._matrix = arr

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def in_size(self) -> int:
        return self._matrix.shape[0]

    @property
    def out_size(self) -> int:
        return self._matrix.shape[1]

    def row(self, x: int) -> np.ndarray:
        return self._matrix[x]

    def __repr__(self) -> str:
        return f"Channel({self._matrix.tolist()})"


@dataclass(frozen=True)
class FDivGenerator:
    """A convex generator ``f`` for f-divergences, with optional second derivative.

    ``eval_f`` must satisfy ``f(1) == 0`` exactly and be convex; both are
    checked at construction (convexity on a sampled grid). ``eval_f`` should
    also accept 0, returning the limit of ``f`` there. ``eval_f2`` is the
    second derivative, required only by the integral representation.
    ``zero_times_f_of_inf_rule`` is the limit of ``f(t)/t`` as ``t -> inf``;
    it weights mass placed where the second argument has none, and ``None``
    makes such mass an error.
    """

    name: str
    eval_f: Callable[[float], float]
    eval_f2: Optional[Callable[[float], float]] = None
    zero_times_f_of_inf_rule: Optional[float] = None

    def __post_init__(self) -> None:
        if self.eval_f(1.0) != 0.0:
            raise ValidationError(f"generator {self.name!r} must satisfy f(1) = 0 exactly")
        vals = [self.eval_f(float(x)) for x in _CONVEXITY_GRID]
        for (x1, y1), (x2, y2), (x3, y3) in zip(
            zip(_CONVEXITY_GRID, vals), zip(_CONVEXITY_GRID[1:], vals[1:]), zip(_CONVEXITY_GRID[2:], vals[2:])
        ):
            chord = ((x3 - x2) * y1 + (x2 - x1) * y3) / (x3 - x1)
            if y2 > chord + _CONVEXITY_ATOL:
                raise ValidationError(f"generator {self.name!r} is not convex near x={x2!r}")


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


KL_GENERATOR = FDivGenerator(
    name="kl",
    eval_f=_xlogx,
    eval_f2=lambda x: 1.0 / x,
    zero_times_f_of_inf_rule=math.inf,
)

CHI2_GENERATOR = FDivGenerator(
    name="chi2",
    eval_f=lambda x: (x - 1.0) ** 2,
    eval_f2=lambda x: 2.0,
    zero_times_f_of_inf_rule=math.inf,
)

# |x - 1| / 2 has no second derivative at 1, so it is excluded from the
# integral representation but fine for direct evaluation.
TV_GENERATOR = FDivGenerator(
    name="tv",
    eval_f=lambda x: abs(x - 1.0) / 2.0,
    eval_f2=None,
    zero_times_f_of_inf_rule=0.5,
)

GENERATORS = {g.name: g for g in (KL_GENERATOR, CHI2_GENERATOR, TV_GENERATOR)}


def _check_same_alphabet(p: Distribution, q: Distribution) -> None:
    if p.alphabet_size != q.alphabet_size:
        raise ValidationError(
            f"alphabet sizes differ: {p.alphabet_size} vs {q.alphabet_size}"
        )


# ---------------------------------------------------------------------------
# Raw kernels on ndarrays. Channel rows are already-validated probability
# vectors, so internal callers skip Distribution construction.
# ---------------------------------------------------------------------------


def _e_gamma(p: np.ndarray, q: np.ndarray, gamma: float) -> float:
    if math.isinf(gamma):
        # gamma * 0 would be nan; only mass outside q's support survives.
        return float(p[q == 0.0].sum())
    return float(np.maximum(p - gamma * q, 0.0).sum())


def _d_max(p: np.ndarray, q: np.ndarray) -> float:
    support = p > 0
    ps, qs = p[support], q[support]
    if np.any(qs == 0.0):
        return math.inf
    return float(np.log(ps / qs).max())


def _d_max_smooth(p: np.ndarray, q: np.ndarray, delta: float) -> float:
    """Log of the least lam >= 0 with sum_x max(0, p(x) - lam q(x)) <= delta.

    The map lam -> E_lam is piecewise linear, convex and non-increasing with
    breakpoints at the likelihood ratios p(x)/q(x), so the infimum is solved
    exactly segment by segment.
    """
    if delta >= 1.0:
        return -math.inf  # lam = 0 already satisfies E_0 = 1 <= delta
    p_out = float(p[q == 0.0].sum())
    if p_out > delta:
        return math.inf  # E_lam >= p_out for every lam
    mask = (p > 0) & (q > 0)
    ratios = p[mask] / q[mask]
    levels, inverse = np.unique(ratios, return_inverse=True)
    p_by_level = np.bincount(inverse, weights=p[mask])
    q_by_level = np.bincount(inverse, weights=q[mask])
    # Walk segments from the largest ratio down; on the segment below the
    # i-th level the active terms are exactly the levels above it.
    p_cum = 0.0
    q_cum = 0.0
    for i in range(levels.size - 1, -1, -1):
        p_cum += float(p_by_level[i])
        q_cum += float(q_by_level[i])
        lam = (p_out + p_cum - delta) / q_cum
        lower = float(levels[i - 1]) if i > 0 else 0.0
        if lam >= lower:
            return math.log(lam)
    raise AssertionError("unreachable: E_0 = 1 > delta guarantees a crossing")


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def e_gamma(p: Distribution, q: Distribution, gamma: float) -> float:
    """Hockey-stick divergence sum_x max(0, p(x) - gamma * q(x)).

    ``gamma = 1`` gives the total variation distance. Values of ``gamma`` in
    (0, 1) are accepted for use by the smooth max-divergence search; callers
    exposing a public bound surface should restrict to ``gamma >= 1``.
    """
    _check_same_alphabet(p, q)
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    return _e_gamma(p.probs, q.probs, gamma)


def d_max(p: Distribution, q: Distribution) -> float:
    """Max-divergence: the largest log-likelihood ratio over p's support.

    Returns +inf when p places mass outside the support of q.
    """
    _check_same_alphabet(p, q)
    return _d_max(p.probs, q.probs)


def d_max_smooth(p: Distribution, q: Distribution, delta: float) -> float:
    """Smooth max-divergence with slack ``delta``, computed exactly.

    Equals ``d_max(p, q)`` at ``delta = 0``. The result may be negative (the
    optimal lam may fall below 1) and is -inf at ``delta = 1``.
    """
    _check_same_alphabet(p, q)
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta!r}")
    return _d_max_smooth(p.probs, q.probs, delta)


def kl(p: Distribution, q: Distribution) -> float:
    """Kullback-Leibler divergence in nats, +inf on support violation."""
    _check_same_alphabet(p, q)
    pa, qa = p.probs, q.probs
    support = pa > 0
    ps, qs = pa[support], qa[support]
    if np.any(qs == 0.0):
        return math.inf
    return float((ps * np.log(ps / qs)).sum())


def f_divergence(p: Distribution, q: Distribution, f: FDivGenerator) -> float:
    """f-divergence sum_x q(x) f(p(x)/q(x)) under the usual zero conventions.

    Mass of p outside q's support contributes p(x) times the generator's
    ``zero_times_f_of_inf_rule``; without a rule such mass is an error.
    """
    _check_same_alphabet(p, q)
    total = 0.0
    for pi, qi in zip(p.probs, q.probs):
        if qi > 0:
            total += qi * f.eval_f(pi / qi)
        elif pi > 0:
            if f.zero_times_f_of_inf_rule is None:
                raise DomainError(
                    f"generator {f.name!r} has no rule for mass outside q's support"
                )
            total += pi * f.zero_times_f_of_inf_rule
    return float(total)


def f_divergence_integral(p: Distribution, q: Distribution, f: FDivGenerator) -> float:
    """f-divergence via the hockey-stick integral representation.

    Integrates ``f''(g) E_g(p||q) + g^-3 f''(1/g) E_g(q||p)`` over g >= 1.
    Both integrands vanish beyond the largest likelihood ratio, so the
    integral is truncated there; it is split at every likelihood-ratio
    breakpoint and each smooth segment is handled by adaptive quadrature.

    Requires p and q to share their support (so the truncation point is
    finite) and a generator with a second derivative.
    """
    _check_same_alphabet(p, q)
    if f.eval_f2 is None:
        raise DomainError(f"generator {f.name!r} has no second derivative")
    pa, qa = p.probs, q.probs
    if not np.array_equal(pa > 0, qa > 0):
        raise DomainError("integral representation requires equal supports")
    g_max = math.exp(max(_d_max(pa, qa), _d_max(qa, pa)))
    if g_max <= 1.0:
        return 0.0

    support = pa > 0
    ps, qs = pa[support], qa[support]
    ratios = np.concatenate([ps / qs, qs / ps])
    interior = np.unique(ratios[(ratios > 1.0) & (ratios < g_max)])
    knots = np.concatenate([[1.0], interior, [g_max]])

    f2 = f.eval_f2

    def integrand(g: float) -> float:
        return f2(g) * _e_gamma(ps, qs, g) + g ** -3 * f2(1.0 / g) * _e_gamma(qs, ps, g)

    total = 0.0
    for lo, hi in zip(knots[:-1], knots[1:]):
        piece, _ = integrate.quad(integrand, lo, hi, epsabs=QUAD_ATOL, epsrel=1e-9, limit=200)
        total += piece
    return total


def pushforward(a: Channel, p: Distribution) -> Distribution:
    """Output distribution of channel ``a`` applied to input ``p``."""
    if a.in_size != p.alphabet_size:
        raise ValidationError(
            f"channel expects {a.in_size} input symbols, distribution has {p.alphabet_size}"
        )
    return Distribution(p.probs @ a.matrix)


def contraction_coefficient_hs(a: Channel, gamma: float) -> float:
    """Hockey-stick contraction coefficient of a channel.

    Over all input pairs the worst-case ratio of output to input divergence
    is attained at point masses, so the coefficient reduces to the maximum
    pairwise divergence between channel rows (ordered pairs, both ways).
    """
    if not gamma >= 1.0:
        raise DomainError(f"gamma must be at least 1, got {gamma!r}")
    rows = a.matrix
    best = 0.0
    for i in range(rows.shape[0]):
        for j in range(rows.shape[0]):
            if i == j:
                continue
            value = _e_gamma(rows[i], rows[j], gamma)
            if value > best:
                best = value
    return best
