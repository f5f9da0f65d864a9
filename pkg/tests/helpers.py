"""Independent oracles used to derive and guard expected test values.

Nothing here shares code paths with the library: the hockey-stick oracle
enumerates subsets, the smooth max-divergence oracle bisects, and the bound
oracles recompute each closed form term by term at 50-digit precision.
"""

import itertools
import math

import mpmath

mpmath.mp.dps = 50


def e_gamma_subsets(p, q, gamma):
    """Brute-force hockey-stick divergence: max over all subsets, clipped at 0."""
    indices = range(len(p))
    best = 0.0
    for r in range(len(p) + 1):
        for subset in itertools.combinations(indices, r):
            value = sum(p[i] for i in subset) - gamma * sum(q[i] for i in subset)
            best = max(best, value)
    return best


def d_max_smooth_bisect(e_gamma_fn, delta, lam_hi=1e6, tol=1e-13):
    """Bisection for the least lam with E_lam <= delta, given an E evaluator."""
    if e_gamma_fn(lam_hi) > delta:
        return math.inf
    lo, hi = 0.0, lam_hi
    if e_gamma_fn(lo) <= delta:
        return -math.inf
    while hi - lo > tol * max(1.0, hi):
        mid = (lo + hi) / 2.0
        if e_gamma_fn(mid) <= delta:
            hi = mid
        else:
            lo = mid
    return math.log(hi)


def kl_bound_mp(eps, delta, lam, tau):
    """Term-by-term 50-digit recomputation of the KL output bound."""
    eps, delta, lam, tau = (mpmath.mpf(str(v)) for v in (eps, delta, lam, tau))
    ee = mpmath.exp(eps)
    g = ee + delta / lam
    term_tau = eps * (ee - 1 + 2 * delta) / (ee + 1) * tau
    term_delta = -eps * (ee - mpmath.exp(-eps)) / (ee - 1) * delta
    term_boundary = lam * ((g - 1) * mpmath.log(g) + (1 - ee + (delta / lam) * mpmath.exp(-eps)) * eps)
    return float(term_tau + term_delta + term_boundary)


def dasgupta_bound_mp(eps, delta, m, tau):
    """Term-by-term 50-digit recomputation of the comparison bound (tanh form)."""
    eps, delta, m, tau = (mpmath.mpf(str(v)) for v in (eps, delta, m, tau))
    ee = mpmath.exp(eps)
    prefactor = eps * mpmath.tanh(eps / 2) + delta * (
        2 * eps / (ee + 1) + (ee + delta - 1) / ee + mpmath.log(1 / (1 - delta))
    )
    constant = delta * (
        ee / (1 - delta)
        + 2 * mpmath.log(ee / (1 - delta))
        - (1 - delta) / ee
        + 2 * (eps + mpmath.log(1 / (1 - delta)) + 2 / m)
    )
    return float(prefactor * tau + constant)
