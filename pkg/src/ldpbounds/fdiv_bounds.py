"""Closed-form upper bounds on f-divergences between channel outputs under LDP.

These are pure formula evaluations: the TV distance tau between the inputs
and the minimum output mass lam are accepted as numbers, never recomputed.
All values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .curves import BoundCurve
from .divergence import Channel, Distribution, FDivGenerator, pushforward
from .errors import DomainError
from .ldp import PrivacyBudget

_REFORM_ATOL = 1e-12


@dataclass(frozen=True)
class FdivBoundInputs:
    """Scalar inputs to the output-divergence bounds.

    tau is the total variation distance between the channel inputs, lam the
    minimum output mass, and m the truncated-distribution parameter of the
    comparison bound (defaults to lam, the usual plotting convention; the
    cited quantity always satisfies m <= lam).
    """

    budget: PrivacyBudget
    tau: float
    lam: float
    m: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise DomainError(f"tau must lie in [0, 1], got {self.tau!r}")
        if not 0.0 < self.lam <= 1.0:
            raise DomainError(f"lam must lie in (0, 1], got {self.lam!r}")
        if self.m is None:
            object.__setattr__(self, "m", self.lam)
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m!r}")


def lam_from_output(a: Channel, p: Distribution) -> float:
    """Input-dependent choice of lam: the minimum mass of the output of ``a`` on ``p``."""
    return float(pushforward(a, p).probs.min())


def lam_from_channel(a: Channel) -> float:
    """Input-free choice of lam: the minimum entry of the channel matrix."""
    return float(a.matrix.min())


def f_div_contraction_bound(f: FDivGenerator, inputs: FdivBoundInputs) -> float:
    """General f-divergence bound; requires epsilon > 0.

    Three terms: a tau-proportional contraction term, a delta correction, and
    a boundary term evaluating f at e^eps + delta/lam and its reciprocal.
    """
    eps, delta = inputs.budget.epsilon, inputs.budget.delta
    if eps == 0.0:
        raise DomainError("the f-divergence bound requires epsilon > 0")
    ee = math.exp(eps)
    emi = math.exp(-eps)
    g = ee + delta / inputs.lam
    term_tau = (
        (f.eval_f(ee) + ee * f.eval_f(emi)) / (ee - 1.0)
        * (ee - 1.0 + 2.0 * delta) / (ee + 1.0)
        * inputs.tau
    )
    term_delta = -(f.eval_f(ee) + f.eval_f(emi)) / (ee - 1.0) * delta
    term_boundary = inputs.lam * (
        f.eval_f(g) - f.eval_f(ee) + g * f.eval_f(1.0 / g) - g * f.eval_f(emi)
    )
    return term_tau + term_delta + term_boundary


def kl_contraction_bound(inputs: FdivBoundInputs) -> float:
    """KL specialization of the output-divergence bound, in nats."""
    eps, delta = inputs.budget.epsilon, inputs.budget.delta
    if eps == 0.0:
        raise DomainError("the KL bound requires epsilon > 0")
    ee = math.exp(eps)
    ratio = delta / inputs.lam
    g = ee + ratio
    return (
        eps * (ee - 1.0 + 2.0 * delta) / (ee + 1.0) * inputs.tau
        - eps * (ee - math.exp(-eps)) / (ee - 1.0) * delta
        + inputs.lam * ((g - 1.0) * math.log(g) + (1.0 - ee + ratio * math.exp(-eps)) * eps)
    )


def dasgupta_kl_bound(inputs: FdivBoundInputs) -> float:
    """The comparison KL bound, evaluated in its expanded form.

    The expanded form and the original tanh form are both computed and must
    agree within 1e-12; a mismatch signals an implementation bug, not bad
    input.
    """
    eps, delta, m, tau = inputs.budget.epsilon, inputs.budget.delta, inputs.m, inputs.tau
    if eps == 0.0:
        raise DomainError("the comparison bound requires epsilon > 0")
    if delta >= 1.0:
        raise DomainError("the comparison bound requires delta < 1")
    ee = math.exp(eps)
    log_slack = math.log(1.0 / (1.0 - delta))

    tau_prefactor = eps * (ee - 1.0 + 2.0 * delta) / (ee + 1.0) + delta * (
        (ee + delta - 1.0) / ee + log_slack
    )
    constant = delta * (
        ee / (1.0 - delta) - (1.0 - delta) / ee + 4.0 * (eps + log_slack + 1.0 / m)
    )
    value = tau_prefactor * tau + constant

    tanh_prefactor = eps * math.tanh(eps / 2.0) + delta * (
        2.0 * eps / (ee + 1.0) + (ee + delta - 1.0) / ee + log_slack
    )
    tanh_constant = delta * (
        ee / (1.0 - delta)
        + 2.0 * math.log(ee / (1.0 - delta))
        - (1.0 - delta) / ee
        + 2.0 * (eps + log_slack + 2.0 / m)
    )
    tanh_value = tanh_prefactor * tau + tanh_constant
    if abs(value - tanh_value) > _REFORM_ATOL:
        raise AssertionError(
            f"expanded and tanh forms disagree: {value!r} vs {tanh_value!r}"
        )
    return value


def bound_comparison_grid(
    axis: str, fixed: FdivBoundInputs, grid: Sequence[float]
) -> Tuple[BoundCurve, BoundCurve]:
    """Evaluate our KL bound and the comparison bound along a parameter sweep.

    ``axis="lambda"`` sweeps lam (with m = lam); ``axis="epsilon"`` sweeps
    epsilon with lam and m taken from ``fixed``. Returns the two curves in
    the order (ours, comparison).
    """
    if axis not in ("lambda", "epsilon"):
        raise DomainError(f"axis must be 'lambda' or 'epsilon', got {axis!r}")
    if len(grid) == 0:
        raise DomainError("grid must be non-empty")

    ours = []
    theirs = []
    for x in grid:
        x = float(x)
        if axis == "lambda":
            if not 0.0 < x <= 1.0:
                raise DomainError(f"lambda grid value must lie in (0, 1], got {x!r}")
            point = FdivBoundInputs(fixed.budget, fixed.tau, lam=x, m=x)
        else:
            if not x > 0.0:
                raise DomainError(f"epsilon grid value must be positive, got {x!r}")
            budget = PrivacyBudget(x, fixed.budget.delta)
            point = FdivBoundInputs(budget, fixed.tau, lam=fixed.lam, m=fixed.m)
        ours.append((x, kl_contraction_bound(point)))
        theirs.append((x, dasgupta_kl_bound(point)))

    params = {"delta": fixed.budget.delta, "tau": fixed.tau}
    if axis == "lambda":
        params["epsilon"] = fixed.budget.epsilon
    else:
        params["lambda"] = fixed.lam
        params["m"] = fixed.m
    return (
        BoundCurve("ours", params, ours),
        BoundCurve("dasgupta", params, theirs),
    )
