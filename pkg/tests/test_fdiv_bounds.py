import math

import numpy as np
import pytest

from ldpbounds import (
    CHI2_GENERATOR,
    KL_GENERATOR,
    Channel,
    Distribution,
    DomainError,
    FdivBoundInputs,
    PrivacyBudget,
    bound_comparison_grid,
    dasgupta_kl_bound,
    f_div_contraction_bound,
    f_divergence,
    kl,
    kl_contraction_bound,
    lam_from_channel,
    lam_from_output,
    pushforward,
)

from helpers import dasgupta_bound_mp, kl_bound_mp

# Frozen via the term-by-term 50-digit oracles in helpers.py.
OURS_AT_REFERENCE = 0.2141297156568223  # eps=1, delta=0.1, lam=0.1, tau=0.25
THEIRS_AT_REFERENCE = 4.859399456679518  # eps=1, delta=0.1, m=0.1, tau=0.25
TANH_REDUCTION = 0.11552928931500243  # eps=1, tau=0.25, delta=0

REFERENCE = FdivBoundInputs(PrivacyBudget(1.0, 0.1), tau=0.25, lam=0.1)


class TestInputs:
    def test_m_defaults_to_lam(self):
        assert REFERENCE.m == 0.1

    def test_explicit_m(self):
        inputs = FdivBoundInputs(PrivacyBudget(1.0, 0.1), 0.25, lam=0.2, m=0.05)
        assert inputs.m == 0.05

    def test_validation(self):
        with pytest.raises(DomainError):
            FdivBoundInputs(PrivacyBudget(1.0, 0.1), tau=1.2, lam=0.1)
        with pytest.raises(DomainError):
            FdivBoundInputs(PrivacyBudget(1.0, 0.1), tau=0.5, lam=0.0)
        with pytest.raises(DomainError):
            FdivBoundInputs(PrivacyBudget(1.0, 0.1), tau=0.5, lam=0.1, m=0.0)


class TestLamHelpers:
    def test_output_vs_channel(self):
        a = Channel([[0.8, 0.2], [0.3, 0.7]])
        p = Distribution([0.5, 0.5])
        assert lam_from_output(a, p) == pytest.approx(0.45, abs=1e-15)
        assert lam_from_channel(a) == 0.2
        assert lam_from_channel(a) <= lam_from_output(a, p)


class TestKlContractionBound:
    def test_reference_point(self):
        value = kl_contraction_bound(REFERENCE)
        assert value == pytest.approx(OURS_AT_REFERENCE, abs=1e-12)
        assert value == pytest.approx(kl_bound_mp(1.0, 0.1, 0.1, 0.25), abs=1e-12)

    def test_delta_zero_reduction(self):
        inputs = FdivBoundInputs(PrivacyBudget(1.0, 0.0), tau=0.25, lam=0.1)
        value = kl_contraction_bound(inputs)
        assert value == pytest.approx(1.0 * math.tanh(0.5) * 0.25, abs=1e-12)
        assert value == pytest.approx(TANH_REDUCTION, abs=1e-12)

    def test_delta_zero_reduction_general(self):
        for eps in (0.5, 1.0, 2.0):
            for tau in (0.0, 0.3, 1.0):
                inputs = FdivBoundInputs(PrivacyBudget(eps, 0.0), tau=tau, lam=0.2)
                assert kl_contraction_bound(inputs) == pytest.approx(
                    eps * math.tanh(eps / 2.0) * tau, abs=1e-12
                )

    def test_zero_at_origin(self):
        inputs = FdivBoundInputs(PrivacyBudget(1.0, 0.0), tau=0.0, lam=0.3)
        assert kl_contraction_bound(inputs) == pytest.approx(0.0, abs=1e-15)

    def test_rejects_eps_zero(self):
        with pytest.raises(DomainError):
            kl_contraction_bound(FdivBoundInputs(PrivacyBudget(0.0, 0.1), 0.25, 0.1))


class TestGeneralFDivBound:
    def test_kl_generator_matches_specialization(self):
        for eps in (0.5, 1.0, 2.0):
            for delta in (0.0, 0.05, 0.2):
                for lam, tau in ((0.1, 0.25), (0.4, 0.8), (1.0, 0.0)):
                    inputs = FdivBoundInputs(PrivacyBudget(eps, delta), tau=tau, lam=lam)
                    general = f_div_contraction_bound(KL_GENERATOR, inputs)
                    assert general == pytest.approx(kl_contraction_bound(inputs), abs=1e-12)

    def test_delta_zero_reduction(self):
        for generator in (KL_GENERATOR, CHI2_GENERATOR):
            for eps in (0.5, 1.5):
                ee = math.exp(eps)
                tau = 0.4
                inputs = FdivBoundInputs(PrivacyBudget(eps, 0.0), tau=tau, lam=0.2)
                expected = (generator.eval_f(ee) + ee * generator.eval_f(1.0 / ee)) / (ee + 1.0) * tau
                assert f_div_contraction_bound(generator, inputs) == pytest.approx(expected, abs=1e-12)

    def test_zero_at_origin(self):
        inputs = FdivBoundInputs(PrivacyBudget(1.0, 0.0), tau=0.0, lam=0.3)
        assert f_div_contraction_bound(CHI2_GENERATOR, inputs) == pytest.approx(0.0, abs=1e-15)

    def test_rejects_eps_zero(self):
        with pytest.raises(DomainError):
            f_div_contraction_bound(CHI2_GENERATOR, FdivBoundInputs(PrivacyBudget(0.0, 0.1), 0.25, 0.1))

    def test_soundness_on_bsc(self):
        # The bound must dominate the realized output divergence.
        eps, delta = math.log(3.0), 0.05
        a = Channel([[0.7, 0.3], [0.35, 0.65]])
        assert kl_contraction_bound  # sanity: imported
        p = Distribution([0.9, 0.1])
        q = Distribution([0.3, 0.7])
        inputs = FdivBoundInputs(
            PrivacyBudget(eps, delta),
            tau=0.6,
            lam=lam_from_output(a, p),
        )
        out_p, out_q = pushforward(a, p), pushforward(a, q)
        assert kl(out_p, out_q) <= kl_contraction_bound(inputs) + 1e-9
        assert f_divergence(out_p, out_q, CHI2_GENERATOR) <= f_div_contraction_bound(
            CHI2_GENERATOR, inputs
        ) + 1e-9


class TestDasguptaBound:
    def test_reference_point(self):
        value = dasgupta_kl_bound(REFERENCE)
        assert value == pytest.approx(THEIRS_AT_REFERENCE, abs=1e-9)
        assert value == pytest.approx(dasgupta_bound_mp(1.0, 0.1, 0.1, 0.25), abs=1e-9)

    def test_delta_zero_reduction(self):
        for eps in (0.5, 1.0, 2.0):
            inputs = FdivBoundInputs(PrivacyBudget(eps, 0.0), tau=0.25, lam=0.1)
            assert dasgupta_kl_bound(inputs) == pytest.approx(
                eps * math.tanh(eps / 2.0) * 0.25, abs=1e-12
            )

    def test_matches_tanh_oracle_on_grid(self):
        for eps in (0.5, 1.0, 3.0):
            for delta in (0.01, 0.1, 0.3):
                for m in (0.05, 0.2):
                    inputs = FdivBoundInputs(PrivacyBudget(eps, delta), tau=0.25, lam=m, m=m)
                    assert dasgupta_kl_bound(inputs) == pytest.approx(
                        dasgupta_bound_mp(eps, delta, m, 0.25), rel=1e-10
                    )

    def test_rejects_delta_one(self):
        with pytest.raises(DomainError):
            dasgupta_kl_bound(FdivBoundInputs(PrivacyBudget(1.0, 1.0), 0.25, 0.1))

    def test_tau_prefactor_dominance(self):
        # Our tau coefficient never exceeds theirs; equal exactly when delta = 0.
        for eps in (0.5, 1.0, 2.5):
            ee = math.exp(eps)
            for delta in np.linspace(0.0, 0.99, 34):
                ours = eps * (ee - 1.0 + 2.0 * delta) / (ee + 1.0)
                theirs = ours + delta * ((ee + delta - 1.0) / ee + math.log(1.0 / (1.0 - delta)))
                if delta == 0.0:
                    assert ours == theirs
                else:
                    assert ours < theirs

    def test_comparison_at_reference(self):
        assert kl_contraction_bound(REFERENCE) < dasgupta_kl_bound(REFERENCE)


class TestComparisonGrid:
    def test_lambda_axis(self):
        fixed = FdivBoundInputs(PrivacyBudget(1.0, 0.01), tau=0.25, lam=0.1)
        grid = np.linspace(0.01, 0.5, 20)
        ours, theirs = bound_comparison_grid("lambda", fixed, grid)
        assert ours.label == "ours" and theirs.label == "dasgupta"
        assert len(ours.points) == len(theirs.points) == 20
        assert ours.params["epsilon"] == 1.0
        assert all(yo <= yt for (_, yo), (_, yt) in zip(ours.points, theirs.points))

    def test_epsilon_axis(self):
        fixed = FdivBoundInputs(PrivacyBudget(1.0, 0.2), tau=0.25, lam=0.1)
        grid = np.linspace(0.1, 3.0, 25)
        ours, theirs = bound_comparison_grid("epsilon", fixed, grid)
        assert len(ours.points) == 25
        assert ours.params["lambda"] == 0.1 and ours.params["m"] == 0.1
        assert all(yo <= yt for (_, yo), (_, yt) in zip(ours.points, theirs.points))

    def test_singleton_grid(self):
        fixed = FdivBoundInputs(PrivacyBudget(1.0, 0.1), tau=0.25, lam=0.1)
        ours, theirs = bound_comparison_grid("lambda", fixed, [0.1])
        assert ours.points[0][1] == pytest.approx(OURS_AT_REFERENCE, abs=1e-12)
        assert theirs.points[0][1] == pytest.approx(THEIRS_AT_REFERENCE, abs=1e-9)

    def test_rejects_bad_axis_and_empty_grid(self):
        fixed = FdivBoundInputs(PrivacyBudget(1.0, 0.1), tau=0.25, lam=0.1)
        with pytest.raises(DomainError):
            bound_comparison_grid("tau", fixed, [0.1])
        with pytest.raises(DomainError):
            bound_comparison_grid("lambda", fixed, [])
        with pytest.raises(DomainError):
            bound_comparison_grid("lambda", fixed, [0.0])
