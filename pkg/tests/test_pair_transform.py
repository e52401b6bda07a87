import math

import numpy as np
import pytest

from pairspec.eigenstates import EigenstateSpec, psi_p_theta, residual
from pairspec.fock_ladder import LadderState
from pairspec.lattice import ModelParams, alpha_c, ytilde_from_y
from pairspec.pair_transform import (
    DomainVerdict,
    apply_exp_pair,
    conjugation_check,
    depletion_report,
    domain_check,
    mode_ground_state,
    pair_occupancy,
)


def state(p, coeffs):
    return LadderState(p, np.array(coeffs, dtype=complex))


class TestApplyExpPair:
    def test_vacuum_becomes_geometric(self):
        out = apply_exp_pair(state(0, [1] + [0] * 7), -0.5)
        np.testing.assert_allclose(out.coeffs, (-0.5) ** np.arange(8.0), atol=1e-15)

    def test_zero_amplitude_is_identity(self):
        st = state(1, [1, 2, 3])
        out = apply_exp_pair(st, 0.0)
        np.testing.assert_allclose(out.coeffs, st.coeffs)

    def test_two_term_convolution(self):
        # input c = [1, 1] on p = 0: C'_m = (-a)^(m-1) (m - a) for m >= 1
        alpha = 0.3
        out = apply_exp_pair(state(0, [1, 1]).padded(9), -alpha)
        m = np.arange(1, 10)
        expect = np.concatenate(([1.0], (-alpha) ** (m - 1) * (m - alpha)))
        np.testing.assert_allclose(out.coeffs, expect, atol=1e-14)

    def test_inverse_on_finite_states(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            p = int(rng.integers(0, 4))
            alpha = rng.uniform(0.05, 0.5)
            support = int(rng.integers(1, 9))
            st = state(p, rng.standard_normal(support) + 1j * rng.standard_normal(support))
            st = st.padded(24)
            back = apply_exp_pair(apply_exp_pair(st, -alpha), alpha)
            keep = 24 - support  # below the truncation echo of the support
            np.testing.assert_allclose(
                back.coeffs[: keep + 1], st.coeffs[: keep + 1], atol=1e-9
            )

    def test_eigenstate_transport(self):
        for y in (0.3, 0.45):
            ac = alpha_c(y)
            ytil = ytilde_from_y(y)
            for p in range(3):
                for n in range(4):
                    st = psi_p_theta(EigenstateSpec(p, n, ytil, n)).padded(300)
                    moved = apply_exp_pair(st, -ac)
                    e_ab = (1 - 2 * ac * y) * (p / 2 + n) - ac * y
                    assert residual(moved, y, y, e_ab) <= 1e-8 * moved.norm()


class TestDomainCheck:
    def test_finite_states_in_domain(self):
        coeffs = psi_p_theta(EigenstateSpec(0, 3, 1.0, 3)).coeffs

        def rule(s):
            return coeffs[s] if s < len(coeffs) else 0.0

        assert domain_check(rule, 0.7, 0, 200) is DomainVerdict.IN_DOMAIN

    def test_geometric_growth_rejected(self):
        assert domain_check(lambda s: 2.0**s, 0.9, 0, 200) is DomainVerdict.NOT_IN_DOMAIN

    def test_geometric_decay_accepted(self):
        assert domain_check(lambda s: 0.5**s, 0.3, 0, 200) is DomainVerdict.IN_DOMAIN

    def test_deep_cancellation_is_inconclusive(self):
        # true transform decays, but the alternating sums cancel far below
        # double precision; the honest verdict is "cannot certify"
        assert domain_check(lambda s: 0.5**s, 0.9, 0, 200) is DomainVerdict.INCONCLUSIVE

    def test_zero_state_in_domain(self):
        assert domain_check(lambda s: 0.0 if s else 1.0, 0.5, 0, 150) is DomainVerdict.IN_DOMAIN

    def test_normalizable_noninteger_label_still_excluded(self):
        # above unit coupling the state is square-summable, yet its branch
        # point maps inside the unit disk, so the transform must reject it
        ytil = 1.5
        y = math.sqrt(ytil**2 / (1.0 + 4.0 * ytil**2))
        coeffs = psi_p_theta(EigenstateSpec(0, 0.5, ytil, 400)).coeffs
        verdict = domain_check(lambda s: coeffs[s], alpha_c(y), 0, 400)
        assert verdict is DomainVerdict.NOT_IN_DOMAIN

    def test_short_horizon_rejected(self):
        with pytest.raises(ValueError):
            domain_check(lambda s: 0.0, 0.5, 0, 50)

    def test_alpha_range_enforced(self):
        with pytest.raises(ValueError):
            domain_check(lambda s: 0.0, 0.0, 0, 150)
        with pytest.raises(ValueError):
            domain_check(lambda s: 0.0, 1.0, 0, 150)


class TestConjugation:
    def test_zero_amplitude(self):
        assert conjugation_check(0.0, 8) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("alpha", [0.3, 0.9])
    def test_identity_exact(self, alpha):
        assert conjugation_check(alpha, 12) <= 1e-12

    def test_small_truncation_rejected(self):
        with pytest.raises(ValueError):
            conjugation_check(0.5, 3)


class TestGroundState:
    def test_zero_amplitude_is_vacuum(self):
        st = mode_ground_state(0.0, 5)
        np.testing.assert_allclose(st.coeffs, [1, 0, 0, 0, 0, 0])

    def test_norm_squared(self):
        st = mode_ground_state(0.5, 60)
        assert st.norm() ** 2 == pytest.approx(4.0 / 3.0, rel=1e-12)

    def test_occupancy_closed_form(self):
        for alpha in (0.1, 0.5, 0.9):
            st = mode_ground_state(alpha, 600)
            assert pair_occupancy(st) == pytest.approx(
                alpha**2 / (1 - alpha**2), abs=1e-10
            )

    def test_unnormalizable_rejected(self):
        with pytest.raises(ValueError):
            mode_ground_state(1.0, 10)


class TestDepletionReport:
    def test_report_fields(self):
        mp = ModelParams(a=1 / (16 * math.pi), rho=1.0, L=2 * math.pi)
        rep = depletion_report(mp, 2)
        assert rep["N"] == pytest.approx(mp.rho * mp.L**3)
        assert rep["depletion"] > 0
        assert len(rep["per_mode"]) == 62
        total = sum(occ for _, occ in rep["per_mode"])
        assert rep["depletion"] == pytest.approx(total)

    def test_free_gas_no_depletion(self):
        rep = depletion_report(ModelParams(a=0.0, rho=1.0, L=2 * math.pi), 1)
        assert rep["depletion"] == 0.0
