import numpy as np
import pytest

from pairspec.fock_ladder import LadderState, apply_ab, apply_adbd, apply_halfnumber, inner


def state(p, coeffs, mirror=False):
    return LadderState(p, np.array(coeffs, dtype=complex), mirror)


class TestApplyAb:
    def test_single_pair(self):
        out = apply_ab(state(0, [0, 1]))
        np.testing.assert_allclose(out.coeffs, [1.0])

    def test_imbalanced_pair(self):
        out = apply_ab(state(1, [0, 1]))
        np.testing.assert_allclose(out.coeffs, [np.sqrt(2.0)])

    def test_vacuum_annihilates(self):
        out = apply_ab(state(0, [1]))
        assert len(out.coeffs) == 0

    def test_labels_preserved(self):
        out = apply_ab(state(2, [0, 1, 2], mirror=True))
        assert out.p == 2 and out.mirror


class TestApplyAdbd:
    def test_vacuum_to_pair(self):
        out = apply_adbd(state(0, [1]))
        np.testing.assert_allclose(out.coeffs, [0, 1])

    def test_imbalanced(self):
        out = apply_adbd(state(1, [1]))
        np.testing.assert_allclose(out.coeffs, [0, np.sqrt(2.0)])

    def test_double_pair(self):
        out = apply_adbd(state(0, [0, 1]))
        np.testing.assert_allclose(out.coeffs, [0, 0, 2.0])


class TestHalfNumber:
    @pytest.mark.parametrize(
        "p,coeffs,expect",
        [
            (0, [1], [0.0]),
            (3, [1], [1.5]),
            (0, [0, 0, 1], [0, 0, 2.0]),
        ],
    )
    def test_examples(self, p, coeffs, expect):
        np.testing.assert_allclose(apply_halfnumber(state(p, coeffs)).coeffs, expect)


class TestInner:
    def test_unit(self):
        assert inner(state(0, [1]), state(0, [1])) == 1

    def test_orthonormal_basis(self):
        assert inner(state(0, [1, 0]), state(0, [0, 1])) == 0

    def test_different_ladders_orthogonal(self):
        assert inner(state(0, [1]), state(1, [1])) == 0
        assert inner(state(1, [1]), state(1, [1], mirror=True)) == 0

    def test_conjugate_linear_first_slot(self):
        x = state(0, [1j])
        y = state(0, [1.0])
        assert inner(x, y) == pytest.approx(-1j)


class TestOperatorAlgebra:
    def test_adjointness(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            p = int(rng.integers(0, 5))
            x = state(p, rng.standard_normal(8) + 1j * rng.standard_normal(8))
            y = state(p, rng.standard_normal(9) + 1j * rng.standard_normal(9))
            lhs = inner(apply_adbd(x), y)
            rhs = inner(x, apply_ab(y))
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_commutator_is_shifted_number(self):
        # [ab, a*b*] = a*a + b*b + 1 restricted to the ladder
        for p in range(4):
            for s in range(10):
                c = np.zeros(12)
                c[s] = 1.0
                st = state(p, c)
                upd = apply_ab(apply_adbd(st)).coeffs
                dnu = apply_adbd(apply_ab(st)).coeffs
                assert upd[s] - dnu[s] == pytest.approx(p + 2 * s + 1, rel=1e-14)

    def test_ladders_never_mix(self):
        st = state(2, [1, 2, 3])
        for op in (apply_ab, apply_adbd, apply_halfnumber):
            assert op(st).p == 2


class TestLadderState:
    def test_negative_p_rejected(self):
        with pytest.raises(ValueError):
            LadderState(-1, np.array([1.0]))

    def test_padding(self):
        st = state(0, [1, 2]).padded(4)
        np.testing.assert_allclose(st.coeffs, [1, 2, 0, 0, 0])
        with pytest.raises(ValueError):
            st.padded(1)
