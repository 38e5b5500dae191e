import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from conftest import bloch_vectors, qubit_states
from swapmeter import states
from swapmeter.exceptions import UnphysicalStateError
from swapmeter.linalg import I2, SIGMA_X, SIGMA_Z
from swapmeter.states import BlochVector, QubitState


def sqrtm_fidelity(rho, sigma):
    """Brute-force Uhlmann fidelity via matrix square roots."""
    root = scipy.linalg.sqrtm(rho.matrix)
    inner = scipy.linalg.sqrtm(root @ sigma.matrix @ root)
    return float(np.real(np.trace(inner)) ** 2)


class TestBloch:
    def test_plus_z_is_ket0(self):
        rho = states.from_bloch(BlochVector(0, 0, 1))
        np.testing.assert_allclose(rho.matrix, [[1, 0], [0, 0]], atol=1e-12)

    def test_origin_is_maximally_mixed(self):
        np.testing.assert_allclose(states.from_vector((0, 0, 0)).matrix, I2 / 2, atol=1e-12)

    def test_prepared_rho_b(self):
        rho = states.from_vector((0, 0, math.sqrt(2) / 2))
        np.testing.assert_allclose(rho.matrix, I2 / 2 + math.sqrt(2) / 4 * SIGMA_Z, atol=1e-12)

    def test_unphysical(self):
        with pytest.raises(UnphysicalStateError):
            states.from_vector((0.8, 0.8, 0))
        states.from_vector((0, 0, 1 + 5e-10))  # within tolerance

    def test_to_bloch_ket0(self):
        assert states.to_bloch(states.ZERO) == BlochVector(0, 0, 1)

    def test_to_bloch_trace_oracle(self):
        rho = QubitState(I2 / 2 + SIGMA_X / 4)
        r = states.to_bloch(rho)
        assert (r.rx, r.ry, r.rz) == pytest.approx((0.5, 0, 0), abs=1e-12)
        assert r.rx == pytest.approx(np.real(np.trace(rho.matrix @ SIGMA_X)), abs=1e-12)

    def test_round_trip(self, rng):
        for _ in range(100):
            r = states.random_bloch(rng)
            back = states.to_bloch(states.from_bloch(r))
            np.testing.assert_allclose(back.as_array(), r.as_array(), atol=1e-12)

    @given(bloch_vectors())
    def test_round_trip_property(self, r):
        back = states.to_bloch(states.from_vector(r)).as_array()
        np.testing.assert_allclose(back, r, atol=1e-12)


class TestQubitStateValidation:
    def test_not_hermitian(self):
        with pytest.raises(UnphysicalStateError):
            QubitState(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_bad_trace(self):
        with pytest.raises(UnphysicalStateError):
            QubitState(np.eye(2))

    def test_negative_eigenvalue(self):
        with pytest.raises(UnphysicalStateError):
            QubitState(np.array([[1.2, 0], [0, -0.2]]))

    def test_matrix_read_only(self):
        with pytest.raises(ValueError):
            states.ZERO.matrix[0, 0] = 0


class TestPurity:
    def test_pure(self):
        assert states.purity_length(states.ZERO) == pytest.approx(1.0, abs=1e-12)

    def test_mixed(self):
        assert states.purity_length(states.MAXIMALLY_MIXED) == pytest.approx(0.0, abs=1e-12)

    def test_cos_pi_over_six(self):
        rho = states.from_vector((0, 0, math.cos(math.pi / 6)))
        assert states.purity_length(rho) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)


class TestEigen:
    def test_sqrt2_over_4_state(self):
        pair = states.eigen(states.from_vector((0, 0, math.sqrt(2) / 2)))
        assert pair.eigenvalues == pytest.approx((0.5 + math.sqrt(2) / 4, 0.5 - math.sqrt(2) / 4),
                                                 abs=1e-12)
        assert pair.eigenvalues == pytest.approx((0.854, 0.146), abs=5e-4)
        assert pair.eigenvectors[0] == BlochVector(0, 0, 1)
        assert pair.eigenvectors[1] == BlochVector(0, 0, -1)
        assert not pair.degenerate

    def test_pure(self):
        assert states.eigen(states.ZERO).eigenvalues == pytest.approx((1, 0), abs=1e-12)

    def test_degenerate(self):
        pair = states.eigen(states.MAXIMALLY_MIXED)
        assert pair.eigenvalues == (0.5, 0.5)
        assert pair.degenerate
        assert pair.eigenvectors == (BlochVector(0, 0, 1), BlochVector(0, 0, -1))

    @given(qubit_states())
    def test_reconstruction(self, rho):
        pair = states.eigen(rho)
        (l1, l2), (n1, n2) = pair.eigenvalues, pair.eigenvectors
        assert l1 + l2 == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(n1.as_array(), -n2.as_array(), atol=1e-9)
        rebuilt = l1 * states.from_bloch(n1).matrix + l2 * states.from_bloch(n2).matrix
        np.testing.assert_allclose(rebuilt, rho.matrix, atol=1e-10)

    def test_matches_numpy_eigvalsh(self, rng):
        for _ in range(50):
            rho = states.random_state(rng)
            expected = np.sort(np.linalg.eigvalsh(rho.matrix))[::-1]
            assert states.eigen(rho).eigenvalues == pytest.approx(tuple(expected), abs=1e-12)


class TestFidelity:
    def test_self_fidelity_pure(self):
        assert states.uhlmann_fidelity(states.ZERO, states.ZERO) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        assert states.uhlmann_fidelity(states.ZERO, states.ONE) == pytest.approx(0.0, abs=1e-12)

    def test_pure_vs_mixed(self):
        expected = sqrtm_fidelity(states.ZERO, states.MAXIMALLY_MIXED)
        assert expected == pytest.approx(0.5, abs=1e-12)
        assert states.uhlmann_fidelity(states.ZERO, states.MAXIMALLY_MIXED) == pytest.approx(
            expected, abs=1e-12)

    def test_closed_form_vs_sqrtm(self, rng):
        # mixed interior states keep sqrtm well conditioned
        for _ in range(200):
            rho = states.from_bloch(states.random_bloch(rng))
            sigma = states.from_bloch(states.random_bloch(rng))
            rho = states.from_vector(rho.bloch().as_array() * 0.999)
            sigma = states.from_vector(sigma.bloch().as_array() * 0.999)
            assert states.uhlmann_fidelity(rho, sigma) == pytest.approx(
                sqrtm_fidelity(rho, sigma), abs=1e-9)

    @given(qubit_states(), qubit_states())
    def test_range_and_symmetry(self, rho, sigma):
        f = states.uhlmann_fidelity(rho, sigma)
        assert 0.0 <= f <= 1.0
        assert f == pytest.approx(states.uhlmann_fidelity(sigma, rho), abs=1e-12)


class TestOverlap:
    def test_identical_pure(self):
        assert states.overlap(states.ZERO, states.ZERO) == pytest.approx(1.0, abs=1e-12)

    def test_antipodal_pure(self):
        assert states.overlap(states.ZERO, states.ONE) == pytest.approx(0.0, abs=1e-12)

    def test_half_length_sixty_degrees(self):
        a = states.from_vector((0, 0, 1))
        t = math.pi / 3
        b = states.from_vector((0.5 * math.sin(t), 0, 0.5 * math.cos(t)))
        direct = float(np.real(np.trace(a.matrix @ b.matrix)))
        assert direct == pytest.approx(0.625, abs=1e-12)
        assert states.overlap(a, b) == pytest.approx(direct, abs=1e-12)

    @given(bloch_vectors(), bloch_vectors())
    @settings(max_examples=200)
    def test_bloch_formula(self, ra, rb):
        a, b = states.from_vector(ra), states.from_vector(rb)
        assert states.overlap(a, b) == pytest.approx((1 + np.dot(ra, rb)) / 2, abs=1e-12)
        assert states.overlap(a, b) == pytest.approx(states.overlap(b, a), abs=1e-12)
        assert 0 - 1e-12 <= states.overlap(a, b) <= 1 + 1e-12

    @given(qubit_states())
    def test_self_overlap_is_purity(self, rho):
        r = states.purity_length(rho)
        assert states.overlap(rho, rho) == pytest.approx((1 + r**2) / 2, abs=1e-12)
