import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twqkd.attacks import (
    AncillaOverlaps,
    BlochDirection,
    PureQubit,
    X_DIR,
    Y_DIR,
    Z_DIR,
    disturbance,
    disturbance_profile,
    equatorial_direction,
    feasible_cross_max,
    identity_attack,
    interference_attack,
    is_depolarizing,
    phase_covariant_attack,
    random_attack,
    realize_isometry,
    sphere_samples,
    symmetric_attack,
    transform_basis,
    validate,
)
from twqkd.errors import DomainError, InfeasibleParameters


def some_random_attacks(n=10, seed=99):
    rng = np.random.default_rng(seed)
    return [random_attack(rng) for _ in range(n)]


class TestValidate:
    def test_identity_attack_passes(self):
        assert validate(identity_attack()).ok

    def test_symmetric_quarter_passes(self):
        assert validate(symmetric_attack(0.25)).ok

    def test_normalization_failure_flagged(self):
        g = np.array(identity_attack().g, copy=True)
        g[0, 0] = 0.9  # keep+flip weights of input 0 now sum to 0.9
        report = validate(AncillaOverlaps(g))
        assert not report.normalization_ok
        assert not report.ok
        assert report.normalization_residuals[0] == pytest.approx(0.1)

    def test_orthogonality_failure_flagged(self):
        g = np.array(symmetric_attack(0.1).g, copy=True)
        g[0, 2] = g[2, 0] = 0.05  # breaks g[00,10] + g[01,11] = 0
        report = validate(AncillaOverlaps(g))
        assert not report.orthogonality_ok

    def test_random_attacks_pass(self):
        for attack in some_random_attacks():
            assert validate(attack).ok


class TestSymmetricAttack:
    def test_zero_noise_is_identity(self):
        np.testing.assert_allclose(
            symmetric_attack(0.0).g, identity_attack().g, atol=1e-15
        )

    def test_quarter_entries(self):
        g = symmetric_attack(0.25).g
        np.testing.assert_allclose(np.diag(g).real, [0.75, 0.25, 0.25, 0.75])
        assert g[0, 3] == pytest.approx(0.5)
        assert g[1, 2] == 0

    def test_psd_over_scan(self):
        # eigenvalue scan over the whole working range
        for qf in np.linspace(0.0, 0.5, 26):
            attack = symmetric_attack(qf)
            assert validate(attack).ok
            assert np.linalg.eigvalsh(attack.g).min() >= -1e-10

    def test_feasible_up_to_two_thirds(self):
        assert validate(symmetric_attack(2 / 3)).ok

    def test_domain_errors(self):
        for bad in (-0.1, 0.7, 1.2):
            with pytest.raises(DomainError):
                symmetric_attack(bad)


class TestPhaseCovariantAttack:
    def test_zero_is_identity(self):
        np.testing.assert_allclose(
            phase_covariant_attack(0.0).g, identity_attack().g, atol=1e-15
        )

    def test_entries(self):
        g = phase_covariant_attack(0.2).g
        np.testing.assert_allclose(np.diag(g).real, [0.8, 0.2, 0.2, 0.8])
        assert g[0, 3] == pytest.approx(0.8)

    def test_feasible_on_unit_interval(self):
        for d in np.linspace(0.0, 1.0, 11):
            assert validate(phase_covariant_attack(d)).ok

    def test_equatorial_disturbance_is_half_d(self):
        attack = phase_covariant_attack(0.2)
        for phi in np.linspace(0, 2 * math.pi, 9):
            assert disturbance(attack, PureQubit(math.pi / 2, phi)) == pytest.approx(
                0.1, abs=1e-12
            )


class TestInterferenceAttack:
    def test_zero_cross_equals_symmetric(self):
        np.testing.assert_allclose(
            interference_attack(0.1, 0.0).g, symmetric_attack(0.1).g, atol=1e-15
        )

    def test_validates_inside_region(self):
        assert validate(interference_attack(0.1, 0.05)).ok

    def test_keeps_z_noise(self):
        for qf in (0.1, 0.3):
            x = feasible_cross_max(qf) / 2
            g = interference_attack(qf, x).g
            assert g[1, 1] == pytest.approx(qf)
            assert g[2, 2] == pytest.approx(qf)

    def test_infeasible_raises(self):
        with pytest.raises(InfeasibleParameters):
            interference_attack(0.1, 0.4)
        with pytest.raises(InfeasibleParameters):
            interference_attack(0.0, 0.01)

    def test_cross_max_boundary(self):
        for qf in (0.1, 0.25, 0.5):
            x_max = feasible_cross_max(qf)
            assert validate(interference_attack(qf, x_max * (1 - 1e-9))).ok
            with pytest.raises(InfeasibleParameters):
                interference_attack(qf, x_max + 1e-3)


class TestTransformBasis:
    def test_identity_attack_invariant(self):
        base = identity_attack()
        for direction in (X_DIR, Y_DIR, BlochDirection(0.7, 2.1)):
            moved = transform_basis(base, direction)
            np.testing.assert_allclose(moved.g, base.g, atol=1e-12)

    def test_symmetric_to_x_diagonal(self):
        moved = transform_basis(symmetric_attack(0.15), X_DIR)
        np.testing.assert_allclose(
            np.diag(moved.g).real, [0.85, 0.15, 0.15, 0.85], atol=1e-12
        )

    def test_roundtrip_reproduces_input(self):
        directions = [X_DIR, Y_DIR, BlochDirection(1.0, 0.4), BlochDirection(2.2, 5.0)]
        for attack in some_random_attacks(6):
            for direction in directions:
                back = transform_basis(transform_basis(attack, direction), Z_DIR)
                np.testing.assert_allclose(back.g, attack.g, atol=1e-10)

    def test_preserves_validity(self):
        rng = np.random.default_rng(3)
        for attack in some_random_attacks(8):
            direction = BlochDirection(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            assert validate(transform_basis(attack, direction)).ok

    def test_diagonal_matches_eigenstate_disturbance(self):
        for attack in some_random_attacks(6):
            for direction in (X_DIR, Y_DIR, BlochDirection(0.9, 1.7)):
                moved = transform_basis(attack, direction)
                d0 = disturbance(attack, direction.eigenstate(0))
                d1 = disturbance(attack, direction.eigenstate(1))
                assert moved.g[1, 1].real == pytest.approx(d0, abs=1e-10)
                assert moved.g[2, 2].real == pytest.approx(d1, abs=1e-10)


class TestDisturbance:
    def test_symmetric_on_random_states(self):
        attack = symmetric_attack(0.15)
        rng = np.random.default_rng(17)
        thetas = rng.uniform(0, math.pi, 200)
        phis = rng.uniform(0, 2 * math.pi, 200)
        vals = disturbance_profile(attack, thetas, phis)
        np.testing.assert_allclose(vals, 0.15, atol=1e-12)

    def test_identity_attack_never_disturbs(self):
        attack = identity_attack()
        for theta, phi in zip(*sphere_samples(50)):
            assert disturbance(attack, PureQubit(theta, phi)) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_phase_covariant_poles(self):
        attack = phase_covariant_attack(0.2)
        assert disturbance(attack, PureQubit(0.0, 0.0)) == pytest.approx(0.2)
        assert disturbance(attack, PureQubit(math.pi, 0.0)) == pytest.approx(0.2)

    @given(
        st.floats(min_value=0.0, max_value=math.pi),
        st.floats(min_value=0.0, max_value=2 * math.pi),
    )
    def test_global_phase_invariance(self, theta, phi):
        attack = phase_covariant_attack(0.3)
        a = disturbance(attack, PureQubit(theta, phi))
        b = disturbance(attack, PureQubit(theta, phi + 2 * math.pi))
        assert a == pytest.approx(b, abs=1e-12)


class TestIsDepolarizing:
    def test_symmetric_true(self):
        assert is_depolarizing(symmetric_attack(0.1))

    def test_identity_true(self):
        assert is_depolarizing(identity_attack())

    def test_phase_covariant_false(self):
        # poles flip with 0.2, the equator with 0.1
        attack = phase_covariant_attack(0.2)
        assert not is_depolarizing(attack)
        assert disturbance(attack, PureQubit(0.0, 0.0)) == pytest.approx(0.2)
        assert disturbance(attack, PureQubit(math.pi / 2, 0.0)) == pytest.approx(0.1)


class TestRealizeIsometry:
    def test_identity_columns(self):
        iso = realize_isometry(identity_attack())
        dim = iso.ancillas.shape[1]
        eps = iso.ancillas[0]
        assert np.linalg.norm(eps) == pytest.approx(1.0)
        np.testing.assert_allclose(iso.columns[:dim, 0], eps, atol=1e-12)
        np.testing.assert_allclose(iso.columns[dim:, 1], eps, atol=1e-12)
        np.testing.assert_allclose(iso.columns[dim:, 0], 0, atol=1e-12)
        np.testing.assert_allclose(iso.columns[:dim, 1], 0, atol=1e-12)

    def test_gram_roundtrip(self):
        for attack in [symmetric_attack(0.25), *some_random_attacks(8)]:
            iso = realize_isometry(attack)
            recovered = iso.ancillas.conj() @ iso.ancillas.T
            np.testing.assert_allclose(recovered, attack.g, atol=1e-9)

    def test_columns_orthonormal(self):
        for attack in some_random_attacks(8):
            cols = realize_isometry(attack).columns
            np.testing.assert_allclose(
                cols.conj().T @ cols, np.eye(2), atol=1e-10
            )

    def test_not_psd_rejected(self):
        from twqkd.errors import NotPSD

        g = np.diag([1.0, -0.5, 0.5, 1.0]).astype(complex)
        with pytest.raises(NotPSD):
            realize_isometry(AncillaOverlaps(g))

    def test_symmetric_induces_depolarizing_channel(self):
        # process tomography on the 3-axis eigenstate grid: the reduced
        # output must be (1 - 2 qf) rho + qf * Id for every input
        for qf in (0.1, 0.3):
            iso = realize_isometry(symmetric_attack(qf))
            for direction in (X_DIR, Y_DIR, Z_DIR):
                for ket in direction.kets():
                    out = iso.reduced_state(ket)
                    expected = (1 - 2 * qf) * np.outer(ket, ket.conj()) + qf * np.eye(2)
                    np.testing.assert_allclose(out, expected, atol=1e-10)


class TestSerialization:
    def test_json_roundtrip_exact(self):
        for attack in [symmetric_attack(0.1), *some_random_attacks(5)]:
            clone = AncillaOverlaps.from_json(attack.to_json())
            assert np.array_equal(clone.g, attack.g)
            assert clone.basis == attack.basis

    def test_general_basis_roundtrip(self):
        attack = transform_basis(symmetric_attack(0.2), BlochDirection(0.3, 1.1))
        clone = AncillaOverlaps.from_json(attack.to_json())
        assert np.array_equal(clone.g, attack.g)
        assert clone.basis.theta == attack.basis.theta
        assert clone.basis.phi == attack.basis.phi

    def test_schema_shape(self):
        obj = json.loads(symmetric_attack(0.1).to_json())
        assert obj["basis"] == "z"
        assert len(obj["entries"]) == 16
        assert all(len(pair) == 2 for pair in obj["entries"])


class TestDirections:
    def test_named_kets_conventions(self):
        k0x, k1x = X_DIR.kets()
        np.testing.assert_allclose(k0x, [1 / math.sqrt(2), 1 / math.sqrt(2)])
        assert abs(np.vdot(k1x, np.array([1, -1]) / math.sqrt(2))) == pytest.approx(1)
        k0y, _ = Y_DIR.kets()
        np.testing.assert_allclose(k0y, [1 / math.sqrt(2), 1j / math.sqrt(2)])
        k0z, k1z = Z_DIR.kets()
        np.testing.assert_allclose(k0z, [1, 0])
        np.testing.assert_allclose(k1z, [0, 1])  # exact computational basis

    def test_kets_orthonormal(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            d = BlochDirection(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            k0, k1 = d.kets()
            assert abs(np.vdot(k0, k1)) < 1e-12
            assert np.linalg.norm(k0) == pytest.approx(1.0)

    def test_eigenstate_kets_match(self):
        for d in (X_DIR, Y_DIR, equatorial_direction(1.3)):
            for bit in (0, 1):
                ket_a = d.kets()[bit]
                ket_b = d.eigenstate(bit).ket()
                # equal up to a global phase
                overlap = abs(np.vdot(ket_a, ket_b))
                assert overlap == pytest.approx(1.0, abs=1e-12)
