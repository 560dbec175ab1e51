import math

import numpy as np
import pytest

from ghzw_squeezing.channels import (
    CHANNEL_KINDS,
    KrausSet,
    amplitude_damping_kraus,
    apply_channel_all_qubits,
    depolarizing_kraus,
    kraus_set,
    normalize_kind,
    phase_damping_kraus,
    validate_kraus,
)
from ghzw_squeezing.qstate import density_from_pure, ghz_state, superposition_state, w_state

from oracles import apply_channel_tensor_sum, random_density

GAMMA_GRID = [k * 0.25 for k in range(21)]


class TestKrausConstruction:
    def test_amplitude_at_zero(self):
        ops = amplitude_damping_kraus(0.0).operators
        np.testing.assert_array_equal(ops[0], np.eye(2))
        np.testing.assert_array_equal(ops[1], np.zeros((2, 2)))

    def test_amplitude_full_decay_limit(self):
        ops = amplitude_damping_kraus(50.0).operators
        np.testing.assert_allclose(ops[0], np.diag([1.0, 0.0]), atol=1e-10)
        np.testing.assert_allclose(ops[1], [[0.0, 1.0], [0.0, 0.0]], atol=1e-10)

    def test_amplitude_at_ln2(self):
        ops = amplitude_damping_kraus(math.log(2.0)).operators
        np.testing.assert_allclose(ops[0], np.diag([1.0, 1.0 / math.sqrt(2.0)]), atol=1e-15)
        assert abs(ops[1][0, 1] - 1.0 / math.sqrt(2.0)) < 1e-15

    def test_phase_at_zero(self):
        ops = phase_damping_kraus(0.0).operators
        np.testing.assert_array_equal(ops[0], np.eye(2))
        np.testing.assert_array_equal(ops[1], np.zeros((2, 2)))
        np.testing.assert_array_equal(ops[2], np.zeros((2, 2)))

    def test_phase_at_ln2(self):
        ops = phase_damping_kraus(math.log(2.0)).operators
        s = 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose(ops[0], s * np.eye(2), atol=1e-15)
        np.testing.assert_allclose(ops[1], np.diag([s, 0.0]), atol=1e-15)
        np.testing.assert_allclose(ops[2], np.diag([0.0, s]), atol=1e-15)

    def test_depolarizing_at_zero(self):
        ops = depolarizing_kraus(0.0).operators
        np.testing.assert_array_equal(ops[0], np.eye(2))
        for op in ops[1:]:
            np.testing.assert_array_equal(op, np.zeros((2, 2)))

    def test_operator_counts(self):
        assert len(amplitude_damping_kraus(0.3).operators) == 2
        assert len(phase_damping_kraus(0.3).operators) == 3
        assert len(depolarizing_kraus(0.3).operators) == 4

    @pytest.mark.parametrize("ctor", [amplitude_damping_kraus, phase_damping_kraus, depolarizing_kraus])
    def test_rejects_negative_gamma(self, ctor):
        with pytest.raises(ValueError):
            ctor(-0.1)

    def test_kind_aliases(self):
        assert normalize_kind("amplitude") == "amplitude_damping"
        assert normalize_kind("phase") == "phase_damping"
        assert normalize_kind("Depolarizing") == "depolarizing"
        with pytest.raises(ValueError):
            normalize_kind("bitflip")


class TestCompleteness:
    @pytest.mark.parametrize("kind", CHANNEL_KINDS)
    def test_completeness_across_gamma(self, kind):
        for k in range(51):
            check = validate_kraus(kraus_set(kind, k * 0.1))
            assert check.passed
            assert check.completeness_dev < 1e-12

    def test_phase_completeness_is_algebraic_identity(self):
        assert validate_kraus(phase_damping_kraus(0.7)).completeness_dev < 1e-15

    def test_depolarizing_large_gamma(self):
        assert validate_kraus(depolarizing_kraus(5.0)).passed

    def test_flipped_exponent_sign_fails(self):
        # amplitude-damping E1 with sqrt(exp(+gamma_t)): completeness gives
        # diag(1, exp(gt) + 1 - exp(-gt)), a deviation of e - 1/e at gt = 1
        gt = 1.0
        bad = KrausSet(
            "amplitude_damping",
            gt,
            (
                np.array([[1.0, 0.0], [0.0, math.sqrt(math.exp(gt))]], dtype=complex),
                np.array([[0.0, math.sqrt(1.0 - math.exp(-gt))], [0.0, 0.0]], dtype=complex),
            ),
        )
        check = validate_kraus(bad)
        assert not check.passed
        assert abs(check.completeness_dev - (math.e - 1.0 / math.e)) < 1e-12


class TestApplyChannel:
    @pytest.mark.parametrize("kind", CHANNEL_KINDS)
    def test_identity_at_gamma_zero(self, kind):
        rng = np.random.default_rng(31)
        for _ in range(20):
            rho = random_density(rng, 8)
            out = apply_channel_all_qubits(rho, kraus_set(kind, 0.0), 3)
            assert np.abs(out - rho).max() < 1e-14

    def test_ghz_amplitude_damping_decays_to_ground(self):
        rho = apply_channel_all_qubits(density_from_pure(ghz_state()), amplitude_damping_kraus(50.0), 3)
        expected = np.zeros((8, 8), dtype=complex)
        expected[0, 0] = 1.0
        assert np.abs(rho - expected).max() < 1e-12

    def test_w_depolarizing_mixes_completely(self):
        rho = apply_channel_all_qubits(density_from_pure(w_state()), depolarizing_kraus(50.0), 3)
        assert np.abs(rho - np.eye(8) / 8.0).max() < 1e-12

    @pytest.mark.parametrize("kind", CHANNEL_KINDS)
    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
    def test_trace_preserving_and_positive(self, kind, alpha):
        rho0 = density_from_pure(superposition_state(alpha))
        for gamma_t in GAMMA_GRID:
            rho = apply_channel_all_qubits(rho0, kraus_set(kind, gamma_t), 3)
            assert abs(np.trace(rho).real - 1.0) < 1e-10
            assert np.abs(rho - rho.conj().T).max() < 1e-10
            assert np.linalg.eigvalsh(rho).min() >= -1e-10

    @pytest.mark.parametrize("kind", CHANNEL_KINDS)
    @pytest.mark.parametrize("gamma_t", [0.0, 0.3, 1.7])
    def test_equals_full_tensor_sum(self, kind, gamma_t):
        rng = np.random.default_rng(32)
        kset = kraus_set(kind, gamma_t)
        for rho in (density_from_pure(superposition_state(0.5)), random_density(rng, 8)):
            fast = apply_channel_all_qubits(rho, kset, 3)
            oracle = apply_channel_tensor_sum(rho, kset.operators, 3)
            assert np.abs(fast - oracle).max() < 1e-12

    def test_depolarizing_purity_non_increasing(self):
        rho0 = density_from_pure(superposition_state(0.5))
        purities = []
        for gamma_t in GAMMA_GRID:
            rho = apply_channel_all_qubits(rho0, depolarizing_kraus(gamma_t), 3)
            purities.append(np.einsum("ij,ji->", rho, rho).real)
        assert all(b <= a + 1e-12 for a, b in zip(purities, purities[1:]))

    @pytest.mark.parametrize("kind", CHANNEL_KINDS)
    def test_semigroup_composition(self, kind):
        rho0 = density_from_pure(superposition_state(0.3))
        for g1, g2 in ((0.6, 0.9), (0.2, 2.3)):
            seq = apply_channel_all_qubits(rho0, kraus_set(kind, g1), 3)
            seq = apply_channel_all_qubits(seq, kraus_set(kind, g2), 3)
            direct = apply_channel_all_qubits(rho0, kraus_set(kind, g1 + g2), 3)
            assert np.abs(seq - direct).max() < 1e-10

    def test_depolarizing_fixed_point(self):
        mixed = np.eye(8, dtype=complex) / 8.0
        for gamma_t in GAMMA_GRID:
            out = apply_channel_all_qubits(mixed, depolarizing_kraus(gamma_t), 3)
            assert np.abs(out - mixed).max() < 1e-12

    def test_depolarizing_single_qubit_action(self):
        # the map contracts the Bloch vector by exp(-gamma_t):
        # rho -> q rho + (1 - q) I/2
        rng = np.random.default_rng(33)
        rho = random_density(rng, 2)
        for gamma_t in (0.4, 1.3, 6.0):
            q = math.exp(-gamma_t)
            out = apply_channel_all_qubits(rho, depolarizing_kraus(gamma_t), 1)
            expected = q * rho + (1.0 - q) * np.eye(2) / 2.0
            assert np.abs(out - expected).max() < 1e-14

    def test_rejects_dim_mismatch(self):
        with pytest.raises(ValueError):
            apply_channel_all_qubits(np.eye(4, dtype=complex) / 4, amplitude_damping_kraus(0.1), 3)

    def test_rejects_incomplete_kraus_set(self):
        bad = KrausSet("amplitude_damping", 0.0, (np.eye(2, dtype=complex) * 0.5,))
        with pytest.raises(ValueError):
            apply_channel_all_qubits(np.eye(8, dtype=complex) / 8, bad, 3)
