import math

import numpy as np
import pytest

from accelbell.fockspace import (
    FactorDims,
    Ket,
    basis_ket,
    identity,
    log_negativity,
    outer,
    partial_trace,
    tensor,
    tensor_op,
)
from accelbell.rindler import TruncationSpec, vacuum_two_mode
from accelbell.wigner import (
    ChshResult,
    ExperimentConfig,
    termwise_reduced_density,
    bell_basis,
    chsh,
    chsh_from_density,
    entanglement_curve,
    friend_composite_state,
    initial_field_state,
    message_factorization_check,
    observables,
    post_measurement_state,
    schmidt_rank,
)

import oracles

SQRT_HALF = 1 / math.sqrt(2)
S_MAX = 2 * math.sqrt(2)


def config_compat(r, n=3, theta=math.pi / 4):
    return ExperimentConfig(mode="compat", theta=theta, r=r, trunc=TruncationSpec.fixed(n))

def config_faithful(r, n=3, theta=math.pi / 4, bob="global"):
    return ExperimentConfig(
        mode="faithful", theta=theta, r=r, trunc=TruncationSpec.fixed(n), bob_observables=bob
    )


class TestExperimentConfig:
    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            ExperimentConfig(mode="warp")

    def test_reduced_requires_faithful(self):
        with pytest.raises(ValueError):
            ExperimentConfig(mode="compat", bob_observables="reduced")

    def test_negative_squeeze_rejected(self):
        with pytest.raises(ValueError):
            ExperimentConfig(mode="compat", r=-1.0)

    def test_adaptive_truncation_feeds_ladder_size(self):
        config = ExperimentConfig(mode="compat", r=0.5, trunc=TruncationSpec.adaptive(0.1))
        assert config.n_levels == 3


class TestFriendCompositeState:
    def test_amplitudes(self):
        psi = friend_composite_state()
        assert np.abs(psi.amplitudes - np.array([SQRT_HALF, 0, 0, SQRT_HALF])).max() < 1e-15

    def test_unit_norm(self):
        assert abs(friend_composite_state().norm() - 1.0) < 1e-12

    def test_reduced_mode_is_maximally_mixed(self):
        rho = partial_trace(outer(friend_composite_state(), friend_composite_state()), {1})
        assert np.abs(rho.matrix - np.eye(2) / 2).max() < 1e-12


class TestBellBasis:
    def test_phi_pair_orthogonal(self):
        phi_plus, phi_minus, _, _ = bell_basis()
        assert abs(phi_plus.inner(phi_minus)) < 1e-15

    def test_friend_state_is_phi_plus(self):
        phi_plus = bell_basis()[0]
        assert np.abs(friend_composite_state().amplitudes - phi_plus.amplitudes).max() < 1e-15

    def test_gram_matrix_is_identity(self):
        states = bell_basis()
        gram = np.array([[a.inner(b) for b in states] for a in states])
        assert np.abs(gram - np.eye(4)).max() < 1e-15


class TestMessageFactorization:
    def test_outcome_independent_message_factors(self):
        assert message_factorization_check(2) is True

    def test_scalar_message(self):
        assert message_factorization_check(1) is True

    def test_outcome_correlated_message_does_not_factor(self):
        # Message recording the outcome: Schmidt rank 2 across the cut.
        amps = np.zeros(8, dtype=complex)
        amps[0b000] = SQRT_HALF  # mode 0, memory 0, message 0
        amps[0b111] = SQRT_HALF  # mode 1, memory 1, message 1
        entangled = Ket(amps, FactorDims((2, 2, 2)))
        assert schmidt_rank(entangled, 2) == 2


class TestInitialFieldState:
    def test_theta_zero_is_psi_plus(self):
        psi = initial_field_state(0.0)
        assert np.abs(psi.amplitudes - np.array([0, SQRT_HALF, SQRT_HALF, 0])).max() < 1e-15

    def test_theta_pi_is_minus_phi_minus(self):
        psi = initial_field_state(math.pi)
        assert np.abs(psi.amplitudes - np.array([-SQRT_HALF, 0, 0, SQRT_HALF])).max() < 1e-12

    def test_quarter_pi_amplitudes(self):
        psi = initial_field_state(math.pi / 4)
        s8, c8 = math.sin(math.pi / 8), math.cos(math.pi / 8)
        expected = np.array([-s8, c8, c8, s8]) * SQRT_HALF
        assert np.abs(psi.amplitudes - expected).max() < 1e-15

    def test_unit_norm_any_theta(self):
        for theta in (0.1, 1.0, 2.5):
            assert abs(initial_field_state(theta).norm() - 1.0) < 1e-12


class TestPostMeasurementState:
    def test_inertial_unit_norm(self):
        psi = post_measurement_state(ExperimentConfig(mode="inertial"))
        assert abs(psi.norm() - 1.0) < 1e-12
        assert tuple(psi.dims) == (2, 2, 2, 2)

    def test_compat_matches_script_assembly(self):
        for r in (0.0, 0.6, 1.3):
            psi = post_measurement_state(config_compat(r))
            expected, _ = oracles.script_branch_state(3, r)
            assert np.abs(psi.amplitudes - expected).max() < 1e-15

    def test_compat_zero_squeeze_wings_share_field_vector(self):
        # At r = 0 both accelerated-wing branch vectors hold |0> on the field
        # factor; only the lab factor tells them apart.
        psi = post_measurement_state(config_compat(0.0)).amplitudes.reshape(3, 3, 3, 3)
        assert np.abs(psi[:, :, 1:, :]).max() == 0.0

    def test_faithful_zero_squeeze_embeds_inertial_state(self):
        inertial = post_measurement_state(ExperimentConfig(mode="inertial"))
        faithful = post_measurement_state(config_faithful(0.0))
        grid = faithful.amplitudes.reshape(3, 2, 3, 3, 2)
        small = inertial.amplitudes.reshape(2, 2, 2, 2)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for m in range(2):
                        assert grid[i, j, k, 0, m] == pytest.approx(small[i, j, k, m], abs=1e-15)
        assert np.abs(grid[2]).max() == 0.0  # no support above the embedded block
        assert np.abs(grid[:, :, :, 1:, :]).max() == 0.0  # wedge II stays in |0>


class TestObservables:
    def test_inertial_z_pattern(self):
        a1, _, _, _ = observables(ExperimentConfig(mode="inertial"))
        assert np.abs(a1.matrix - np.diag([1, 0, 0, -1]).astype(complex)).max() < 1e-15

    def test_compat_spectrum_bounded(self):
        # Compat branch vectors are subnormalized, so the nonzero eigenvalues
        # shrink below 1 in magnitude but never exceed it.
        for op in observables(config_compat(0.7)):
            eigenvalues = np.linalg.eigvalsh(op.matrix)
            assert eigenvalues.min() >= -1 - 1e-12
            assert eigenvalues.max() <= 1 + 1e-12

    def test_inertial_eigenvalues_exactly_binary(self):
        for op in observables(ExperimentConfig(mode="inertial")):
            eigenvalues = np.linalg.eigvalsh(op.matrix)
            distance = np.min(
                np.abs(eigenvalues[:, None] - np.array([-1.0, 0.0, 1.0])[None, :]), axis=1
            )
            assert distance.max() < 1e-12

    def test_flip_squared_is_outcome_projector(self):
        a1, a2, _, _ = observables(ExperimentConfig(mode="inertial"))
        g = tensor([basis_ket(2, 0), basis_ket(2, 0)])
        e = tensor([basis_ket(2, 1), basis_ket(2, 1)])
        projector = (outer(g, g) + outer(e, e)).matrix
        assert np.abs(a2.matrix @ a2.matrix - projector).max() < 1e-12

    def test_compat_operators_match_script(self):
        for r in (0.0, 0.8):
            _, wings = oracles.script_branch_state(3, r)
            expected = oracles.script_operators(*wings)
            computed = observables(config_compat(r))
            for ours, theirs in zip(computed, expected):
                assert np.abs(ours.matrix - theirs).max() < 1e-15

    def test_wings_commute(self):
        for config in (ExperimentConfig(mode="inertial"), config_compat(0.9), config_faithful(0.9)):
            a1, a2, b1, b2 = observables(config)
            eye_a = identity(a1.dims)
            eye_b = identity(b1.dims)
            for op_a in (a1, a2):
                for op_b in (b1, b2):
                    left = tensor_op([op_a, eye_b]).matrix
                    right = tensor_op([eye_a, op_b]).matrix
                    assert np.abs(left @ right - right @ left).max() < 1e-12


class TestChsh:
    def test_inertial_maximal_violation(self):
        result = chsh(ExperimentConfig(mode="inertial"))
        assert abs(result.s - S_MAX) < 1e-9

    def test_inertial_correlators_match_brute_force(self):
        result = chsh(ExperimentConfig(mode="inertial"))
        expected = oracles.inertial_correlators(math.pi / 4)
        assert np.abs(np.array(result.correlators) - np.array(expected)).max() < 1e-12

    def test_compat_zero_squeeze_maximal_violation(self):
        assert abs(chsh(config_compat(0.0)).s - S_MAX) < 1e-9

    def test_compat_crossing_region(self):
        # Near the classical bound the compat statistic passes through 2; the
        # bracketing squeeze value comes from the independent script oracle.
        r_cross = 0.6236
        assert abs(oracles.script_s(3, r_cross) - 2.0) < 5e-3
        result = chsh(config_compat(r_cross))
        assert abs(result.s - 2.0) < 5e-3
        assert abs(oracles.script_acceleration(r_cross) - 5.3) < 0.3

    @pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 1.5, 1.99])
    def test_compat_matches_script_oracle(self, r):
        assert abs(chsh(config_compat(r)).s - oracles.script_s(3, r)) < 1e-9

    def test_faithful_zero_squeeze_recovers_inertial(self):
        assert abs(chsh(config_faithful(0.0)).s - S_MAX) < 1e-9
        assert abs(chsh(config_faithful(0.0, bob="reduced")).s - S_MAX) < 1e-9

    def test_inertial_argmax_at_quarter_pi(self):
        thetas = np.linspace(0.0, math.pi / 2, 101)  # resolution pi/200
        values = [chsh(ExperimentConfig(mode="inertial", theta=float(t))).s for t in thetas]
        assert int(np.argmax(values)) == 50
        assert abs(thetas[50] - math.pi / 4) < 1e-15

    def test_correlators_bounded_all_modes(self):
        configs = [ExperimentConfig(mode="inertial")]
        for r in (0.0, 0.5, 1.0, 1.9):
            configs.append(config_compat(r))
            configs.append(config_faithful(r))
            configs.append(config_faithful(r, bob="reduced"))
        for config in configs:
            result = chsh(config)
            assert max(abs(e) for e in result.correlators) <= 1 + 1e-9
            assert 0.0 <= result.s <= S_MAX + 1e-9

    def test_statistic_is_absolute_combination(self):
        result = chsh(config_compat(0.4))
        e11, e12, e21, e22 = result.correlators
        assert result.s == abs(e11 + e12 + e21 - e22)


class TestAppendixDensity:
    @pytest.mark.parametrize(
        "n,r,theta",
        [(3, 0.5, math.pi / 4), (3, 1.0, math.pi / 4), (4, 0.3, math.pi / 3)],
    )
    def test_matches_generic_partial_trace(self, n, r, theta):
        config = config_faithful(r, n=n, theta=theta)
        term_by_term = termwise_reduced_density(config)
        psi = post_measurement_state(config)
        generic = partial_trace(outer(psi, psi), {3})
        assert np.linalg.norm(term_by_term.matrix - generic.matrix) < 1e-12

    def test_trace_equals_branch_norm(self):
        config = config_faithful(0.8)
        psi = post_measurement_state(config)
        assert abs(termwise_reduced_density(config).trace().real - psi.norm() ** 2) < 1e-12

    def test_hermitian(self):
        rho = termwise_reduced_density(config_faithful(0.8))
        assert np.abs(rho.matrix - rho.matrix.conj().T).max() < 1e-12

    @pytest.mark.parametrize(
        "n,r,theta",
        [(3, 0.5, math.pi / 4), (3, 1.0, math.pi / 4), (4, 0.3, math.pi / 3)],
    )
    def test_chsh_agrees_between_constructions(self, n, r, theta):
        config = config_faithful(r, n=n, theta=theta, bob="reduced")
        psi = post_measurement_state(config)
        from_trace = chsh_from_density(partial_trace(outer(psi, psi), {3}), config)
        from_terms = chsh_from_density(termwise_reduced_density(config), config)
        assert abs(from_trace.s - from_terms.s) < 1e-10
        assert abs(chsh(config).s - from_terms.s) < 1e-10

    def test_requires_faithful_mode(self):
        with pytest.raises(ValueError):
            termwise_reduced_density(config_compat(0.5))


class TestEntanglementCurve:
    def test_zero_squeeze_matches_exact_four_dim_oracle(self):
        expected = oracles.log_negativity_two_qubit(oracles.field_state_two_qubit(math.pi / 4))
        value = entanglement_curve(config_faithful(0.0, n=10))
        assert abs(value - expected) < 1e-9

    def test_strictly_decreasing_in_squeeze(self):
        values = [entanglement_curve(config_faithful(r, n=10)) for r in (0.0, 0.25, 0.5, 1.0)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_separable_replacement_vanishes(self):
        # Product of the vacuum mode with an uncorrelated wedge pair: zero
        # negativity across the same partition after the same reduction.
        n = 6
        psi = tensor([basis_ket(n, 0), vacuum_two_mode(n, 0.7)])
        rho = partial_trace(outer(psi, psi), {2}).normalized()
        assert abs(log_negativity(rho, {0})) < 1e-9

    def test_requires_faithful_mode(self):
        with pytest.raises(ValueError):
            entanglement_curve(config_compat(0.5))


class TestFaithfulDivergesFromCompat:
    def test_curves_differ_for_nonzero_squeeze(self):
        # The faithful expansions change the physics away from r = 0; record
        # the divergence rather than pretending the curves coincide.
        gaps = []
        for r in (0.25, 0.5, 1.0):
            gaps.append(abs(chsh(config_faithful(r)).s - chsh(config_compat(r)).s))
        assert max(gaps) > 1e-2
