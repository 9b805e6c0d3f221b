import math

import numpy as np
import pytest

from _support import random_hermitian, random_state_amplitudes, random_unitary
from quantvar.hilbert import (
    DensityOperator,
    DimensionError,
    HermitianOperator,
    StateVector,
    ValidationError,
    conjugate,
    density_from_state,
    dot_product_operator,
    eigensystem,
    identity_operator,
    is_maximal_operator,
    operator_from_variable,
    pauli_x,
    pauli_y,
    pauli_z,
    projection_vector,
    projector_from_state,
    singlet_state,
    spectral_decompose,
    spin_component,
    tensor,
)

RT2 = math.sqrt(2.0)


def test_hermitian_operator_rejects_asymmetric_matrix():
    with pytest.raises(ValidationError):
        HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_state_vector_requires_unit_norm():
    with pytest.raises(ValidationError):
        StateVector(np.array([1.0, 1.0]))


def test_state_vector_phase_convention():
    s = StateVector(np.array([0.0, 1j / RT2, -1j / RT2, 0.0]))
    assert s.amplitudes[1].real == pytest.approx(1 / RT2, abs=1e-15)
    assert abs(s.amplitudes[1].imag) < 1e-15


def test_density_operator_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError):
        DensityOperator(np.diag([1.5, -0.5]).astype(complex))


def test_density_operator_rejects_wrong_trace():
    with pytest.raises(ValidationError):
        DensityOperator(np.diag([0.7, 0.7]).astype(complex))


def test_operator_from_variable_diagonal():
    basis = [StateVector([1.0, 0.0]), StateVector([0.0, 1.0])]
    op = operator_from_variable([1.0, -1.0], basis)
    assert np.allclose(op.entries, np.diag([1.0, -1.0]))


def test_operator_from_variable_hadamard_basis():
    # Expanding the outer products by hand gives the exchange matrix.
    basis = [StateVector([1 / RT2, 1 / RT2]), StateVector([1 / RT2, -1 / RT2])]
    op = operator_from_variable([1.0, -1.0], basis)
    assert np.allclose(op.entries, np.array([[0.0, 1.0], [1.0, 0.0]]), atol=1e-15)


def test_operator_from_variable_spectrum_is_value_set():
    rng = np.random.default_rng(5)
    u = random_unitary(rng, 4)
    basis = [StateVector(u[:, k]) for k in range(4)]
    values = [2.5, -1.0, 0.25, 7.0]
    dec = spectral_decompose(operator_from_variable(values, basis))
    assert np.allclose(sorted(dec.eigenvalues), sorted(values), atol=1e-10)
    assert dec.multiplicities == (1, 1, 1, 1)


def test_operator_from_variable_rejects_bad_inputs():
    basis = [StateVector([1.0, 0.0]), StateVector([0.0, 1.0])]
    with pytest.raises(ValidationError, match="distinct"):
        operator_from_variable([1.0, 1.0], basis)
    skewed = [StateVector([1.0, 0.0]), StateVector([1 / RT2, 1 / RT2])]
    with pytest.raises(ValidationError, match="orthonormal"):
        operator_from_variable([1.0, -1.0], skewed)


def test_conjugate_with_identity_is_noop():
    op = pauli_z()
    out = conjugate(op, np.eye(2))
    assert np.allclose(out.entries, op.entries)


def test_conjugate_hadamard_turns_z_into_x():
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / RT2
    out = conjugate(pauli_z(), h)
    assert np.allclose(out.entries, pauli_x().entries, atol=1e-15)


def test_conjugate_rejects_non_unitary():
    with pytest.raises(ValidationError, match="unitary"):
        conjugate(pauli_z(), np.array([[1.0, 0.0], [0.0, 2.0]]))


def test_conjugate_preserves_spectrum():
    rng = np.random.default_rng(17)
    for n in (2, 3, 5, 8):
        op = HermitianOperator(random_hermitian(rng, n))
        w = random_unitary(rng, n)
        before, _ = eigensystem(op)
        after, _ = eigensystem(conjugate(op, w))
        assert np.allclose(before, after, atol=1e-10)


def test_spectral_decompose_diag():
    dec = spectral_decompose(pauli_z())
    assert dec.eigenvalues == (-1.0, 1.0)
    assert np.allclose(dec.projection_for(1.0).entries, np.diag([1.0, 0.0]))
    assert np.allclose(dec.projection_for(-1.0).entries, np.diag([0.0, 1.0]))


def test_spectral_decompose_identity_multiplicity():
    dec = spectral_decompose(identity_operator(3))
    assert dec.eigenvalues == (1.0,)
    assert dec.multiplicities == (3,)
    assert np.allclose(dec.projections[0].entries, np.eye(3))


def test_spectral_decompose_matches_lapack_eigenvalues():
    rng = np.random.default_rng(23)
    for trial in range(40):
        n = int(rng.integers(1, 17))
        h = random_hermitian(rng, n)
        values, vectors = eigensystem(HermitianOperator(h))
        assert np.allclose(values, np.linalg.eigvalsh(h), atol=1e-10)
        assert np.allclose(vectors.conj().T @ vectors, np.eye(n), atol=1e-10)
        assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, h, atol=1e-10)


def test_spectral_projections_properties():
    rng = np.random.default_rng(29)
    for trial in range(20):
        n = int(rng.integers(2, 9))
        op = HermitianOperator(random_hermitian(rng, n))
        dec = spectral_decompose(op)
        total = sum(p.entries for p in dec.projections)
        assert np.allclose(total, np.eye(n), atol=1e-10)
        recon = sum(v * p.entries for v, p in zip(dec.eigenvalues, dec.projections))
        assert np.allclose(recon, op.entries, atol=1e-10)
        for i, p in enumerate(dec.projections):
            assert np.allclose(p.entries @ p.entries, p.entries, atol=1e-10)
            for j, q in enumerate(dec.projections):
                if i != j:
                    assert np.allclose(p.entries @ q.entries, 0.0, atol=1e-10)


def test_spectral_dimension_cap():
    with pytest.raises(DimensionError):
        spectral_decompose(identity_operator(65))


def test_is_maximal_operator():
    assert is_maximal_operator(HermitianOperator(np.diag([1.0, 2.0, 3.0])))
    assert not is_maximal_operator(HermitianOperator(np.diag([1.0, 1.0, 2.0])))
    assert not is_maximal_operator(dot_product_operator())


def test_maximality_iff_rank_one_projections():
    rng = np.random.default_rng(31)
    candidates = [
        HermitianOperator(np.diag([1.0, 1.0, 4.0])),
        HermitianOperator(random_hermitian(rng, 4)),
        dot_product_operator(),
        identity_operator(2),
    ]
    for op in candidates:
        dec = spectral_decompose(op)
        all_rank_one = all(abs(p.trace() - 1.0) < 1e-10 for p in dec.projections)
        assert is_maximal_operator(op) == all_rank_one


def test_tensor_identity():
    out = tensor(identity_operator(2), identity_operator(3))
    assert np.allclose(out.entries, np.eye(6))


def test_tensor_states_unit_norm():
    rng = np.random.default_rng(37)
    s = StateVector(random_state_amplitudes(rng, 2))
    t = StateVector(random_state_amplitudes(rng, 3))
    assert np.linalg.norm(tensor(s, t).amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_tensor_trace_multiplicative():
    rng = np.random.default_rng(41)
    for trial in range(10):
        a = HermitianOperator(random_hermitian(rng, 3))
        b = HermitianOperator(random_hermitian(rng, 2))
        assert tensor(a, b).trace() == pytest.approx(a.trace() * b.trace(), abs=1e-10)


def test_tensor_rejects_mixed_kinds():
    with pytest.raises(TypeError):
        tensor(identity_operator(2), singlet_state())


def test_spin_component_conventions():
    assert np.allclose(spin_component((1.0, 0.0)).entries, pauli_z().entries)
    assert np.allclose(spin_component((0.0, 1.0)).entries, pauli_x().entries)
    assert np.allclose(
        spin_component((0.0, 1.0, 0.0)).entries, pauli_y().entries
    )
    with pytest.raises(ValidationError):
        spin_component((1.0, 1.0))


def test_spin_component_half_angle_eigenvector():
    for gamma_deg in (0.0, 60.0, 90.0, 180.0):
        gamma = math.radians(gamma_deg)
        dec = spectral_decompose(spin_component((math.cos(gamma), math.sin(gamma))))
        up = projection_vector(dec.projection_for(1.0))
        expected = np.array([math.cos(gamma / 2.0), math.sin(gamma / 2.0)])
        # Same ray: compare projectors to ignore the +-180 degree wrap.
        assert np.allclose(
            np.outer(up.amplitudes, up.amplitudes.conj()),
            np.outer(expected, expected),
            atol=1e-12,
        )


def test_dot_product_operator_spectrum():
    op = dot_product_operator()
    assert np.max(np.abs(op.entries - op.entries.conj().T)) == 0.0
    assert op.trace() == pytest.approx(0.0, abs=1e-15)
    dec = spectral_decompose(op)
    assert dec.eigenvalues[0] == pytest.approx(-3.0, abs=1e-10)
    assert dec.eigenvalues[1] == pytest.approx(1.0, abs=1e-10)
    assert dec.multiplicities == (1, 3)


def test_dot_product_ground_vector_is_singlet():
    dec = spectral_decompose(dot_product_operator())
    ground = projection_vector(dec.projections[0])
    assert np.allclose(ground.amplitudes, singlet_state().amplitudes, atol=1e-10)


def test_singlet_state_properties():
    s = singlet_state()
    assert np.linalg.norm(s.amplitudes) == pytest.approx(1.0, abs=1e-15)
    xi = dot_product_operator()
    assert np.allclose(xi.entries @ s.amplitudes, -3.0 * s.amplitudes, atol=1e-10)
    assert s.amplitudes[0] == 0.0 and s.amplitudes[3] == 0.0


def test_projection_vector_rejects_higher_rank():
    dec = spectral_decompose(dot_product_operator())
    with pytest.raises(ValidationError):
        projection_vector(dec.projections[1])


def test_projector_and_density_from_state():
    s = singlet_state()
    p = projector_from_state(s)
    rho = density_from_state(s)
    assert np.allclose(p.entries, rho.entries)
    assert rho.entries[1, 1].real == pytest.approx(0.5, abs=1e-15)
