import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idemap.core import (
    AutomorphismTag,
    ScalarField,
    SemilinearOperator,
    conjugation_operator,
    up_to_scalar_distance,
)
from idemap.errors import NotInduced
from idemap.indefinite import (
    IndefiniteSpace,
    Ray,
    SymmetryKind,
    characterize,
    eta_orthogonal_partner,
    eta_product,
    generate_eta_isometry,
    induced_ray_map,
    is_symmetry,
    ray_eta_orthogonal,
    rays_equal,
    recover_inducing_operator,
)
from idemap.sampling import random_invertible, random_semilinear, random_vector

MINKOWSKI = np.diag([1.0, 1.0, -1.0])


def hyperbolic_rotation():
    c, s = np.cosh(1.0), np.sinh(1.0)
    return SemilinearOperator(np.array([[1.0, 0, 0], [0, c, s], [0, s, c]]))


def nonsa_eta(n=3, dtype=float):
    strict_upper = np.triu(np.ones((n, n)), 1)
    return np.eye(n, dtype=dtype) + 0.4 * strict_upper.astype(dtype)


class TestEtaProduct:
    def test_definite_case(self):
        space = IndefiniteSpace(np.eye(3))
        assert eta_product(space, [1, 0, 0], [1, 0, 0]) == 1.0

    def test_negative_direction(self):
        space = IndefiniteSpace(MINKOWSKI)
        assert eta_product(space, [0, 0, 1], [0, 0, 1]) == -1.0

    def test_null_vector(self):
        space = IndefiniteSpace(MINKOWSKI)
        x = [1.0, 0.0, 1.0]
        assert eta_product(space, x, x) == 0.0

    def test_sesquilinearity(self):
        # linear in the first slot, conjugate-linear in the second
        space = IndefiniteSpace(np.eye(3, dtype=complex))
        x = np.array([1.0, 1j, 0])
        y = np.array([0.5, 2.0, 1j])
        assert eta_product(space, 1j * x, y) == pytest.approx(
            1j * eta_product(space, x, y)
        )
        assert eta_product(space, x, 1j * y) == pytest.approx(
            -1j * eta_product(space, x, y)
        )


class TestRayOrthogonality:
    def test_definite_orthogonal(self):
        space = IndefiniteSpace(np.eye(3))
        assert ray_eta_orthogonal(space, Ray([1, 0, 0]), Ray([0, 1, 0]))

    def test_self_orthogonal_null_ray(self):
        space = IndefiniteSpace(MINKOWSKI)
        r = Ray([1.0, 0, 1.0])
        assert ray_eta_orthogonal(space, r, r)

    def test_not_orthogonal(self):
        space = IndefiniteSpace(MINKOWSKI)
        assert not ray_eta_orthogonal(space, Ray([1, 0, 0]), Ray([1, 0, 0]))

    @settings(max_examples=40, deadline=None)
    @given(
        a=st.floats(0.01, 100.0), b=st.floats(0.01, 100.0),
        flip=st.booleans(), seed=st.integers(0, 2**16),
    )
    def test_homogeneity(self, a, b, flip, seed):
        rng = np.random.default_rng(seed)
        space = IndefiniteSpace(MINKOWSKI)
        x = random_vector(rng, 3, ScalarField.REAL)
        y = random_vector(rng, 3, ScalarField.REAL)
        sa = -a if flip else a
        base = ray_eta_orthogonal(space, Ray(x), Ray(y))
        scaled = ray_eta_orthogonal(space, Ray(sa * x), Ray(b * y))
        assert base == scaled

    def test_crafted_partner_is_orthogonal(self):
        rng = np.random.default_rng(0)
        space = IndefiniteSpace(nonsa_eta(4, complex))
        for _ in range(50):
            x = random_vector(rng, 4, ScalarField.COMPLEX)
            y = eta_orthogonal_partner(space, x, rng)
            assert ray_eta_orthogonal(space, Ray(x), Ray(y))


class TestIsSymmetry:
    def test_identity_operator(self):
        space = IndefiniteSpace(MINKOWSKI)
        t = induced_ray_map(SemilinearOperator(np.eye(3)))
        assert is_symmetry(space, t, sample_count=300, seed=1).ok

    def test_hyperbolic_rotation(self):
        space = IndefiniteSpace(MINKOWSKI)
        u = hyperbolic_rotation()
        np.testing.assert_allclose(u.matrix.T @ MINKOWSKI @ u.matrix, MINKOWSKI,
                                   atol=1e-12)
        assert is_symmetry(space, induced_ray_map(u), sample_count=300, seed=2).ok

    def test_generic_triangular_violates(self):
        space = IndefiniteSpace(np.eye(3))
        u = SemilinearOperator(np.array([[1.0, 2.0, 0], [0, 1.0, 3.0], [0, 0, 1.0]]))
        report = is_symmetry(space, induced_ray_map(u), sample_count=300, seed=3)
        assert len(report.violations) >= 1

    def test_conjugate_linear_symmetries_pass(self):
        # plain conjugation over the definite metric, and a real isometry
        # of a real non-symmetric metric carrying the conjugation tag
        space = IndefiniteSpace(np.eye(3, dtype=complex))
        assert is_symmetry(space, induced_ray_map(conjugation_operator(3)),
                           sample_count=300, seed=13).ok
        eta = nonsa_eta(3, float)
        v = generate_eta_isometry(IndefiniteSpace(eta), seed=14)
        u = SemilinearOperator(v.matrix.astype(complex),
                               AutomorphismTag.CONJUGATION)
        space2 = IndefiniteSpace(eta.astype(complex))
        assert is_symmetry(space2, induced_ray_map(u),
                           sample_count=300, seed=15).ok


class TestCharacterize:
    def test_identity_is_linear_symmetry(self):
        space = IndefiniteSpace(nonsa_eta(3, complex))
        ch = characterize(space, SemilinearOperator(np.eye(3, dtype=complex)))
        assert ch.kind is SymmetryKind.LINEAR
        assert ch.constant == pytest.approx(1.0)

    def test_scaled_hyperbolic(self):
        space = IndefiniteSpace(MINKOWSKI)
        u = SemilinearOperator(2.0 * hyperbolic_rotation().matrix)
        ch = characterize(space, u)
        assert ch.kind is SymmetryKind.LINEAR
        assert ch.constant == pytest.approx(4.0)

    def test_plain_conjugation(self):
        space = IndefiniteSpace(np.eye(3, dtype=complex))
        ch = characterize(space, conjugation_operator(3))
        assert ch.kind is SymmetryKind.CONJUGATE
        assert ch.constant == pytest.approx(1.0)

    def test_generic_is_none(self):
        rng = np.random.default_rng(4)
        space = IndefiniteSpace(MINKOWSKI)
        ch = characterize(space, SemilinearOperator(
            random_invertible(rng, 3, ScalarField.REAL)))
        assert ch.kind is SymmetryKind.NONE
        assert ch.constant is None

    def test_constant_matches_trace_formula(self):
        rng = np.random.default_rng(5)
        for i in range(20):
            n = 3 + i % 3
            eta = nonsa_eta(n, complex) if i % 2 else np.eye(n, dtype=complex)
            space = IndefiniteSpace(eta)
            scale = float(rng.uniform(0.5, 3.0))
            v = generate_eta_isometry(space, seed=i, scale=scale)
            ch = characterize(space, v)
            assert ch.kind is SymmetryKind.LINEAR
            m = v.matrix
            fitted = np.trace(np.linalg.inv(eta) @ m.conj().T @ eta @ m) / n
            assert abs(ch.constant - fitted) <= 1e-8 * max(1.0, abs(fitted))


class TestGenerateEtaIsometry:
    def test_definite_case_gives_unitary(self):
        space = IndefiniteSpace(np.eye(4, dtype=complex))
        v = generate_eta_isometry(space, seed=6, scale=1.0)
        np.testing.assert_allclose(v.matrix.conj().T @ v.matrix, np.eye(4),
                                   atol=1e-9)

    def test_minkowski_metric_preserved(self):
        space = IndefiniteSpace(MINKOWSKI)
        v = generate_eta_isometry(space, seed=7, scale=1.0)
        np.testing.assert_allclose(v.matrix.T @ MINKOWSKI @ v.matrix, MINKOWSKI,
                                   atol=1e-9)
        assert np.linalg.norm(v.matrix - np.eye(3)) > 1e-3  # nontrivial draw

    def test_scaled_output(self):
        space = IndefiniteSpace(MINKOWSKI)
        v = generate_eta_isometry(space, seed=8, scale=4.0)
        ch = characterize(space, v)
        assert ch.kind is SymmetryKind.LINEAR
        assert abs(ch.constant - 4.0) <= 1e-8

    def test_non_self_adjoint_metric(self):
        for dtype in (float, complex):
            space = IndefiniteSpace(nonsa_eta(4, dtype))
            v = generate_eta_isometry(space, seed=9, scale=2.0)
            resid = np.linalg.norm(
                v.matrix.conj().T @ space.eta @ v.matrix - 2.0 * space.eta
            )
            assert resid <= 1e-9 * 2.0 * (1 + np.linalg.norm(space.eta))
            assert np.linalg.norm(v.matrix / np.sqrt(2.0) - np.eye(4)) > 1e-3

    def test_scalar_multiples_stay_symmetries(self):
        rng = np.random.default_rng(10)
        space = IndefiniteSpace(nonsa_eta(3, complex))
        v = generate_eta_isometry(space, seed=11, scale=1.5)
        c = complex(rng.standard_normal(), rng.standard_normal())
        scaled = SemilinearOperator(c * v.matrix)
        report = is_symmetry(space, induced_ray_map(scaled), sample_count=300,
                             seed=12)
        assert report.ok

    def test_bad_scale_rejected(self):
        space = IndefiniteSpace(MINKOWSKI)
        with pytest.raises(ValueError):
            generate_eta_isometry(space, seed=13, scale=0.0)


class TestRecovery:
    def test_identity(self):
        space = IndefiniteSpace(MINKOWSKI)
        t = induced_ray_map(SemilinearOperator(np.eye(3)))
        result = recover_inducing_operator(space, t, validation_count=15, seed=0)
        assert up_to_scalar_distance(result.A.matrix, np.eye(3) / np.sqrt(3)) <= 1e-7

    def test_hyperbolic_rotation(self):
        space = IndefiniteSpace(MINKOWSKI)
        u = hyperbolic_rotation()
        result = recover_inducing_operator(space, induced_ray_map(u),
                                           validation_count=15, seed=1)
        assert result.residual <= 1e-7
        assert up_to_scalar_distance(
            result.A.matrix, u.matrix / np.linalg.norm(u.matrix)
        ) <= 1e-7

    def test_conjugation(self):
        space = IndefiniteSpace(np.eye(3, dtype=complex))
        result = recover_inducing_operator(
            space, induced_ray_map(conjugation_operator(3)),
            validation_count=15, seed=2,
        )
        assert result.A.auto is AutomorphismTag.CONJUGATION
        assert up_to_scalar_distance(result.A.matrix, np.eye(3) / np.sqrt(3)) <= 1e-7

    def test_conjugate_symmetry_with_real_nonsymmetric_eta(self):
        eta = nonsa_eta(3, float)
        real_space = IndefiniteSpace(eta)
        v = generate_eta_isometry(real_space, seed=3)
        u = SemilinearOperator(v.matrix.astype(complex),
                               AutomorphismTag.CONJUGATION)
        space = IndefiniteSpace(eta.astype(complex))
        result = recover_inducing_operator(space, induced_ray_map(u),
                                           validation_count=15, seed=4)
        assert result.A.auto is AutomorphismTag.CONJUGATION
        assert up_to_scalar_distance(
            result.A.matrix, u.matrix / np.linalg.norm(u.matrix)
        ) <= 1e-6

    def test_non_symmetry_rejected(self):
        rng = np.random.default_rng(5)
        space = IndefiniteSpace(MINKOWSKI)
        u = random_semilinear(rng, 3, ScalarField.REAL)
        t = induced_ray_map(u)
        with pytest.raises(NotInduced):
            recover_inducing_operator(space, t, validation_count=15, seed=6)


class TestRays:
    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Ray([0.0, 0.0, 0.0])

    def test_equality_up_to_scalar(self):
        assert rays_equal(Ray([1.0, 2.0, 0]), Ray([-3.0, -6.0, 0]))
        assert rays_equal(Ray([1j, 0, 0]), Ray([1.0 + 0j, 0, 0]))
        assert not rays_equal(Ray([1.0, 0, 0]), Ray([1.0, 1e-4, 0]))


def test_space_validation():
    with pytest.raises(ValueError):
        IndefiniteSpace(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        IndefiniteSpace(np.eye(2))
