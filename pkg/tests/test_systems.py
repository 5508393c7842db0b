import numpy as np
import pytest

from soloewner import (
    DampingParams,
    DataError,
    FirstOrderSystem,
    SecondOrderSystem,
    SingularPencilError,
    eval_fo,
    eval_so,
    rayleigh_damping,
    so_to_fo,
    structure_preserving_project,
)
from soloewner.benchgen import GeneratorSpec, random_rayleigh_system

# Closed-form demo transfer values, computed from the diagonal form
# H(s) = 4/(s^2 + 0.03 s + 1) + 9/(s^2 + 0.05 s + 2).
H_AT_0 = 8.5
H_AT_1 = 4.921263021884842
H_AT_I = 8.977556109725686 - 133.78221113881963j


class TestDampingParams:
    def test_rejects_negative(self):
        with pytest.raises(DataError):
            DampingParams(-0.1, 0.0)
        with pytest.raises(DataError):
            DampingParams(0.0, -1e-9)

    def test_zero_is_valid(self):
        p = DampingParams(0.0, 0.0)
        assert p.alpha == 0.0 and p.beta == 0.0


class TestRayleighDamping:
    def test_demo_matrices(self):
        D = rayleigh_damping(np.eye(2), np.diag([1.0, 2.0]), DampingParams(0.01, 0.02))
        assert np.allclose(D, np.diag([0.03, 0.05]), rtol=0, atol=0)

    def test_zero_combination(self):
        D = rayleigh_damping(np.eye(3), np.diag([1.0, 2.0, 3.0]), DampingParams(0.0, 0.0))
        assert np.all(D == 0)

    def test_identity_coefficient(self):
        M = np.array([[2.0, 1.0], [1.0, 5.0]])
        D = rayleigh_damping(M, np.zeros((2, 2)), DampingParams(1.0, 0.0))
        assert np.array_equal(D, M.astype(complex))

    def test_dimension_mismatch(self):
        with pytest.raises(DataError):
            rayleigh_damping(np.eye(2), np.eye(3), DampingParams(0.1, 0.1))


class TestSecondOrderSystem:
    def test_rayleigh_invariant_enforced(self):
        M = np.eye(2)
        K = np.diag([1.0, 2.0])
        bad_D = np.diag([1.0, 1.0])
        with pytest.raises(DataError):
            SecondOrderSystem(M, bad_D, K, [[1.0], [1.0]], [[1.0, 1.0]],
                              rayleigh=DampingParams(0.01, 0.02))

    def test_dimension_checks(self):
        with pytest.raises(DataError):
            SecondOrderSystem(np.eye(2), np.eye(2), np.eye(3), [[1.0], [1.0]], [[1.0, 1.0]])

    def test_matrices_read_only(self, demo):
        with pytest.raises(ValueError):
            demo.M[0, 0] = 99.0


class TestEvalSo:
    def test_demo_at_zero(self, demo):
        assert eval_so(demo, 0.0) == pytest.approx(H_AT_0, rel=1e-14)

    def test_demo_at_one(self, demo):
        assert eval_so(demo, 1.0) == pytest.approx(H_AT_1, rel=1e-14)

    def test_demo_at_i(self, demo):
        assert eval_so(demo, 1j) == pytest.approx(H_AT_I, rel=1e-13)

    def test_singular_pencil_detected(self):
        sys = SecondOrderSystem(np.eye(1), np.zeros((1, 1)), -np.eye(1), [[1.0]], [[1.0]])
        # s = 1 makes s^2 M + K = 0
        with pytest.raises(SingularPencilError):
            eval_so(sys, 1.0)


class TestEvalFo:
    def test_scalar_system(self):
        sys = FirstOrderSystem([[1.0]], [[1.0]], [[1.0]], [[1.0]])
        assert eval_fo(sys, 2.0) == pytest.approx(1.0, rel=1e-15)

    def test_integrator(self):
        sys = FirstOrderSystem([[1.0]], [[0.0]], [[1.0]], [[1.0]])
        assert eval_fo(sys, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_embedded_demo_matches(self, demo):
        fo = so_to_fo(demo)
        assert eval_fo(fo, 1.0) == pytest.approx(eval_so(demo, 1.0), rel=1e-13)


class TestSoToFo:
    def test_block_structure(self):
        sys = SecondOrderSystem([[1.0]], [[1.0]], [[1.0]], [[1.0]], [[1.0]])
        fo = so_to_fo(sys)
        assert fo.order == 2
        assert np.array_equal(fo.E, np.diag([1.0, 1.0]).astype(complex))
        assert np.array_equal(fo.A, np.array([[0.0, 1.0], [-1.0, -1.0]], dtype=complex))
        assert np.array_equal(fo.B, np.array([[0.0], [1.0]], dtype=complex))
        assert np.array_equal(fo.C, np.array([[1.0, 0.0]], dtype=complex))

    def test_demo_embedding_value(self, demo):
        fo = so_to_fo(demo)
        assert fo.order == 4
        assert eval_fo(fo, 0.0) == pytest.approx(H_AT_0, rel=1e-14)

    def test_transfer_identity_random_systems(self):
        rng = np.random.default_rng(5)
        for trial in range(50):
            spec = GeneratorSpec(order=int(rng.integers(1, 7)),
                                 params=DampingParams(0.05, 0.01), seed=trial)
            sys = random_rayleigh_system(spec)
            fo = so_to_fo(sys)
            s = complex(rng.normal(), rng.normal()) * 1j + 0.3
            hs = eval_so(sys, s)
            assert abs(eval_fo(fo, s) - hs) <= 1e-12 * (1.0 + abs(hs))


class TestStructureProject:
    def test_demo_interpolates(self, demo):
        reduced, basis = structure_preserving_project(demo, [1.0, 2.0], [3.0, 4.0])
        assert reduced.order == 2
        assert basis.V.shape == (2, 2)
        for s in (1.0, 2.0, 3.0, 4.0):
            assert eval_so(reduced, s) == pytest.approx(eval_so(demo, s), rel=1e-10)
        assert eval_so(reduced, 1.0) == pytest.approx(H_AT_1, rel=1e-10)

    def test_order_one_projection(self, demo):
        reduced, _ = structure_preserving_project(demo, [1.0], [3.0])
        assert reduced.order == 1
        assert eval_so(reduced, 1.0) == pytest.approx(eval_so(demo, 1.0), rel=1e-10)
        assert eval_so(reduced, 3.0) == pytest.approx(eval_so(demo, 3.0), rel=1e-10)

    def test_full_order_projection_equivalent(self, demo):
        # ell = n with generic points keeps the transfer function
        reduced, _ = structure_preserving_project(demo, [0.5 + 0.5j, 2.0 + 1j], [1.5j, 3.0])
        rng = np.random.default_rng(0)
        for _ in range(10):
            s = 1j * rng.uniform(0.1, 10.0)
            h = eval_so(demo, s)
            assert abs(eval_so(reduced, s) - h) <= 1e-10 * (1.0 + abs(h))

    def test_random_instances_interpolate(self):
        rng = np.random.default_rng(11)
        for trial in range(20):
            n = int(rng.integers(2, 21))
            spec = GeneratorSpec(order=n, params=DampingParams(0.1, 0.05), seed=100 + trial)
            sys = random_rayleigh_system(spec)
            ell = int(rng.integers(1, min(n, 6) + 1))
            lams = 1j * rng.uniform(0.1, 10.0, ell)
            mus = 1j * rng.uniform(0.1, 10.0, ell)
            reduced, _ = structure_preserving_project(sys, lams, mus)
            for s in np.concatenate([lams, mus]):
                h = eval_so(sys, s)
                assert abs(eval_so(reduced, s) - h) <= 1e-9 * (1.0 + abs(h))

    def test_mismatched_point_counts(self, demo):
        with pytest.raises(DataError):
            structure_preserving_project(demo, [1.0, 2.0], [3.0])


class TestEquivalenceTransform:
    def test_transfer_invariance(self, demo):
        rng = np.random.default_rng(3)
        T = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        Tp = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        transformed = SecondOrderSystem(
            T.T @ demo.M @ Tp, T.T @ demo.D @ Tp, T.T @ demo.K @ Tp,
            T.T @ demo.B, demo.C @ Tp,
        )
        for omega in np.logspace(-1, 1, 7):
            h = eval_so(demo, 1j * omega)
            assert abs(eval_so(transformed, 1j * omega) - h) <= 1e-10 * (1.0 + abs(h))
