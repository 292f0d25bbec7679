import numpy as np

from wholepart import sampling as sm


def test_rngs_depend_only_on_seed_and_index():
    a = [r.random() for r in sm.sample_rngs(5, 4)]
    b = [r.random() for r in sm.sample_rngs(5, 6)][:4]
    assert a == b
    assert a != [r.random() for r in sm.sample_rngs(6, 4)]


def test_run_samples_order_independent_of_workers():
    def fn(rng):
        return rng.integers(1 << 30)

    assert sm.run_samples(fn, 3, 20, workers=1) == sm.run_samples(fn, 3, 20, workers=5)


def test_samplers_produce_valid_objects():
    for rng in sm.sample_rngs(0, 20):
        u = sm.random_unitary(rng, 4)
        assert np.allclose(u.conj().T @ u, np.eye(4))
        for rank in (1, 2, None):
            rho = sm.random_density_matrix(rng, 3, rank)
            assert abs(np.trace(rho) - 1) < 1e-12
            assert np.linalg.eigvalsh(rho).min() > -1e-12
        rho = sm.random_bipartite_density(rng, (2, 3))
        assert rho.shape == (6, 6) and abs(np.trace(rho) - 1) < 1e-12
        projs = sm.random_projector_tuple(rng, 3)
        assert np.allclose(sum(projs), np.eye(3))
        assert abs(np.linalg.norm(sm.random_vector(rng, 5)) - 1) < 1e-12
    rho = sm.random_density_matrix(np.random.default_rng(1), 4, 1)
    assert np.linalg.matrix_rank(rho, tol=1e-9) == 1
