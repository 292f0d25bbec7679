import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wholepart import matrixcore as mc
from wholepart.numtheory import DivisibilityError, divisors_in_X
from oracles import embed_by_loops, partial_trace_by_loops


def rand_c(rng, n, k=None):
    k = n if k is None else k
    return rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))


def rand_herm(rng, n):
    g = rand_c(rng, n)
    return g + g.conj().T


def test_embed_matrix_identity_dims():
    a = rand_c(np.random.default_rng(0), 5)
    assert np.array_equal(mc.embed_matrix(a, 5), a)


def test_embed_matrix_diag_example():
    out = mc.embed_matrix(np.diag([1, 2]), 4)
    expected = np.zeros((4, 4))
    expected[0, 0], expected[2, 2] = 1, 2
    assert np.array_equal(out, expected)


def test_embed_matrix_matches_loop_oracle():
    rng = np.random.default_rng(1)
    for n in range(2, 25):
        for m in divisors_in_X(n):
            a = rand_c(rng, m)
            assert np.array_equal(mc.embed_matrix(a, n), embed_by_loops(a, n))


def test_embed_matrix_rejects_non_divisor():
    with pytest.raises(DivisibilityError):
        mc.embed_matrix(np.eye(3), 7)


def test_embedding_lemmas_all_small_pairs():
    rng = np.random.default_rng(2)
    for n in range(2, 25):
        for m in divisors_in_X(n):
            a, b = rand_c(rng, m), rand_c(rng, m)
            ja, jb = mc.embed_matrix(a, n), mc.embed_matrix(b, n)
            assert np.allclose(ja @ jb, mc.embed_matrix(a @ b, n), atol=1e-12)
            assert abs(np.trace(ja) - np.trace(a)) < 1e-12
            assert abs(np.trace(ja @ jb) - np.trace(a @ b)) < 1e-10


def test_embedded_hermitian_spectrum_is_padded_with_zeros():
    rng = np.random.default_rng(3)
    for m, n in [(2, 4), (3, 6), (3, 9), (4, 12), (5, 15)]:
        a = rand_herm(rng, m)
        got = mc.hermitian_eigenvalues(mc.embed_matrix(a, n))
        expected = np.sort(np.concatenate([np.linalg.eigvalsh(a), np.zeros(n - m)]))[::-1]
        assert np.allclose(got, expected, atol=1e-9)


def test_power_trace_check():
    rng = np.random.default_rng(4)
    assert mc.power_trace_check(rand_c(rng, 3), 6)
    nil = np.triu(rand_c(rng, 3), 1)
    assert np.allclose(mc.power_traces(mc.embed_matrix(nil, 6), 6), 0)
    assert mc.power_trace_check(nil, 6)
    traces = mc.power_traces(mc.embed_matrix(np.eye(3), 9), 9)
    assert np.allclose(traces, 3)
    assert mc.power_trace_check(np.eye(3), 9)


def test_power_trace_check_detects_a_wrong_embedding():
    rng = np.random.default_rng(5)
    a = rand_c(rng, 3)
    wrong = mc.embed_matrix(a, 6)
    wrong[1, 1] = 1.0
    assert not np.allclose(mc.power_traces(wrong, 6), mc.power_traces(a, 6))


def test_bitensor_identity_and_loop_oracle():
    rng = np.random.default_rng(6)
    a = rand_c(rng, 6)
    assert np.array_equal(mc.embed_bitensor(a, (2, 3), (2, 3)), a)
    big = mc.embed_bitensor(a, (2, 3), (4, 6))
    # oracle: explicit index loops through tau on each component
    t1, t2 = [0, 2, 1, 3], [0, 2, 4, 1, 3, 5]
    for r1 in range(2):
        for r2 in range(3):
            for s1 in range(2):
                for s2 in range(3):
                    assert big[t1[r1] * 6 + t2[r2], t1[s1] * 6 + t2[s2]] == a[r1 * 3 + r2, s1 * 3 + s2]
    assert np.count_nonzero(big) == np.count_nonzero(a)


@pytest.mark.parametrize("src, dst", [((2, 2), (4, 4)), ((2, 3), (4, 6)), ((2, 2), (2, 4)), ((3, 2), (9, 4))])
def test_bitensor_lemmas(src, dst):
    rng = np.random.default_rng(7)
    for _ in range(20):
        b, c = rand_c(rng, src[0]), rand_c(rng, src[1])
        assert np.allclose(
            mc.embed_bitensor(np.kron(b, c), src, dst),
            np.kron(mc.embed_matrix(b, dst[0]), mc.embed_matrix(c, dst[1])),
        )
        a = rand_c(rng, src[0] * src[1])
        big = mc.embed_bitensor(a, src, dst)
        assert np.allclose(mc.partial_trace(big, dst, 2), mc.embed_matrix(mc.partial_trace(a, src, 2), dst[0]))
        assert np.allclose(mc.partial_trace(big, dst, 1), mc.embed_matrix(mc.partial_trace(a, src, 1), dst[1]))
        assert mc.power_trace_check_bipartite(a, src, dst)


def test_partial_trace_against_loops():
    rng = np.random.default_rng(8)
    for dims in [(2, 2), (2, 3), (3, 4)]:
        a = rand_c(rng, dims[0] * dims[1])
        for which in (1, 2):
            assert np.allclose(mc.partial_trace(a, dims, which), partial_trace_by_loops(a, dims, which))


def test_partial_trace_of_product():
    rng = np.random.default_rng(9)
    b, c = rand_c(rng, 3), rand_c(rng, 2)
    ab = np.kron(b, c)
    assert np.allclose(mc.partial_trace(ab, (3, 2), 2), b * np.trace(c))
    assert np.allclose(mc.partial_trace(ab, (3, 2), 1), c * np.trace(b))


def test_partial_transpose():
    rng = np.random.default_rng(10)
    b, c = rand_c(rng, 3), rand_c(rng, 2)
    assert np.allclose(mc.partial_transpose(np.kron(b, c), (3, 2), 2), np.kron(b, c.T))
    assert np.allclose(mc.partial_transpose(np.kron(b, c), (3, 2), 1), np.kron(b.T, c))
    a = rand_c(rng, 6)
    for which in (1, 2):
        assert np.array_equal(mc.partial_transpose(mc.partial_transpose(a, (3, 2), which), (3, 2), which), a)


BELL = np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2


def test_bell_partial_transpose_spectrum():
    pt = mc.partial_transpose(BELL, (2, 2), 2)
    assert np.allclose(mc.hermitian_eigenvalues(pt), [0.5, 0.5, 0.5, -0.5], atol=1e-12)
    assert abs(mc.trace_norm(pt) - 2) < 1e-12


def test_hermitian_eigenvalues_examples():
    assert np.allclose(mc.hermitian_eigenvalues(np.diag([3, 1, 2])), [3, 2, 1])
    assert np.allclose(mc.hermitian_eigenvalues([[0, 1], [1, 0]]), [1, -1])
    with pytest.raises(mc.NotHermitianError):
        mc.hermitian_eigenvalues([[0, 1], [0, 0]])


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 33, 64])
def test_jacobi_against_lapack(n):
    rng = np.random.default_rng(n)
    a = rand_herm(rng, n)
    w, v = mc.jacobi_eigh(a)
    assert np.all(np.diff(w) <= 0)
    assert np.allclose(w, np.linalg.eigvalsh(a)[::-1], atol=1e-9)
    assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - a)) <= 1e-9
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-9


def test_jacobi_degenerate_and_zero():
    w, v = mc.jacobi_eigh(np.zeros((4, 4)))
    assert np.array_equal(w, np.zeros(4))
    p = np.outer([1, 1j, 0], [1, -1j, 0]) / 2
    assert np.allclose(mc.hermitian_eigenvalues(p), [1, 0, 0], atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_jacobi_reconstruction_property(n, seed):
    rng = np.random.default_rng(seed)
    a = rand_herm(rng, n) * rng.choice([1e-3, 1.0, 1e3])
    w, v = mc.jacobi_eigh(a)
    scale = max(1.0, np.abs(a).max())
    assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - a)) <= 1e-9 * scale
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-9


def test_trace_norm():
    p = np.diag([1, 1, 0, 1, 0])
    assert abs(mc.trace_norm(p) - 3) < 1e-12
    rng = np.random.default_rng(11)
    a = rand_herm(rng, 4)
    assert abs(mc.trace_norm(mc.embed_matrix(a, 12)) - mc.trace_norm(a)) < 1e-9
    assert abs(mc.trace_norm(a) - np.abs(np.linalg.eigvalsh(a)).sum()) < 1e-9


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        mc.as_cmatrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        mc.as_cmatrix([[np.nan, 0], [0, 1]])
