"""Small dense complex matrices and the tau-permutation embeddings.

Matrices are plain ``numpy`` complex arrays. A bipartite tensor with
component dimensions (n1, n2) is stored as an (n1*n2) x (n1*n2) matrix
whose composite index is r1*n2 + r2; this convention is used everywhere,
including the JSON formats.
"""

from __future__ import annotations

import numpy as np

from .numtheory import check_divides, tau_perm

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100


class NotHermitianError(ValueError):
    pass


def as_cmatrix(a, dim: int | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _bi_shape(a: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    n1, n2 = dims
    a = as_cmatrix(a, n1 * n2)
    return a.reshape(n1, n2, n1, n2)


def hermitian_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(as_cmatrix(a)) <= tol


# -- embeddings --------------------------------------------------------------


def embed_matrix(a, n: int) -> np.ndarray:
    """Place an m x m matrix into n x n at rows/columns tau(0..m-1) = 0, d, 2d, ..."""
    a = as_cmatrix(a)
    m = a.shape[0]
    check_divides(m, n)
    idx = np.array(tau_perm(n, m).table[:m])
    out = np.zeros((n, n), dtype=complex)
    out[np.ix_(idx, idx)] = a
    return out


def _bi_index(src: tuple[int, int], dst: tuple[int, int]) -> np.ndarray:
    (m1, m2), (n1, n2) = src, dst
    t1 = np.array(tau_perm(n1, m1).table[:m1])
    t2 = np.array(tau_perm(n2, m2).table[:m2])
    return (t1[:, None] * n2 + t2[None, :]).ravel()


def embed_bitensor(a, src: tuple[int, int], dst: tuple[int, int]) -> np.ndarray:
    (m1, m2), (n1, n2) = src, dst
    check_divides(m1, n1)
    check_divides(m2, n2)
    a = as_cmatrix(a, m1 * m2)
    idx = _bi_index(src, dst)
    out = np.zeros((n1 * n2, n1 * n2), dtype=complex)
    out[np.ix_(idx, idx)] = a
    return out


def partial_trace(a, dims: tuple[int, int], which: int) -> np.ndarray:
    """Trace out component ``which`` (1 or 2) of a bipartite matrix."""
    t = _bi_shape(a, dims)
    if which == 2:
        return np.einsum("iuju->ij", t)
    if which == 1:
        return np.einsum("uiuj->ij", t)
    raise ValueError("which must be 1 or 2")


def partial_transpose(a, dims: tuple[int, int], which: int) -> np.ndarray:
    t = _bi_shape(a, dims)
    if which == 2:
        t = t.transpose(0, 3, 2, 1)
    elif which == 1:
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError("which must be 1 or 2")
    n = dims[0] * dims[1]
    return t.reshape(n, n)


# -- spectra -----------------------------------------------------------------


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # unitary on span{e_p, e_q}: first rotate a_pq to be real, then a Givens turn
    g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    cols = [p, q]
    a[:, cols] = a[:, cols] @ g
    a[cols, :] = g.conj().T @ a[cols, :]
    v[:, cols] = v[:, cols] @ g
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def jacobi_eigh(a, tol: float = JACOBI_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues descending, unitary V) with A = V diag(w) V^dagger.
    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol`` times the Frobenius norm of A.
    """
    a = as_cmatrix(a)
    if hermitian_defect(a) > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (defect {hermitian_defect(a):.3g})")
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    threshold = tol * scale
    iu = np.triu_indices(n, 1)
    for _ in range(MAX_SWEEPS):
        off = np.sqrt(2.0) * np.linalg.norm(a[iu])
        if off <= threshold:
            break
        # pairs that are already zero (e.g. padding from an embedding) are skipped
        rows, cols = np.nonzero(np.abs(np.triu(a, 1)) > threshold / n)
        for p, q in zip(rows.tolist(), cols.tolist()):
            if abs(a[p, q]) > threshold / n:
                _jacobi_rotate(a, v, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(a) -> np.ndarray:
    return jacobi_eigh(a)[0]


def trace_norm(a) -> float:
    """Sum of |eigenvalues| for a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(a))))


def power_traces(a, kmax: int) -> np.ndarray:
    a = as_cmatrix(a)
    out = np.empty(kmax, dtype=complex)
    p = np.eye(a.shape[0], dtype=complex)
    for k in range(kmax):
        p = p @ a
        out[k] = np.trace(p)
    return out


def power_trace_check(a, n: int, tol: float = 1e-8) -> bool:
    """Tr(J(A)^k) == Tr(A^k) for k = 1..n.

    Newton's identities turn equal power sums into equal characteristic
    polynomials, so this certifies that J(A) has A's spectrum plus n-m
    zeros, without needing a non-Hermitian eigensolver.
    """
    a = as_cmatrix(a)
    big = embed_matrix(a, n)
    lhs, rhs = power_traces(big, n), power_traces(a, n)
    scale = np.maximum(1.0, np.abs(rhs))
    return bool(np.all(np.abs(lhs - rhs) <= tol * scale))


def power_trace_check_bipartite(a, src, dst, tol: float = 1e-8) -> bool:
    big = embed_bitensor(a, src, dst)
    k = dst[0] * dst[1]
    lhs, rhs = power_traces(big, k), power_traces(a, k)
    scale = np.maximum(1.0, np.abs(rhs))
    return bool(np.all(np.abs(lhs - rhs) <= tol * scale))
