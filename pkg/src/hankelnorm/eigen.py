"""Dominant eigenvalue of a Hermitian positive semidefinite matrix.

Lanczos with full reorthogonalization from the all-ones vector, restarted
from the current Ritz vector when the Krylov basis reaches ``max_basis``.
Deterministic: the same matrix always takes the same path.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError


def dominant_eigenpair(A, tol=1e-10, max_iter=100_000, max_basis=128):
    """Largest eigenvalue and a unit eigenvector of the Hermitian ``A``.

    Stops once the explicit relative residual ``||Ax - theta x|| / theta``
    drops below ``tol``. Raises :class:`ConvergenceError` after ``max_iter``
    matrix-vector products.
    """
    A = np.asarray(A)
    n = A.shape[0]
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    if scale == 0.0:
        x = np.ones(n, dtype=A.dtype) / np.sqrt(max(n, 1))
        return 0.0, x
    # work on A / max|A_ij| so that vector norms cannot under- or overflow
    A = A / scale
    m_max = min(n, max_basis)
    start = np.ones(n, dtype=np.result_type(A.dtype, np.float64)) / np.sqrt(n)
    iters = 0
    theta, x = 0.0, start
    while True:
        Q = np.zeros((n, m_max), dtype=start.dtype)
        alphas = np.zeros(m_max)
        betas = np.zeros(m_max)
        Q[:, 0] = start
        for j in range(m_max):
            w = A @ Q[:, j]
            iters += 1
            alphas[j] = np.real(np.vdot(Q[:, j], w))
            basis = Q[:, : j + 1]
            for _ in range(2):
                w = w - basis @ (basis.conj().T @ w)
            beta = float(np.linalg.norm(w))
            T = np.diag(alphas[: j + 1]) + np.diag(betas[:j], 1) + np.diag(betas[:j], -1)
            evals, evecs = np.linalg.eigh(T)
            theta = float(evals[-1])
            s = evecs[:, -1]
            exhausted = beta <= 1e-14 * np.sqrt(n) or j + 1 == n
            if exhausted or abs(beta * s[-1]) <= tol * abs(theta) or j + 1 == m_max:
                x = basis @ s
                x /= np.linalg.norm(x)
                r = np.linalg.norm(A @ x - theta * x)
                if theta <= 0:
                    return 0.0, x
                if r <= tol * theta or exhausted:
                    return theta * scale, x
                if j + 1 == m_max:
                    break
            if iters >= max_iter:
                raise ConvergenceError(
                    f"Lanczos did not reach relative residual {tol:g} in {max_iter} products"
                )
            if j + 1 < m_max:
                betas[j] = beta
                Q[:, j + 1] = w / beta
        if iters >= max_iter:
            raise ConvergenceError(
                f"Lanczos did not reach relative residual {tol:g} in {max_iter} products"
            )
        start = x


def dominant_eigenvalue(A, tol=1e-10, max_iter=100_000):
    return dominant_eigenpair(A, tol=tol, max_iter=max_iter)[0]
