"""Hankel operators with anti-analytic symbol on A^2_alpha of the disk.

For ``f = sum a_n z^n`` and a polynomial symbol ``psi = sum_{k>=1} c_k z^k``
the squared norm ``||H_{conj psi} f||^2_alpha`` is an explicit Hermitian form
in the coefficients ``a_n``::

    (I)  = sum_{k>=1; n,m>=0} a_n conj(a_m) c_{k+m} conj(c_{k+n}) D_{n+m+k}
    (II) = sum_{k>=0; n,m>=k+1} a_n conj(a_m) c_{m-k} conj(c_{n-k})
                                   * (D_{n+m-k} - D_n D_m / D_k)

Restricting ``f`` to polynomials of degree < ``dim`` gives the compression
of the operator; its norm is a lower bound for the true norm that grows
with ``dim``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .eigen import dominant_eigenvalue
from .series import PowerSeries
from .spaces import WeightParam, as_weight, dirichlet_energy, monomial_norms


def _symbol_coeffs(psi: PowerSeries) -> np.ndarray:
    if psi.coeffs[0] != 0:
        raise ValueError(
            "symbol must have zero constant term; subtract psi(0) first "
            "(constants do not change the Hankel operator)"
        )
    deg = max(psi.degree(), 0)
    return psi.coeffs[: deg + 1]


def projection_coefficient(k: int, n: int, alpha) -> float:
    """Scalar ``s`` with ``P_alpha(conj(z)**k z**n) = s z**(n-k)`` (0 if k > n)."""
    if k < 0 or n < 0:
        raise ValueError("exponents must be nonnegative")
    if k > n:
        return 0.0
    D = monomial_norms(alpha, n).values
    return float(D[n] / D[n - k])


def hankel_norm_sq(f: PowerSeries, psi: PowerSeries, alpha) -> float:
    """``||H_{conj psi} f||^2_alpha`` from the Taylor coefficients."""
    w = as_weight(alpha)
    c = _symbol_coeffs(psi)
    K = len(c) - 1
    if K == 0:
        return 0.0
    a = f.coeffs
    D = monomial_norms(w, len(a) + 2 * K + 1).values
    return float(_kernels.hankel_quadratic(a, c, D))


@dataclass(frozen=True)
class HankelForm:
    """Hermitian matrix ``M`` with ``a^* M a = ||H_{conj psi} f||^2_alpha``.

    Indexed by monomial degree ``0..dim-1``; ``norms`` holds ``D_0..D_{dim-1}``
    so that the Gram matrix of the basis is ``diag(norms)``.
    """

    symbol: PowerSeries
    alpha: WeightParam
    dim: int
    matrix: np.ndarray
    norms: np.ndarray

    def quadratic(self, a) -> float:
        a = np.asarray(a, dtype=np.complex128)
        return float(np.real(np.vdot(a, self.matrix @ a)))

    def symmetrized(self) -> np.ndarray:
        """``M[m, n] / sqrt(D_m D_n)``: the form in the orthonormal basis."""
        s = 1.0 / np.sqrt(self.norms)
        return self.matrix * s[:, None] * s[None, :]


def build_form(psi: PowerSeries, alpha, dim: int) -> HankelForm:
    if dim < 1:
        raise ValueError("dim must be at least 1")
    w = as_weight(alpha)
    c = _symbol_coeffs(psi)
    K = len(c) - 1
    D = monomial_norms(w, max(2 * K, 2 * dim - 1) + 1).values
    if K == 0:
        M = np.zeros((dim, dim), dtype=np.complex128)
    else:
        M = _kernels.hankel_matrix(c, D, dim)
    M.flags.writeable = False
    norms = D[:dim].copy()
    norms.flags.writeable = False
    return HankelForm(PowerSeries(c), w, dim, M, norms)


def operator_norm_sq(form: HankelForm, tol: float = 1e-10) -> float:
    """Squared norm of the compressed Hankel operator.

    The largest eigenvalue of the generalized problem ``M a = lambda D a``,
    reduced to a standard Hermitian one by ``a_n -> a_n sqrt(D_n)``.
    """
    return dominant_eigenvalue(form.symmetrized(), tol=tol)


def theorem_bound_sq(psi: PowerSeries, alpha) -> float:
    """Sharp upper bound ``||psi'||^2_{A^2} / (2 + alpha)`` for the squared norm."""
    w = as_weight(alpha)
    return dirichlet_energy(psi) / (2.0 + w.alpha)


def evaluate_hankel(f: PowerSeries, psi: PowerSeries, alpha, z):
    """Pointwise value of ``u = H_{conj psi} f`` inside the disk.

    ``u`` solves ``dbar u = conj(psi') f`` and is orthogonal to A^2_alpha.
    """
    w = as_weight(alpha)
    z = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z) >= 1):
        raise ValueError("evaluation points must lie in the open unit disk")
    c = _symbol_coeffs(psi)
    a = f.coeffs
    N = len(a) - 1
    D = monomial_norms(w, N).values
    # projected coefficient of z^j: sum_{l>=1} conj(c_l) a_{j+l} D_{j+l} / D_j
    proj = np.zeros(N + 1, dtype=np.complex128)
    for ell in range(1, len(c)):
        if ell > N:
            break
        j = np.arange(N - ell + 1)
        proj[j] += np.conj(c[ell]) * a[j + ell] * D[j + ell] / D[j]
    cz = np.conj(PowerSeries(c)(z))
    fz = f(z)
    pz = PowerSeries(proj)(z)
    out = cz * fz - pz
    return out if np.ndim(out) else complex(out)
