"""Coefficient calculus of the weighted spaces A^2_alpha on the unit disk.

All norms use the normalized area measure ``dA = dx dy / pi``. The monomials
are orthogonal with ``||z**n||^2 = D_n``; ``alpha = -1`` is the Hardy space
with boundary measure ``|dz| / 2pi`` and every ``D_n = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import PowerSeries


@dataclass(frozen=True)
class WeightParam:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or a < -1:
            raise ValueError(f"weight parameter must satisfy alpha >= -1, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def is_hardy(self) -> bool:
        return self.alpha == -1.0

    def __float__(self):
        return self.alpha


def as_weight(alpha) -> WeightParam:
    return alpha if isinstance(alpha, WeightParam) else WeightParam(alpha)


@dataclass(frozen=True)
class MonomialNorms:
    alpha: WeightParam
    values: np.ndarray

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]


def monomial_norms(alpha, order: int) -> MonomialNorms:
    """``D_n`` for ``n = 0..order`` via ``D_n = n/(n+alpha+1) * D_{n-1}``."""
    w = as_weight(alpha)
    if order < 0:
        raise ValueError("order must be nonnegative")
    n = np.arange(1, order + 1, dtype=np.float64)
    ratios = n / (n + w.alpha + 1.0)
    values = np.concatenate(([1.0], np.cumprod(ratios)))
    values.flags.writeable = False
    return MonomialNorms(w, values)


def weighted_norm_sq(f: PowerSeries, alpha) -> float:
    """``sum |a_n|^2 D_n``, the squared A^2_alpha norm of the polynomial ``f``."""
    D = monomial_norms(alpha, f.order).values
    return float(np.sum(np.abs(f.coeffs) ** 2 * D))


def dirichlet_energy(psi: PowerSeries) -> float:
    """Unweighted Bergman norm squared of ``psi'``: ``sum m |c_m|^2``.

    This is the numerator of the sharp Hankel bound for every alpha; it is
    deliberately not the weighted norm of ``psi'``.
    """
    m = np.arange(len(psi.coeffs))
    return float(np.sum(m * np.abs(psi.coeffs) ** 2))


def lemma_sum_check(alpha, v: int) -> tuple[float, float]:
    """Both sides of ``sum_{l<=v} 1/D_l = (v+1)/(2+alpha) / D_{v+1}``."""
    if v < 0:
        raise ValueError("v must be nonnegative")
    w = as_weight(alpha)
    D = monomial_norms(w, v + 1).values
    lhs = float(np.sum(1.0 / D[: v + 1]))
    rhs = (v + 1) / (2.0 + w.alpha) / D[v + 1]
    return lhs, float(rhs)
