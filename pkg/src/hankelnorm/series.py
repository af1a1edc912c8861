"""Truncated complex power series.

A :class:`PowerSeries` of order ``N`` stores the Taylor coefficients of
``z**0 .. z**N``; anything beyond is unknown, not zero. Binary operations
return a series of the smaller operand order. To treat a polynomial as exact
to some higher order, construct it with an explicit ``order`` (the
coefficient vector is zero padded).
"""

from __future__ import annotations

import numpy as np

from . import _kernels


class PowerSeries:
    """Immutable truncated Taylor series with complex coefficients.

    Parameters
    ----------
    coeffs : sequence of complex
        ``coeffs[k]`` is the coefficient of ``z**k``.
    order : int, optional
        Truncation order. Defaults to ``len(coeffs) - 1``; a larger value pads
        with zeros, a smaller one truncates.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs, order: int | None = None):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be nonnegative")
            if order + 1 <= c.size:
                c = c[: order + 1].copy()
            else:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=np.complex128)])
        c.flags.writeable = False
        self._c = c

    @classmethod
    def monomial(cls, k: int, order: int | None = None, scale: complex = 1.0) -> PowerSeries:
        c = np.zeros(k + 1, dtype=np.complex128)
        c[k] = scale
        return cls(c, order)

    @classmethod
    def constant(cls, value: complex, order: int = 0) -> PowerSeries:
        return cls([value], order)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __repr__(self):
        return f"PowerSeries({np.array2string(self._c, precision=6)}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._c, other._c))

    __hash__ = None

    def truncate(self, order: int) -> PowerSeries:
        return PowerSeries(self._c, order)

    def allclose(self, other: PowerSeries, rtol=1e-12, atol=1e-14) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self._c[:n], other.coeffs[:n], rtol=rtol, atol=atol))

    def degree(self) -> int:
        """Index of the last nonzero coefficient (-1 for the zero series)."""
        nz = np.flatnonzero(self._c)
        return int(nz[-1]) if nz.size else -1

    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._c)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.order))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), -self)

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self._c * other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __call__(self, z):
        return evaluate(self, z)


def _coerce(x, order):
    if isinstance(x, PowerSeries):
        return x
    return PowerSeries([x], order)


def add(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    n = min(p.order, q.order) + 1
    return PowerSeries(p.coeffs[:n] + q.coeffs[:n])


def multiply(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(p.order, q.order) + 1
    return PowerSeries(np.convolve(p.coeffs[:n], q.coeffs[:n])[:n])


def derivative(p: PowerSeries) -> PowerSeries:
    if p.order < 1:
        raise ValueError("derivative of an order-0 series is not determined")
    k = np.arange(1, p.order + 1)
    return PowerSeries(k * p.coeffs[1:])


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """Taylor coefficients of ``outer(inner(z))`` by Horner accumulation.

    Requires ``inner(0) == 0``; the result has order
    ``min(outer.order, inner.order)``.
    """
    if inner.coeffs[0] != 0:
        raise ValueError("compose requires an inner series with zero constant term")
    n = min(outer.order, inner.order)
    g = inner.coeffs[: n + 1]
    acc = np.zeros(n + 1, dtype=np.complex128)
    acc[0] = outer.coeffs[n]
    for j in range(n - 1, -1, -1):
        acc = np.convolve(acc, g)[: n + 1]
        acc[0] += outer.coeffs[j]
    return PowerSeries(acc)


def fractional_power(p: PowerSeries, beta: float, order: int | None = None) -> PowerSeries:
    """Principal-branch ``p**beta``.

    The constant term is the principal value of ``p[0]**beta``; the rest
    follow from ``p * (p**beta)' = beta * p' * p**beta``. With ``order``
    larger than ``p.order`` the input is taken as an exact polynomial, which
    is how conformal-map derivatives are expanded to high order cheaply.
    """
    if p.coeffs[0] == 0:
        raise ValueError("fractional power needs a nonzero constant term")
    if order is None:
        order = p.order
    if beta == 0:
        return PowerSeries([1.0], order)
    q = _kernels.power_recurrence(p.coeffs, float(beta), int(order))
    return PowerSeries(q)


def evaluate(p: PowerSeries, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for c in p.coeffs[::-1]:
        acc = acc * z + c
    return acc if acc.ndim else complex(acc)


def taylor_shift(p: PowerSeries, z0: complex) -> PowerSeries:
    """Coefficients of ``w -> p(z0 + w)``, treating ``p`` as a polynomial."""
    work = p.coeffs.copy()
    n = len(work)
    # repeated synthetic division
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            work[j] += z0 * work[j + 1]
    return PowerSeries(work)
