"""Simply connected domains given by a univalent map ``F`` from the disk.

Only ``F: D -> Omega`` is ever stored; the Riemann map ``Omega -> D`` is its
inverse and never computed. Functions and symbols on ``Omega`` are pulled
back to the disk, where the Hankel machinery lives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConvergenceError
from .series import PowerSeries, compose, derivative, fractional_power, multiply, taylor_shift
from .spaces import as_weight, monomial_norms

DEFAULT_SAMPLES = 4096
TRANSPORT_RTOL = 1e-12
TRANSPORT_TAIL_MAX = 1e-8
TRANSPORT_CAP = 1 << 16
TRANSPORT_START = 64


def _check_map(F: PowerSeries):
    if F.order < 1 or F.coeffs[1] == 0:
        raise ValueError("degenerate map: F'(0) must be nonzero")


def area(F: PowerSeries) -> float:
    """Area of ``F(D)`` in physical units, ``pi * sum n |c_n|^2``."""
    _check_map(F)
    n = np.arange(len(F.coeffs))
    return float(math.pi * np.sum(n * np.abs(F.coeffs) ** 2))


def perimeter(F: PowerSeries, samples: int = DEFAULT_SAMPLES) -> float:
    """Length of ``F(dD)`` by the trapezoid rule on ``samples`` uniform angles."""
    if samples < 16:
        raise ValueError("perimeter needs at least 16 samples")
    theta = 2.0 * math.pi * np.arange(samples) / samples
    speed = np.abs(derivative(F)(np.exp(1j * theta)))
    return float(2.0 * math.pi * np.mean(speed))


def _critical_angles(F: PowerSeries, band: float = 1e-3) -> np.ndarray:
    """Arguments of zeros of F' lying within ``band`` of the unit circle."""
    dF = derivative(F)
    deg = dF.degree()
    if deg < 1:
        return np.empty(0)
    roots = np.roots(dF.coeffs[: deg + 1][::-1])
    near = roots[np.abs(np.abs(roots) - 1.0) < band]
    return np.sort(np.mod(np.angle(near), 2.0 * math.pi))


_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def arc_length(F: PowerSeries, rtol: float = 1e-14, max_depth: int = 40) -> float:
    """Length of ``F(dD)`` by adaptive Gauss-Legendre.

    Panels are split at the arguments of boundary zeros of F', where
    ``|F'(e^{i theta})|`` has a kink, so each panel integrand is smooth.
    """
    speed = derivative(F)

    def panel(a, b):
        t = 0.5 * (b - a) * _GL_X + 0.5 * (b + a)
        return 0.5 * (b - a) * float(np.dot(_GL_W, np.abs(speed(np.exp(1j * t)))))

    def adapt(a, b, whole, depth):
        mid = 0.5 * (a + b)
        left, right = panel(a, mid), panel(mid, b)
        if depth >= max_depth or abs(left + right - whole) <= rtol * max(abs(whole), 1e-300):
            return left + right
        return adapt(a, mid, left, depth + 1) + adapt(mid, b, right, depth + 1)

    cuts = _critical_angles(F)
    start = cuts[0] if cuts.size else 0.0
    if cuts.size:
        edges = np.concatenate([cuts, [start + 2.0 * math.pi]])
    else:
        edges = np.array([0.0, 2.0 * math.pi])
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0:
            continue
        # a few initial panels keep the adaptive estimate honest
        h = (b - a) / 8
        for sub in np.linspace(a, b, 9)[:-1]:
            total += adapt(sub, sub + h, panel(sub, sub + h), 0)
    return total


def boundary_samples(F: PowerSeries, samples: int = DEFAULT_SAMPLES) -> np.ndarray:
    theta = 2.0 * math.pi * np.arange(samples) / samples
    return np.asarray(F(np.exp(1j * theta)))


def _as_polynomial(p: PowerSeries, order: int) -> PowerSeries:
    return p.truncate(max(order, p.degree(), 0))


def transport_symbol(psi: PowerSeries, F: PowerSeries) -> PowerSeries:
    """Pull a polynomial symbol on ``Omega`` back to the disk: ``psi o F - psi(F(0))``.

    ``psi`` is treated as an exact polynomial, the result has ``F``'s order.
    """
    _check_map(F)
    z0 = F.coeffs[0]
    shifted = taylor_shift(_as_polynomial(psi, F.order), z0)
    inner = F - z0
    out = compose(shifted, inner).coeffs.copy()
    out[0] = 0.0
    return PowerSeries(out)


def transport_function(f: PowerSeries, F: PowerSeries, alpha, order: int = 64) -> PowerSeries:
    """Unitary pull-back of ``f`` from A^2_alpha(Omega) to A^2_alpha(D).

    ``g = (F')**((2 + alpha)/2) * (f o F)``; ``F`` and ``f`` are treated as
    exact polynomials and ``g`` is expanded to ``order``.
    """
    _check_map(F)
    w = as_weight(alpha)
    Fp = derivative(F)
    density = fractional_power(Fp, (2.0 + w.alpha) / 2.0, order=order)
    if f.degree() <= 0:
        return PowerSeries(density.coeffs * f.coeffs[0])
    z0 = F.coeffs[0]
    shifted = taylor_shift(_as_polynomial(f, order), z0)
    pulled = compose(shifted, (F - z0).truncate(order))
    return multiply(density, pulled)


def grow_transport(F: PowerSeries, alpha, quantity, *, rtol=TRANSPORT_RTOL,
                   cap=TRANSPORT_CAP, tail_max=TRANSPORT_TAIL_MAX):
    """Evaluate ``quantity(g)`` on the pulled-back constant 1 until it settles.

    The expansion order doubles from 64 until consecutive values agree to
    ``rtol``. At ``cap`` the last change stands in for the neglected tail;
    above ``tail_max`` (relative) this raises :class:`ConvergenceError`.
    Returns ``(value, g)``.
    """
    _check_map(F)
    w = as_weight(alpha)
    order = TRANSPORT_START
    while order < F.order:
        order *= 2
    prev = None
    while True:
        g = transport_function(PowerSeries([1.0]), F, w, order=order)
        with np.errstate(over="ignore", invalid="ignore"):
            value = quantity(g)
        if not math.isfinite(value):
            raise ConvergenceError(
                f"transported series blew up at order {order}; is the map univalent on the disk?"
            )
        if prev is not None:
            change = abs(value - prev)
            scale = max(abs(value), np.finfo(float).tiny)
            if change <= rtol * scale:
                return value, g
            if order >= cap:
                if change <= tail_max * scale:
                    return value, g
                raise ConvergenceError(
                    f"transported series not converged at order {order}: "
                    f"relative change {change / scale:.3e}"
                )
        elif g.degree() < order // 2:
            # finite expansion (e.g. alpha = 0): nothing left to add
            return value, g
        prev = value
        order *= 2


def norm_sq_of_one(F: PowerSeries, alpha) -> float:
    """``||1||^2`` in A^2_alpha(Omega) (normalized measure).

    ``Area/pi`` for ``alpha = 0`` and ``Per/(2 pi)`` for ``alpha = -1``.
    """
    w = as_weight(alpha)

    def norm(g):
        D = monomial_norms(w, g.order).values
        return float(np.sum(np.abs(g.coeffs) ** 2 * D))

    value, _ = grow_transport(F, w, norm)
    return value


@dataclass(frozen=True)
class ConformalDomain:
    """Domain ``Omega = F(D)`` with cached geometry."""

    map: PowerSeries
    samples: int = DEFAULT_SAMPLES
    name: str = "custom"
    boundary: np.ndarray = field(init=False, repr=False, compare=False)
    area: float = field(init=False, compare=False)
    perimeter: float = field(init=False, compare=False)

    def __post_init__(self):
        _check_map(self.map)
        b = boundary_samples(self.map, self.samples)
        b.flags.writeable = False
        object.__setattr__(self, "boundary", b)
        object.__setattr__(self, "area", area(self.map))
        object.__setattr__(self, "perimeter", perimeter(self.map, self.samples))

    @property
    def diameter(self) -> float:
        b = self.boundary
        # longest bounding-box side; within sqrt(2) of the true diameter
        return float(max(np.ptp(b.real), np.ptp(b.imag)))

    def isoperimetric_ok(self, rtol: float = 1e-9) -> bool:
        return self.perimeter ** 2 >= 4.0 * math.pi * self.area * (1.0 - rtol)

    @classmethod
    def builtin(cls, name: str, samples: int = DEFAULT_SAMPLES) -> ConformalDomain:
        return cls(BUILTIN_MAPS[name], samples=samples, name=name)

    @classmethod
    def from_file(cls, path, samples: int = DEFAULT_SAMPLES) -> ConformalDomain:
        path = Path(path)
        return cls(read_coefficients(path), samples=samples, name=path.stem)

    @classmethod
    def resolve(cls, spec: str, samples: int = DEFAULT_SAMPLES) -> ConformalDomain:
        """A builtin name or a coefficient file path."""
        if spec in BUILTIN_MAPS:
            return cls.builtin(spec, samples)
        return cls.from_file(spec, samples)


BUILTIN_MAPS = {
    "disk": PowerSeries([0.0, 1.0]),
    "example1": PowerSeries([0.0, 2.0, 1.0]),
}


def parse_complex_lines(text: str) -> np.ndarray:
    """``re im`` per line, ``#`` starts a comment, blank lines ignored."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 're im', got {raw!r}")
        values.append(complex(float(parts[0]), float(parts[1])))
    if not values:
        raise ValueError("no coefficients found")
    return np.array(values, dtype=np.complex128)


def read_coefficients(path) -> PowerSeries:
    """Map coefficients from a file; line k holds the coefficient of z**k."""
    return PowerSeries(parse_complex_lines(Path(path).read_text()))


def write_coefficients(path, F: PowerSeries, comment: str | None = None):
    lines = [f"# {comment}"] if comment else []
    lines += [f"{float(c.real)!r} {float(c.imag)!r}" for c in F.coeffs]
    Path(path).write_text("\n".join(lines) + "\n")


def mobius(a: complex, order: int = 48) -> PowerSeries:
    """Taylor expansion of the disk automorphism ``(a - z)/(1 - conj(a) z)``."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError("Mobius parameter must lie in the unit disk")
    n = np.arange(1, order + 1)
    c = np.empty(order + 1, dtype=np.complex128)
    c[0] = a
    c[1:] = -(1 - abs(a) ** 2) * np.conj(a) ** (n - 1)
    return PowerSeries(c)
