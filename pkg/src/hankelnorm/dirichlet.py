"""Finite-difference torsion problem ``Lap v = -2`` in Omega, ``v = 0`` outside.

An independent check on the series rigidity at ``alpha = 0``: cells whose
centres fall inside the boundary polygon (winding number != 0) are unknowns,
all other cells hold zero. The 5-point system is solved by conjugate
gradients or by SOR; the torsional rigidity is ``2 * integral(v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .domains import ConformalDomain, parse_complex_lines
from .errors import ConvergenceError

SOURCE = 2.0
MAX_ITER = 10**6


@dataclass(frozen=True)
class GridProblem:
    """Solved (or solvable) torsion problem on a uniform grid.

    ``v[i, j]`` lives at ``(xs[j], ys[i])``. The outermost ring of cells is
    always outside the domain.
    """

    h: float
    xs: np.ndarray
    ys: np.ndarray
    mask: np.ndarray
    v: np.ndarray
    iterations: int = 0
    residual: float = float("nan")
    method: str = ""

    @property
    def lower_left(self) -> complex:
        return complex(self.xs[0], self.ys[0])

    @property
    def upper_right(self) -> complex:
        return complex(self.xs[-1], self.ys[-1])

    def value_at(self, z: complex) -> float:
        """Bilinear interpolation of ``v``."""
        fx = (z.real - self.xs[0]) / self.h
        fy = (z.imag - self.ys[0]) / self.h
        j, i = int(math.floor(fx)), int(math.floor(fy))
        tx, ty = fx - j, fy - i
        v = self.v
        return float(
            (1 - tx) * (1 - ty) * v[i, j]
            + tx * (1 - ty) * v[i, j + 1]
            + (1 - tx) * ty * v[i + 1, j]
            + tx * ty * v[i + 1, j + 1]
        )


def read_polygon(path) -> np.ndarray:
    """Closed polygon from a ``re im`` per vertex text file."""
    return parse_complex_lines(Path(path).read_text())


def _vertices(domain) -> np.ndarray:
    if isinstance(domain, ConformalDomain):
        return np.asarray(domain.boundary)
    verts = np.asarray(domain, dtype=np.complex128).ravel()
    if verts.size < 3:
        raise ValueError("a polygon needs at least three vertices")
    return verts


def make_grid(domain, h: float) -> GridProblem:
    """Cell-centred grid over the bounding box plus one outside ring."""
    if not h > 0:
        raise ValueError("grid spacing must be positive")
    verts = _vertices(domain)
    x0, x1 = verts.real.min(), verts.real.max()
    y0, y1 = verts.imag.min(), verts.imag.max()
    nx = int(math.ceil((x1 - x0) / h)) + 2
    ny = int(math.ceil((y1 - y0) / h)) + 2
    xs = x0 + (np.arange(nx) - 0.5) * h
    ys = y0 + (np.arange(ny) - 0.5) * h
    wind = _kernels.grid_winding(xs, ys, verts.real, verts.imag)
    mask = wind != 0
    mask[0, :] = mask[-1, :] = mask[:, 0] = mask[:, -1] = False
    return GridProblem(h=h, xs=xs, ys=ys, mask=mask, v=np.zeros((ny, nx)))


def _apply(v, mask, h):
    """``-Lap_h v`` on the masked cells (zero elsewhere)."""
    out = np.zeros_like(v)
    out[1:-1, 1:-1] = (
        4.0 * v[1:-1, 1:-1] - v[2:, 1:-1] - v[:-2, 1:-1] - v[1:-1, 2:] - v[1:-1, :-2]
    ) / (h * h)
    out[~mask] = 0.0
    return out


def residual_max(v, mask, h, source=SOURCE) -> float:
    """``max |Lap_h v + source|`` over the masked cells."""
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(source - _apply(v, mask, h))[mask]))


def _cg(v, mask, h, tol, max_iter):
    b = np.where(mask, SOURCE, 0.0)
    r = b - _apply(v, mask, h)
    p = r.copy()
    rr = float(np.sum(r * r))
    it = 0
    while True:
        if np.max(np.abs(r)) < tol:
            # the recursive residual drifts; confirm with the true one
            true = residual_max(v, mask, h)
            if true < tol:
                return it, true
            r = b - _apply(v, mask, h)
            p = r.copy()
            rr = float(np.sum(r * r))
        if it >= max_iter:
            raise ConvergenceError(f"CG did not reach residual {tol:g} in {max_iter} iterations")
        Ap = _apply(p, mask, h)
        step = rr / float(np.sum(p * Ap))
        v += step * p
        r -= step * Ap
        rr_new = float(np.sum(r * r))
        p = r + (rr_new / rr) * p
        rr = rr_new
        it += 1


def solve(domain, h: float, tol: float = 1e-8, method: str = "cg",
          omega: float = 1.9, max_iter: int = MAX_ITER) -> GridProblem:
    """Solve ``Lap_h v = -2`` on the masked grid.

    ``domain`` is a :class:`ConformalDomain` or a sequence of complex polygon
    vertices. ``method`` is ``"cg"`` or ``"sor"`` (relaxation ``omega``).
    Stops when the interior residual max-norm is below ``tol``.
    """
    grid = make_grid(domain, h)
    if not grid.mask.any():
        raise ValueError("no grid cell lies inside the domain; refine h")
    v = np.zeros_like(grid.v)
    if method == "cg":
        it, res = _cg(v, grid.mask, h, tol, max_iter)
    elif method == "sor":
        it, res = _kernels.sor_solve(v, grid.mask, h, SOURCE, omega, tol, max_iter)
        if res >= tol:
            raise ConvergenceError(f"SOR did not reach residual {tol:g} in {max_iter} sweeps")
    else:
        raise ValueError(f"unknown method {method!r}")
    v.flags.writeable = False
    return GridProblem(h=h, xs=grid.xs, ys=grid.ys, mask=grid.mask, v=v,
                       iterations=int(it), residual=float(res), method=method)


def torsional_rigidity_fd(grid: GridProblem) -> float:
    """``2 * integral(v)`` by the midpoint rule, physical units."""
    return float(2.0 * grid.h**2 * np.sum(grid.v[grid.mask]))


def integral(grid: GridProblem, f) -> float:
    return float(grid.h**2 * np.sum(np.asarray(f)))


def dirichlet_integral(grid: GridProblem, f) -> float:
    """``integral |grad f|^2`` from forward differences over every cell edge."""
    f = np.asarray(f, dtype=np.float64)
    return float(np.sum(np.diff(f, axis=0) ** 2) + np.sum(np.diff(f, axis=1) ** 2))


def variational_ratio(grid: GridProblem, f) -> float:
    """``4 (integral f)^2 / integral |grad f|^2``; never exceeds the rigidity."""
    return 4.0 * integral(grid, f) ** 2 / dirichlet_integral(grid, f)


def distance_bump(grid: GridProblem) -> np.ndarray:
    """Grid distance to the outside (in length units), zero off the mask."""
    layers = np.zeros(grid.mask.shape)
    current = grid.mask.copy()
    k = 0
    while current.any():
        k += 1
        layers[current] = k
        inner = np.zeros_like(current)
        inner[1:-1, 1:-1] = (
            current[1:-1, 1:-1] & current[2:, 1:-1] & current[:-2, 1:-1]
            & current[1:-1, 2:] & current[1:-1, :-2]
        )
        current = inner
    return layers * grid.h


def _centred(f, h):
    fx = np.zeros_like(f, dtype=np.complex128)
    fy = np.zeros_like(f, dtype=np.complex128)
    fx[:, 1:-1] = (f[:, 2:] - f[:, :-2]) / (2 * h)
    fy[1:-1, :] = (f[2:, :] - f[:-2, :]) / (2 * h)
    return fx, fy


def dbar_of_torsion_gradient(grid: GridProblem) -> np.ndarray:
    """``dbar(u)`` for ``u = -2 dv`` by centred differences; ideally 1 inside."""
    vx, vy = _centred(grid.v, grid.h)
    u = -2.0 * 0.5 * (vx - 1j * vy)
    ux, uy = _centred(u, grid.h)
    return 0.5 * (ux + 1j * uy)


def interior_cells(grid: GridProblem, margin: float) -> np.ndarray:
    """Masked cells at grid distance ``>= margin`` from the outside."""
    return distance_bump(grid) >= margin
