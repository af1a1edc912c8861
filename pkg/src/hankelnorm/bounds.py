"""The inequality chain for the commutator ``[T_psi^*, T_psi]`` on A^2_alpha(Omega).

    rho_{Omega,alpha} / ||1||^2  <=  ||[T^*, T]||  =  ||H_{conj psi}||^2
                                 <=  ||psi'||^2_{A^2(Omega)} / (2 + alpha)

plus the classical Putnam, Khavinson and de St. Venant specializations. All
values use the normalized measure ``dx dy / pi`` unless stated otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .domains import (
    ConformalDomain,
    area,
    arc_length,
    grow_transport,
    norm_sq_of_one,
    transport_symbol,
)
from .hankel import build_form, hankel_norm_sq, operator_norm_sq, theorem_bound_sq
from .series import PowerSeries
from .spaces import as_weight

COORDINATE = PowerSeries([0.0, 1.0])
CHAIN_TOL = 1e-7


def _map_of(F):
    return F.map if isinstance(F, ConformalDomain) else F


def commutator_norm_sq(F, psi: PowerSeries = COORDINATE, alpha=0.0, dim: int = 64) -> float:
    """``||[T_psi^*, T_psi]||`` on A^2_alpha(Omega), compressed to degree < dim."""
    symbol = transport_symbol(psi, _map_of(F))
    return operator_norm_sq(build_form(symbol, alpha, dim))


def rigidity(F, alpha=0.0) -> float:
    """Weighted torsional rigidity ``||H_{conj z} 1||^2_alpha`` (normalized units).

    For ``alpha = 0`` this is ``rho_Omega / pi``.
    """
    F = _map_of(F)
    w = as_weight(alpha)
    symbol = transport_symbol(COORDINATE, F)
    value, _ = grow_transport(F, w, lambda g: hankel_norm_sq(g, symbol, w))
    return value


def rigidity_lower_bound(F, alpha=0.0) -> float:
    """``rho_{Omega,alpha} / ||1||^2_alpha``, a lower bound for the commutator."""
    return rigidity(F, alpha) / norm_sq_of_one(_map_of(F), alpha)


def khavinson_lower_bound(F) -> float:
    """``4 Area^2 / Per^2``, Khavinson's bound for the Hardy space commutator.

    Uses the breakpoint-aware arc length, not the trapezoid perimeter: the
    latter converges only quadratically at boundary points where F' = 0.
    """
    F = _map_of(F)
    return 4.0 * area(F) ** 2 / arc_length(F) ** 2


def putnam_bound(F) -> float:
    """``Area(sigma(T_z)) / pi = Area(Omega) / pi``."""
    return area(_map_of(F)) / math.pi


def st_venant_check(F) -> tuple[float, float]:
    """Physical torsional rigidity and the de St. Venant bound ``Area^2 / (2 pi)``."""
    F = _map_of(F)
    return math.pi * rigidity(F, 0.0), area(F) ** 2 / (2.0 * math.pi)


@dataclass(frozen=True)
class BoundReport:
    alpha: float
    domain_id: str
    dim: int
    lower_rigidity: float
    commutator_norm: float
    upper_sharp: float
    upper_putnam: float
    khavinson_lower: float | None = None
    flags: dict = field(default_factory=dict)

    @property
    def chain_ok(self) -> bool:
        return all(self.flags.values())


def _is_coordinate(psi: PowerSeries) -> bool:
    return psi.degree() == 1 and psi.coeffs[0] == 0 and psi.coeffs[1] == 1


def full_report(F, psi: PowerSeries = COORDINATE, alpha=0.0, dim: int = 64,
                tol: float = CHAIN_TOL, domain_id: str | None = None) -> BoundReport:
    """Evaluate every bound for one (domain, symbol, alpha) and check the chain.

    The rigidity bound is specific to ``psi = z``; for other symbols only the
    commutator and the sharp bound are meaningful and the other fields
    still refer to the coordinate symbol.
    """
    if isinstance(F, ConformalDomain):
        domain_id = domain_id or F.name
    Fm = _map_of(F)
    w = as_weight(alpha)
    symbol = transport_symbol(psi, Fm)
    lower = rigidity_lower_bound(Fm, w)
    comm = operator_norm_sq(build_form(symbol, w, dim))
    sharp = theorem_bound_sq(symbol, w)
    putnam = putnam_bound(Fm)
    khav = khavinson_lower_bound(Fm) if w.is_hardy else None
    coordinate = _is_coordinate(psi)
    flags = {}
    if coordinate:
        flags["lower<=commutator"] = lower <= comm + tol
    flags["commutator<=sharp"] = comm <= sharp + tol
    if w.alpha == 0.0 and coordinate:
        flags["sharp<=putnam"] = sharp <= putnam + tol
    return BoundReport(
        alpha=w.alpha,
        domain_id=domain_id or "custom",
        dim=dim,
        lower_rigidity=lower,
        commutator_norm=comm,
        upper_sharp=sharp,
        upper_putnam=putnam,
        khavinson_lower=khav,
        flags=flags,
    )
