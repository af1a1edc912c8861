"""Property battery behind ``hankelnorm verify``.

Each check returns a :class:`Check`; the CLI serializes them to JSON. The
battery is deterministic (fixed seeds, fixed grids).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds, dirichlet
from .domains import ConformalDomain, area, mobius, norm_sq_of_one, perimeter, transport_symbol
from .hankel import build_form, operator_norm_sq, theorem_bound_sq
from .series import PowerSeries
from .spaces import lemma_sum_check

DEFAULT_ALPHAS = (-1.0, -0.5, 0.0, 1.0, 3.0)
MOBIUS_PARAMS = (0.3, 0.5j, -0.4 + 0.2j)
Z = PowerSeries([0.0, 1.0])


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return asdict(self)


def random_symbol(rng, degree: int) -> PowerSeries:
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    c[0] = 0.0
    return PowerSeries(c)


def random_univalent_map(rng, degree: int) -> PowerSeries:
    """``c_1 = 1`` and ``sum_{k>=2} k |c_k| < 1``, which forces univalence."""
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    c[0] = rng.normal() + 1j * rng.normal()
    c[1] = 1.0
    k = np.arange(2, degree + 1)
    weight = np.sum(k * np.abs(c[2:]))
    budget = rng.uniform(0.2, 0.9)
    c[2:] *= budget / weight
    return PowerSeries(c)


def check_theorem_bound(alphas=DEFAULT_ALPHAS, n_symbols=20, dims=(8, 16, 32, 64),
                        max_degree=8, seed=0) -> Check:
    rng = np.random.default_rng(seed)
    worst_ratio, monotone_ok = 0.0, True
    for _ in range(n_symbols):
        psi = random_symbol(rng, int(rng.integers(1, max_degree + 1)))
        for a in alphas:
            bound = theorem_bound_sq(psi, a)
            prev = -math.inf
            for d in dims:
                val = operator_norm_sq(build_form(psi, a, d))
                if val < prev * (1 - 1e-9):
                    monotone_ok = False
                prev = val
            worst_ratio = max(worst_ratio, prev / bound)
    return Check("theorem_bound", worst_ratio <= 1 + 1e-9 and monotone_ok,
                 {"worst_ratio": worst_ratio, "monotone": monotone_ok})


def check_sharpness(alphas=DEFAULT_ALPHAS, dim=64) -> Check:
    errs = {}
    for a in alphas:
        target = 1.0 / (2.0 + a)
        errs[str(a)] = max(abs(operator_norm_sq(build_form(Z, a, d)) - target) for d in (1, dim))
    return Check("sharpness", max(errs.values()) < 1e-10, {"max_abs_error": errs})


def check_lemma_sum(alphas=(-1, -0.5, 0, 0.5, 1, 2, 5), vmax=50) -> Check:
    worst = 0.0
    for a in alphas:
        for v in range(vmax + 1):
            lhs, rhs = lemma_sum_check(a, v)
            worst = max(worst, abs(lhs - rhs) / rhs)
    return Check("lemma_sum", worst < 1e-12, {"max_rel_error": worst})


def check_mobius(alphas=(-1.0, 0.0, 1.0), dim=48) -> Check:
    worst = 0.0
    for a in alphas:
        ref = operator_norm_sq(build_form(Z, a, dim))
        for p in MOBIUS_PARAMS:
            sym = transport_symbol(Z, mobius(p, 48))
            val = operator_norm_sq(build_form(sym, a, dim))
            worst = max(worst, abs(val - ref) / ref)
    return Check("mobius_invariance", worst < 1e-5, {"max_rel_error": worst})


def chain_domains(seed=1):
    rng = np.random.default_rng(seed)
    out = [ConformalDomain.builtin("disk"), ConformalDomain.builtin("example1"),
           ConformalDomain(mobius(0.3, 48), name="mobius(0.3)")]
    for i in range(2):
        out.append(ConformalDomain(random_univalent_map(rng, 5), name=f"random{i}"))
    return out


def check_chain(domains=None, alphas=DEFAULT_ALPHAS, dim=64) -> Check:
    domains = chain_domains() if domains is None else domains
    failures = []
    for dom in domains:
        for a in alphas:
            r = bounds.full_report(dom, alpha=a, dim=dim)
            if not (r.lower_rigidity <= r.commutator_norm + 1e-7
                    and r.commutator_norm <= r.upper_sharp + 1e-9 * (1 + r.upper_sharp)):
                failures.append({"domain": dom.name, "alpha": a,
                                 "lower": r.lower_rigidity, "commutator": r.commutator_norm,
                                 "upper": r.upper_sharp})
    return Check("chain", not failures, {"failures": failures})


def check_disk_saturation(alphas=DEFAULT_ALPHAS, dim=64) -> Check:
    disk = ConformalDomain.builtin("disk")
    worst = 0.0
    for a in alphas:
        r = bounds.full_report(disk, alpha=a, dim=dim)
        vals = (r.lower_rigidity, r.commutator_norm, r.upper_sharp)
        worst = max(worst, max(vals) - min(vals))
    rho, sv = bounds.st_venant_check(disk.map)
    ok = worst < 1e-9 and abs(rho - sv) < 1e-10
    return Check("disk_saturation", ok, {"max_spread": worst, "st_venant_gap": rho - sv})


def example1_values(samples=4096) -> dict:
    F = ConformalDomain.builtin("example1").map
    return {
        "perimeter": perimeter(F, samples),
        "area": area(F),
        "khavinson": bounds.khavinson_lower_bound(F),
        "rigidity_bound": bounds.rigidity_lower_bound(F, -1.0),
        "hardy_norm_of_one": norm_sq_of_one(F, -1.0),
    }


def example1_comparisons(values: dict) -> list[tuple[str, bool]]:
    pi = math.pi
    v = values
    return [
        ("perimeter", abs(v["perimeter"] - 16.0) / 16.0 < 1e-4),
        ("area", abs(v["area"] - 6 * pi) < 1e-10),
        ("khavinson", abs(v["khavinson"] - 9 * pi**2 / 16) < 1e-8),
        ("rigidity_bound", abs(v["rigidity_bound"] - 29 * pi / 16) < 1e-8),
        ("rigidity>khavinson", v["rigidity_bound"] > v["khavinson"]),
    ]


def check_example1() -> Check:
    values = example1_values()
    comps = example1_comparisons(values)
    return Check("example1", all(ok for _, ok in comps),
                 {"values": values, "failed": [n for n, ok in comps if not ok]})


def check_fd(h_disk=0.005) -> Check:
    disk = ConformalDomain.builtin("disk")
    ex1 = ConformalDomain.builtin("example1")
    rho_disk = dirichlet.torsional_rigidity_fd(dirichlet.solve(disk, h_disk))
    rho_ex1 = dirichlet.torsional_rigidity_fd(dirichlet.solve(ex1, ex1.diameter / 400))
    series_ex1 = math.pi * bounds.rigidity(ex1.map, 0.0)
    e_disk = abs(rho_disk - math.pi / 2) / (math.pi / 2)
    e_ex1 = abs(rho_ex1 - series_ex1) / series_ex1
    return Check("fd_cross_check", e_disk < 0.02 and e_ex1 < 0.03,
                 {"disk_rel_error": e_disk, "example1_rel_error": e_ex1})


def run_battery(alphas=DEFAULT_ALPHAS, dim=64, domains=None, fd=False) -> list[Check]:
    checks = [
        check_example1(),
        check_sharpness(alphas, dim),
        check_theorem_bound(alphas, dims=tuple(d for d in (8, 16, 32, 64) if d <= dim) or (dim,)),
        check_lemma_sum(),
        check_mobius(),
        check_chain(domains, alphas, dim),
        check_disk_saturation(alphas, dim),
    ]
    if fd:
        checks.append(check_fd())
    return checks
