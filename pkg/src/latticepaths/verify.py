"""Self-contained invariant suite for a single model.

Each check yields (name, passed, detail). The suite cross-validates the
dynamic programs against brute force, the generating-function evaluations
against truncated series of the dynamic programs, and the structural
constants against the behavior of the branches. It is intentionally cheap
enough to run on every model file.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import enumeration as en
from . import kernel
from .errors import LatticePathError
from .model import WalkModel, validate

Check = tuple[str, bool, str]


def run_verification(model: WalkModel) -> Iterator[Check]:
    report = validate(model)
    yield "model-valid", report.ok, "; ".join(report.violations)
    if not report.ok:
        return
    yield from _oracle_checks(model)
    yield from _series_identity_checks(model)
    yield from _kernel_checks(model)


def _oracle_checks(model: WalkModel) -> Iterator[Check]:
    ok_meander = ok_returns = ok_arch = ok_bridge = True
    detail = ""
    for n in range(0, 7):
        bf = en.brute_force(model, n)
        if en.meander_distribution(model, n, "exact").mass != bf.meander:
            ok_meander = False
            detail = f"n={n}"
        if n >= 1 and en.arch_mass(model, n, "exact") != bf.arch_mass:
            ok_arch = False
            detail = f"n={n}"
        if bf.excursion_mass:
            exact = en.returns_to_zero_distribution(model, n, "exact").prob
            if exact != bf.returns_distribution():
                ok_returns = False
                detail = f"n={n}"
        walk_total = sum(
            (w for _, w in en.enumerate_walk_paths(model, n)), Fraction(0)
        )
        bridge = sum(
            (w for p, w in en.enumerate_walk_paths(model, n)
             if en.path_altitudes(p)[-1] == 0),
            Fraction(0),
        )
        if en.bridge_and_walk_mass(model, n, "exact") != (walk_total, bridge):
            ok_bridge = False
            detail = f"n={n}"
    yield "oracle/meander-distribution", ok_meander, detail
    yield "oracle/arch-mass", ok_arch, detail
    yield "oracle/returns-distribution", ok_returns, detail
    yield "oracle/bridge-and-walk", ok_bridge, detail


def _series_identity_checks(model: WalkModel) -> Iterator[Check]:
    n_cons = 100
    e_series = en.excursion_series(model, n_cons, "exact")
    m_series = en.meander_mass_series(model, n_cons, "exact")
    if model.is_reflection and model.is_lukasiewicz:
        ok = all(m == 1 for m in m_series)
        yield "conservation/reflection-mass-one", ok, ""
    elif model.is_lukasiewicz:
        loss = Fraction(1) - model.P0geq.total_weight()
        ok = all(
            m_series[n + 1] == 1 - loss * sum(e_series[: n + 1], Fraction(0))
            for n in range(n_cons)
        )
        yield "conservation/absorption-identity", ok, ""
    else:
        ok = all(m_series[i + 1] <= m_series[i] for i in range(n_cons))
        yield "conservation/monotone-mass", ok, ""

    n_arch = 60
    a_series = en.arch_series(model, n_arch, "exact")
    ok = True
    detail = ""
    for n in range(1, n_arch + 1):
        conv = sum((a_series[m] * e_series[n - m] for m in range(1, n + 1)), Fraction(0))
        if conv != e_series[n]:
            ok = False
            detail = f"n={n}"
            break
    yield "identity/excursions-are-arch-sequences", ok, detail

    ok = True
    detail = ""
    for n in range(0, 26):
        if e_series[n] == 0:
            continue
        dist = en.returns_to_zero_distribution(model, n, "exact")
        if sum(dist.prob.values(), Fraction(0)) != 1:
            ok = False
            detail = f"n={n}"
    yield "returns/row-sums-one", ok, detail

    n_float = 200
    ef = en.excursion_series(model, n_float, "float")
    mf = en.meander_mass_series(model, n_float, "float")
    ee = en.excursion_series(model, n_float, "exact")
    me = en.meander_mass_series(model, n_float, "exact")
    ok = True
    detail = ""
    for n in range(n_float + 1):
        for exact, approx in ((ee[n], ef[n]), (me[n], mf[n])):
            ex = float(exact)
            if abs(approx - ex) > 1e-12 * max(1.0, abs(ex)):
                ok = False
                detail = f"n={n}"
    yield "float/agrees-with-exact", ok, detail


def _kernel_checks(model: WalkModel) -> Iterator[Check]:
    sc = kernel.structural_constants(model)
    rho = sc.rho
    zs = [rho * t for t in (0.05, 0.15, 0.25, 0.35, 0.45)]

    ok = True
    detail = ""
    for z in zs:
        branches = kernel.small_branches(model, z)
        if max(branches.residuals) > 1e-12:
            ok = False
            detail = f"z={z:.6g}"
    yield "kernel/root-residual", ok, detail

    grid = [rho * t for t in np.linspace(0.02, 0.98, 25)]
    u_vals = [kernel.small_branch_u1(model, z) for z in grid]
    ok = all(b > a for a, b in zip(u_vals, u_vals[1:]))
    yield "kernel/u1-increasing", ok, ""

    n_terms = 80
    dist = en.AltitudeDistribution(n=0, mass={0: Fraction(1)})
    masses = [dist.mass]
    for _ in range(n_terms):
        dist = en.step(model, dist)
        masses.append(dist.mass)
    ok = True
    detail = ""
    for z in (0.25 * rho, 0.5 * rho):
        if z >= 0.99:
            continue
        gfs = kernel.solve_boundary_gfs(model, z)
        tail = z ** (n_terms + 1) / (1.0 - z)
        for k in range(model.c):
            series = sum(float(masses[n].get(k, 0)) * z**n for n in range(n_terms + 1))
            if abs(gfs[k] - series) > 1e-9 + tail:
                ok = False
                detail = f"k={k} z={z:.6g}"
    yield "kernel/gf-matches-series", ok, detail

    ok = True
    detail = ""
    for z in zs:
        res = kernel.perturbation_identity_residual(model, z)
        if res > 1e-9:
            ok = False
            detail = f"z={z:.6g} residual={res:.3g}"
    yield "kernel/perturbation-identity", ok, detail

    if model.c >= 2:
        ok = True
        detail = ""
        for z in zs:
            a = kernel.excursion_gf_vandermonde(model, z)
            b = kernel.solve_boundary_gfs(model, z)[0]
            if abs(a - b) > 1e-9:
                ok = False
                detail = f"z={z:.6g}"
        yield "kernel/vandermonde-matches-system", ok, detail

    worst = kernel.u1_expansion_check(model)
    yield "kernel/u1-expansion-bounded", math.isfinite(worst), f"max scaled residual {worst:.3g}"

    lam = sc.lam
    if lam > 1 + 1e-9:
        ok = sc.rho1 is not None and sc.rho1 < rho
    elif lam < 1 - 1e-9:
        ok = sc.rho1 is None
    else:
        ok = sc.rho1 is not None and abs(sc.rho1 - rho) <= 1e-10 * rho
    yield "kernel/criticality-trichotomy", ok, f"lam={lam:.6g}"

    if sc.rho1 is not None and 0 < sc.rho1 < rho:
        try:
            residual = abs(kernel.boundary_denominator(model, sc.rho1))
            yield "kernel/rho1-is-root", residual <= 1e-9, f"residual {residual:.3g}"
        except LatticePathError:
            yield "kernel/rho1-is-root", False, "branch evaluation failed at rho1"
