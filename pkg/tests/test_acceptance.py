"""Acceptance criteria. One test per criterion; each prints a PASS line with
its measured numbers so `pytest -s tests/test_acceptance.py` doubles as a
report. Tolerances are fixed here, not tuned at runtime.
"""

import math
import time
from fractions import Fraction

from latticepaths import (
    BoundaryRule,
    LatticePathError,
    PeriodicModelError,
    Statistic,
    arch_mass,
    brute_force,
    bridge_and_walk_mass,
    classify,
    excursion_asymptotic,
    excursion_mass,
    excursion_series,
    final_altitude_asymptotic,
    final_altitude_expectation,
    fit,
    meander_distribution,
    meander_mass,
    meander_mass_series,
    meander_ratio_asymptotic,
    path_probability,
    perturbation_identity_residual,
    returns_law,
    returns_to_zero_distribution,
    final_altitude_law,
    solve_boundary_gfs,
    structural_constants,
    arch_asymptotic,
    excursion_gf_vandermonde,
)
from latticepaths.enumeration import bridge_paths, enumerate_walk_paths, path_altitudes
from conftest import ORACLE_MODEL_NAMES

F = Fraction


def _report(label: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {label}" + (f": {detail}" if detail else ""))
    assert ok, f"{label}: {detail}"


def test_criterion_1_table2_exact(models):
    t0 = time.time()
    model = models["dyck_reflection"]
    paths = bridge_paths(model, 4)
    assert len(paths) == 6
    excursions = [(1, 1, -1, -1), (1, -1, 1, -1)]
    expected = {
        BoundaryRule.UNIFORM: {p: F(1, 6) for p in paths},
        BoundaryRule.ABSOLUTE_VALUE: {excursions[0]: F(1, 3), excursions[1]: F(2, 3)},
        BoundaryRule.REFLECTION: {excursions[0]: F(1, 3), excursions[1]: F(2, 3)},
        BoundaryRule.ABSORPTION: {excursions[0]: F(1, 2), excursions[1]: F(1, 2)},
    }
    ok = True
    for rule, table in expected.items():
        for p in paths:
            want = table.get(p, F(0))
            if path_probability(rule, model, p) != want:
                ok = False
    elapsed = time.time() - t0
    _report("criterion 1: length-4 table exact", ok and elapsed < 1.0, f"{elapsed:.2f}s")


def test_criterion_2_oracle_equivalence(models):
    t0 = time.time()
    ok = True
    detail = ""
    for name in ORACLE_MODEL_NAMES:
        model = models[name]
        for n in range(0, 11):
            bf = brute_force(model, n)
            if meander_distribution(model, n).mass != bf.meander:
                ok, detail = False, f"{name} meander n={n}"
            if excursion_mass(model, n) != bf.excursion_mass:
                ok, detail = False, f"{name} excursions n={n}"
            if n >= 1 and arch_mass(model, n) != bf.arch_mass:
                ok, detail = False, f"{name} arches n={n}"
            if bf.excursion_mass:
                if returns_to_zero_distribution(model, n).prob != bf.returns_distribution():
                    ok, detail = False, f"{name} returns n={n}"
            walk_total = F(0)
            bridge = F(0)
            for p, w in enumerate_walk_paths(model, n):
                walk_total += w
                if path_altitudes(p)[-1] == 0:
                    bridge += w
            if bridge_and_walk_mass(model, n) != (walk_total, bridge):
                ok, detail = False, f"{name} bridges n={n}"
    elapsed = time.time() - t0
    _report(
        "criterion 2: brute force vs DP exact, 7 models, n <= 10",
        ok and elapsed < 30.0,
        detail or f"{elapsed:.1f}s",
    )


def test_criterion_3_kernel_identities(models):
    t0 = time.time()
    ok = True
    detail = ""
    for name in ORACLE_MODEL_NAMES:
        model = models[name]
        sc = structural_constants(model)
        e = excursion_series(model, 80)
        for i in range(1, 21):
            z = 0.5 * sc.rho * i / 21.0
            series = sum(float(c) * z**n for n, c in enumerate(e))
            tail = z**81 / (1.0 - z)
            f0 = solve_boundary_gfs(model, z)[0]
            if abs(f0 - series) > 1e-9 + tail:
                ok, detail = False, f"{name} F0 z={z:.4g}"
            if perturbation_identity_residual(model, z) > 1e-9:
                ok, detail = False, f"{name} perturbation z={z:.4g}"
            if model.c >= 2:
                if abs(excursion_gf_vandermonde(model, z) - f0) > 1e-9:
                    ok, detail = False, f"{name} vandermonde z={z:.4g}"
    elapsed = time.time() - t0
    _report(
        "criterion 3: kernel identities at 20 points per model",
        ok and elapsed < 10.0,
        detail or f"{elapsed:.1f}s",
    )


def test_criterion_4_critical_excursions(models):
    t0 = time.time()
    model = models["motzkin_reflection"]
    sc = structural_constants(model)
    checks = []
    for n, tol in ((500, 0.05), (2000, 0.02)):
        e_n = excursion_mass(model, n, "float")
        value = e_n * math.sqrt(math.pi * n) * sc.kappa
        checks.append((n, value, abs(value - 1.0) <= tol))
    elapsed = time.time() - t0
    ok = all(c[2] for c in checks) and elapsed < 60.0
    detail = ", ".join(f"n={n}: {v:.4f}" for n, v, _ in checks) + f" ({elapsed:.1f}s)"
    _report("criterion 4: critical excursion constant", ok, detail)


def test_criterion_5_sub_and_supercritical_excursions(models):
    results = []
    for name in ("motzkin_absorption", "supercritical_drift_down"):
        model = models[name]
        est = excursion_asymptotic(model, 1000)
        exact = excursion_mass(model, 1000, "float")
        ratio = exact / est.value
        results.append((name, ratio, abs(ratio - 1.0) <= 0.05))
    ok = all(r[2] for r in results)
    _report(
        "criterion 5: sub/supercritical excursion ratios at n=1000",
        ok,
        ", ".join(f"{n}: {r:.4f}" for n, r, _ in results),
    )


def test_criterion_6_meander_ratio_and_mass_identity(models):
    model = models["motzkin_absorption"]
    sc = structural_constants(model)
    m_n = meander_mass(model, 2000, "float")
    value = m_n * math.sqrt(math.pi * 2000) / (sc.E_at_1 * sc.kappa)
    ok1 = abs(value - 1.0) <= 0.03
    e = excursion_series(model, 200)
    m = meander_mass_series(model, 201)
    loss = 1 - model.P0geq.total_weight()
    acc = F(0)
    ok2 = True
    for n in range(201):
        acc += e[n]
        if m[n + 1] != 1 - loss * acc:
            ok2 = False
    _report(
        "criterion 6: zero-drift meander ratio and exact mass identity",
        ok1 and ok2,
        f"ratio {value:.4f}, identity exact to n=200: {ok2}",
    )


def test_criterion_7_expected_final_altitude(models):
    cases = [
        ("motzkin_reflection", 2000, 0.03),
        ("motzkin_absorption", 2000, 0.03),
        ("drift_up_absorption", 2000, 0.02),
    ]
    results = []
    for name, n, tol in cases:
        model = models[name]
        est = final_altitude_asymptotic(model, n)
        exact = float(final_altitude_expectation(model, n, "float"))
        ratio = exact / est.value
        results.append((name, ratio, abs(ratio - 1.0) <= tol))
    ok = all(r[2] for r in results)
    _report(
        "criterion 7: expected final altitude vs table cells",
        ok,
        ", ".join(f"{n}: {r:.4f}" for n, r, _ in results),
    )


def test_criterion_8_limit_law_fits(models):
    cases = [
        ("motzkin_absorption", Statistic.FINAL_ALTITUDE, "rayleigh"),
        ("motzkin_absorption", Statistic.RETURNS_TO_ZERO, "negbin2"),
        ("motzkin_reflection", Statistic.FINAL_ALTITUDE, "half-normal"),
    ]
    results = []
    ok = True
    for name, statistic, family in cases:
        model = models[name]
        far = fit(model, statistic, 250)
        near = fit(model, statistic, 2000)
        good = (
            near.law.family == family
            and near.sup_distance <= 0.05
            and near.sup_distance < far.sup_distance
        )
        ok = ok and good
        results.append(f"{name}/{statistic.value} vs {family}: D250={far.sup_distance:.4f} D2000={near.sup_distance:.4f}")
    _report("criterion 8: limit-law Kolmogorov fits", ok, "; ".join(results))


def test_criterion_9_periodicity_guard(models):
    model = models["dyck_reflection"]
    guarded = [
        lambda: classify(model),
        lambda: excursion_asymptotic(model, 100),
        lambda: arch_asymptotic(model, 100),
        lambda: meander_ratio_asymptotic(model, 100),
        lambda: final_altitude_asymptotic(model, 100),
        lambda: returns_law(model),
        lambda: final_altitude_law(model),
    ]
    ok = True
    for op in guarded:
        try:
            op()
            ok = False
        except PeriodicModelError:
            pass
        except LatticePathError:
            ok = False
    bf = brute_force(model, 8)
    ok = ok and meander_distribution(model, 8).mass == bf.meander
    ok = ok and returns_to_zero_distribution(model, 8).prob == bf.returns_distribution()
    _report("criterion 9: periodic models rejected by asymptotics, exact DP still right", ok)
