"""Numerical kernel method for boundary walk models.

The kernel equation 1 - z*P(u) = 0 has c+d roots; the c of smallest modulus
(the small branches, all vanishing as z -> 0) eliminate the unknown boundary
series from the functional equation. This module finds the branches with a
companion-matrix root solve plus Newton refinement, solves the resulting
c x c linear system for the boundary generating functions, evaluates the
closed product formula of the boundary-free model, and derives the
structural constants that drive every asymptotic regime downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (
    BranchDegenerateError,
    NoRho1Error,
    NumericalSingularityError,
)
from .model import LaurentPolynomial, WalkModel

ROOT_RESIDUAL_TOL = 1e-12
BISECTION_REL_WIDTH = 1e-13


@dataclass(frozen=True)
class BranchSet:
    """The c small-modulus roots of 1 - z*P(u) = 0, sorted by modulus."""

    z: complex
    branches: tuple[complex, ...]
    residuals: tuple[float, ...]

    @property
    def u1(self) -> float:
        """The real positive branch (exists for real z in (0, rho])."""
        candidates = [
            b.real
            for b in self.branches
            if abs(b.imag) <= 1e-8 * (1.0 + abs(b.real)) and b.real > 0
        ]
        if len(candidates) != 1:
            raise NumericalSingularityError(
                f"expected one real positive small branch at z={self.z}, got {candidates}"
            )
        return candidates[0]


def _kernel_coeffs(model: WalkModel, z: complex) -> np.ndarray:
    """Coefficients (descending degree) of u**c - z * u**c * P(u)."""
    c, d = model.c, model.d
    coeffs = np.zeros(c + d + 1, dtype=complex)
    coeffs[c] += 1.0
    for e, p in model.P.terms():
        coeffs[e + c] -= z * float(p)
    return coeffs[::-1]


def _refine_root(model: WalkModel, z: complex, u: complex) -> complex:
    """Newton steps on f(u) = 1 - z*P(u); small branches are never 0."""
    p_float = [(e, float(p)) for e, p in model.P.terms()]
    dp_float = [(e - 1, e * p) for e, p in p_float if e != 0]

    def f(x: complex) -> complex:
        return 1.0 - z * sum(p * x**e for e, p in p_float)

    def df(x: complex) -> complex:
        return -z * sum(p * x**e for e, p in dp_float)

    for _ in range(60):
        fx = f(u)
        if abs(fx) < _branch_residual_floor(z):
            break
        dfx = df(u)
        if dfx == 0:
            break
        nxt = u - fx / dfx
        if nxt == u:
            break
        u = nxt
    return u


def _branch_residual_floor(z: complex) -> float:
    return 1e-15 * (1.0 + abs(z))


def small_branches(model: WalkModel, z: complex, *, residual_tol: float = ROOT_RESIDUAL_TOL
                   ) -> BranchSet:
    """Find the c small branches of the kernel equation at z.

    Roots come from the companion matrix of the cleared-denominator kernel
    polynomial and are refined by Newton iteration. A collision between the
    c-th and (c+1)-th modulus is tolerated only for real z at the point
    where the real branches merge (the square-root singularity); elsewhere
    it means z left the disk of analyticity and is reported as degenerate.
    """
    if z == 0:
        raise ValueError("z must be nonzero; all small branches vanish at z=0")
    roots = np.roots(_kernel_coeffs(model, z))
    roots = [_refine_root(model, z, complex(r)) for r in roots]
    roots.sort(key=abs)
    c = model.c
    merged = False
    if len(roots) > c:
        inner, outer = abs(roots[c - 1]), abs(roots[c])
        if outer - inner <= 1e-9 * max(outer, 1e-30):
            merged = True
            a, b = roots[c - 1], roots[c]
            real_merge = (
                abs(complex(z).imag) <= 1e-12 * (1.0 + abs(z))
                and abs(a.imag) <= 1e-6 * (1.0 + abs(a.real))
                and abs(b.imag) <= 1e-6 * (1.0 + abs(b.real))
            )
            if not real_merge:
                raise BranchDegenerateError(
                    f"small and large branches collide at z={z}: |u_c|={inner}, |u_c+1|={outer}"
                )
    small = tuple(roots[:c])
    residuals = tuple(abs(1.0 - z * complex(model.P(u))) for u in small)
    # a merged pair is a double root: Newton stalls there but the residual
    # stays quadratically small, so only the tolerance is relaxed
    tol = 1e-6 if merged else residual_tol
    for u, r in zip(small, residuals):
        if r > tol:
            raise NumericalSingularityError(
                f"kernel root {u} at z={z} has residual {r} > {tol}"
            )
    return BranchSet(z=complex(z), branches=small, residuals=residuals)


def small_branch_u1(model: WalkModel, z: float) -> float:
    return small_branches(model, z).u1


def _r_poly(model: WalkModel, k: int) -> LaurentPolynomial:
    """The boundary-correction Laurent polynomials of the linear system."""
    if k == 0:
        return LaurentPolynomial.from_terms(
            [(e, p) for e, p in model.P.terms()]
            + [(e, -p) for e, p in model.P0geq.terms()],
            allow_negative_coeffs=True,
        )
    return LaurentPolynomial.from_terms(
        ((j + k, p) for j, p in model.P.terms() if j <= -k - 1),
        allow_negative_coeffs=True,
    )


def solve_boundary_gfs(model: WalkModel, z: float) -> list[float]:
    """Values F_0(z)..F_{c-1}(z) of the boundary generating functions.

    Substituting each small branch into the functional equation kills the
    left side and leaves c linear equations sum_k r_k(u_i) F_k = 1/z.
    """
    branches = small_branches(model, z).branches
    c = model.c
    r_polys = [_r_poly(model, k) for k in range(c)]
    A = np.array([[complex(r_polys[k](u)) for k in range(c)] for u in branches])
    b = np.full(c, 1.0 / z, dtype=complex)
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise NumericalSingularityError(f"boundary system singular at z={z}") from exc
    resid = float(np.max(np.abs(A @ x - b)))
    if resid > 1e-8 * max(1.0, float(np.max(np.abs(b)))):
        raise NumericalSingularityError(f"boundary system ill conditioned at z={z}")
    out = []
    for v in x:
        if abs(v.imag) > 1e-8 * (1.0 + abs(v.real)):
            raise NumericalSingularityError(f"non-real F_k value {v} at real z={z}")
        out.append(float(v.real))
    return out


def excursion_gf(model: WalkModel, z: float) -> float:
    """E(z) for the boundary model; closed form when c=1, system solve otherwise."""
    if model.is_lukasiewicz:
        u1 = small_branch_u1(model, z)
        den = 1.0 - z * float(model.P0geq(u1))
        if abs(den) < 1e-14:
            raise NumericalSingularityError(f"excursion series pole at z={z}")
        return 1.0 / den
    return solve_boundary_gfs(model, z)[0]


def excursion_gf_vandermonde(model: WalkModel, z: float) -> float:
    """E(z) through the alternating Vandermonde-minor form over the branches.

    For c=1 the minors are empty products and the expression collapses to
    the closed single-branch form, so this delegates there.
    """
    if model.is_lukasiewicz:
        return excursion_gf(model, z)
    u = small_branches(model, z).branches
    c = model.c

    def minor(ell: int) -> complex:
        v = 1.0 + 0j
        for m in range(c):
            for nn in range(m + 1, c):
                if m != ell and nn != ell:
                    v *= u[m] - u[nn]
        return v

    num = 0j
    den = 0j
    for ell in range(c):
        sign = -1.0 if ell % 2 else 1.0
        term = sign * u[ell] ** (c - 1) * minor(ell)
        num += term
        den += term * (1.0 - z * complex(model.P0geq(u[ell])))
    if den == 0:
        raise NumericalSingularityError(f"degenerate branch minors at z={z}")
    val = num / den
    if abs(val.imag) > 1e-8 * (1.0 + abs(val.real)):
        raise NumericalSingularityError(f"non-real excursion value {val} at z={z}")
    return float(val.real)


def excursion_gf_bf(model: WalkModel, z: float) -> float:
    """Boundary-free excursion series: the signed product of the small branches
    over z times the deepest down weight."""
    u = small_branches(model, z).branches
    c = model.c
    prod = 1.0 + 0j
    for b in u:
        prod *= b
    p_minus_c = float(dict(model.P.terms())[-c])
    val = (-1.0) ** (c + 1) * prod / (z * p_minus_c)
    if abs(val.imag) > 1e-8 * (1.0 + abs(val.real)):
        raise NumericalSingularityError(f"non-real boundary-free value {val} at z={z}")
    return float(val.real)


def perturbation_identity_residual(model: WalkModel, z: float) -> float:
    """How far the boundary perturbation identity is from holding at z.

    The boundary excursion series is the boundary-free one divided by
    1 - z*Efree(z) * L, where L is the divided-difference functional
    sum_i g(u_i) u_i**(c-1) / prod_{m != i}(u_i - u_m) applied to
    g = P0geq - Pgeq. The factor vanishes exactly when P0 = P, which is
    what makes it a measure of the boundary's perturbation. Contract:
    residual <= 1e-9 well inside the disk of analyticity.
    """
    branches = small_branches(model, z).branches
    c = model.c
    p_geq = model.P.nonneg_part()
    lam_sum = 0j
    for i, ui in enumerate(branches):
        denom = 1.0 + 0j
        for m, um in enumerate(branches):
            if m != i:
                denom *= ui - um
        g = complex(model.P0geq(ui)) - complex(p_geq(ui))
        lam_sum += g * ui ** (c - 1) / denom
    e_free = excursion_gf_bf(model, z)
    denominator = 1.0 - z * e_free * lam_sum
    if denominator == 0:
        raise NumericalSingularityError(f"perturbation denominator vanished at z={z}")
    predicted = e_free / denominator
    if abs(predicted.imag) > 1e-8 * (1.0 + abs(predicted.real)):
        raise NumericalSingularityError(f"non-real perturbation value at z={z}")
    return abs(excursion_gf(model, z) - predicted.real)


# ---------------------------------------------------------------------------
# Structural constants.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuralConstants:
    """Constants controlling the singular behavior of the walk model.

    tau minimizes P on (0, inf); rho = 1/P(tau) is the radius of the
    boundary-free excursion series; C scales the square-root branch
    expansion u1(z) = tau - C*sqrt(1 - z/rho) + O(1 - z/rho). delta and
    delta0geq are the drifts P'(1) and (P0geq)'(1). lam compares the
    boundary weight P0geq(tau) to P(tau): above 1 the denominator root
    rho1 < rho exists (supercritical), at 1 it is tangent at rho, below 1
    there is none. kappa = C*rho*(P0geq)'(tau). alpha, alpha2 are the first
    two z-derivatives of P0geq(u1(z)) at rho1 and gamma = 1/(alpha*rho1**2+1)
    is the residue weight of the excursion pole. E_at_rho, E_at_1 are values
    of the excursion series where finite, and r is the boundary part of the
    altitude derivative at rho used by the negative-drift expectation cell.
    """

    tau: float
    rho: float
    C: float
    delta: float
    delta0geq: float
    lam: float
    kappa: float
    rho1: Optional[float] = None
    alpha: Optional[float] = None
    alpha2: Optional[float] = None
    gamma: Optional[float] = None
    E_at_rho: Optional[float] = None
    E_at_1: Optional[float] = None
    r: Optional[float] = None


def _find_tau(model: WalkModel) -> float:
    """Unique positive root of P'(u); P is strictly convex on (0, inf)."""
    dP = model.P.derivative()
    delta_exact = dP(Fraction(1))
    if delta_exact == 0:
        return 1.0

    def g(u: float) -> float:
        return float(dP(u))

    lo = hi = 1.0
    for _ in range(200):
        if g(lo) < 0:
            break
        lo *= 0.5
    for _ in range(200):
        if g(hi) > 0:
            break
        hi *= 2.0
    if not (g(lo) < 0 < g(hi)):
        raise NumericalSingularityError("failed to bracket the minimum of P")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= BISECTION_REL_WIDTH * mid:
            break
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    tau = 0.5 * (lo + hi)
    ddP = dP.derivative()
    for _ in range(6):
        d1 = float(dP(tau))
        d2 = float(ddP(tau))
        if d2 == 0:
            break
        step_len = d1 / d2
        if tau - step_len <= 0:
            break
        tau -= step_len
    return tau


def boundary_denominator(model: WalkModel, z: float) -> float:
    """1 - z*P0geq(u1(z)); its root on (0, rho] is the excursion pole rho1."""
    u1 = small_branch_u1(model, z)
    return 1.0 - z * float(model.P0geq(u1))


def u1_derivatives(model: WalkModel, z: float) -> tuple[float, float, float]:
    """(u1, u1', u1'') from implicit differentiation of 1 = z*P(u1)."""
    u1 = small_branch_u1(model, z)
    dP = model.P.derivative()
    ddP = dP.derivative()
    d1 = float(dP(u1))
    if d1 == 0:
        raise NumericalSingularityError(f"u1 derivative singular at z={z} (branch point)")
    du1 = -1.0 / (z * z * d1)
    ddu1 = -(2.0 * d1 * du1 + z * float(ddP(u1)) * du1 * du1) / (z * d1)
    return u1, du1, ddu1


def composed_boundary_derivatives(model: WalkModel, z: float) -> tuple[float, float]:
    """First and second z-derivative of P0geq(u1(z))."""
    u1, du1, ddu1 = u1_derivatives(model, z)
    dq = model.P0geq.derivative()
    ddq = dq.derivative()
    first = float(dq(u1)) * du1
    second = float(ddq(u1)) * du1 * du1 + float(dq(u1)) * ddu1
    return first, second


def _criticality_sign(model: WalkModel, tau: float) -> int:
    """Sign of P0geq(tau) - P(tau); decided exactly when tau = 1 exactly."""
    dP = model.P.derivative()
    if dP(Fraction(1)) == 0:
        diff = model.P0geq(Fraction(1)) - model.P(Fraction(1))
        return (diff > 0) - (diff < 0)
    diff_f = float(model.P0geq(tau)) - float(model.P(tau))
    tol = 1e-9 * max(1.0, abs(float(model.P(tau))))
    if diff_f > tol:
        return 1
    if diff_f < -tol:
        return -1
    return 0


def _find_rho1(model: WalkModel, tau: float, rho: float) -> Optional[float]:
    sign = _criticality_sign(model, tau)
    if sign < 0:
        return None
    if sign == 0:
        return rho

    def D(z: float) -> float:
        return boundary_denominator(model, z)

    hi = rho * (1.0 - 1e-12)
    lo = hi
    for _ in range(200):
        lo *= 0.5
        if D(lo) > 0:
            break
    else:
        raise NumericalSingularityError("failed to bracket rho1 from below")
    if D(hi) > 0:
        # tangency within tolerance; treat as the critical point rho
        return rho
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= BISECTION_REL_WIDTH * rho:
            break
        if D(mid) > 0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(6):
        first, _ = composed_boundary_derivatives(model, z)
        u1 = small_branch_u1(model, z)
        dD = -float(model.P0geq(u1)) - z * first
        if dD == 0:
            break
        nxt = z - D(z) / dD
        if not (0 < nxt < rho):
            break
        z = nxt
    return z


def require_rho1(constants: StructuralConstants) -> float:
    if constants.rho1 is None:
        raise NoRho1Error("boundary denominator has no root on (0, rho] (subcritical)")
    return constants.rho1


def structural_constants(model: WalkModel) -> StructuralConstants:
    """Compute every structural constant that is finite for the model.

    Optional fields stay None when the quantity is infinite or does not
    exist in the model's regime: rho1/alpha/alpha2/gamma need a strictly
    supercritical pole, E_at_rho is finite only below criticality, E_at_1
    only when the excursion series converges at z=1, and r is computed
    only in the subcritical negative-drift regime where it is used.
    """
    tau = _find_tau(model)
    p_tau = float(model.P(tau))
    dP = model.P.derivative()
    ddP = dP.derivative()
    rho = 1.0 / p_tau
    C = math.sqrt(2.0 * p_tau / float(ddP(tau)))
    delta = float(dP(Fraction(1)))
    dq = model.P0geq.derivative()
    delta0 = float(dq(Fraction(1)))
    lam = float(model.P0geq(tau)) / p_tau
    kappa = C * rho * float(dq(tau))
    sign = _criticality_sign(model, tau)
    rho1 = _find_rho1(model, tau, rho)
    alpha = alpha2 = gamma = None
    if sign > 0 and rho1 is not None and rho1 < rho * (1.0 - 1e-10):
        alpha, alpha2 = composed_boundary_derivatives(model, rho1)
        gamma = 1.0 / (alpha * rho1 * rho1 + 1.0)
    E_at_rho = 1.0 / (1.0 - lam) if sign < 0 else None
    E_at_1 = None
    if rho > 1.0 + 1e-12:
        u1_at_1 = small_branch_u1(model, 1.0)
        den = 1.0 - float(model.P0geq(u1_at_1))
        if den > 1e-9:
            E_at_1 = 1.0 / den
    else:
        den = 1.0 - float(model.P0geq(tau))
        if den > 1e-9:
            E_at_1 = 1.0 / den
    r = None
    if sign < 0 and rho > 1.0 + 1e-12:
        q1 = float(model.P0geq(Fraction(1)))
        g_rho = delta0 * rho / (1.0 - rho) + delta * rho * rho * (
            q1 - float(model.P0geq(tau))
        ) / (1.0 - rho) ** 2
        f_u_rho = g_rho * E_at_rho
        r = f_u_rho - delta * rho / (1.0 - rho) ** 2
    return StructuralConstants(
        tau=tau,
        rho=rho,
        C=C,
        delta=delta,
        delta0geq=delta0,
        lam=lam,
        kappa=kappa,
        rho1=rho1,
        alpha=alpha,
        alpha2=alpha2,
        gamma=gamma,
        E_at_rho=E_at_rho,
        E_at_1=E_at_1,
        r=r,
    )


def u1_expansion_check(model: WalkModel, epsilons: tuple[float, ...] = (1e-2, 1e-3, 1e-4)) -> float:
    """Max scaled residual of u1(rho(1-eps)) against tau - C*sqrt(eps).

    The remainder of the branch expansion is linear in eps, so the residual
    divided by eps stays bounded; the largest such ratio is returned.
    """
    sc = structural_constants(model)
    worst = 0.0
    for eps in epsilons:
        z = sc.rho * (1.0 - eps)
        u1 = small_branch_u1(model, z)
        predicted = sc.tau - sc.C * math.sqrt(eps)
        worst = max(worst, abs(u1 - predicted) / eps)
    return worst
