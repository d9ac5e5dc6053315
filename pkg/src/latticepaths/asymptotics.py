"""Criticality classification and closed-form asymptotic estimates.

Every estimate here is the leading term of a singularity analysis of the
relevant generating function, specialized to aperiodic walks whose only
down jump is -1. The regime is selected by two signs: the drift P'(1) and
the comparison of the boundary weight P0geq(tau) against P(tau). Blank
regime combinations (they cannot occur for the model kind) raise
InconsistentCaseError; periodic or multi-down models are rejected up front.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InconsistentCaseError,
    NotLukasiewiczError,
    NumericalSingularityError,
    PeriodicModelError,
)
from .kernel import (
    StructuralConstants,
    composed_boundary_derivatives,
    require_rho1,
    small_branch_u1,
    structural_constants,
    _criticality_sign,
)
from .model import WalkModel


class Criticality(enum.Enum):
    SUPERCRITICAL = "supercritical"
    CRITICAL = "critical"
    SUBCRITICAL = "subcritical"


class DriftSign(enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class Classification:
    criticality: Criticality
    drift_sign: DriftSign


@dataclass(frozen=True)
class AsymptoticEstimate:
    n: int
    value: float
    formula_id: str


def require_aperiodic(model: WalkModel) -> None:
    if not model.is_aperiodic:
        raise PeriodicModelError(
            f"step polynomial has period {model.period}; asymptotics need period 1"
        )


def require_lukasiewicz(model: WalkModel) -> None:
    if not model.is_lukasiewicz:
        raise NotLukasiewiczError(
            f"asymptotic formulas cover a single down jump of -1, model has c={model.c}"
        )


def drift_sign(model: WalkModel) -> DriftSign:
    """Sign of P'(1), decided in exact arithmetic."""
    delta = model.P.derivative()(Fraction(1))
    if delta > 0:
        return DriftSign.POSITIVE
    if delta < 0:
        return DriftSign.NEGATIVE
    return DriftSign.ZERO


def classify(model: WalkModel, constants: StructuralConstants | None = None) -> Classification:
    """(criticality, drift sign) for an aperiodic model."""
    require_aperiodic(model)
    sc = constants or structural_constants(model)
    sign = _criticality_sign(model, sc.tau)
    crit = (
        Criticality.SUPERCRITICAL
        if sign > 0
        else Criticality.CRITICAL
        if sign == 0
        else Criticality.SUBCRITICAL
    )
    return Classification(criticality=crit, drift_sign=drift_sign(model))


def _constants_and_class(model: WalkModel) -> tuple[StructuralConstants, Classification]:
    require_aperiodic(model)
    require_lukasiewicz(model)
    sc = structural_constants(model)
    return sc, classify(model, sc)


def excursion_asymptotic(model: WalkModel, n: int) -> AsymptoticEstimate:
    """Leading-order mass of length-n excursions."""
    sc, cls = _constants_and_class(model)
    if n < 1:
        raise ValueError("asymptotic estimates need n >= 1")
    if cls.criticality is Criticality.SUPERCRITICAL:
        rho1 = require_rho1(sc)
        if sc.gamma is None:
            raise NumericalSingularityError("supercritical pole not resolved")
        value = sc.gamma * rho1 ** (-n)
        return AsymptoticEstimate(n, value, "excursions/supercritical")
    if cls.criticality is Criticality.CRITICAL:
        value = (1.0 / sc.kappa) * sc.rho ** (-n) / math.sqrt(math.pi * n)
        return AsymptoticEstimate(n, value, "excursions/critical")
    assert sc.E_at_rho is not None
    value = sc.E_at_rho**2 * sc.kappa * sc.rho ** (-n) / (2.0 * math.sqrt(math.pi * n**3))
    return AsymptoticEstimate(n, value, "excursions/subcritical")


def arch_asymptotic(model: WalkModel, n: int) -> AsymptoticEstimate:
    """Leading-order mass of length-n arches, exponential factor included."""
    sc, _ = _constants_and_class(model)
    if n < 1:
        raise ValueError("asymptotic estimates need n >= 1")
    value = sc.kappa * sc.rho ** (-n) / (2.0 * math.sqrt(math.pi * n**3))
    return AsymptoticEstimate(n, value, "arches")


def meander_ratio_asymptotic(model: WalkModel, n: int) -> AsymptoticEstimate:
    """Leading-order surviving mass of length-n walks in the absorption model.

    Reflecting Lukasiewicz boundaries conserve mass, so the ratio is
    identically 1 there.
    """
    sc, cls = _constants_and_class(model)
    if n < 1:
        raise ValueError("asymptotic estimates need n >= 1")
    if model.is_reflection:
        return AsymptoticEstimate(n, 1.0, "meanders/reflection-conserved")
    e1 = sc.E_at_1
    if e1 is None:
        raise NumericalSingularityError("excursion series diverges at z=1")
    if cls.drift_sign is DriftSign.POSITIVE:
        q1 = float(model.P0geq(Fraction(1)))
        return AsymptoticEstimate(n, 1.0 - (1.0 - q1) * e1, "meanders/positive-drift")
    if cls.drift_sign is DriftSign.ZERO:
        if cls.criticality is not Criticality.SUBCRITICAL:
            raise InconsistentCaseError(
                "zero drift forces the subcritical case in the absorption model"
            )
        value = e1 * sc.kappa / math.sqrt(math.pi * n)
        return AsymptoticEstimate(n, value, "meanders/subcritical/zero-drift")
    if cls.criticality is Criticality.SUPERCRITICAL:
        rho1 = require_rho1(sc)
        if sc.gamma is None:
            raise NumericalSingularityError("supercritical pole not resolved")
        value = rho1 * sc.gamma / (e1 * (rho1 - 1.0)) * rho1 ** (-n)
        return AsymptoticEstimate(n, value, "meanders/supercritical/neg-drift")
    if cls.criticality is Criticality.CRITICAL:
        value = (
            sc.rho
            / (e1 * sc.kappa * (sc.rho - 1.0))
            * sc.rho ** (-n)
            / math.sqrt(math.pi * n)
        )
        return AsymptoticEstimate(n, value, "meanders/critical/neg-drift")
    assert sc.E_at_rho is not None
    value = (
        sc.E_at_rho**2
        / e1
        * sc.kappa
        * sc.rho
        / (2.0 * (sc.rho - 1.0))
        * sc.rho ** (-n)
        / math.sqrt(math.pi * n**3)
    )
    return AsymptoticEstimate(n, value, "meanders/subcritical/neg-drift")


def _altitude_derivative_ratio(model: WalkModel, sc: StructuralConstants, z: float,
                               u1_value: float) -> float:
    """F_u(z,1)/E(z): the excursion factors cancel, leaving an explicit form."""
    q1 = float(model.P0geq(Fraction(1)))
    return sc.delta0geq * z / (1.0 - z) + sc.delta * z * z * (
        q1 - float(model.P0geq(u1_value))
    ) / (1.0 - z) ** 2


def final_altitude_asymptotic(model: WalkModel, n: int) -> AsymptoticEstimate:
    """Leading-order expected final altitude of surviving length-n walks."""
    sc, cls = _constants_and_class(model)
    if n < 1:
        raise ValueError("asymptotic estimates need n >= 1")
    ddP1 = float(model.P.derivative().derivative()(Fraction(1)))
    if cls.drift_sign is DriftSign.POSITIVE:
        return AsymptoticEstimate(n, sc.delta * n, "final-altitude/positive-drift")
    if model.is_reflection:
        if cls.drift_sign is DriftSign.ZERO:
            if cls.criticality is not Criticality.CRITICAL:
                raise InconsistentCaseError(
                    "zero drift forces the critical case in the reflection model"
                )
            value = math.sqrt(2.0 * ddP1 * n / math.pi)
            return AsymptoticEstimate(n, value, "final-altitude/reflection/critical")
        if cls.criticality is not Criticality.SUPERCRITICAL:
            raise InconsistentCaseError(
                "negative drift forces the supercritical case in the reflection model"
            )
        ddQ1 = float(model.P0geq.derivative().derivative()(Fraction(1)))
        value = (sc.delta0geq * ddP1 + sc.delta * ddQ1) / (
            2.0 * sc.delta * (sc.delta - sc.delta0geq)
        )
        return AsymptoticEstimate(n, value, "final-altitude/reflection/supercritical")
    # absorption
    if cls.drift_sign is DriftSign.ZERO:
        if cls.criticality is not Criticality.SUBCRITICAL:
            raise InconsistentCaseError(
                "zero drift forces the subcritical case in the absorption model"
            )
        value = math.sqrt(ddP1 * math.pi * n / 2.0)
        return AsymptoticEstimate(n, value, "final-altitude/absorption/subcritical")
    e1 = sc.E_at_1
    if e1 is None:
        raise NumericalSingularityError("excursion series diverges at z=1")
    if cls.criticality is Criticality.SUPERCRITICAL:
        rho1 = require_rho1(sc)
        if abs(rho1 - 1.0) < 1e-9:
            raise NumericalSingularityError("expectation constant degenerate at rho1=1")
        g = _altitude_derivative_ratio(model, sc, rho1, small_branch_u1(model, rho1))
        value = (1.0 - 1.0 / rho1) * e1 * g
        return AsymptoticEstimate(n, value, "final-altitude/absorption/supercritical")
    if cls.criticality is Criticality.CRITICAL:
        # coefficient asymptotics of the altitude derivative and of the
        # meander mass both carry 1/kappa, which cancels in the ratio
        g = _altitude_derivative_ratio(model, sc, sc.rho, sc.tau)
        value = (1.0 - 1.0 / sc.rho) * e1 * g
        return AsymptoticEstimate(n, value, "final-altitude/absorption/critical")
    assert sc.E_at_rho is not None and sc.r is not None
    value = sc.r * (1.0 - 1.0 / sc.rho) * e1 / sc.E_at_rho
    return AsymptoticEstimate(n, value, "final-altitude/absorption/subcritical/neg-drift")


@dataclass(frozen=True)
class BoundaryExpansionReport:
    """Residuals of the local expansion of P0geq(u1(z)) near z=1."""

    case: str  # "sqrt" (rho = 1) or "quadratic" (rho > 1)
    residuals: dict[float, float]
    scaled: dict[float, float]


def boundary_expansion_check(model: WalkModel, epsilons: tuple[float, ...] = (1e-2, 1e-3)) -> BoundaryExpansionReport:
    """Check the Puiseux behavior of the composed boundary weight near z=1.

    With rho = 1 the expansion is P0geq(1) - kappa*sqrt(eps) + O(eps); with
    rho > 1 it is quadratic in eps with an O(eps**3) remainder. Residuals
    are returned raw and scaled by the expected remainder order.
    """
    require_lukasiewicz(model)
    sc = structural_constants(model)
    residuals: dict[float, float] = {}
    scaled: dict[float, float] = {}
    if sc.rho > 1.0 + 1e-9:
        u1_at_1 = small_branch_u1(model, 1.0)
        base = float(model.P0geq(u1_at_1))
        a1, a2 = composed_boundary_derivatives(model, 1.0)
        for eps in epsilons:
            val = float(model.P0geq(small_branch_u1(model, 1.0 - eps)))
            pred = base - a1 * eps + 0.5 * a2 * eps * eps
            res = abs(val - pred)
            residuals[eps] = res
            scaled[eps] = res / eps**3
        return BoundaryExpansionReport(case="quadratic", residuals=residuals, scaled=scaled)
    base = float(model.P0geq(Fraction(1)))
    for eps in epsilons:
        val = float(model.P0geq(small_branch_u1(model, 1.0 - eps)))
        pred = base - sc.kappa * math.sqrt(eps)
        res = abs(val - pred)
        residuals[eps] = res
        scaled[eps] = res / eps
    return BoundaryExpansionReport(case="sqrt", residuals=residuals, scaled=scaled)
