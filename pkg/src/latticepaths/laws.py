"""Limit laws for returns to zero and final altitude, and goodness of fit.

The exact finite-n distribution is always the ground truth here; the limit
statements are hypotheses measured against it with a Kolmogorov sup
distance. Law selection follows the regime tables: returns to zero are
Gaussian / Rayleigh / negative binomial across the supercritical, critical
and subcritical cases, and the final altitude of surviving walks is
discrete / half-normal-or-Rayleigh / Gaussian across drift signs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional

from .asymptotics import (
    Criticality,
    DriftSign,
    classify,
    require_aperiodic,
    require_lukasiewicz,
)
from .enumeration import (
    meander_distribution,
    returns_moments,
    returns_to_zero_distribution,
)
from .errors import InconsistentCaseError, LatticePathError
from .kernel import structural_constants
from .model import WalkModel
from fractions import Fraction


class Statistic(enum.Enum):
    RETURNS_TO_ZERO = "returns"
    FINAL_ALTITUDE = "final-alt"


NORM_IDENTITY = "X_n"
NORM_SHIFT_ONE = "X_n - 1"
NORM_SQRT_N = "X_n / sqrt(n)"
NORM_STANDARDIZED = "(X_n - mean_n) / sd_n"
NORM_RETURNS_CRITICAL = "kappa * (X_n - 1) / sqrt(2 n)"


@dataclass(frozen=True)
class LimitLawSpec:
    """A limit law plus the finite-n normalization that should reach it."""

    family: str  # gaussian | rayleigh | half-normal | negbin2 | discrete | empirical
    params: Mapping[str, Any]
    normalization: str


@dataclass(frozen=True)
class FitReport:
    statistic: Statistic
    n: int
    law: LimitLawSpec
    sup_distance: float
    tolerance: float
    passed: bool


def std_normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def rayleigh_cdf(x: float, scale: float = 1.0) -> float:
    if x <= 0.0:
        return 0.0
    return 1.0 - math.exp(-x * x / (2.0 * scale * scale))


def half_normal_cdf(x: float, scale: float = 1.0) -> float:
    if x <= 0.0:
        return 0.0
    return math.erf(x / (scale * math.sqrt(2.0)))


def negbin2_pmf(lam: float, k: int) -> float:
    """P(K = k) = (k+1) lam**k (1-lam)**2 on k = 0, 1, ..."""
    if k < 0:
        return 0.0
    return (k + 1) * lam**k * (1.0 - lam) ** 2


def negbin2_cdf(lam: float, k: int) -> float:
    if k < 0:
        return 0.0
    return 1.0 - lam ** (k + 1) * ((k + 2) - (k + 1) * lam)


def supercritical_returns_variance_rate(rho1: float, gamma: float, alpha2: float) -> float:
    """Renewal variance rate Var(X_n)/n implied by the arch-size tilt at rho1."""
    return alpha2 * (rho1 * gamma) ** 3 + 3.0 * gamma**2 - 2.0 * gamma**3 - gamma


def returns_law(model: WalkModel) -> LimitLawSpec:
    """Predicted limit law for the number of returns to zero of excursions."""
    require_aperiodic(model)
    require_lukasiewicz(model)
    sc = structural_constants(model)
    cls = classify(model, sc)
    if cls.criticality is Criticality.SUPERCRITICAL:
        assert sc.rho1 is not None and sc.gamma is not None and sc.alpha2 is not None
        printed = (
            sc.alpha2 * (sc.rho1 * sc.gamma) ** 3
            - sc.gamma
            + sc.gamma**2 * (sc.rho1 + 2.0)
            - 2.0 * sc.gamma**3
        )
        return LimitLawSpec(
            family="gaussian",
            params={
                "mu_rate": sc.gamma,
                "printed_sigma_expression": printed,
                "derived_variance_rate": supercritical_returns_variance_rate(
                    sc.rho1, sc.gamma, sc.alpha2
                ),
                "rho1": sc.rho1,
            },
            normalization=NORM_STANDARDIZED,
        )
    if cls.criticality is Criticality.CRITICAL:
        return LimitLawSpec(
            family="rayleigh",
            params={
                "scale": 1.0,
                "kappa": sc.kappa,
                "time_scale": 2.0,
                "printed_normalization": "kappa / sqrt(2 pi) * (X_n - 1)",
            },
            normalization=NORM_RETURNS_CRITICAL,
        )
    return LimitLawSpec(
        family="negbin2",
        params={"lam": sc.lam},
        normalization=NORM_SHIFT_ONE,
    )


def final_altitude_law(model: WalkModel) -> LimitLawSpec:
    """Predicted limit law for the final altitude of surviving walks."""
    require_aperiodic(model)
    require_lukasiewicz(model)
    sc = structural_constants(model)
    cls = classify(model, sc)
    ddP1 = float(model.P.derivative().derivative()(Fraction(1)))
    if cls.drift_sign is DriftSign.POSITIVE:
        return LimitLawSpec(
            family="gaussian",
            params={"mean_rate": sc.delta},
            normalization=NORM_STANDARDIZED,
        )
    if cls.drift_sign is DriftSign.ZERO:
        scale = math.sqrt(ddP1)
        if model.is_reflection:
            return LimitLawSpec(
                family="half-normal",
                params={"scale": scale},
                normalization=NORM_SQRT_N,
            )
        return LimitLawSpec(
            family="rayleigh",
            params={"scale": scale},
            normalization=NORM_SQRT_N,
        )
    return LimitLawSpec(family="discrete", params={}, normalization=NORM_IDENTITY)


def empirical_law(points: Mapping[int, Any]) -> LimitLawSpec:
    """Freeze a distribution into a law usable as a fit target (self-fits)."""
    cum = 0.0
    table = []
    for k in sorted(points):
        cum += float(points[k])
        table.append((k, cum))
    return LimitLawSpec(
        family="empirical",
        params={"cdf_points": tuple(table)},
        normalization=NORM_IDENTITY,
    )


def _distribution_points(model: WalkModel, statistic: Statistic, n: int, mode: str
                         ) -> list[tuple[int, float]]:
    if statistic is Statistic.FINAL_ALTITUDE:
        cond = meander_distribution(model, n, mode).conditional()
        return [(k, float(p)) for k, p in sorted(cond.items())]
    dist = returns_to_zero_distribution(model, n, mode)
    return [(k, float(p)) for k, p in sorted(dist.prob.items())]


def _continuous_cdf(law: LimitLawSpec) -> Callable[[float], float]:
    if law.family == "gaussian":
        return std_normal_cdf
    if law.family == "rayleigh":
        scale = float(law.params.get("scale", 1.0))
        return lambda x: rayleigh_cdf(x, scale)
    if law.family == "half-normal":
        scale = float(law.params.get("scale", 1.0))
        return lambda x: half_normal_cdf(x, scale)
    raise LatticePathError(f"no continuous CDF for law family {law.family!r}")


def _normalizer(law: LimitLawSpec, n: int, points: list[tuple[int, float]]
                ) -> Callable[[int], float]:
    if law.normalization == NORM_SQRT_N:
        root = math.sqrt(n)
        return lambda k: k / root
    if law.normalization == NORM_RETURNS_CRITICAL:
        kappa = float(law.params["kappa"])
        time_scale = float(law.params.get("time_scale", 2.0))
        denom = math.sqrt(time_scale * n)
        return lambda k: kappa * (k - 1) / denom
    if law.normalization == NORM_STANDARDIZED:
        mean = sum(k * p for k, p in points)
        var = sum(k * k * p for k, p in points) - mean * mean
        if var <= 0.0:
            raise LatticePathError("degenerate distribution: zero variance")
        sd = math.sqrt(var)
        return lambda k: (k - mean) / sd
    if law.normalization == NORM_SHIFT_ONE:
        return lambda k: float(k - 1)
    return lambda k: float(k)


def kolmogorov_distance(points: list[tuple[int, float]], law: LimitLawSpec, n: int) -> float:
    """Sup distance between the distribution's CDF and the law's CDF.

    Continuous laws are compared at both sides of every jump of the exact
    CDF; discrete laws are compared pointwise on the integer support.
    """
    if not points:
        raise LatticePathError("empty distribution")
    if law.family == "negbin2":
        lam = float(law.params["lam"])
        shift = 1 if law.normalization == NORM_SHIFT_ONE else 0
        cum = 0.0
        worst = 0.0
        for k, p in points:
            cum += p
            worst = max(worst, abs(cum - negbin2_cdf(lam, k - shift)))
        return worst
    if law.family == "empirical":
        table = sorted(law.params["cdf_points"])

        def emp_cdf(k: int) -> float:
            val = 0.0
            for kk, f in table:
                if kk > k:
                    break
                val = f
            return val

        cum = 0.0
        worst = 0.0
        for k, p in points:
            cum += p
            worst = max(worst, abs(cum - emp_cdf(k)))
        for k, f in table:
            worst = max(worst, abs(_cdf_at(points, k) - f))
        return worst
    if law.family == "discrete":
        raise InconsistentCaseError("the discrete limit law has no closed-form CDF to fit")
    cdf = _continuous_cdf(law)
    x_of = _normalizer(law, n, points)
    cum = 0.0
    worst = 0.0
    for k, p in points:
        x = x_of(k)
        worst = max(worst, abs(cum - cdf(x)))
        cum += p
        worst = max(worst, abs(cum - cdf(x)))
    return worst


def _cdf_at(points: list[tuple[int, float]], k: int) -> float:
    cum = 0.0
    for kk, p in points:
        if kk > k:
            break
        cum += p
    return cum


def fit(
    model: WalkModel,
    statistic: Statistic,
    n: int,
    law: Optional[LimitLawSpec] = None,
    mode: str = "float",
    tolerance: float = 0.05,
) -> FitReport:
    """Measure the exact length-n distribution against a limit law."""
    if law is None:
        law = (
            returns_law(model)
            if statistic is Statistic.RETURNS_TO_ZERO
            else final_altitude_law(model)
        )
    points = _distribution_points(model, statistic, n, mode)
    distance = kolmogorov_distance(points, law, n)
    return FitReport(
        statistic=statistic,
        n=n,
        law=law,
        sup_distance=distance,
        tolerance=tolerance,
        passed=distance <= tolerance,
    )


def fit_curve(
    model: WalkModel,
    statistic: Statistic,
    n: int,
    law: Optional[LimitLawSpec] = None,
    mode: str = "float",
) -> list[tuple[float, float, float]]:
    """(x, exact CDF, law CDF) rows at the support points, for plotting."""
    if law is None:
        law = (
            returns_law(model)
            if statistic is Statistic.RETURNS_TO_ZERO
            else final_altitude_law(model)
        )
    points = _distribution_points(model, statistic, n, mode)
    if law.family == "negbin2":
        lam = float(law.params["lam"])
        shift = 1 if law.normalization == NORM_SHIFT_ONE else 0
        rows = []
        cum = 0.0
        for k, p in points:
            cum += p
            rows.append((float(k - shift), cum, negbin2_cdf(lam, k - shift)))
        return rows
    cdf = _continuous_cdf(law)
    x_of = _normalizer(law, n, points)
    rows = []
    cum = 0.0
    for k, p in points:
        cum += p
        x = x_of(k)
        rows.append((x, cum, cdf(x)))
    return rows


def moment_summary(model: WalkModel, statistic: Statistic, n: int, mode: str = "float"):
    """(mean, variance) of the exact length-n distribution of the statistic."""
    if statistic is Statistic.FINAL_ALTITUDE:
        cond = meander_distribution(model, n, mode).conditional()
        mean = sum(k * p for k, p in cond.items())
        var = sum(k * k * p for k, p in cond.items()) - mean * mean
        return mean, var
    if mode == "exact":
        dist = returns_to_zero_distribution(model, n, "exact")
        return dist.mean(), dist.variance()
    return returns_moments(model, n, "float")


def calibrated_returns_scaling(model: WalkModel, n: int) -> float:
    """Empirical c in the critical normalization kappa*(X_n-1)/sqrt(c*n).

    Matching the Rayleigh(1) mean sqrt(pi/2) to the measured mean of
    kappa*X_n/sqrt(c*n) gives c = 2 kappa^2 E[X_n]^2 / (pi n); the analytic
    value is 2.
    """
    sc = structural_constants(model)
    mean, _ = returns_moments(model, n, "float")
    return 2.0 * (sc.kappa * float(mean)) ** 2 / (math.pi * n)
