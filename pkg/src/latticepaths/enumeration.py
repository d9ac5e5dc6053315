"""Exact finite-length statistics for boundary walk models.

Everything here is ground truth for the rest of the package: step-by-step
recurrences in exact rational arithmetic (default) or double precision
(``mode="float"``, for lengths in the thousands), plus a brute-force path
enumerator used as an independent oracle in the tests.

The recurrence is the obvious one. Mass sitting at altitude zero steps with
the boundary polynomial, mass at positive altitude steps with the bulk
polynomial, and anything landing below zero is discarded (absorbed).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Union

import numpy as np

from .errors import InvalidModelError, LatticePathError
from .model import WalkModel

Mode = str  # "exact" | "float"
Number = Union[Fraction, float]

BRUTE_FORCE_MAX_LENGTH = 12


@dataclass(frozen=True)
class AltitudeDistribution:
    """Mass per altitude after n steps. Total mass can be below 1 (absorption)."""

    n: int
    mass: dict[int, Number]

    def total(self) -> Number:
        return sum(self.mass.values())

    def expectation(self) -> Number:
        """Mean altitude conditioned on survival."""
        total = self.total()
        if not total:
            raise LatticePathError(f"no surviving mass at n={self.n}")
        return sum(k * w for k, w in self.mass.items()) / total

    def conditional(self) -> dict[int, Number]:
        total = self.total()
        if not total:
            raise LatticePathError(f"no surviving mass at n={self.n}")
        return {k: w / total for k, w in sorted(self.mass.items())}


@dataclass(frozen=True)
class ReturnsDistribution:
    """Distribution of the number of returns to altitude zero, conditioned
    on the walk being an excursion of length n."""

    n: int
    prob: dict[int, Number]

    def mean(self) -> Number:
        return sum(k * p for k, p in self.prob.items())

    def variance(self) -> Number:
        m = self.mean()
        return sum(k * k * p for k, p in self.prob.items()) - m * m


def _check_mode(mode: Mode) -> None:
    if mode not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")


def step(model: WalkModel, dist: AltitudeDistribution) -> AltitudeDistribution:
    """Advance the altitude distribution by one step of the walk."""
    new: dict[int, Number] = {}
    for alt, w in dist.mass.items():
        if not w:
            continue
        poly = model.P0 if alt == 0 else model.P
        for jump, p in poly.terms():
            tgt = alt + jump
            if tgt < 0:
                continue  # absorbed
            new[tgt] = new.get(tgt, 0) + w * p
    new = {k: v for k, v in sorted(new.items()) if v}
    return AltitudeDistribution(n=dist.n + 1, mass=new)


# ---------------------------------------------------------------------------
# Dense DP runners. The exact runner keeps a list of Fractions indexed by
# altitude, the float runner a numpy vector; both invoke a callback after
# every step so series extractors share one pass.
# ---------------------------------------------------------------------------


def _max_rise(model: WalkModel) -> int:
    """Largest upward jump available anywhere (the boundary may out-jump the bulk)."""
    rise = model.d
    if not model.P0geq.is_zero:
        rise = max(rise, model.P0geq.hi)
    return max(rise, 1)


def _run_exact(model: WalkModel, n: int, on_step: Callable[[int, list], None]) -> list:
    rise = _max_rise(model)
    vec: list[Fraction] = [Fraction(0)] * (n * rise + 1) if n else [Fraction(0)]
    vec[0] = Fraction(1)
    bulk = list(model.P.terms())
    boundary = [(j, p) for j, p in model.P0.terms() if j >= 0]
    hi = 0
    for t in range(1, n + 1):
        new = [Fraction(0)] * len(vec)
        w0 = vec[0]
        if w0:
            for j, p in boundary:
                new[j] += w0 * p
        for alt in range(1, hi + 1):
            w = vec[alt]
            if not w:
                continue
            for j, p in bulk:
                tgt = alt + j
                if tgt >= 0:
                    new[tgt] += w * p
        vec = new
        hi = min(hi + rise, len(vec) - 1)
        on_step(t, vec)
    return vec


def _run_float(model: WalkModel, n: int, on_step: Callable[[int, np.ndarray], None]) -> np.ndarray:
    rise = _max_rise(model)
    vec = np.zeros(n * rise + 1 if n else 1)
    vec[0] = 1.0
    bulk = [(j, float(p)) for j, p in model.P.terms()]
    boundary = [(j, float(p)) for j, p in model.P0.terms() if j >= 0]
    hi = 0
    for t in range(1, n + 1):
        new = np.zeros_like(vec)
        w0 = vec[0]
        if w0:
            for j, p in boundary:
                new[j] += p * w0
        for j, p in bulk:
            src_lo = max(1, -j)
            if hi >= src_lo:
                new[src_lo + j : hi + j + 1] += p * vec[src_lo : hi + 1]
        vec = new
        hi = min(hi + rise, len(vec) - 1)
        on_step(t, vec)
    return vec


def meander_distribution(model: WalkModel, n: int, mode: Mode = "exact") -> AltitudeDistribution:
    """Altitude distribution after n steps, starting at 0, boundary applied."""
    _check_mode(mode)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        one: Number = Fraction(1) if mode == "exact" else 1.0
        return AltitudeDistribution(n=0, mass={0: one})
    if mode == "exact":
        vec = _run_exact(model, n, lambda t, v: None)
        mass: dict[int, Number] = {k: w for k, w in enumerate(vec) if w}
    else:
        fvec = _run_float(model, n, lambda t, v: None)
        mass = {int(k): float(w) for k, w in enumerate(fvec) if w}
    return AltitudeDistribution(n=n, mass=mass)


def excursion_series(model: WalkModel, n: int, mode: Mode = "exact") -> list:
    """e_0..e_n, the per-length masses of walks pinned back to altitude 0."""
    _check_mode(mode)
    out = [Fraction(1) if mode == "exact" else 1.0]
    record = lambda t, v: out.append(v[0])
    if n > 0:
        (_run_exact if mode == "exact" else _run_float)(model, n, record)
    return out


def excursion_mass(model: WalkModel, n: int, mode: Mode = "exact") -> Number:
    return meander_distribution(model, n, mode).mass.get(0, Fraction(0) if mode == "exact" else 0.0)


def meander_mass_series(model: WalkModel, n: int, mode: Mode = "exact") -> list:
    """m_0..m_n, the surviving mass per length (1 for every n iff nothing absorbs)."""
    _check_mode(mode)
    if mode == "exact":
        out = [Fraction(1)]
        if n > 0:
            _run_exact(model, n, lambda t, v: out.append(sum(v, Fraction(0))))
    else:
        out = [1.0]
        if n > 0:
            _run_float(model, n, lambda t, v: out.append(float(v.sum())))
    return out


def meander_mass(model: WalkModel, n: int, mode: Mode = "exact") -> Number:
    return meander_mass_series(model, n, mode)[n]


def final_altitude_expectation(model: WalkModel, n: int, mode: Mode = "exact") -> Number:
    """Expected final altitude conditioned on surviving to step n."""
    return meander_distribution(model, n, mode).expectation()


def final_altitude_series(model: WalkModel, n: int, mode: Mode = "exact") -> list:
    """Expected final altitude (conditioned on survival) for every length 0..n."""
    _check_mode(mode)
    out = [Fraction(0) if mode == "exact" else 0.0]
    if n == 0:
        return out
    if mode == "exact":
        def record(t, vec):
            total = sum(vec, Fraction(0))
            out.append(sum(k * w for k, w in enumerate(vec) if w) / total if total else None)
        _run_exact(model, n, record)
    else:
        idx = np.arange(n * _max_rise(model) + 1, dtype=float)

        def record(t, vec):
            total = float(vec.sum())
            out.append(float(idx[: len(vec)] @ vec) / total if total > 0 else None)
        _run_float(model, n, record)
    return out


def bridge_and_walk_mass(model: WalkModel, n: int, mode: Mode = "exact") -> tuple[Number, Number]:
    """(total walk mass, mass at altitude 0) for the unconstrained walk on Z.

    Only P applies; there is no boundary. With probability weights the total
    is exactly 1, which doubles as a sanity check on the DP.
    """
    _check_mode(mode)
    c, d = model.c, model.d
    offset = n * c
    if mode == "exact":
        vec = [Fraction(0)] * (n * (c + d) + 1)
        vec[offset] = Fraction(1)
        terms = list(model.P.terms())
        for _ in range(n):
            new = [Fraction(0)] * len(vec)
            for idx, w in enumerate(vec):
                if not w:
                    continue
                for j, p in terms:
                    new[idx + j] += w * p
            vec = new
        return sum(vec, Fraction(0)), vec[offset]
    fvec = np.zeros(n * (c + d) + 1)
    fvec[offset] = 1.0
    fterms = [(j, float(p)) for j, p in model.P.terms()]
    lo = hi = offset
    for _ in range(n):
        new = np.zeros_like(fvec)
        for j, p in fterms:
            new[lo + j : hi + j + 1] += p * fvec[lo : hi + 1]
        fvec = new
        lo, hi = lo - c, hi + d
    return float(fvec.sum()), float(fvec[offset])


def bridge_mass_series(model: WalkModel, n: int, mode: Mode = "exact") -> list:
    """Mass at altitude 0 of the unconstrained walk, for every length 0..n."""
    _check_mode(mode)
    c, d = model.c, model.d
    offset = n * c
    if mode == "exact":
        vec = [Fraction(0)] * (n * (c + d) + 1)
        vec[offset] = Fraction(1)
        out = [Fraction(1)]
        terms = list(model.P.terms())
        for _ in range(n):
            new = [Fraction(0)] * len(vec)
            for idx, w in enumerate(vec):
                if not w:
                    continue
                for j, p in terms:
                    new[idx + j] += w * p
            vec = new
            out.append(vec[offset])
        return out
    fvec = np.zeros(n * (c + d) + 1)
    fvec[offset] = 1.0
    out = [1.0]
    fterms = [(j, float(p)) for j, p in model.P.terms()]
    lo = hi = offset
    for _ in range(n):
        new = np.zeros_like(fvec)
        for j, p in fterms:
            new[lo + j : hi + j + 1] += p * fvec[lo : hi + 1]
        fvec = new
        lo, hi = lo - c, hi + d
        out.append(float(fvec[offset]))
    return out


# ---------------------------------------------------------------------------
# Arches: excursions of positive length touching 0 only at their endpoints.
# ---------------------------------------------------------------------------


def arch_series(model: WalkModel, n: int, mode: Mode = "exact") -> list:
    """a_0..a_n with a_0 = 0; a_m is the mass of arches of length m."""
    _check_mode(mode)
    exact = mode == "exact"
    zero: Number = Fraction(0) if exact else 0.0
    out = [zero] * (n + 1)
    if n >= 1:
        flat = model.P0geq.coeffs[0] if model.P0geq.lo == 0 and not model.P0geq.is_zero else zero
        out[1] = flat if exact else float(flat)
    if n < 2:
        return out
    d = model.d
    d0 = model.P0geq.hi if not model.P0geq.is_zero else 0
    size = max(d0, 1) + max(0, n - 2) * d + 1
    down = {-j: p for j, p in model.P.terms() if j < 0}
    if exact:
        vec = [Fraction(0)] * size
        for j, p in model.P0.terms():
            if 1 <= j < size:
                vec[j] = p
        bulk = list(model.P.terms())
        for t in range(1, n):
            out[t + 1] = sum(
                (vec[a] * down[a] for a in down if a < size and vec[a]), Fraction(0)
            )
            if t == n - 1:
                break
            new = [Fraction(0)] * size
            for alt in range(1, size):
                w = vec[alt]
                if not w:
                    continue
                for j, p in bulk:
                    tgt = alt + j
                    if 1 <= tgt < size:
                        new[tgt] += w * p
            vec = new
    else:
        fvec = np.zeros(size)
        for j, p in model.P0.terms():
            if 1 <= j < size:
                fvec[j] = float(p)
        fbulk = [(j, float(p)) for j, p in model.P.terms()]
        fdown = {a: float(p) for a, p in down.items()}
        for t in range(1, n):
            out[t + 1] = float(sum(fvec[a] * p for a, p in fdown.items() if a < size))
            if t == n - 1:
                break
            new = np.zeros(size)
            for j, p in fbulk:
                src_lo = max(1, 1 - j)
                src_hi = min(size - 1, size - 1 - j)
                if src_hi >= src_lo:
                    new[src_lo + j : src_hi + j + 1] += p * fvec[src_lo : src_hi + 1]
            fvec = new
    return out


def arch_mass(model: WalkModel, n: int, mode: Mode = "exact") -> Number:
    if n < 1:
        raise ValueError("arches have length >= 1")
    return arch_series(model, n, mode)[n]


# ---------------------------------------------------------------------------
# Returns to zero: number of times altitude 0 is reached again after leaving
# the origin (the origin itself does not count).
# ---------------------------------------------------------------------------


def returns_to_zero_distribution(model: WalkModel, n: int, mode: Mode = "exact") -> ReturnsDistribution:
    """Distribution of the number of returns to 0 among excursions of length n."""
    _check_mode(mode)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        one: Number = Fraction(1) if mode == "exact" else 1.0
        return ReturnsDistribution(n=0, prob={0: one})
    if mode == "exact":
        return _returns_exact(model, n)
    return _returns_float(model, n)


def _returns_exact(model: WalkModel, n: int) -> ReturnsDistribution:
    states: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for _ in range(n):
        new: dict[tuple[int, int], Fraction] = {}
        for (alt, k), w in states.items():
            poly = model.P0 if alt == 0 else model.P
            for j, p in poly.terms():
                tgt = alt + j
                if tgt < 0:
                    continue
                key = (tgt, k + 1 if tgt == 0 else k)
                new[key] = new.get(key, Fraction(0)) + w * p
        states = new
    masses = {k: w for (alt, k), w in states.items() if alt == 0}
    e_n = sum(masses.values(), Fraction(0))
    if e_n == 0:
        raise LatticePathError(f"no excursion of length {n}")
    prob = {k: w / e_n for k, w in sorted(masses.items())}
    return ReturnsDistribution(n=n, prob=prob)


def _returns_float(model: WalkModel, n: int) -> ReturnsDistribution:
    # An excursion with exactly k returns is a k-sequence of arches, so the
    # unnormalized weight of k returns is the nth coefficient of the kth
    # convolution power of the arch series.
    arch = np.array(arch_series(model, n, "float"), dtype=float)
    e = excursion_series(model, n, "float")
    e_n = float(e[n])
    if e_n <= 0.0:
        raise LatticePathError(f"no excursion of length {n}")
    size = 1 << (2 * (n + 1) - 1).bit_length()
    fa = np.fft.rfft(arch, size)
    w = np.zeros(n + 1)
    w[0] = 1.0
    prob: dict[int, float] = {}
    cum = 0.0
    for k in range(1, n + 1):
        w = np.fft.irfft(np.fft.rfft(w, size) * fa, size)[: n + 1]
        np.maximum(w, 0.0, out=w)
        pk = float(w[n])
        if pk > 0.0:
            prob[k] = pk / e_n
            cum += pk
        if cum >= e_n * (1.0 - 1e-13):
            break
        if w.max() < 1e-320:
            break
    return ReturnsDistribution(n=n, prob=prob)


def returns_moments(model: WalkModel, n: int, mode: Mode = "float") -> tuple[Number, Number]:
    """(mean, variance) of the number of returns among length-n excursions.

    Runs an altitude-indexed DP carrying the zeroth, first and second moment
    of the running return count, so large n stay cheap.
    """
    _check_mode(mode)
    if n == 0:
        z: Number = Fraction(0) if mode == "exact" else 0.0
        return z, z
    out: list = []
    _returns_moment_dp(model, n, mode, lambda t, m0, m1, m2: out.append((m0[0], m1[0], m2[0])))
    w0, w1, w2 = out[-1]
    if not w0:
        raise LatticePathError(f"no excursion of length {n}")
    mean = w1 / w0
    second = w2 / w0
    return mean, second - mean * mean


def returns_mean_series(model: WalkModel, n: int, mode: Mode = "float") -> list:
    """Expected number of returns among excursions, for every length 0..n.

    Entries are None where no excursion of that length exists.
    """
    _check_mode(mode)
    zero: Number = Fraction(0) if mode == "exact" else 0.0
    out: list = [zero]
    if n == 0:
        return out

    def record(t, m0, m1, m2):
        out.append(m1[0] / m0[0] if m0[0] else None)

    _returns_moment_dp(model, n, mode, record)
    return out


def _returns_moment_dp(model: WalkModel, n: int, mode: Mode, on_step: Callable) -> None:
    exact = mode == "exact"
    size = n * _max_rise(model) + 1
    if exact:
        m0 = [Fraction(0)] * size
        m1 = [Fraction(0)] * size
        m2 = [Fraction(0)] * size
        m0[0] = Fraction(1)
    else:
        m0 = np.zeros(size)
        m1 = np.zeros(size)
        m2 = np.zeros(size)
        m0[0] = 1.0
    bulk = [(j, p if exact else float(p)) for j, p in model.P.terms()]
    boundary = [(j, p if exact else float(p)) for j, p in model.P0.terms() if j >= 0]
    hi = 0
    for _t in range(n):
        if exact:
            n0 = [Fraction(0)] * size
            n1 = [Fraction(0)] * size
            n2 = [Fraction(0)] * size
        else:
            n0 = np.zeros(size)
            n1 = np.zeros(size)
            n2 = np.zeros(size)
        w0, w1, w2 = m0[0], m1[0], m2[0]
        if w0 or w1 or w2:
            for j, p in boundary:
                n0[j] += p * w0
                n1[j] += p * w1
                n2[j] += p * w2
                if j == 0:  # flat step on the boundary is itself a return
                    n1[0] += p * w0
                    n2[0] += p * (2 * w1 + w0)
        if exact:
            for alt in range(1, hi + 1):
                if not (m0[alt] or m1[alt] or m2[alt]):
                    continue
                for j, p in bulk:
                    tgt = alt + j
                    if tgt < 0:
                        continue
                    n0[tgt] += p * m0[alt]
                    n1[tgt] += p * m1[alt]
                    n2[tgt] += p * m2[alt]
                    if tgt == 0:
                        n1[0] += p * m0[alt]
                        n2[0] += p * (2 * m1[alt] + m0[alt])
        else:
            for j, p in bulk:
                src_lo = max(1, -j)
                if hi >= src_lo:
                    sl_src = slice(src_lo, hi + 1)
                    sl_tgt = slice(src_lo + j, hi + j + 1)
                    n0[sl_tgt] += p * m0[sl_src]
                    n1[sl_tgt] += p * m1[sl_src]
                    n2[sl_tgt] += p * m2[sl_src]
                if j < 0 and -j <= hi:
                    src = -j
                    n1[0] += p * m0[src]
                    n2[0] += p * (2 * m1[src] + m0[src])
        m0, m1, m2 = n0, n1, n2
        hi = min(hi + _max_rise(model), size - 1)
        on_step(_t + 1, m0, m1, m2)


# ---------------------------------------------------------------------------
# Brute force oracle and the four boundary rules of the length-4 table.
# ---------------------------------------------------------------------------


def enumerate_meander_paths(model: WalkModel, n: int) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield every surviving boundary walk of length n with its weight."""
    if n > BRUTE_FORCE_MAX_LENGTH:
        raise ValueError(f"brute force capped at n <= {BRUTE_FORCE_MAX_LENGTH}")

    path: list[int] = []

    def rec(alt: int, weight: Fraction, depth: int):
        if depth == n:
            yield tuple(path), weight
            return
        poly = model.P0 if alt == 0 else model.P
        for j, p in poly.terms():
            tgt = alt + j
            if tgt < 0:
                continue
            path.append(j)
            yield from rec(tgt, weight * p, depth + 1)
            path.pop()

    yield from rec(0, Fraction(1), 0)


def enumerate_walk_paths(model: WalkModel, n: int, *, boundary_at_zero: bool = False
                         ) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield every unconstrained walk of length n on Z with its weight.

    With ``boundary_at_zero`` the boundary polynomial applies whenever the
    walk sits at altitude 0, which is the weighting used when folding
    bridges by absolute value.
    """
    if n > BRUTE_FORCE_MAX_LENGTH:
        raise ValueError(f"brute force capped at n <= {BRUTE_FORCE_MAX_LENGTH}")

    path: list[int] = []

    def rec(alt: int, weight: Fraction, depth: int):
        if depth == n:
            yield tuple(path), weight
            return
        poly = model.P0 if boundary_at_zero and alt == 0 else model.P
        for j, p in poly.terms():
            path.append(j)
            yield from rec(alt + j, weight * p, depth + 1)
            path.pop()

    yield from rec(0, Fraction(1), 0)


def path_altitudes(path: tuple[int, ...]) -> tuple[int, ...]:
    alts = [0]
    for j in path:
        alts.append(alts[-1] + j)
    return tuple(alts)


@dataclass(frozen=True)
class BruteForceSummary:
    """Aggregates of the full path enumeration, all exact."""

    n: int
    path_count: int
    meander: dict[int, Fraction]
    excursion_mass: Fraction
    returns: dict[int, Fraction]
    arch_mass: Fraction

    def final_altitude_expectation(self) -> Fraction:
        total = sum(self.meander.values(), Fraction(0))
        if total == 0:
            raise LatticePathError(f"no surviving path of length {self.n}")
        return sum(k * w for k, w in self.meander.items()) / total

    def returns_distribution(self) -> dict[int, Fraction]:
        if self.excursion_mass == 0:
            raise LatticePathError(f"no excursion of length {self.n}")
        return {k: w / self.excursion_mass for k, w in sorted(self.returns.items())}


def brute_force(model: WalkModel, n: int) -> BruteForceSummary:
    """Enumerate all surviving paths of length n and aggregate them."""
    meander: dict[int, Fraction] = {}
    returns: dict[int, Fraction] = {}
    exc = Fraction(0)
    arch = Fraction(0)
    count = 0
    for path, weight in enumerate_meander_paths(model, n):
        count += 1
        alts = path_altitudes(path)
        final = alts[-1]
        meander[final] = meander.get(final, Fraction(0)) + weight
        if final == 0:
            exc += weight
            k = sum(1 for a in alts[1:] if a == 0)
            returns[k] = returns.get(k, Fraction(0)) + weight
            if n >= 1 and all(a > 0 for a in alts[1:-1]):
                arch += weight
    meander = {k: w for k, w in sorted(meander.items()) if w}
    returns = {k: w for k, w in sorted(returns.items()) if w}
    return BruteForceSummary(
        n=n,
        path_count=count,
        meander=meander,
        excursion_mass=exc,
        returns=returns,
        arch_mass=arch,
    )


class BoundaryRule(enum.Enum):
    """The four boundary constraints of the length-4 demonstration table."""

    UNIFORM = "uniform"
    ABSOLUTE_VALUE = "absolute-value"
    REFLECTION = "reflection"
    ABSORPTION = "absorption"


def _canonical_boundary(model: WalkModel, rule: BoundaryRule) -> WalkModel:
    if rule is BoundaryRule.REFLECTION:
        p0geq = model.P0geq
        total = p0geq.total_weight()
        if total == 0:
            raise InvalidModelError("P0 has no non-negative jump; reflection rule undefined")
        return WalkModel(P=model.P, P0=p0geq.scaled(Fraction(1) / total))
    if rule is BoundaryRule.ABSORPTION:
        return WalkModel(P=model.P, P0=model.P)
    raise ValueError(f"no boundary walk model for rule {rule}")


def path_probability(rule: BoundaryRule, model: WalkModel, path: tuple[int, ...]) -> Fraction:
    """Probability of one length-n path under one of the four boundary rules,
    conditioned on the rule's sample space (bridges, or excursions of that
    length). Paths outside the sample space get probability 0.
    """
    n = len(path)
    alts = path_altitudes(path)
    if rule in (BoundaryRule.UNIFORM, BoundaryRule.ABSOLUTE_VALUE):
        if n > BRUTE_FORCE_MAX_LENGTH:
            raise ValueError(f"bridge enumeration capped at n <= {BRUTE_FORCE_MAX_LENGTH}")
        if alts[-1] != 0:
            return Fraction(0)
        use_boundary = rule is BoundaryRule.ABSOLUTE_VALUE
        bridges = [
            (p, w)
            for p, w in enumerate_walk_paths(model, n, boundary_at_zero=use_boundary)
            if path_altitudes(p)[-1] == 0
        ]
        total = sum((w for _, w in bridges), Fraction(0))
        if total == 0:
            return Fraction(0)
        if rule is BoundaryRule.UNIFORM:
            hit = sum((w for p, w in bridges if p == path), Fraction(0))
            return hit / total
        if any(a < 0 for a in alts):
            return Fraction(0)  # a folded bridge never leaves N
        target = alts
        hit = sum(
            (w for p, w in bridges
             if tuple(abs(a) for a in path_altitudes(p)) == target),
            Fraction(0),
        )
        return hit / total
    walk = _canonical_boundary(model, rule)
    if alts[-1] != 0 or any(a < 0 for a in alts):
        return Fraction(0)
    weight = Fraction(1)
    for alt, j in zip(alts, path):
        poly = walk.P0 if alt == 0 else walk.P
        coeff = dict(poly.terms()).get(j, Fraction(0))
        if coeff == 0:
            return Fraction(0)
        weight *= coeff
    e_n = excursion_mass(walk, n, "exact")
    if e_n == 0:
        return Fraction(0)
    return weight / e_n


def bridge_paths(model: WalkModel, n: int) -> list[tuple[int, ...]]:
    """All length-n jump sequences ending at altitude 0 with positive P-weight."""
    out = [p for p, _ in enumerate_walk_paths(model, n) if path_altitudes(p)[-1] == 0]
    return sorted(out, reverse=True)
