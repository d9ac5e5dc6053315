"""Shared model fixtures: the registry of test models, loaded from models/."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest

from latticepaths import LaurentPolynomial, WalkModel, load_model

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"

MODEL_NAMES = [
    "dyck_reflection",
    "dyck_absorption",
    "motzkin_reflection",
    "motzkin_absorption",
    "drift_up_absorption",
    "drift_up_reflection",
    "supercritical_drift_down",
    "drift_down_reflection",
    "critical_drift_down",
    "two_down_reflection",
]

# the roster of acceptance models: Dyck both kinds, Motzkin both kinds,
# a positive-drift and a negative-drift supercritical walk, and a c=2 walk
ORACLE_MODEL_NAMES = [
    "dyck_reflection",
    "dyck_absorption",
    "motzkin_reflection",
    "motzkin_absorption",
    "drift_up_absorption",
    "supercritical_drift_down",
    "two_down_reflection",
]


@pytest.fixture(scope="session")
def models() -> dict[str, WalkModel]:
    return {name: load_model(MODELS_DIR / f"{name}.model") for name in MODEL_NAMES}


def _random_weights(rng: random.Random, exponents: list[int]) -> dict[int, Fraction]:
    nums = [rng.randint(1, 9) for _ in exponents]
    total = sum(nums)
    return {e: Fraction(v, total) for e, v in zip(exponents, nums)}


def random_model(rng: random.Random, *, lukasiewicz: bool = False) -> WalkModel:
    """A valid random model: exact weights summing to 1 on both lines."""
    c = 1 if lukasiewicz else rng.choice([1, 1, 2, 3])
    d = rng.randint(1, 3)
    exps = [-c, d] + [e for e in range(-c + 1, d) if rng.random() < 0.6]
    p = LaurentPolynomial.from_terms(_random_weights(rng, sorted(set(exps))))
    if rng.random() < 0.5:
        b_exps = sorted({rng.randint(0, d) for _ in range(rng.randint(1, 3))})
    else:
        b_exps = sorted({rng.randint(-c, d) for _ in range(rng.randint(2, 4))})
        if all(e < 0 for e in b_exps):
            b_exps.append(rng.randint(0, d))
    p0 = LaurentPolynomial.from_terms(_random_weights(rng, b_exps))
    return WalkModel(P=p, P0=p0)


@pytest.fixture(scope="session")
def random_models() -> list[WalkModel]:
    rng = random.Random(20140623)
    return [random_model(rng) for _ in range(12)]
