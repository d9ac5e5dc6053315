"""Model types, parsing and validation."""

import random
from fractions import Fraction

import pytest

from latticepaths import (
    InvalidModelError,
    LaurentPolynomial,
    ModelFileError,
    ModelKind,
    classify_kind,
    format_model,
    parse_model,
    validate,
)
from conftest import random_model


def test_laurent_evaluation_and_trimming():
    p = LaurentPolynomial.from_terms({-1: Fraction(3, 10), 0: Fraction(3, 10), 1: Fraction(2, 5)})
    assert p.lo == -1 and p.hi == 1
    assert p(Fraction(1)) == 1
    assert p(Fraction(2)) == Fraction(3, 20) + Fraction(3, 10) + Fraction(4, 5)
    q = LaurentPolynomial.from_terms({2: Fraction(0), 3: Fraction(1, 2)})
    assert q.lo == 3 and q.coeffs == (Fraction(1, 2),)


def test_laurent_derivative_and_nonneg_part():
    p = LaurentPolynomial.from_terms({-1: Fraction(1, 2), 1: Fraction(1, 2)})
    dp = p.derivative()
    assert dp(Fraction(1)) == 0
    assert dp(2.0) == pytest.approx(0.5 - 0.5 / 4.0)
    assert p.nonneg_part().to_spec_string() == "1:1/2"


def test_zero_polynomial():
    z = LaurentPolynomial.from_terms({})
    assert z.is_zero
    assert z(2.0) == 0
    assert z.derivative().is_zero


def test_validate_examples(models):
    r = validate(models["dyck_reflection"])
    assert r.ok and r.kind is ModelKind.REFLECTION and r.lukasiewicz and r.period == 2
    r = validate(models["dyck_absorption"])
    assert r.ok and r.kind is ModelKind.ABSORPTION
    assert models["dyck_absorption"].P0geq.to_spec_string() == "1:1/2"
    r = validate(models["motzkin_reflection"])
    assert r.ok and r.kind is ModelKind.REFLECTION and r.period == 1


def test_validate_reports_violations():
    bad = parse_model("P: -1:1/2 1:1/3\nP0: 1:1\n")
    report = validate(bad)
    assert not report.ok
    assert any("P(1)" in v for v in report.violations)
    with pytest.raises(InvalidModelError):
        classify_kind(bad)
    no_down = parse_model("P: 0:1/2 1:1/2\nP0: 1:1\n")
    assert any("negative jump" in v for v in validate(no_down).violations)


def test_classify_kind(models):
    assert classify_kind(models["dyck_reflection"]) is ModelKind.REFLECTION
    assert classify_kind(models["dyck_absorption"]) is ModelKind.ABSORPTION
    assert classify_kind(models["motzkin_reflection"]) is ModelKind.REFLECTION


def test_parse_decimal_weights_are_exact():
    m = parse_model("P: -1:0.3 0:0.3 1:0.4\nP0: 0:0.5 1:0.5\n")
    assert dict(m.P.terms())[-1] == Fraction(3, 10)
    assert m.P.total_weight() == 1


def test_parse_errors():
    with pytest.raises(ModelFileError):
        parse_model("P: -1:1/2 1:1/2\n")  # missing P0
    with pytest.raises(ModelFileError):
        parse_model("P: -1:1/2 1:1/2\nP0: 1:1\nP: 0:1\n")  # duplicate
    with pytest.raises(ModelFileError):
        parse_model("P: -1:1/2 x:1/2\nP0: 1:1\n")
    with pytest.raises(ModelFileError):
        parse_model("P: -1:-1/2 1:3/2\nP0: 1:1\n")
    with pytest.raises(ModelFileError):
        parse_model("Q: -1:1/2 1:1/2\nP0: 1:1\n")


def test_roundtrip_fixed(models):
    for model in models.values():
        assert parse_model(format_model(model)) == model


def test_roundtrip_random():
    rng = random.Random(7)
    for _ in range(50):
        model = random_model(rng)
        assert parse_model(format_model(model)) == model


def test_p0geq_weight_bounded(models, random_models):
    for model in list(models.values()) + random_models:
        total = model.P0geq.total_weight()
        assert total <= 1
        assert (total == 1) == model.is_reflection


def test_period_divides_support_offsets(models, random_models):
    for model in list(models.values()) + random_models:
        g = model.period
        sup = model.P.support()
        assert all((e - sup[0]) % g == 0 for e in sup)


def test_periodicity_values(models):
    assert models["dyck_reflection"].period == 2
    assert models["motzkin_reflection"].period == 1
    assert models["two_down_reflection"].period == 1
