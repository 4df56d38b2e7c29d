"""Exact cyclotomic arithmetic: power-basis reduction, inversion, embedding."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from twistalex.scalars import (
    ContextMismatchError,
    CycloNumber,
    FieldContext,
    ScalarMatrix,
    cyclotomic_polynomial,
    embed,
    lcm,
    parse_scalar,
    totient,
)


def test_cyclotomic_polynomial_small_values():
    # Phi_1 = z - 1, Phi_2 = z + 1, Phi_4 = z^2 + 1, Phi_6 = z^2 - z + 1,
    # Phi_12 = z^4 - z^2 + 1, all monic with integer coefficients.
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_totient_and_lcm():
    assert [totient(n) for n in (1, 2, 3, 4, 6, 12)] == [1, 1, 2, 2, 2, 4]
    assert lcm([4, 6]) == 12
    assert lcm([1]) == 1


def test_power_basis_reduction_conductor_12():
    # In the basis 1, z, z^2, z^3 of Q(zeta_12): z^4 = z^2 - 1 and z^6 = -1,
    # both read off the reduction rows of Phi_12.
    ctx = FieldContext(12)
    z4 = ctx.zeta(4)
    assert z4.coords == (Fraction(-1), Fraction(0), Fraction(1), Fraction(0))
    assert ctx.zeta(6) == -ctx.one
    assert ctx.zeta(12) == ctx.one


def test_zeta_powers_multiply():
    ctx = FieldContext(12)
    for a in range(12):
        for b in range(12):
            assert ctx.zeta(a) * ctx.zeta(b) == ctx.zeta(a + b)


def test_inverse_of_one_plus_i():
    # (1 + i)(1 - i) = 2, so the inverse of 1 + zeta_4 is (1 - zeta_4)/2.
    ctx = FieldContext(4)
    value = ctx.one + ctx.zeta(1)
    expected = (ctx.one - ctx.zeta(1)) * Fraction(1, 2)
    assert value.inverse() == expected
    assert value * value.inverse() == ctx.one


def test_rational_context_is_fraction_arithmetic():
    ctx = FieldContext(1)
    a = ctx.from_rational(Fraction(3, 7))
    b = ctx.from_rational(Fraction(-2, 5))
    assert (a + b).as_rational() == Fraction(1, 35)
    assert (a * b).as_rational() == Fraction(-6, 35)
    assert a.inverse().as_rational() == Fraction(7, 3)


def test_field_axioms_randomized():
    rng = random.Random(20260819)
    ctx = FieldContext(12)

    def rand():
        return CycloNumber(
            ctx,
            [rng.randint(-5, 5) for _ in range(4)],
            rng.randint(1, 4),
        )

    for _ in range(50):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == ctx.one
            assert (a / a) == ctx.one


def test_conjugation_is_a_ring_involution():
    rng = random.Random(11)
    ctx = FieldContext(12)
    for _ in range(25):
        a = CycloNumber(ctx, [rng.randint(-4, 4) for _ in range(4)], rng.randint(1, 3))
        b = CycloNumber(ctx, [rng.randint(-4, 4) for _ in range(4)], rng.randint(1, 3))
        assert a.conj().conj() == a
        assert (a + b).conj() == a.conj() + b.conj()
        assert (a * b).conj() == a.conj() * b.conj()
    # conj sends each root of unity to its inverse
    for k in range(12):
        assert ctx.zeta(k).conj() == ctx.zeta(-k)


def test_multiplicative_order():
    ctx = FieldContext(12)
    assert ctx.one.multiplicative_order() == 1
    assert (-ctx.one).multiplicative_order() == 2
    assert ctx.zeta(1).multiplicative_order() == 12
    assert ctx.zeta(4).multiplicative_order() == 3
    # 2 is not a root of unity
    assert ctx.from_rational(2).multiplicative_order() is None


def test_embed_commutes_with_arithmetic():
    rng = random.Random(5)
    small = FieldContext(3)
    big = FieldContext(12)
    for _ in range(25):
        a = CycloNumber(small, [rng.randint(-4, 4) for _ in range(2)], rng.randint(1, 3))
        b = CycloNumber(small, [rng.randint(-4, 4) for _ in range(2)], rng.randint(1, 3))
        assert embed(a + b, big) == embed(a, big) + embed(b, big)
        assert embed(a * b, big) == embed(a, big) * embed(b, big)
    # zeta_3 goes to zeta_12^4
    assert embed(small.zeta(1), big) == big.zeta(4)


def test_embed_requires_divisible_conductor():
    with pytest.raises(ValueError):
        embed(FieldContext(4).zeta(1), FieldContext(6))


def test_mixed_context_arithmetic_is_rejected():
    a = FieldContext(4).zeta(1)
    b = FieldContext(12).zeta(3)
    with pytest.raises(ContextMismatchError):
        a + b  # noqa: B018  the addition itself is the assertion


def test_scalar_parse_round_trip():
    ctx = FieldContext(12)
    for text in ("0", "1", "-1", "1/2 + 3*z^2 - z^3", "-2/5*z", "z^5"):
        value = parse_scalar(text, ctx)
        again = parse_scalar(str(value), ctx)
        assert again == value
        assert str(again) == str(value)


def test_scalar_parse_rejects_garbage():
    ctx = FieldContext(12)
    for text in ("", "z^", "1//2", "3/0", "q", "z*z"):
        with pytest.raises(ValueError):
            parse_scalar(text, ctx)
    with pytest.raises(ValueError):
        parse_scalar("z", FieldContext(1))


def test_scalar_matrix_inverse_and_det():
    ctx = FieldContext(4)
    z = ctx.zeta(1)
    m = ScalarMatrix.from_rows(ctx, [[1, z], [0, 2]])
    inv = m.inverse()
    assert (m * inv).is_identity()
    assert m.det() == ctx.from_rational(2)
    singular = ScalarMatrix.from_rows(ctx, [[1, 1], [1, 1]])
    assert singular.det().is_zero()


def test_scalar_matrix_rank():
    ctx = FieldContext(1)
    m = ScalarMatrix.from_rows(ctx, [[1, 2, 3], [2, 4, 6], [0, 1, 0]])
    assert m.rank() == 2
