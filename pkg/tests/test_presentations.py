"""Words, Fox calculus, triple validation, and the curve-family builders."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from twistalex.laurent import LaurentMatrix
from twistalex.presentations import (
    Augmentation,
    GroupRingElement,
    InvalidTripleError,
    PhiMap,
    Representation,
    Word,
    a_odd_augmentation,
    a_odd_presentation,
    a_odd_reduced_presentation,
    fox_derivative,
    hopf_augmentation,
    hopf_extra_meridian_word,
    hopf_presentation,
    random_a_odd_representation,
    random_hopf_representation,
    random_word,
    rank_one_representation,
    torus_germ_augmentation,
    torus_germ_presentation,
    transversal_union_augmentation,
    transversal_union_presentation,
    validate,
)
from twistalex.scalars import FieldContext, ScalarMatrix


NAMES = ["x", "y"]


def test_word_parse_and_to_text():
    w = Word.parse("x y^-1 x^2", NAMES)
    assert w.letters == ((0, 1), (1, -1), (0, 1), (0, 1))
    # powers are stored expanded, so the round trip spells them out
    assert w.to_text(NAMES) == "x y^-1 x x"
    assert Word().to_text(NAMES) == "1"
    assert Word.parse("y^-3", NAMES).letters == ((1, -1),) * 3


def test_word_parse_rejects_bad_tokens():
    with pytest.raises(ValueError):
        Word.parse("q", NAMES)
    with pytest.raises(ValueError):
        Word.parse("x^0", NAMES)


def test_word_group_operations():
    x = Word.generator(0)
    y = Word.generator(1)
    comm = x * y * x.inverse() * y.inverse()
    assert len(comm) == 4
    assert not comm.is_trivial()
    assert (x * x.inverse()).is_trivial()
    assert (comm * comm.inverse()).free_reduce() == Word()
    assert x**3 == Word([(0, 1)] * 3)
    assert x**-2 == Word([(0, -1)] * 2)
    assert (x**0) == Word()


def test_free_reduce_cancels_adjacent_inverses():
    w = Word([(0, 1), (1, 1), (1, -1), (0, -1), (0, 1)])
    assert w.free_reduce() == Word([(0, 1)])


def test_fox_derivative_base_cases():
    x = Word.generator(0)
    y = Word.generator(1)
    one = GroupRingElement.one()
    assert fox_derivative(x, 0) == one
    assert fox_derivative(x, 1) == GroupRingElement.zero()
    # d(x^-1)/dx = -x^-1
    assert fox_derivative(x.inverse(), 0) == -GroupRingElement.from_word(x.inverse())
    # d(xy)/dy = x
    assert fox_derivative(x * y, 1) == GroupRingElement.from_word(x)


def test_fox_derivative_commutator_and_power():
    x = Word.generator(0)
    y = Word.generator(1)
    comm = x * y * x.inverse() * y.inverse()
    expect = GroupRingElement.one() - GroupRingElement.from_word(x * y * x.inverse())
    assert fox_derivative(comm, 0) == expect
    # d(x^3)/dx = 1 + x + x^2
    cube = fox_derivative(x**3, 0)
    assert cube == (
        GroupRingElement.one()
        + GroupRingElement.from_word(x)
        + GroupRingElement.from_word(x * x)
    )


def test_fox_fundamental_identity_randomized():
    # Phi(w) - Id = sum_g Phi(dw/dg) * (Phi(g) - Id) for every word w
    rng = random.Random(424242)
    ctx = FieldContext(12)
    pres = hopf_presentation(3)
    eps = hopf_augmentation([1, 1, 1])
    for _ in range(10):
        rho = random_hopf_representation(ctx, 3, 2, rng, family="scalar")
        phi = PhiMap(eps, rho)
        eye = LaurentMatrix.identity(ctx, 2)
        for _ in range(8):
            w = random_word(3, 10, rng)
            lhs = phi.word_image(w) - eye
            rhs = LaurentMatrix.zero(ctx, 2, 2)
            for g in range(3):
                d = fox_derivative(w, g)
                rhs = rhs + phi.element_image(d) * (phi.generator_image(g) - eye)
            assert lhs == rhs


def test_presentation_counts_and_euler_characteristic():
    pres = hopf_presentation(4)
    assert pres.generator_count == 4
    assert pres.relator_count == 3
    assert pres.euler_characteristic == 0
    assert pres.deficiency == 1
    full = a_odd_presentation(2)
    assert (full.generator_count, full.relator_count) == (5, 5)
    assert full.euler_characteristic == 1
    reduced = a_odd_reduced_presentation(2)
    assert reduced.relator_count == 4
    assert reduced.euler_characteristic == 0


def test_a_odd_relator_words():
    pres = a_odd_presentation(2)
    names = pres.generator_names
    spelled = [r.to_text(names) for r in pres.relators]
    assert spelled == [
        "a1 a0 b^-1",
        "b a2 b^-1 a0^-1",
        "b a3 b^-1 a1^-1",
        "b a0 b^-1 a2^-1",
        "b a1 b^-1 a3^-1",
    ]
    assert a_odd_reduced_presentation(2).relators == pres.relators[:-1]


def test_torus_germ_builder():
    pres = torus_germ_presentation(2, 3)
    assert pres.relators[0].to_text(pres.generator_names) == "x x y^-1 y^-1 y^-1"
    eps = torus_germ_augmentation(2, 3)
    assert eps.values == (3, 2)
    assert eps.of_word(pres.relators[0]) == 0
    with pytest.raises(ValueError):
        torus_germ_presentation(2, 4)


def test_hopf_extra_meridian():
    # the eliminated meridian abelianizes to the remaining weight
    for d in (2, 3, 5):
        weights = list(range(1, d + 1))
        eps = hopf_augmentation(weights)
        extra = hopf_extra_meridian_word(d)
        assert eps.of_word(extra) == weights[-1]


def test_union_builder_shape():
    factors = [("torus", 2, 3), ("line",)]
    pres = transversal_union_presentation(factors)
    assert pres.generator_count == 3
    # one germ relator plus one commutator per cross-factor generator pair
    assert pres.relator_count == 3
    eps = transversal_union_augmentation(factors, [1, 1])
    assert eps.values == (3, 2, 1)
    for rel in pres.relators:
        assert eps.of_word(rel) == 0
    with pytest.raises(ValueError):
        transversal_union_presentation([("torus", 2, 3)])


def test_augmentation_image_index():
    assert Augmentation([2, 4]).image_index() == 2
    assert Augmentation([2, 3]).image_index() == 1
    assert Augmentation([0, 0]).is_nontrivial() is False
    assert Augmentation([0, -1]).is_nontrivial() is True


def test_representation_of_word_and_inverses():
    ctx = FieldContext(4)
    z = ctx.zeta(1)
    rho = Representation.diagonal(ctx, [(z,), (ctx.from_rational(2),)])
    x = Word.generator(0)
    y = Word.generator(1)
    img = rho.of_word(x * y * x.inverse())
    assert img[0, 0] == ctx.from_rational(2)
    assert rho.inverse_of_generator(0)[0, 0] == z.inverse()
    comm = x * y * x.inverse() * y.inverse()
    assert rho.of_word(comm).is_identity()


def test_phi_map_images():
    ctx = FieldContext(4)
    pres = hopf_presentation(2)
    eps = hopf_augmentation([1, 1])
    rho = rank_one_representation(ctx, pres, [ctx.zeta(1), ctx.from_rational(2)])
    phi = PhiMap(eps, rho)
    # Phi(x0) = zeta * t^2, Phi(x1^-1) = (1/2) * t^-1
    g0 = phi.generator_image(0)
    assert g0[0, 0].coefficient(2) == ctx.zeta(1)
    g1inv = phi.generator_image(1, -1)
    assert g1inv[0, 0].coefficient(-1).as_rational() == Fraction(1, 2)
    # relators map to the identity for a valid triple
    assert phi.word_image(pres.relators[0]) == LaurentMatrix.identity(ctx, 1)


def test_validate_accepts_valid_triples():
    ctx = FieldContext(12)
    pres = hopf_presentation(3)
    eps = hopf_augmentation([1, 2, 3])
    rho = random_hopf_representation(ctx, 3, 2, random.Random(1), family="diagonal")
    report = validate(pres, eps, rho)
    assert report.ok
    assert report.eps_nontrivial
    assert report.eps_surjective


def test_validate_rejects_bad_rho():
    ctx = FieldContext(1)
    pres = hopf_presentation(2)
    eps = hopf_augmentation([1, 1])
    # 2 and 3 commute so the relator holds; break it with non-commuting images
    bad = Representation(
        ctx,
        [
            ScalarMatrix.from_rows(ctx, [[1, 1], [0, 1]]),
            ScalarMatrix.from_rows(ctx, [[1, 0], [1, 1]]),
        ],
    )
    report = validate(pres, eps, bad)
    assert not report.ok
    assert any("rho does not kill relator" in f for f in report.failures)


def test_validate_flags_singular_matrix_without_crashing():
    ctx = FieldContext(1)
    pres = hopf_presentation(2)
    eps = hopf_augmentation([1, 1])
    singular = Representation(
        ctx,
        [
            ScalarMatrix.from_rows(ctx, [[0]]),
            ScalarMatrix.from_rows(ctx, [[1]]),
        ],
    )
    report = validate(pres, eps, singular)
    assert not report.ok
    assert any("singular" in f for f in report.failures)


def test_validate_rejects_nonvanishing_eps():
    pres = torus_germ_presentation(2, 3)
    eps = Augmentation([1, 1])  # eps(relator) = 2 - 3 = -1
    ctx = FieldContext(1)
    rho = Representation.trivial(ctx, 2, 1)
    report = validate(pres, eps, rho)
    assert not report.ok
    assert any("eps does not kill relator" in f for f in report.failures)


def test_validate_rejects_trivial_eps():
    pres = hopf_presentation(2)
    ctx = FieldContext(1)
    rho = Representation.trivial(ctx, 2, 1)
    report = validate(pres, Augmentation([0, 0]), rho)
    assert not report.ok


def test_random_samplers_produce_valid_triples():
    rng = random.Random(31)
    ctx = FieldContext(12)
    for d in (2, 3, 4):
        eps = hopf_augmentation([1] * d)
        for family in ("scalar", "diagonal"):
            for _ in range(5):
                rho = random_hopf_representation(ctx, d, rng.randint(1, 3), rng, family)
                assert validate(hopf_presentation(d), eps, rho).ok
    for n in (1, 2):
        pres = a_odd_presentation(n)
        eps = a_odd_augmentation(n)
        for family in ("diagonal", "conjugate"):
            for _ in range(5):
                rho = random_a_odd_representation(ctx, n, 2, rng, family)
                assert validate(pres, eps, rho).ok


def test_invalid_triple_error_carries_report():
    pres = hopf_presentation(2)
    ctx = FieldContext(1)
    rho = Representation.trivial(ctx, 2, 1)
    report = validate(pres, Augmentation([0, 0]), rho)
    err = InvalidTripleError(report)
    assert err.report is report
    assert "eps is trivial" in str(err)


def test_random_word_respects_bounds():
    rng = random.Random(8)
    for _ in range(50):
        w = random_word(3, 6, rng)
        assert len(w) <= 6
        assert w.max_generator() < 3
