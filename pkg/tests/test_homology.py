"""Twisted chain complexes: boundaries, homology shapes, the minor formula."""

from __future__ import annotations

import random

import pytest

from twistalex.homology import (
    build_complex,
    euler_rank_check,
    homology,
    specialize_homology,
    wada_ratio,
)
from twistalex.laurent import LaurentPoly
from twistalex.presentations import (
    Augmentation,
    InvalidTripleError,
    Presentation,
    Representation,
    a_odd_augmentation,
    a_odd_presentation,
    a_odd_reduced_presentation,
    braid_cusp_presentation,
    hopf_augmentation,
    hopf_presentation,
    random_a_odd_representation,
    random_hopf_representation,
    rank_one_representation,
    torus_germ_presentation,
    transversal_union_augmentation,
    transversal_union_presentation,
)
from twistalex.scalars import FieldContext


def _untwisted(pres, eps_values):
    ctx = FieldContext(1)
    eps = Augmentation(eps_values)
    rho = Representation.trivial(ctx, pres.generator_count, 1)
    return build_complex(pres, eps, rho)


def _t_poly(ctx, coeffs, low=0):
    return LaurentPoly(ctx, coeffs, low)


def test_hopf_untwisted_closed_form():
    # Delta_1 = (t - 1) * (t^d - 1)^(d-2), Delta_0 = t - 1
    for d in (2, 3, 4):
        cx = _untwisted(hopf_presentation(d), hopf_augmentation([1] * d).values)
        res = homology(cx)
        ctx = cx.context
        t = LaurentPoly.t_power(ctx, 1)
        one = LaurentPoly.one(ctx)
        expect = (t - one) * (t**d - one) ** (d - 2)
        assert res.delta(1).unit_equal(expect)
        assert res.delta(0).unit_equal(t - one)
        assert res.h1.free_rank == 0 and res.h2.free_rank == 0


def test_torus_germ_23_untwisted():
    # germ grading: eps = (3, 2); Delta_1 = t^2 - t + 1, Delta_0 = t - 1
    cx = _untwisted(torus_germ_presentation(2, 3), (3, 2))
    res = homology(cx)
    ctx = cx.context
    assert res.delta(1) == _t_poly(ctx, [1, -1, 1])
    assert res.delta(0) == _t_poly(ctx, [-1, 1])
    assert str(res.delta(1)) == "1 - t + t^2"
    assert res.h2.free_rank == 0 and not res.h2.divisors


def test_braid_cusp_untwisted():
    # <x, y | xyx = yxy> with both meridians weight 1 is the same germ in
    # braid coordinates: Delta_1 = t^2 - t + 1 again
    cx = _untwisted(braid_cusp_presentation(), (1, 1))
    res = homology(cx)
    ctx = cx.context
    assert res.delta(1) == _t_poly(ctx, [1, -1, 1])
    assert res.delta(0) == _t_poly(ctx, [-1, 1])


def test_wada_ratio_agrees_with_homology():
    cases = [
        _untwisted(hopf_presentation(3), (3, 1, 1)),
        _untwisted(torus_germ_presentation(2, 3), (3, 2)),
        _untwisted(torus_germ_presentation(3, 5), (5, 3)),
        _untwisted(braid_cusp_presentation(), (1, 1)),
        _untwisted(a_odd_reduced_presentation(2), a_odd_augmentation(2).values),
    ]
    for cx in cases:
        assert wada_ratio(cx).unit_equal(homology(cx).ratio())


def test_wada_ratio_needs_deficiency_one():
    cx = _untwisted(a_odd_presentation(2), a_odd_augmentation(2).values)
    with pytest.raises(ValueError):
        wada_ratio(cx)


def test_circle_complement():
    # one free generator: H0 = coker(t - 1), H1 = ker = 0, no 2-cells
    pres = Presentation(["x"], [])
    cx = _untwisted(pres, (1,))
    res = homology(cx)
    ctx = cx.context
    assert res.delta(0) == _t_poly(ctx, [-1, 1])
    assert res.h1.free_rank == 0 and not res.h1.divisors
    assert res.delta(1).is_one()
    assert cx.rank2 == 0


def test_free_group_rank_two():
    # two free generators: ker d1 is free of rank 1, so Delta_1 = 0
    pres = Presentation(["x", "y"], [])
    cx = _untwisted(pres, (1, 1))
    res = homology(cx)
    assert res.h1.free_rank == 1
    assert res.delta(1).is_zero()
    assert res.delta(0).unit_equal(_t_poly(cx.context, [-1, 1]))


def test_twisted_hopf_pair_is_acyclic():
    # rank-1 rho = (-1, -1) on the two-component Hopf group: Delta_0 =
    # gcd(t^2 + 1, t + 1) = 1 since t = -1 is not a root of t^2 + 1, and the
    # remaining homology vanishes with it
    ctx = FieldContext(1)
    pres = hopf_presentation(2)
    eps = hopf_augmentation([1, 1])
    rho = rank_one_representation(ctx, pres, [-1, -1])
    res = homology(build_complex(pres, eps, rho))
    assert res.delta(0).is_one()
    assert res.delta(1).is_one()
    assert res.acyclic()


def test_boundary_composite_vanishes_across_builders():
    rng = random.Random(55)
    ctx = FieldContext(12)
    complexes = []
    for d in (2, 3):
        rho = random_hopf_representation(ctx, d, 2, rng, family="diagonal")
        complexes.append(build_complex(hopf_presentation(d), hopf_augmentation([1] * d), rho))
    rho = random_a_odd_representation(ctx, 2, 2, rng, family="conjugate")
    complexes.append(build_complex(a_odd_presentation(2), a_odd_augmentation(2), rho))
    for cx in complexes:
        assert (cx.boundary1 * cx.boundary2).is_zero()
        euler_rank_check(cx, homology(cx))


def test_full_a_odd_has_free_h2():
    # the full relator list carries one redundancy: chain-level Euler
    # characteristic 1, torsion H0 and H1, so H2 is free of rank 1
    cx = _untwisted(a_odd_presentation(2), a_odd_augmentation(2).values)
    assert cx.euler_characteristic == 1
    res = homology(cx)
    assert res.h0.free_rank == 0 and res.h1.free_rank == 0
    assert res.h2.free_rank == 1
    # dropping the redundant relator kills H2 entirely
    reduced = _untwisted(a_odd_reduced_presentation(2), a_odd_augmentation(2).values)
    assert reduced.euler_characteristic == 0
    res2 = homology(reduced)
    assert res2.h2.free_rank == 0 and not res2.h2.divisors
    # both presentations compute the same Delta_1
    assert res.delta(1).unit_equal(res2.delta(1))


def test_specialize_homology_dimensions():
    cx = _untwisted(hopf_presentation(3), (3, 1, 1))
    ctx = cx.context
    # at t = 1 every boundary entry vanishes: dims are the chain ranks
    assert specialize_homology(cx, ctx.from_rational(1)) == (1, 3, 2)
    # at a generic value the complex is exact
    assert specialize_homology(cx, ctx.from_rational(2)) == (0, 0, 0)


def test_specialize_homology_lifts_context():
    # a cyclotomic sample point lifts a rational complex into its field
    cx = _untwisted(hopf_presentation(2), (2, 1))
    zeta3 = FieldContext(3).zeta(1)
    assert specialize_homology(cx, zeta3) == (0, 0, 0)
    assert specialize_homology(cx, cx.context.from_rational(1)) == (1, 2, 1)


def test_union_of_equal_germs_picks_up_extra_factor():
    # Two copies of the (2, 3) germ joined transversally, with the same
    # square/cube root twist that makes the distinct-germ union give t - 1.
    # Equal exponents make the second factor's determinant share a root with
    # the first, so Delta_1 gains the factor t - zeta_6^5 on top of t - 1.
    ctx = FieldContext(6)
    factors = (("torus", 2, 3), ("torus", 2, 3))
    pres = transversal_union_presentation(factors)
    eps = transversal_union_augmentation(factors, [1, 1])
    rho = rank_one_representation(
        ctx, pres, [ctx.from_rational(-1), ctx.zeta(2), ctx.one, ctx.one]
    )
    res = homology(build_complex(pres, eps, rho))
    assert res.delta(0).is_one()
    t = LaurentPoly.t_power(ctx, 1)
    one = LaurentPoly.one(ctx)
    z5 = LaurentPoly(ctx, [ctx.zeta(5)])
    assert res.delta(1).unit_equal((t - one) * (t - z5))


def test_specialize_rejects_zero():
    cx = _untwisted(hopf_presentation(2), (2, 1))
    with pytest.raises(ZeroDivisionError):
        specialize_homology(cx, 0)


def test_build_complex_rejects_invalid_triple():
    pres = torus_germ_presentation(2, 3)
    ctx = FieldContext(1)
    rho = Representation.trivial(ctx, 2, 1)
    with pytest.raises(InvalidTripleError):
        build_complex(pres, Augmentation([1, 1]), rho)


def test_fox_matrix_shape_and_d1_column():
    cx = _untwisted(torus_germ_presentation(2, 3), (3, 2))
    fox = cx.fox_matrix()
    assert (fox.rows, fox.cols) == (1, 2)
    ctx = cx.context
    # d(x^2 y^-3)/dx = 1 + t^3 and d/dy = -(1 + t^2 + t^4)
    assert fox[0, 0] == _t_poly(ctx, [1, 0, 0, 1])
    assert fox[0, 1] == _t_poly(ctx, [-1, 0, -1, 0, -1])
    col = cx.d1_column()
    assert (col.rows, col.cols) == (2, 1)
    assert col[0, 0] == _t_poly(ctx, [-1, 0, 0, 1])
    assert col[1, 0] == _t_poly(ctx, [-1, 0, 1])
