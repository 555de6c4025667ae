import random

import pytest
from hypothesis import given, settings, strategies as st

from ss5.field import FieldCtx, make_extension
from ss5.poly import (
    BiPoly,
    CommonComponentError,
    UniPoly,
    factor,
    intersection_multiplicity,
    power_product_coeff,
    roots,
    roots_in_extension,
    resultant,
)


def _random_poly(ctx, deg, rng):
    coeffs = [rng.randrange(ctx.p) for _ in range(deg)] + [rng.randrange(1, ctx.p)]
    return UniPoly.from_ints(ctx, coeffs)


def test_factor_product_reassembles():
    ctx = FieldCtx(7)
    rng = random.Random(0)
    for _ in range(30):
        f = _random_poly(ctx, rng.randrange(1, 9), rng)
        pieces = factor(f)
        prod = UniPoly.from_ints(ctx, [1])
        for g, m in pieces:
            assert g.coeff(g.degree) == ctx.one  # monic factors
            for _i in range(m):
                prod = prod * g
        lead = f.coeff(f.degree)
        assert prod * UniPoly(ctx, [lead]) == f


def test_factors_are_irreducible_by_root_counting_in_splitting_degree():
    ctx = FieldCtx(5)
    rng = random.Random(1)
    for _ in range(20):
        f = _random_poly(ctx, rng.randrange(2, 7), rng)
        for g, _m in factor(f):
            if g.degree < 2:
                continue
            # an irreducible of degree d has no roots below F_{p^d}, and one
            # canonical representative there (conjugates are collapsed)
            for d in range(1, g.degree):
                if g.degree % d:
                    continue
                assert not roots_in_extension(g, d)
            hits = roots_in_extension(g, g.degree)
            assert len(hits) == 1
            root, rctx = hits[0]
            assert g.map_coeffs(rctx).eval(root).is_zero()


def test_roots_against_exhaustive_search():
    ctx = make_extension(3, 2)
    rng = random.Random(2)
    for _ in range(20):
        coeffs = [rng.randrange(9) for _ in range(4)] + [1]
        f = UniPoly(ctx, [ctx.from_index(c) for c in coeffs])
        expected = sorted(
            a.encode() for a in ctx.elements() if f.eval(a).is_zero()
        )
        assert sorted(r.encode() for r in roots(f)) == expected


def test_power_product_coeff_against_direct_expansion():
    ctx = FieldCtx(11)
    rng = random.Random(3)
    for _ in range(10):
        base = _random_poly(ctx, 3, rng)
        e = rng.randrange(1, 6)
        full = UniPoly.from_ints(ctx, [1])
        for _i in range(e):
            full = full * base
        n = rng.randrange(full.degree + 1)
        assert power_product_coeff([(base, e)], n) == full.coeff(n)


def test_resultant_vanishes_iff_common_root():
    ctx = FieldCtx(7)
    x_minus = lambda a: UniPoly.from_ints(ctx, [-a, 1])
    f = x_minus(2) * x_minus(3)
    g = x_minus(3) * x_minus(5)
    h = x_minus(1) * x_minus(5)
    assert resultant(f, g).is_zero()
    assert not resultant(f, h).is_zero()


def test_intersection_multiplicity_baselines():
    ctx = FieldCtx(7)
    # two distinct lines meet once
    line1 = BiPoly.from_dict(ctx, {(1, 0): 1})  # x = 0
    line2 = BiPoly.from_dict(ctx, {(0, 1): 1})  # y = 0
    assert intersection_multiplicity(line1, line2, (ctx.zero, ctx.zero)) == 1
    # a conic tangent to a line: multiplicity 2
    conic = BiPoly.from_dict(ctx, {(0, 1): 1, (2, 0): -1})  # y = x^2
    tangent = BiPoly.from_dict(ctx, {(0, 1): 1})
    assert intersection_multiplicity(conic, tangent, (ctx.zero, ctx.zero)) == 2
    # cuspidal cubic against the tangent line: multiplicity 3
    cusp = BiPoly.from_dict(ctx, {(0, 2): 1, (3, 0): -1})  # y^2 = x^3
    assert intersection_multiplicity(cusp, tangent, (ctx.zero, ctx.zero)) == 3


def test_intersection_multiplicity_rejects_common_component():
    ctx = FieldCtx(5)
    f = BiPoly.from_dict(ctx, {(1, 0): 1, (0, 1): 1})
    g = BiPoly.from_dict(ctx, {(2, 0): 1, (1, 1): 2, (0, 2): 1})  # (x+y)^2
    with pytest.raises(CommonComponentError):
        intersection_multiplicity(f, g, (ctx.zero, ctx.zero))


def test_translation_preserves_multiplicity():
    ctx = FieldCtx(11)
    conic = BiPoly.from_dict(ctx, {(0, 1): 1, (2, 0): -1})
    tangent = BiPoly.from_dict(ctx, {(0, 1): 1})
    a = ctx.elem(4)
    shifted_conic = conic.translate(a, ctx.zero)
    shifted_tangent = tangent.translate(a, ctx.zero)
    assert intersection_multiplicity(shifted_conic, shifted_tangent, (-a, ctx.zero)) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=6),
       st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=6))
def test_gcd_divides_both(ca, cb):
    ctx = FieldCtx(7)
    f = UniPoly.from_ints(ctx, ca)
    g = UniPoly.from_ints(ctx, cb)
    if f.is_zero() or g.is_zero():
        return
    d = f.gcd(g)
    _, rf = f.divmod(d)
    _, rg = g.divmod(d)
    assert rf.is_zero() and rg.is_zero()
