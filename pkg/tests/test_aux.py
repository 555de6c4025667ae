from fractions import Fraction

import pytest

from ss5 import auxcurves as A
from ss5 import curves as C
from ss5.field import FieldCtx, make_extension


def test_intersection_number_smallest_prime():
    r = A.heuristic_intersection_number(3)
    assert r.f1 == 16
    assert r.f2 == 8320
    assert r.N_p == Fraction(26, 9)


def test_intersection_number_routes_agree_below_100():
    for p in range(2, 100):
        A.heuristic_intersection_number(p)  # the internal assert is the test


def test_intersection_number_growth_rate():
    r = A.heuristic_intersection_number(97)
    ratio = r.N_p / 97 ** 12 * 46080
    assert abs(float(ratio) - 1.0) < 0.2


def test_bernoulli_values():
    assert A.bernoulli(2) == Fraction(1, 6)
    assert A.bernoulli(4) == Fraction(-1, 30)
    assert A.bernoulli(6) == Fraction(1, 42)
    assert A._zeta_neg(1) == Fraction(-1, 12)
    assert A._zeta_neg(3) == Fraction(1, 120)
    assert A._zeta_neg(5) == Fraction(-1, 252)


def test_condition_dimensions():
    assert A.condition_dimensions(3, 1) == (3, 2)
    assert A.condition_dimensions(2, 1) == (1, 1)
    assert A.condition_dimensions(3, 2) == (5, 2)
    lhs, rhs = A.condition_dimensions(10, 1)
    assert (lhs, rhs) == (17, 25)
    assert rhs > lhs  # the construction cannot work for g = 10
    with pytest.raises(ValueError):
        A.condition_dimensions(1, 1)
    with pytest.raises(ValueError):
        A.condition_dimensions(3, 5)


def test_genus3_cover_small_primes():
    for p in (7, 11, 23):
        cert = A.genus3_double_cover(p)
        assert cert.kind == "genus3"
        assert cert.hit_count > 0
        assert len(cert.components) == 2
        for slopes in cert.slope_lists():
            assert set(slopes) == {"1/2"}


def test_genus3_rejects_wrong_congruence():
    with pytest.raises(ValueError):
        A.genus3_double_cover(13)


def test_genus3_family_is_empty_in_characteristic_three():
    # the rank filter never vanishes: M = [[0, beta], [1, 0]] gives
    # M M^(3) = diag(beta, beta^3), so no member has p-rank 0
    for k in (1, 2, 3, 4):
        ctx = make_extension(3, k) if k > 1 else FieldCtx(3)
        one = ctx.one
        for i in range(ctx.q):
            beta = ctx.from_index(i)
            rhs = [ctx.zero, beta, ctx.zero, -(one + beta), ctx.zero, one]
            try:
                m = C.HyperellipticSextic(ctx, tuple(rhs))
            except ValueError:
                continue
            M = C.cartier_matrix_hyperelliptic(m)
            assert C.p_rank(M, ctx) > 0
    with pytest.raises(RuntimeError):
        A.genus3_double_cover(3)


def test_genus4_cover_small_primes():
    for p in (5, 11, 17):
        cert = A.genus4_branched_cover(p)
        assert cert.kind == "genus4"
        assert cert.hit_count > 0
        assert len(cert.components) == 3
        for slopes in cert.slope_lists():
            assert set(slopes) == {"1/2"}


def test_genus4_first_hit_at_p5_is_minus_one():
    cert = A.genus4_branched_cover(5)
    assert int(cert.parameter.coeffs[0]) == 4


def test_genus4_rejects_wrong_congruence():
    with pytest.raises(ValueError):
        A.genus4_branched_cover(7)
    with pytest.raises(ValueError):
        A.genus4_branched_cover(13)


def test_cube_curve_traces_vanish_for_good_primes():
    # y^2 = x^3 - 1 has zero Frobenius trace whenever p = 5 mod 6
    for p in range(5, 200):
        if p % 6 != 5:
            continue
        if any(p % d == 0 for d in range(2, p)):
            continue
        ctx = FieldCtx(p)
        e = C.EllipticWeierstrass(ctx, (ctx.elem(-1), ctx.zero, ctx.zero, ctx.one))
        assert C.count_points(e, 1) == p + 1
