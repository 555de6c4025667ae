import random

import pytest
from hypothesis import given, settings, strategies as st

from ss5.field import (
    FieldCtx,
    embed,
    make_extension,
    nth_root_count,
    quadratic_character,
    sqrt,
)


def test_prime_field_arithmetic_matches_integers_mod_p():
    ctx = FieldCtx(13)
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.randrange(13), rng.randrange(13)
        x, y = ctx.elem(a), ctx.elem(b)
        assert (x + y).coeffs[0] == (a + b) % 13
        assert (x * y).coeffs[0] == (a * b) % 13
        assert (x - y).coeffs[0] == (a - b) % 13


def test_inverse_against_fermat():
    ctx = make_extension(7, 3)
    for i in range(1, 80):
        a = ctx.from_index(i)
        if a.is_zero():
            continue
        assert a.inverse() == a ** (ctx.q - 2)
        assert a * a.inverse() == ctx.one


def test_extension_modulus_is_deterministic():
    a = make_extension(11, 4)
    b = make_extension(11, 4)
    assert a.modulus == b.modulus
    # and it is the first irreducible in from_index order: no smaller monic
    # degree-4 polynomial is irreducible (spot-check against the library)
    from ss5.poly import UniPoly, factor

    cand = list(a.modulus)
    enc = sum(c * 11 ** i for i, c in enumerate(cand[:-1]))
    for smaller in range(enc):
        coeffs = []
        t = smaller
        for _ in range(4):
            coeffs.append(t % 11)
            t //= 11
        f = UniPoly.from_ints(a, coeffs + [1])
        fs = factor(f)
        assert not (len(fs) == 1 and fs[0][1] == 1 and fs[0][0].degree == 4)


def test_frobenius_is_field_automorphism():
    ctx = make_extension(5, 4)
    rng = random.Random(1)
    for _ in range(50):
        a = ctx.from_index(rng.randrange(ctx.q))
        b = ctx.from_index(rng.randrange(ctx.q))
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert a.frobenius() == a ** 5


def test_sqrt_squares_back_and_is_canonical():
    ctx = make_extension(7, 2)
    for i in range(ctx.q):
        a = ctx.from_index(i)
        r = sqrt(a)
        if r is None:
            assert quadratic_character(a) == -1
            continue
        assert r * r == a
        if not r.is_zero():
            assert r.encode() <= (-r).encode()


def test_quadratic_character_multiplicative():
    ctx = FieldCtx(19)
    rng = random.Random(2)
    for _ in range(100):
        a = ctx.elem(rng.randrange(1, 19))
        b = ctx.elem(rng.randrange(1, 19))
        assert quadratic_character(a * b) == quadratic_character(a) * quadratic_character(b)


def test_embed_is_ring_homomorphism():
    small = make_extension(3, 2)
    big = make_extension(3, 4)
    rng = random.Random(3)
    for _ in range(40):
        a = small.from_index(rng.randrange(small.q))
        b = small.from_index(rng.randrange(small.q))
        assert embed(a + b, big) == embed(a, big) + embed(b, big)
        assert embed(a * b, big) == embed(a, big) * embed(b, big)
    assert embed(small.one, big) == big.one


def test_nth_root_count_matches_exhaustive():
    ctx = FieldCtx(13)
    for i in range(1, 13):
        a = ctx.from_index(i)
        expected = sum(1 for j in range(13) if ctx.from_index(j) ** 4 == a)
        assert nth_root_count(a, 4) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=7 ** 3 - 1), st.integers(min_value=0, max_value=7 ** 3 - 1))
def test_encode_roundtrip_and_addition_commutes(i, j):
    ctx = make_extension(7, 3)
    a, b = ctx.from_index(i), ctx.from_index(j)
    assert ctx.from_index(a.encode()) == a
    assert a + b == b + a


def test_bad_context_rejected():
    with pytest.raises(ValueError):
        FieldCtx(4)
    with pytest.raises(ValueError):
        FieldCtx(7, 2)  # missing modulus
