"""Shared brute-force oracles for the test suite.

Everything here recomputes quantities by the most literal method
available (point-by-point enumeration, direct definitions) so the fast
library paths are checked against genuinely independent code.
"""

import random

from ss5 import curves as C
from ss5.field import FieldCtx, quadratic_character


def brute_count_hyperelliptic(rhs_coeffs, ctx) -> int:
    """Points of the smooth projective model of y^2 = f(x) over ctx."""
    from ss5.poly import UniPoly

    f = UniPoly(ctx, [c for c in rhs_coeffs]).map_coeffs(ctx)
    n = 0
    for x in ctx.elements():
        v = f.eval(x)
        if v.is_zero():
            n += 1
        elif quadratic_character(v) == 1:
            n += 2
    deg = f.degree
    if deg % 2 == 1:
        n += 1  # one branch point over infinity
    else:
        lc = f.coeff(deg)
        n += 2 if quadratic_character(lc) == 1 else 0
    return n


def brute_count_quartic(model, ctx) -> int:
    """Projective points of a plane quartic by chart enumeration."""
    n = 0
    one, zero = ctx.one, ctx.zero
    for y in ctx.elements():
        for z in ctx.elements():
            if model.eval(one, y, z).is_zero():
                n += 1
    for z in ctx.elements():
        if model.eval(zero, one, z).is_zero():
            n += 1
    if model.eval(zero, zero, one).is_zero():
        n += 1
    return n


def random_smooth_quartic(p: int, rng: random.Random) -> C.PlaneQuartic:
    ctx = FieldCtx(p)
    while True:
        coeffs = tuple(ctx.elem(rng.randrange(p)) for _ in range(15))
        try:
            model = C.PlaneQuartic(ctx, coeffs)
        except ValueError:
            continue
        smooth, _w = C.smoothness_check(model)
        if smooth:
            return model


def random_sextic(p: int, rng: random.Random) -> C.HyperellipticSextic:
    ctx = FieldCtx(p)
    while True:
        coeffs = [rng.randrange(p) for _ in range(6)] + [rng.randrange(1, p)]
        try:
            return C.HyperellipticSextic(ctx, tuple(ctx.elem(c) for c in coeffs))
        except ValueError:
            continue
