"""Curve models, point counting, L-polynomials and Cartier matrices.

All models live over a FieldCtx; point counts over extension fields go
through the vectorized kernels in fastcount when the field is large and
through plain loops when it is small.  L-polynomials are reconstructed
from exact point counts by Newton's identities and carry Weil-bound and
functional-equation assertions.
"""

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from math import comb, gcd as int_gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import fastcount as fc
from . import poly as P
from .field import (
    FieldCtx,
    FieldElem,
    embed,
    make_extension,
    nth_root_count,
    quadratic_character,
)

_SMALL_FIELD = 4096  # below this, count with plain loops


class BudgetExceeded(Exception):
    """A point count would exceed the configured operation budget."""


@dataclass
class Config:
    counting_budget: int = 200_000_000
    max_extension: int = 8
    jobs: int = 1
    seed: int = 0


# monomial order for plane quartics: x-degree descending, then y descending
QUARTIC_MONOMIALS: Tuple[Tuple[int, int, int], ...] = tuple(
    (i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)
)


@dataclass(frozen=True)
class EllipticLegendre:
    """y^2 = x (x - 1) (x - lam)."""

    ctx: FieldCtx
    lam: FieldElem
    genus = 1
    cost_factor = 3

    def __post_init__(self):
        if self.lam.is_zero() or self.lam == self.ctx.one:
            raise ValueError("Legendre parameter must avoid 0 and 1")

    def rhs_coeffs(self) -> List[FieldElem]:
        one = self.ctx.one
        lam = self.lam
        return [self.ctx.zero, lam, -(lam + one), one]

    def describe(self) -> dict:
        return {"model": "elliptic_legendre", "lambda": self.lam.to_str()}


@dataclass(frozen=True)
class EllipticWeierstrass:
    """y^2 = f(x) with f of degree 3 or 4, squarefree."""

    ctx: FieldCtx
    rhs: Tuple[FieldElem, ...]
    genus = 1
    cost_factor = 3

    def __post_init__(self):
        f = P.UniPoly(self.ctx, list(self.rhs))
        if f.degree not in (3, 4):
            raise ValueError("right side must have degree 3 or 4")
        if f.gcd(f.derivative()).degree != 0:
            raise ValueError("right side must be squarefree")

    def rhs_coeffs(self) -> List[FieldElem]:
        return list(self.rhs)

    def describe(self) -> dict:
        return {
            "model": "elliptic_weierstrass",
            "rhs": [c.to_str() for c in self.rhs],
        }


@dataclass(frozen=True)
class HyperellipticSextic:
    """y^2 = d(x) with d squarefree of degree 5 or 6: genus 2."""

    ctx: FieldCtx
    d: Tuple[FieldElem, ...]
    genus = 2
    cost_factor = 3

    def __post_init__(self):
        f = P.UniPoly(self.ctx, list(self.d))
        if f.degree not in (5, 6):
            raise ValueError("defining sextic must have degree 5 or 6")
        if f.gcd(f.derivative()).degree != 0:
            raise ValueError("defining polynomial must be squarefree")

    def rhs_coeffs(self) -> List[FieldElem]:
        return list(self.d)

    def describe(self) -> dict:
        return {"model": "hyperelliptic_sextic", "d": [c.to_str() for c in self.d]}


@dataclass(frozen=True)
class PlaneQuartic:
    """Projective plane quartic, 15 coefficients in QUARTIC_MONOMIALS order."""

    ctx: FieldCtx
    coeffs: Tuple[FieldElem, ...]
    genus = 3
    cost_factor = 80

    def __post_init__(self):
        if len(self.coeffs) != 15:
            raise ValueError("a plane quartic has 15 coefficients")
        if all(c.is_zero() for c in self.coeffs):
            raise ValueError("zero form")

    def coeff_dict(self) -> Dict[Tuple[int, int, int], FieldElem]:
        return {m: c for m, c in zip(QUARTIC_MONOMIALS, self.coeffs)}

    def eval(self, x: FieldElem, y: FieldElem, z: FieldElem) -> FieldElem:
        tgt = x.ctx
        acc = tgt.zero
        for (i, j, l), c in zip(QUARTIC_MONOMIALS, self.coeffs):
            if c.is_zero():
                continue
            acc = acc + embed(c, tgt) * x ** i * y ** j * z ** l
        return acc

    def partial(self, var: int) -> Dict[Tuple[int, int, int], FieldElem]:
        out: Dict[Tuple[int, int, int], FieldElem] = {}
        for m, c in zip(QUARTIC_MONOMIALS, self.coeffs):
            e = m[var]
            if e == 0 or c.is_zero():
                continue
            nm = list(m)
            nm[var] = e - 1
            cc = c * e
            if not cc.is_zero():
                out[tuple(nm)] = cc
        return out

    def describe(self) -> dict:
        return {
            "model": "plane_quartic",
            "coeffs": [c.to_str() for c in self.coeffs],
        }


@dataclass(frozen=True)
class SuperellipticM8:
    """y^4 = x^2 (x - 1)^2 (x - t1)(x - t2): genus 3."""

    ctx: FieldCtx
    t1: FieldElem
    t2: FieldElem
    genus = 3
    cost_factor = 60

    def __post_init__(self):
        one = self.ctx.one
        for t in (self.t1, self.t2):
            if t.is_zero() or t == one:
                raise ValueError("parameters must avoid 0 and 1")
        if self.t1 == self.t2:
            raise ValueError("parameters must be distinct")

    def rhs_coeffs(self) -> List[FieldElem]:
        ctx = self.ctx
        x = P.UniPoly.x(ctx)
        one = P.UniPoly.one(ctx)
        f = (x * x) * ((x - one) * (x - one)) * (x - P.UniPoly.constant(self.t1)) * (
            x - P.UniPoly.constant(self.t2)
        )
        return [f.coeff(i) for i in range(7)]

    def describe(self) -> dict:
        return {
            "model": "superelliptic_m8",
            "t1": self.t1.to_str(),
            "t2": self.t2.to_str(),
        }


@dataclass(frozen=True)
class Genus5Pullback:
    """u^4 = (w^2 - 1)^2 (w^2 - t1)(w^2 - t2): genus 5."""

    ctx: FieldCtx
    t1: FieldElem
    t2: FieldElem
    genus = 5
    cost_factor = 60

    def __post_init__(self):
        one = self.ctx.one
        for t in (self.t1, self.t2):
            if t.is_zero() or t == one:
                raise ValueError("parameters must avoid 0 and 1")
        if self.t1 == self.t2:
            raise ValueError("parameters must be distinct")

    def rhs_coeffs(self) -> List[FieldElem]:
        ctx = self.ctx
        x = P.UniPoly.x(ctx)
        one = P.UniPoly.one(ctx)
        w2 = x * x
        f = (w2 - one) * (w2 - one) * (w2 - P.UniPoly.constant(self.t1)) * (
            w2 - P.UniPoly.constant(self.t2)
        )
        return [f.coeff(i) for i in range(9)]

    def describe(self) -> dict:
        return {
            "model": "genus5_pullback",
            "t1": self.t1.to_str(),
            "t2": self.t2.to_str(),
        }


def counting_field(model, ext: int) -> FieldCtx:
    base = model.ctx
    if ext == 1:
        return base
    return make_extension(base.p, base.k * ext)


def count_cost(model, ext: int) -> int:
    return counting_field(model, ext).q * model.cost_factor


def count_points(model, ext: int = 1, budget: Optional[int] = None) -> int:
    """Number of points of the smooth projective model over F_{q^ext}."""
    if budget is not None and count_cost(model, ext) > budget:
        raise BudgetExceeded(
            f"count over extension {ext} needs ~{count_cost(model, ext)} ops"
        )
    Fc = counting_field(model, ext)
    if isinstance(model, (EllipticLegendre, EllipticWeierstrass, HyperellipticSextic)):
        return _count_hyperelliptic(model, Fc)
    if isinstance(model, PlaneQuartic):
        return _count_plane_quartic(model, Fc)
    if isinstance(model, SuperellipticM8):
        return _count_m8(model, Fc)
    if isinstance(model, Genus5Pullback):
        return _count_pullback(model, Fc)
    raise TypeError(f"unsupported model {type(model)}")


def _embed_coeffs(coeffs, Fc: FieldCtx) -> List[FieldElem]:
    return [embed(c, Fc) for c in coeffs]


def _count_hyperelliptic(model, Fc: FieldCtx) -> int:
    cs = _embed_coeffs(model.rhs_coeffs(), Fc)
    f = P.UniPoly(Fc, cs)
    deg = f.degree
    if Fc.q <= _SMALL_FIELD:
        affine = 0
        for x in Fc.elements():
            affine += nth_root_count(f.eval(x), 2)
    else:
        affine = fc.affine_hyperelliptic_count(Fc, cs)
    if deg in (3, 5):
        inf = 1
    else:
        inf = 2 if quadratic_character(f.lc) == 1 else 0
    return affine + inf


def _count_m8(model, Fc: FieldCtx) -> int:
    t1 = embed(model.t1, Fc)
    t2 = embed(model.t2, Fc)
    one = Fc.one
    cs = _embed_coeffs(model.rhs_coeffs(), Fc)
    if Fc.q <= _SMALL_FIELD:
        f = P.UniPoly(Fc, cs)
        raw = sum(nth_root_count(f.eval(x), 4) for x in Fc.elements())
    else:
        raw = fc.affine_superelliptic_count(Fc, cs, 4)
    # the raw sum counted 1 point over each of x = 0, 1, t1, t2
    r0 = 2 if quadratic_character(t1 * t2) == 1 else 0
    r1 = 2 if quadratic_character((one - t1) * (one - t2)) == 1 else 0
    return raw - 4 + r0 + r1 + 1 + 1 + 2


def _count_pullback(model, Fc: FieldCtx) -> int:
    t1 = embed(model.t1, Fc)
    t2 = embed(model.t2, Fc)
    one = Fc.one
    cs = _embed_coeffs(model.rhs_coeffs(), Fc)
    if Fc.q <= _SMALL_FIELD:
        f = P.UniPoly(Fc, cs)
        raw = sum(nth_root_count(f.eval(x), 4) for x in Fc.elements())
    else:
        raw = fc.affine_superelliptic_count(Fc, cs, 4)
    sq1 = quadratic_character(t1) == 1
    sq2 = quadratic_character(t2) == 1
    zeros = 2 + (2 if sq1 else 0) + (2 if sq2 else 0)
    r1 = 2 if quadratic_character((one - t1) * (one - t2)) == 1 else 0
    special = 2 * r1 + (2 if sq1 else 0) + (2 if sq2 else 0)
    inf = int_gcd(4, Fc.q - 1)
    return raw - zeros + special + inf


def _quartic_nondegenerate(model: PlaneQuartic) -> PlaneQuartic:
    """A linear change of coordinates so that (0:1:0) is off the curve."""
    ctx = model.ctx
    if not model.eval(ctx.zero, ctx.one, ctx.zero).is_zero():
        return model

    def point_scan():
        yield (ctx.zero, ctx.zero, ctx.one)
        for b in range(ctx.q):
            yield (ctx.zero, ctx.one, ctx.from_index(b))
        for a in range(ctx.q):
            for b in range(ctx.q):
                yield (ctx.one, ctx.from_index(a), ctx.from_index(b))

    cand = next((pt for pt in point_scan() if not model.eval(*pt).is_zero()), None)
    if cand is None:
        raise ValueError("quartic vanishes on the whole plane")
    basis = [
        (ctx.one, ctx.zero, ctx.zero),
        (ctx.zero, ctx.one, ctx.zero),
        (ctx.zero, ctx.zero, ctx.one),
    ]
    chosen = []
    for b in basis:
        trial = [list(cand)] + [list(c) for c in chosen] + [list(b)]
        if _rank3(trial, ctx) == len(trial):
            chosen.append(b)
        if len(chosen) == 2:
            break
    cols = [list(chosen[0]), list(cand), list(chosen[1])]
    return _transform_quartic(model, cols)


def _rank3(rows, ctx: FieldCtx) -> int:
    M = [row[:] for row in rows]
    r = 0
    for c in range(3):
        piv = next((i for i in range(r, len(M)) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and not M[i][c].is_zero():
                M[i] = [a - M[i][c] * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def _transform_quartic(model: PlaneQuartic, cols) -> PlaneQuartic:
    """Quartic F(T v) where T has the given columns (each a length-3 list)."""
    ctx = model.ctx
    # symbolic expansion: substitute x -> c0[0] X + c1[0] Y + c2[0] Z etc.
    from itertools import product

    new = {m: ctx.zero for m in QUARTIC_MONOMIALS}
    lin = [
        [cols[j][i] for j in range(3)] for i in range(3)
    ]  # lin[i][j]: coefficient of new var j in old var i
    for m, c in zip(QUARTIC_MONOMIALS, model.coeffs):
        if c.is_zero():
            continue
        terms = {(0, 0, 0): c}
        for var in range(3):
            for _ in range(m[var]):
                nxt: Dict[Tuple[int, int, int], FieldElem] = {}
                for e, v in terms.items():
                    for j in range(3):
                        if lin[var][j].is_zero():
                            continue
                        ne = list(e)
                        ne[j] += 1
                        ne = tuple(ne)
                        nxt[ne] = nxt.get(ne, ctx.zero) + v * lin[var][j]
                terms = nxt
        for e, v in terms.items():
            new[e] = new[e] + v
    return PlaneQuartic(ctx, tuple(new[m] for m in QUARTIC_MONOMIALS))


def _count_plane_quartic(model: PlaneQuartic, Fc: FieldCtx) -> int:
    work = _quartic_nondegenerate(model)
    cd = work.coeff_dict()
    # affine chart z = 1: F(x, y, 1) = sum_j a_j(x) y^j
    rows: List[List[FieldElem]] = []
    for j in range(5):
        row = [Fc.zero] * (5 - j)
        for (i, jj, l), c in cd.items():
            if jj == j and not c.is_zero():
                row[i] = row[i] + embed(c, Fc)
        while len(row) > 1 and row[-1].is_zero():
            row.pop()
        rows.append(row)
    if Fc.q <= 400:
        affine = 0
        for x in Fc.elements():
            vals = [
                sum((row[i] * x ** i for i in range(len(row))), Fc.zero)
                for row in rows
            ]
            fX = P.UniPoly(Fc, vals)
            if fX.is_zero():
                affine += Fc.q
            else:
                affine += len(P.roots(fX))
    else:
        affine = fc.plane_quartic_affine_rootcount(Fc, rows)
    # line z = 0: points [x:1:0] and possibly [1:0:0]
    lin = [Fc.zero] * 5
    for (i, j, l), c in cd.items():
        if l == 0:
            lin[i] = lin[i] + embed(c, Fc)
    linf = P.UniPoly(Fc, lin)
    if linf.is_zero():
        at_inf = Fc.q + 1
    else:
        at_inf = len(P.roots(linf))
        if linf.degree < 4:  # F(1, 0, 0) = 0, i.e. coefficient of x^4 vanishes
            at_inf += 1
    return affine + at_inf


@dataclass(frozen=True)
class LPolynomial:
    """L(T) with integer coefficients c_0 = 1, ..., c_2g; over F_q, q = p^a."""

    coeffs: Tuple[int, ...]
    q: int
    p: int
    a: int
    g: int

    def power_sums(self, upto: int) -> List[int]:
        """s_k = sum of alpha_j^k over the 2g inverse roots, k = 1..upto."""
        c = list(self.coeffs) + [0] * (2 * self.g + 1 - len(self.coeffs))
        e = [(-1) ** i * c[i] for i in range(2 * self.g + 1)]
        s: List[int] = []
        for k in range(1, upto + 1):
            acc = 0
            for i in range(1, min(k, 2 * self.g) + 1):
                acc += (-1) ** (i - 1) * e[i] * (s[k - i - 1] if k - i >= 1 else k)
            # Newton: s_k = e_1 s_{k-1} - e_2 s_{k-2} + ... + (-1)^{k-1} k e_k
            s.append(acc)
        return s

    def predicted_count(self, ext: int) -> int:
        s = self.power_sums(ext)
        return self.q ** ext + 1 - s[ext - 1]

    def base_change(self, m: int) -> "LPolynomial":
        """L-polynomial over F_{q^m} (inverse roots raised to the m-th power)."""
        s = self.power_sums(2 * self.g * m)
        sm = [s[m * k - 1] for k in range(1, 2 * self.g + 1)]
        e = [1]
        for k in range(1, 2 * self.g + 1):
            acc = 0
            for i in range(1, k + 1):
                acc += (-1) ** (i - 1) * e[k - i] * sm[i - 1]
            assert acc % k == 0
            e.append(acc // k)
        coeffs = tuple((-1) ** i * e[i] for i in range(2 * self.g + 1))
        return LPolynomial(coeffs, self.q ** m, self.p, self.a * m, self.g)


def lpolynomial_from_counts(counts: Sequence[int], q: int, p: int, a: int, g: int) -> LPolynomial:
    """Reconstruct L from N_1..N_g; asserts Weil bounds and integrality."""
    if len(counts) < g:
        raise ValueError("need g point counts")
    s = [q ** k + 1 - counts[k - 1] for k in range(1, g + 1)]
    e = [1]
    for k in range(1, g + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i - 1]
        if acc % k != 0:
            raise ValueError("point counts are inconsistent (Newton identity)")
        e.append(acc // k)
    c = [(-1) ** i * e[i] for i in range(g + 1)]
    full = c + [0] * g
    for i in range(g - 1, -1, -1):
        full[2 * g - i] = q ** (g - i) * c[i]
    L = LPolynomial(tuple(full), q, p, a, g)
    _assert_weil(L)
    for k, n in enumerate(counts, start=1):
        if L.predicted_count(k) != n:
            raise ValueError("L-polynomial does not reproduce its counts")
    return L


def _assert_weil(L: LPolynomial):
    for i, ci in enumerate(L.coeffs):
        if ci * ci > comb(2 * L.g, i) ** 2 * L.q ** i:
            raise ValueError(f"coefficient {i} violates the Weil bound: {ci}")
    # next few counts must be nonnegative
    for k in range(1, 2 * L.g + 2):
        n = L.predicted_count(k)
        if n < 0:
            raise ValueError(f"predicted count over extension {k} is negative: {n}")


def lpolynomial(model, budget: Optional[int] = None) -> LPolynomial:
    g = model.genus
    q = model.ctx.q
    counts = [count_points(model, e, budget) for e in range(1, g + 1)]
    return lpolynomial_from_counts(counts, q, model.ctx.p, model.ctx.k, g)


def newton_polygon(L: LPolynomial) -> List[Tuple[Fraction, int]]:
    """Slopes of the p-adic Newton polygon, normalized so q has valuation 1.

    Returns [(slope, multiplicity)] with multiplicities summing to 2g.
    """
    pts = []
    for i, c in enumerate(L.coeffs):
        if c == 0:
            continue
        v = 0
        cc = abs(c)
        while cc % L.p == 0:
            v += 1
            cc //= L.p
        pts.append((i, Fraction(v, L.a)))
    # lower convex hull from (0, 0)
    hull = [pts[0]]
    for pt in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out: List[Tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        mult = x2 - x1
        if out and out[-1][0] == slope:
            out[-1] = (slope, out[-1][1] + mult)
        else:
            out.append((slope, mult))
    return out


def is_supersingular(L: LPolynomial) -> bool:
    return all(s == Fraction(1, 2) for s, _ in newton_polygon(L))


# --- Cartier-Manin matrices ---


def cartier_matrix_hyperelliptic(model) -> List[List[FieldElem]]:
    """g x g matrix M[i][j] = coeff of x^(p(i+1) - (j+1)) in f^((p-1)/2)."""
    ctx = model.ctx
    p = ctx.p
    f = P.UniPoly(ctx, model.rhs_coeffs())
    g = model.genus
    h = P.UniPoly.one(ctx)
    e = (p - 1) // 2
    base = f
    ee = e
    while ee:
        if ee & 1:
            h = h * base
        ee >>= 1
        if ee:
            base = base * base
    return [[h.coeff(p * (i + 1) - (j + 1)) for j in range(g)] for i in range(g)]


def cartier_matrix_plane_quartic(model: PlaneQuartic) -> List[List[FieldElem]]:
    """3 x 3 matrix from the coefficients of F^(p-1).

    Entry (k, l) is the coefficient of the monomial with exponent vector
    p * (e_l + 1) - (e_k + 1), where e_1, e_2, e_3 are the exponent vectors
    of x, y, z.  The convention is pinned by the p-rank oracle tests.
    """
    import numpy as np

    ctx = model.ctx
    if ctx.k != 1:
        return _cartier_quartic_generic(model)
    p = ctx.p
    n = 4 * (p - 1) + 1
    base = np.zeros((5, 5), dtype=np.int64)
    for (i, j, l), c in zip(QUARTIC_MONOMIALS, model.coeffs):
        base[i, j] = c.coeffs[0]
    h = _conv2_pow_mod(base, p - 1, p)
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    M = []
    for kk in range(3):
        row = []
        ek = basis[kk]
        for ll in range(3):
            el = basis[ll]
            ei = p * (el[0] + 1) - (ek[0] + 1)
            ej = p * (el[1] + 1) - (ek[1] + 1)
            if 0 <= ei < h.shape[0] and 0 <= ej < h.shape[1]:
                row.append(ctx.elem(int(h[ei, ej])))
            else:
                row.append(ctx.zero)
        M.append(row)
    return M


def _conv2_mod(a, b, p):
    """Exact 2D convolution mod p via FFT, checked by a random evaluation."""
    import numpy as np

    n0 = a.shape[0] + b.shape[0] - 1
    n1 = a.shape[1] + b.shape[1] - 1
    fa = np.fft.rfft2(a, s=(n0, n1))
    fb = np.fft.rfft2(b, s=(n0, n1))
    c = np.fft.irfft2(fa * fb, s=(n0, n1))
    c = np.rint(c).astype(np.int64) % p
    # verify via the evaluation homomorphism at a fixed point
    x0, y0 = 2 % p or 1, 3 % p or 1
    def ev(m):
        acc = 0
        for i in range(m.shape[0]):
            rowv = 0
            for j in range(m.shape[1] - 1, -1, -1):
                rowv = (rowv * y0 + int(m[i, j])) % p
            acc = (acc + rowv * pow(x0, i, p)) % p
        return acc
    if (ev(a) * ev(b)) % p != ev(c):
        raise RuntimeError("fft convolution failed the exactness check")
    return c


def _conv2_pow_mod(base, e, p):
    import numpy as np

    result = np.zeros((1, 1), dtype=np.int64)
    result[0, 0] = 1
    b = base % p
    while e:
        if e & 1:
            result = _conv2_mod(result, b, p)
        e >>= 1
        if e:
            b = _conv2_mod(b, b, p)
    return result


def _cartier_quartic_generic(model: PlaneQuartic) -> List[List[FieldElem]]:
    ctx = model.ctx
    p = ctx.p
    h: Dict[Tuple[int, int], FieldElem] = {(0, 0): ctx.one}
    base = {}
    for (i, j, l), c in zip(QUARTIC_MONOMIALS, model.coeffs):
        if not c.is_zero():
            base[(i, j)] = c

    def mul(u, v):
        out: Dict[Tuple[int, int], FieldElem] = {}
        for (i1, j1), c1 in u.items():
            for (i2, j2), c2 in v.items():
                key = (i1 + i2, j1 + j2)
                cur = out.get(key, ctx.zero) + c1 * c2
                if cur.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = cur
        return out

    e = p - 1
    b = base
    while e:
        if e & 1:
            h = mul(h, b)
        e >>= 1
        if e:
            b = mul(b, b)
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    M = []
    for kk in range(3):
        row = []
        for ll in range(3):
            ei = p * (basis[ll][0] + 1) - (basis[kk][0] + 1)
            ej = p * (basis[ll][1] + 1) - (basis[kk][1] + 1)
            row.append(h.get((ei, ej), ctx.zero))
        M.append(row)
    return M


def mat_rank(M: List[List[FieldElem]], ctx: FieldCtx) -> int:
    rows = [row[:] for row in M]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    rank = 0
    for c in range(m):
        piv = next((r for r in range(rank, n) if not rows[r][c].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(n):
            if r != rank and not rows[r][c].is_zero():
                fac = rows[r][c]
                rows[r] = [a - fac * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def mat_mul(A, B, ctx: FieldCtx):
    n = len(A)
    m = len(B[0])
    inner = len(B)
    return [
        [
            sum((A[i][k] * B[k][j] for k in range(inner)), ctx.zero)
            for j in range(m)
        ]
        for i in range(n)
    ]


def mat_sigma(M, e: int):
    return [[c ** e for c in row] for row in M]


def p_rank(M: List[List[FieldElem]], ctx: FieldCtx, g: Optional[int] = None) -> int:
    """Stable rank of the sigma-twisted g-fold product M M^(p) ... M^(p^(g-1))."""
    if g is None:
        g = len(M)
    prod = M
    for i in range(1, g):
        prod = mat_mul(prod, mat_sigma(M, ctx.p ** i), ctx)
    return mat_rank(prod, ctx)


# --- smoothness of plane quartics ---


def smoothness_check(model: PlaneQuartic, max_extension: int = 12):
    """(is_smooth, witnesses): witnesses are ((x, y, z), ctx) singular points."""
    ctx = model.ctx
    partials = [model.partial(v) for v in range(3)]
    nz = [d for d in partials if d]
    if not nz:
        # F is a p-th power: every curve point is singular
        w = _any_curve_point(model, max_extension)
        return False, [w] if w else []
    witnesses = []
    witnesses.extend(_sing_affine_chart(model, partials, max_extension))
    if not witnesses:
        witnesses.extend(_sing_line_at_infinity(model, partials, max_extension))
    return (len(witnesses) == 0), witnesses


def _partial_to_xy(d, ctx) -> List[P.UniPoly]:
    """Chart z = 1: list of y-coefficients, each a UniPoly in x."""
    maxj = max((j for (_i, j, _l) in d), default=0)
    rows = [dict() for _ in range(maxj + 1)]
    for (i, j, _l), c in d.items():
        rows[j][i] = rows[j].get(i, ctx.zero) + c
    out = []
    for row in rows:
        deg = max(row) if row else 0
        out.append(P.UniPoly(ctx, [row.get(i, ctx.zero) for i in range(deg + 1)]))
    return out

def _sing_affine_chart(model, partials, max_extension):
    ctx = model.ctx
    charts = [_partial_to_xy(d, ctx) if d else [] for d in partials]
    live = [c for c in charts if c and any(not u.is_zero() for u in c)]
    R = P.UniPoly.zero(ctx)
    from itertools import combinations

    for c1, c2 in combinations(live, 2):
        R = P.sylvester_resultant_poly(c1, c2)
        if not R.is_zero():
            break
    witnesses = []
    if not R.is_zero():
        for x0, ctxd in P.roots_in_extension(R, max_extension):
            d = ctxd.k // ctx.k
            evals = []
            for chart in charts:
                if not chart:
                    evals.append(P.UniPoly.zero(ctxd))
                else:
                    evals.append(P.UniPoly(ctxd, [u.eval(x0) for u in chart]))
            nzev = [e for e in evals if not e.is_zero()]
            if not nzev:
                witnesses.append(((x0, ctxd.zero, ctxd.one), ctxd))
                continue
            g = nzev[0]
            for u in nzev[1:]:
                g = g.gcd(u)
            if g.degree <= 0:
                continue
            inner = max(1, max_extension // d)
            for y0, ctxe in P.roots_in_extension(g, inner):
                witnesses.append(((embed(x0, ctxe), y0, ctxe.one), ctxe))
        return witnesses
    # all partial pairs share a factor (or only one partial is nonzero):
    # fall back to a bounded brute scan of projective points
    for d in range(1, 4):
        ctxd = make_extension(ctx.p, ctx.k * d) if d > 1 else ctx
        if ctxd.q > _SMALL_FIELD:
            break
        found = []
        pts = [(x0, y0, ctxd.one) for x0 in ctxd.elements() for y0 in ctxd.elements()]
        pts += [(x0, ctxd.one, ctxd.zero) for x0 in ctxd.elements()]
        pts.append((ctxd.one, ctxd.zero, ctxd.zero))
        for pt in pts:
            ok = True
            for d3 in partials:
                val = ctxd.zero
                for (i, j, l), c in d3.items():
                    val = val + embed(c, ctxd) * pt[0] ** i * pt[1] ** j * pt[2] ** l
                if not val.is_zero():
                    ok = False
                    break
            if ok:
                found.append((pt, ctxd))
        if found:
            return found
    # a shared factor of two partials always meets the third one in P^2,
    # so a singular point exists but was not located within the scan bound
    raise RuntimeError("degenerate partials: smoothness undecided by the scan")


def _sing_line_at_infinity(model, partials, max_extension):
    ctx = model.ctx
    # points [x:1:0]: restrict partials to z = 0, y = 1
    uni = []
    for d in partials:
        row = {}
        for (i, j, l), c in d.items():
            if l == 0:
                row[i] = row.get(i, ctx.zero) + c
        deg = max(row) if row else 0
        uni.append(P.UniPoly(ctx, [row.get(i, ctx.zero) for i in range(deg + 1)]))
    nzu = [u for u in uni if not u.is_zero()]
    witnesses = []
    if not nzu:
        ctx1 = ctx
        witnesses.append(((ctx1.zero, ctx1.one, ctx1.zero), ctx1))
        return witnesses
    g = nzu[0]
    for u in nzu[1:]:
        g = g.gcd(u)
    if g.degree > 0:
        for x0, ctxd in P.roots_in_extension(g, max_extension):
            witnesses.append(((x0, ctxd.one, ctxd.zero), ctxd))
    # the point [1:0:0]
    pt = (ctx.one, ctx.zero, ctx.zero)
    if all(
        sum(
            (c for (i, j, l), c in d.items() if j == 0 and l == 0),
            ctx.zero,
        ).is_zero()
        for d in partials
    ):
        witnesses.append((pt, ctx))
    return witnesses


def _any_curve_point(model, max_extension):
    ctx = model.ctx
    for d in range(1, 4):
        ctxd = make_extension(ctx.p, ctx.k * d)
        if ctxd.q > _SMALL_FIELD:
            return None
        for x0 in ctxd.elements():
            for y0 in ctxd.elements():
                if model.eval(x0, y0, ctxd.one).is_zero():
                    return ((x0, y0, ctxd.one), ctxd)
    return None
