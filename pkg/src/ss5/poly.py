"""Dense polynomial arithmetic over the finite fields of field.py.

UniPoly is a univariate polynomial with FieldElem coefficients.  BiPoly
is a dense bivariate polynomial backed by a numpy coefficient array.
Factorization uses squarefree / distinct-degree / Cantor-Zassenhaus
splitting with a deterministic seeded PRNG.
"""

import random
from math import gcd as int_gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .field import FieldCtx, FieldElem, make_extension, embed


class UniPoly:
    """Univariate polynomial; coeffs low degree first, no trailing zeros."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[FieldElem]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints: Sequence[int]) -> "UniPoly":
        return cls(ctx, [ctx.elem(c) for c in ints])

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.one])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def constant(cls, c: FieldElem) -> "UniPoly":
        return cls(c.ctx, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElem:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElem:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return UniPoly(self.ctx, [c * inv for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            self.ctx, [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __neg__(self):
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, FieldElem)):
            return UniPoly(self.ctx, [self.ctx.elem(other)])
        raise TypeError(f"cannot combine UniPoly with {type(other)}")

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = self.ctx.elem(other)
            return UniPoly(self.ctx, [a * c for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.ctx)
        r = [self.ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                r[i + j] = r[i + j] + a * b
        return UniPoly(self.ctx, r)

    __rmul__ = __mul__

    def mul_trunc(self, other: "UniPoly", n: int) -> "UniPoly":
        """Product truncated to degree < n."""
        r = [self.ctx.zero] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero() or i >= n:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                r[i + j] = r[i + j] + a * b
        return UniPoly(self.ctx, r)

    def shift(self, n: int) -> "UniPoly":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return UniPoly(self.ctx, [self.ctx.zero] * n + list(self.coeffs))

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        inv = other.lc.inverse()
        quot = [self.ctx.zero] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i] * inv
            if not c.is_zero():
                quot[i - d] = c
                for j in range(d + 1):
                    r[i - d + j] = r[i - d + j] - c * other.coeffs[j]
        return UniPoly(self.ctx, quot), UniPoly(self.ctx, r[:d])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def pow_mod(self, e: int, m: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.ctx)
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def eval(self, x: FieldElem) -> FieldElem:
        acc = x.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + embed(c, x.ctx) if c.ctx != x.ctx else acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(
            self.ctx,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
        )

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(c)
        return acc

    def reverse(self, degree: Optional[int] = None) -> "UniPoly":
        """x^degree * f(1/x); degree defaults to deg f."""
        d = self.degree if degree is None else degree
        cs = [self.coeff(d - i) for i in range(d + 1)]
        return UniPoly(self.ctx, cs)

    def map_coeffs(self, target: FieldCtx) -> "UniPoly":
        return UniPoly(target, [embed(c, target) for c in self.coeffs])

    def to_ints(self) -> List:
        """Coefficient vectors as int tuples (length k each)."""
        return [tuple(c.coeffs) for c in self.coeffs]

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = c.to_str() if self.ctx.k > 1 else str(c.coeffs[0])
            if self.ctx.k > 1:
                cs = "(" + cs + ")"
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*x")
            else:
                parts.append(f"{cs}*x^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.to_text()} over {self.ctx!r})"


def squarefree_decomposition(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """[(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i monic squarefree coprime."""
    ctx = f.ctx
    p = ctx.p
    f = f.monic()
    out = []

    def pth_root(g: UniPoly) -> UniPoly:
        # g is a polynomial in x^p; take the p-th root coefficientwise
        e = p ** (ctx.k - 1)  # c^(p^(k-1)) is the p-th root of c in F_{p^k}
        cs = [g.coeff(i * p) ** e for i in range(g.degree // p + 1)]
        return UniPoly(ctx, cs)

    def rec(g: UniPoly, mult: int):
        if g.degree <= 0:
            return
        dg = g.derivative()
        if dg.is_zero():
            rec(pth_root(g), mult * p)
            return
        c = g.gcd(dg)
        w = g // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), mult * i))
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            rec(pth_root(c), mult * p)

    rec(f, 1)
    out.sort(key=lambda t: (t[1], t[0].degree, [c.encode() for c in t[0].coeffs]))
    return out


def _ddf(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Distinct-degree factorization of monic squarefree f: [(product, d)]."""
    ctx = f.ctx
    q = ctx.q
    out = []
    x = UniPoly.x(ctx)
    h = x % f
    v = f
    d = 0
    while v.degree > 2 * d + 1:
        d += 1
        h = h.pow_mod(q, v)
        g = v.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            v = v // g
            h = h % v
    if v.degree > 0:
        out.append((v, v.degree))
    return out


def _edf(f: UniPoly, d: int, rng: random.Random) -> List[UniPoly]:
    """Split monic squarefree f, all of whose factors have degree d."""
    ctx = f.ctx
    q = ctx.q
    n = f.degree
    if n == d:
        return [f]
    pieces = [f]
    done: List[UniPoly] = []
    e = (q ** d - 1) // 2
    while pieces:
        g = pieces.pop()
        if g.degree == d:
            done.append(g)
            continue
        r = UniPoly(
            ctx, [ctx.from_index(rng.randrange(q)) for _ in range(g.degree)]
        )
        if r.is_zero():
            pieces.append(g)
            continue
        h = r.pow_mod(e, g) - UniPoly.one(ctx)
        w = g.gcd(h)
        if 0 < w.degree < g.degree:
            pieces.append(w)
            pieces.append(g // w)
        else:
            pieces.append(g)
    return done


def _poly_seed(f: UniPoly, seed: int) -> int:
    data = (f.ctx.p, f.ctx.k, tuple(tuple(c.coeffs) for c in f.coeffs), seed)
    return hash(data) & 0x7FFFFFFF


def factor(f: UniPoly, seed: int = 0) -> List[Tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, deterministically ordered."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(_poly_seed(f, seed))
    out = []
    for g, m in squarefree_decomposition(f):
        for prod, d in _ddf(g):
            for irr in _edf(prod, d, rng):
                out.append((irr.monic(), m))
    out.sort(key=lambda t: (t[0].degree, [c.encode() for c in t[0].coeffs], t[1]))
    return out


def roots(f: UniPoly, seed: int = 0) -> List[FieldElem]:
    """Distinct roots of f in its own coefficient field, sorted by encoding."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    ctx = f.ctx
    if f.degree == 0:
        return []
    x = UniPoly.x(ctx)
    h = x.pow_mod(ctx.q, f)
    g = f.gcd(h - x)
    if g.degree == 0:
        return []
    rng = random.Random(_poly_seed(f, seed) ^ 0x5EED)
    linear = _edf(g.monic(), 1, rng)
    rs = [-(l.coeff(0)) * l.coeff(1).inverse() for l in linear]
    rs.sort(key=lambda r: r.encode())
    return rs


def roots_in_extension(
    f: UniPoly, max_degree: int, seed: int = 0
) -> List[Tuple[FieldElem, FieldCtx]]:
    """Canonical roots of f in extensions of degree <= max_degree.

    For each irreducible factor of degree d <= max_degree, returns the root
    with the smallest encoding in the absolute field F_{p^{k*d}}, paired
    with that field.  Results sorted by (d, encoding).
    """
    ctx = f.ctx
    out = []
    for g, _m in factor(f, seed):
        d = g.degree
        if d > max_degree:
            continue
        target = make_extension(ctx.p, ctx.k * d)
        gt = g.map_coeffs(target)
        rs = roots(gt, seed)
        if not rs:
            raise RuntimeError("irreducible factor has no root in its splitting field")
        out.append((rs[0], target))
    out.sort(key=lambda t: (t[1].k, t[0].encode()))
    return out


def power_product_coeff(
    factors: Sequence[Tuple[UniPoly, int]], target: int
) -> FieldElem:
    """Coefficient of x^target in prod f_i^{e_i}, by truncated products."""
    if not factors:
        raise ValueError("empty product")
    ctx = factors[0][0].ctx
    n = target + 1
    acc = UniPoly.one(ctx)
    for f, e in factors:
        base = f
        ee = e
        while ee:
            if ee & 1:
                acc = acc.mul_trunc(base, n)
            ee >>= 1
            if ee:
                base = base.mul_trunc(base, n)
    return acc.coeff(target)


def resultant(f: UniPoly, g: UniPoly) -> FieldElem:
    """Resultant of two polynomials over a field, by the Euclidean PRS."""
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        return ctx.zero
    res = ctx.one
    a, b = f, g
    while b.degree > 0:
        r = a % b
        if r.is_zero():
            return ctx.zero
        res = res * (b.lc ** (a.degree - r.degree)) * (
            ctx.elem(-1) ** (a.degree * b.degree)
        )
        a, b = b, r
    res = res * (b.coeff(0) ** a.degree)
    return res


def sylvester_resultant_poly(
    fz: Sequence[UniPoly], gz: Sequence[UniPoly]
) -> UniPoly:
    """Resultant in z of f = sum fz[i] z^i and g = sum gz[j] z^j.

    Coefficients are univariate polynomials; the result is the determinant
    of the Sylvester matrix (f rows first), computed fraction-free.
    """
    fz = list(fz)
    gz = list(gz)
    ctx = fz[0].ctx
    while fz and fz[-1].is_zero():
        fz.pop()
    while gz and gz[-1].is_zero():
        gz.pop()
    if not fz or not gz:
        return UniPoly.zero(ctx)
    m = len(fz) - 1
    n = len(gz) - 1
    if m == 0 and n == 0:
        return UniPoly.one(ctx)
    size = m + n
    zero = UniPoly.zero(ctx)
    M = [[zero] * size for _ in range(size)]
    for r in range(n):
        for i, c in enumerate(fz):
            M[r][r + (m - i)] = c
    for r in range(m):
        for j, c in enumerate(gz):
            M[n + r][r + (n - j)] = c
    return _bareiss_det(M, ctx)


def _bareiss_det(M, ctx: FieldCtx) -> UniPoly:
    """Fraction-free determinant of a matrix of UniPoly entries."""
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = UniPoly.one(ctx)
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not M[r][k].is_zero()), None)
            if piv is None:
                return UniPoly.zero(ctx)
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                quo, rem = num.divmod(prev)
                assert rem.is_zero(), "Bareiss division not exact"
                M[i][j] = quo
            M[i][k] = UniPoly.zero(ctx)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


class BiPoly:
    """Dense bivariate polynomial; coefficient of x^i y^j at arr[i, j, :]."""

    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: FieldCtx, arr: np.ndarray):
        self.ctx = ctx
        self.arr = np.asarray(arr, dtype=np.int64) % ctx.p

    @classmethod
    def zero(cls, ctx: FieldCtx, nx: int = 1, ny: int = 1) -> "BiPoly":
        return cls(ctx, np.zeros((nx, ny, ctx.k), dtype=np.int64))

    @classmethod
    def from_dict(cls, ctx: FieldCtx, d) -> "BiPoly":
        nx = max(i for i, _ in d) + 1 if d else 1
        ny = max(j for _, j in d) + 1 if d else 1
        arr = np.zeros((nx, ny, ctx.k), dtype=np.int64)
        for (i, j), v in d.items():
            e = ctx.elem(v)
            arr[i, j] = np.array(e.coeffs, dtype=np.int64)
        return cls(ctx, arr)

    def coeff(self, i: int, j: int) -> FieldElem:
        if i < self.arr.shape[0] and j < self.arr.shape[1]:
            return self.ctx.elem(tuple(int(c) for c in self.arr[i, j]))
        return self.ctx.zero

    def is_zero(self) -> bool:
        return not self.arr.any()

    def degrees(self) -> Tuple[int, int]:
        nz = self.arr.any(axis=2)
        if not nz.any():
            return (-1, -1)
        xi, yj = np.nonzero(nz)
        return int(xi.max()), int(yj.max())

    def total_degree(self) -> int:
        nz = self.arr.any(axis=2)
        if not nz.any():
            return -1
        xi, yj = np.nonzero(nz)
        return int((xi + yj).max())

    def eval(self, x: FieldElem, y: FieldElem) -> FieldElem:
        tgt = x.ctx
        acc = tgt.zero
        nz = self.arr.any(axis=2)
        xi, yj = np.nonzero(nz)
        xpow = {}
        ypow = {}
        for i, j in zip(xi.tolist(), yj.tolist()):
            if i not in xpow:
                xpow[i] = x ** i
            if j not in ypow:
                ypow[j] = y ** j
            c = embed(self.coeff(i, j), tgt)
            acc = acc + c * xpow[i] * ypow[j]
        return acc

    def translate(self, a: FieldElem, b: FieldElem) -> "BiPoly":
        """F(x + a, y + b), via Pascal-style shift matrices."""
        ctx = self.ctx
        nx, ny, k = self.arr.shape
        Sx = _shift_matrix(ctx, a, nx)
        Sy = _shift_matrix(ctx, b, ny)
        # new[i', j'] = sum_{i, j} Sx[i, i'] * Sy[j, j'] * arr[i, j]
        out = np.zeros((nx, ny, k), dtype=np.int64)
        bf = _bf(ctx)
        tmp = np.zeros((nx, ny, k), dtype=np.int64)
        for i in range(nx):
            for ip in range(i + 1):
                tmp[ip] = (tmp[ip] + bf.mul(Sx[i, ip], self.arr[i])) % ctx.p
        for j in range(ny):
            for jp in range(j + 1):
                out[:, jp] = (out[:, jp] + bf.mul(Sy[j, jp], tmp[:, j])) % ctx.p
        return BiPoly(ctx, out)

    def to_dict(self):
        nz = self.arr.any(axis=2)
        xi, yj = np.nonzero(nz)
        return {
            (int(i), int(j)): self.coeff(int(i), int(j))
            for i, j in zip(xi, yj)
        }

    def __repr__(self):
        dx, dy = self.degrees()
        return f"BiPoly(degx={dx}, degy={dy} over {self.ctx!r})"


def _bf(ctx: FieldCtx):
    from .fastcount import BatchField

    return BatchField(ctx)


def _shift_matrix(ctx: FieldCtx, a: FieldElem, n: int) -> np.ndarray:
    """S[i, i'] = C(i, i') a^(i - i') so that x^i -> sum_i' S[i,i'] x'^i'."""
    from math import comb

    S = np.zeros((n, n, ctx.k), dtype=np.int64)
    apow = [ctx.one]
    for _ in range(n):
        apow.append(apow[-1] * a)
    for i in range(n):
        for ip in range(i + 1):
            c = ctx.elem(comb(i, ip)) * apow[i - ip]
            S[i, ip] = np.array(c.coeffs, dtype=np.int64)
    return S


class CommonComponentError(ValueError):
    """The two curves share a component through the point."""


def intersection_multiplicity(F: BiPoly, G: BiPoly, point) -> int:
    """Local intersection multiplicity of two plane curves at an affine point.

    Implements the recursive elimination algorithm on polynomials in y with
    coefficients in F_q[x], after translating the point to the origin.
    Raises CommonComponentError if a common component passes through it.
    """
    a, b = point
    Ft = F.translate(a, b)
    Gt = G.translate(a, b)
    return _imult_origin(Ft.arr.copy(), Gt.arr.copy(), F.ctx, depth=0)


def _xrow_deg_ord(arr: np.ndarray) -> Tuple[int, int]:
    """(degree, order) in x of F(x, 0); (-1, -1) when F(x, 0) == 0."""
    row = arr[:, 0].any(axis=1)
    if not row.any():
        return -1, -1
    return int(arr.shape[0] - 1 - np.argmax(row[::-1])), int(np.argmax(row))


def _trim2(arr: np.ndarray) -> np.ndarray:
    nz = arr.any(axis=2)
    if not nz.any():
        return arr[:1, :1]
    xi, yj = np.nonzero(nz)
    return arr[: xi.max() + 1, : yj.max() + 1]


def _imult_origin(A: np.ndarray, B: np.ndarray, ctx: FieldCtx, depth: int) -> int:
    bf = _bf(ctx)
    p = ctx.p
    total = 0
    steps = 0
    while True:
        steps += 1
        if steps > 200000:
            raise RuntimeError("intersection multiplicity did not terminate")
        A = _trim2(A)
        B = _trim2(B)
        if not A.any() or not B.any():
            raise CommonComponentError("curves share a common component")
        if A[0, 0].any() or B[0, 0].any():
            return total
        if not A[0].any() and not B[0].any():
            raise CommonComponentError("curves share the component x = 0")
        da, _oa = _xrow_deg_ord(A)
        db, _ob = _xrow_deg_ord(B)
        if da == -1 and db == -1:
            raise CommonComponentError("curves share the component y = 0")
        if da == -1 or (db != -1 and db < da):
            A, B = B, A
            da, db = db, da
        # A(x, 0) nonzero of degree da; B restricted has degree db >= da or is 0
        if db == -1:
            # B = y * H; I(A, y) is the x-order of A(x, 0)
            _d, orda = _xrow_deg_ord(A)
            total += orda
            B = B[:, 1:].copy()
            continue
        ca = A[da, 0].copy()  # leading coefficient of A(x, 0)
        cb = B[db, 0].copy()
        sh = db - da
        nx = max(A.shape[0], B.shape[0], A.shape[0] + sh)
        ny = max(A.shape[1], B.shape[1])
        newB = np.zeros((nx, ny, ctx.k), dtype=np.int64)
        newB[: B.shape[0], : B.shape[1]] = bf.mul(ca, B)
        newB[sh : sh + A.shape[0], : A.shape[1]] = (
            newB[sh : sh + A.shape[0], : A.shape[1]] - bf.mul(cb, A)
        ) % p
        B = newB
