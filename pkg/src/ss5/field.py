"""Finite field arithmetic for F_{p^k}, p an odd prime.

Extensions are represented as F_p[x]/(m(x)) with m monic irreducible.
The modulus is chosen deterministically: the first irreducible monic
polynomial of the requested degree, scanning coefficient vectors
(c_0, ..., c_{k-1}) in ascending order as base-p integers.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union


@dataclass(frozen=True)
class FieldCtx:
    """A finite field F_{p^k}.  modulus is None exactly when k == 1."""

    p: int
    k: int = 1
    modulus: Union[tuple, None] = None  # monic, length k+1, entries in [0, p)

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError("p must be an odd prime")
        if self.k == 1:
            if self.modulus is not None:
                raise ValueError("prime field takes no modulus")
        else:
            if self.modulus is None or len(self.modulus) != self.k + 1:
                raise ValueError("extension needs a monic modulus of degree k")
            if self.modulus[-1] != 1:
                raise ValueError("modulus must be monic")

    @property
    def q(self) -> int:
        return self.p ** self.k

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx == self:
                return value
            if value.ctx.k == 1 and value.ctx.p == self.p:
                return self.elem(value.coeffs[0])
            raise ValueError("cannot coerce element between unrelated fields")
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElem(self, coeffs)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.k:
            coeffs = _polymod(coeffs, self.modulus, self.p)
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FieldElem(self, coeffs)

    @property
    def zero(self) -> "FieldElem":
        return self.elem(0)

    @property
    def one(self) -> "FieldElem":
        return self.elem(1)

    @property
    def gen(self) -> "FieldElem":
        """The residue class of x (or 1 in the prime field)."""
        if self.k == 1:
            return self.one
        return self.elem((0, 1))

    def from_index(self, i: int) -> "FieldElem":
        """Element whose coefficient vector is i written in base p."""
        if not 0 <= i < self.q:
            raise ValueError("index out of range")
        coeffs = []
        for _ in range(self.k):
            coeffs.append(i % self.p)
            i //= self.p
        return FieldElem(self, tuple(coeffs))

    def elements(self) -> Iterator["FieldElem"]:
        for i in range(self.q):
            yield self.from_index(i)

    def extension(self, degree: int) -> "FieldCtx":
        """The extension of degree `degree`, as an absolute extension of F_p.

        Only supported from the prime field (absolute extensions keep the
        modulus convention unambiguous).
        """
        if self.k != 1:
            raise ValueError("extensions are constructed from the prime field")
        if degree == 1:
            return self
        return make_extension(self.p, degree)

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"


class FieldElem:
    """Element of a FieldCtx, stored as a coefficient tuple of length k."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElem(ctx, ((self.coeffs[0] * o.coeffs[0]) % ctx.p,))
        prod = _polymul(self.coeffs, o.coeffs, ctx.p)
        red = _polymod(prod, ctx.modulus, ctx.p)
        return FieldElem(ctx, red + (0,) * (ctx.k - len(red)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("field element inverse of zero")
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElem(ctx, (pow(self.coeffs[0], -1, ctx.p),))
        return self ** (ctx.q - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElem(ctx, (pow(self.coeffs[0], e, ctx.p),))
        result = ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.elem(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def encode(self) -> int:
        """Coefficient vector read as a base-p integer (canonical index)."""
        value = 0
        for c in reversed(self.coeffs):
            value = value * self.ctx.p + c
        return value

    def frobenius(self) -> "FieldElem":
        """The p-power Frobenius."""
        return self ** self.ctx.p

    def to_str(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        if self.ctx.k == 1:
            return f"{self.coeffs[0]}:{self.ctx!r}"
        return f"({self.to_str()}):{self.ctx!r}"


def _polymul(a: Sequence[int], b: Sequence[int], p: int) -> tuple:
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            r[i + j] += x * y
    return tuple(c % p for c in r)

def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> tuple:
    """Remainder of a modulo the monic polynomial m, over F_p."""
    deg_m = len(m) - 1
    r = list(a)
    for i in range(len(r) - 1, deg_m - 1, -1):
        c = r[i] % p
        if c:
            for j in range(deg_m):
                r[i - deg_m + j] = (r[i - deg_m + j] - c * m[j]) % p
        r[i] = 0
    return tuple(c % p for c in r[:deg_m])

def _poly_pow_mod(base: tuple, e: int, m: tuple, p: int) -> tuple:
    result = (1,)
    b = _polymod(base, m, p)
    while e:
        if e & 1:
            result = _polymod(_polymul(result, b, p), m, p)
        b = _polymod(_polymul(b, b, p), m, p)
        e >>= 1
    return result

def _poly_gcd_int(a: list, b: list, p: int) -> list:
    a = list(a)
    b = list(b)
    def trim(v):
        while v and v[-1] % p == 0:
            v.pop()
        return v
    trim(a)
    trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b):
            c = r[-1] * inv % p
            if c:
                off = len(r) - len(b)
                for j in range(len(b)):
                    r[off + j] = (r[off + j] - c * b[j]) % p
            r.pop()
            trim(r)
            if not r:
                break
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _is_irreducible(m: tuple, p: int) -> bool:
    """Rabin irreducibility test for monic m over F_p."""
    k = len(m) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = (0, 1)
    xq = _poly_pow_mod(x, p ** k, m, p)
    diff = list(xq) + [0] * (2 - len(xq))
    diff[1] = (diff[1] - 1) % p
    if any(c % p for c in diff):
        return False
    seen = set()
    d = k
    factors = []
    while d % 2 == 0:
        factors.append(2)
        d //= 2
    f = 3
    while f * f <= d:
        while d % f == 0:
            factors.append(f)
            d //= f
        f += 2
    if d > 1:
        factors.append(d)
    for ell in factors:
        if ell in seen:
            continue
        seen.add(ell)
        xe = _poly_pow_mod(x, p ** (k // ell), m, p)
        diff = list(xe) + [0] * (2 - len(xe))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd_int(list(diff), list(m), p)
        if len(g) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def make_extension(p: int, k: int) -> FieldCtx:
    """F_{p^k} with the first irreducible modulus in the scan order."""
    if k == 1:
        return FieldCtx(p)
    for idx in range(p ** k):
        coeffs = []
        i = idx
        for _ in range(k):
            coeffs.append(i % p)
            i //= p
        m = tuple(coeffs) + (1,)
        if _is_irreducible(m, p):
            return FieldCtx(p, k, m)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


def quadratic_character(a: FieldElem) -> int:
    """1, -1 or 0 by square class."""
    if a.is_zero():
        return 0
    t = a ** ((a.ctx.q - 1) // 2)
    return 1 if t == a.ctx.one else -1


def _canonical_of_pair(s: FieldElem) -> FieldElem:
    m = -s
    return s if s.encode() <= m.encode() else m


def sqrt(a: FieldElem) -> Union[FieldElem, None]:
    """Canonical square root (smaller base-p encoding), or None."""
    ctx = a.ctx
    if a.is_zero():
        return a
    if quadratic_character(a) != 1:
        return None
    q = ctx.q
    if q % 4 == 3:
        return _canonical_of_pair(a ** ((q + 1) // 4))
    # Tonelli-Shanks over F_q
    s = 0
    t = q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    n = next(e for e in ctx.elements() if quadratic_character(e) == -1)
    z = n ** t
    r = a ** ((t + 1) // 2)
    c = a ** t
    m = s
    one = ctx.one
    while c != one:
        i = 0
        cc = c
        while cc != one:
            cc = cc * cc
            i += 1
        b = z ** (1 << (m - i - 1))
        r = r * b
        c = c * b * b
        z = b * b
        m = i
    return _canonical_of_pair(r)


def nth_root_count(a: FieldElem, n: int) -> int:
    """Number of y in the field with y^n = a."""
    if a.is_zero():
        return 1
    q = a.ctx.q
    d = _gcd(n, q - 1)
    return d if a ** ((q - 1) // d) == a.ctx.one else 0


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def _subfield_gen_image(src: FieldCtx, target: FieldCtx) -> FieldElem:
    """Canonical image in target of the generator of src."""
    from . import poly  # local import to avoid a cycle

    f = poly.UniPoly.from_ints(target, src.modulus)
    roots = poly.roots(f)
    if not roots:
        raise ValueError("source field does not embed in target")
    return min(roots, key=lambda r: r.encode())


def embed(a: FieldElem, target: FieldCtx) -> FieldElem:
    """Embed a into an overfield.  Requires src degree | target degree."""
    src = a.ctx
    if src == target:
        return a
    if src.p != target.p or target.k % src.k != 0:
        raise ValueError("no embedding: incompatible fields")
    if src.k == 1:
        return target.elem(a.coeffs[0])
    g = _subfield_gen_image(src, target)
    acc = target.zero
    for c in reversed(a.coeffs):
        acc = acc * g + target.elem(c)
    return acc
