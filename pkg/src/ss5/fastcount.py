"""Vectorized F_{p^k} arithmetic and point-counting kernels.

Elements are numpy int64 arrays whose last axis holds the k coefficients
of the F_p[x]/(m) representation.  All kernels are exact: intermediate
values stay below 2^63 for the supported range (k <= 12, p < 2^15).
"""

import numpy as np

from .field import FieldCtx, FieldElem, make_extension


class BatchField:
    """Arithmetic on arrays of F_{p^k} elements."""

    def __init__(self, ctx: FieldCtx):
        if ctx.p >= 1 << 15:
            raise ValueError("batched kernels require p < 2^15")
        self.ctx = ctx
        self.p = ctx.p
        self.k = ctx.k
        self.q = ctx.q
        # red[i] = coefficient vector of x^{k+i} mod m, for i in 0..k-2
        if self.k > 1:
            rows = []
            cur = list((ctx.gen ** self.k).coeffs)
            for _ in range(self.k - 1):
                rows.append(list(cur))
                nxt = ctx.elem(cur) * ctx.gen
                cur = list(nxt.coeffs)
            self.red = np.array(rows, dtype=np.int64)
        else:
            self.red = np.zeros((0, 1), dtype=np.int64)

    def lift(self, a) -> np.ndarray:
        if isinstance(a, FieldElem):
            if a.ctx != self.ctx:
                raise ValueError("field mismatch")
            return np.array(a.coeffs, dtype=np.int64)
        return np.asarray(a, dtype=np.int64)

    def unlift(self, arr) -> FieldElem:
        return self.ctx.elem(tuple(int(c) for c in arr))

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(tuple(shape) + (self.k,), dtype=np.int64)

    def ones(self, shape) -> np.ndarray:
        out = self.zeros(shape)
        out[..., 0] = 1
        return out

    def mul(self, a, b) -> np.ndarray:
        p, k = self.p, self.k
        if k == 1:
            return (a * b) % p
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        c = np.zeros(shape + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            ai = a[..., i]
            for j in range(k):
                c[..., i + j] += ai * b[..., j]
        c %= p
        res = c[..., :k].copy()
        for i in range(k - 1):
            res += c[..., k + i : k + i + 1] * self.red[i]
        res %= p
        return res

    def pow(self, a, e: int) -> np.ndarray:
        if e == 0:
            return self.ones(a.shape[:-1])
        result = None
        base = a
        while e:
            if e & 1:
                result = base if result is None else self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a) -> np.ndarray:
        return self.pow(a, self.q - 2)

    def eval_poly(self, coeffs, x) -> np.ndarray:
        """Horner evaluation.  coeffs: list of (k,) vectors, low degree first."""
        acc = np.broadcast_to(coeffs[-1], x.shape).copy()
        for c in reversed(coeffs[:-1]):
            acc = self.mul(acc, x)
            acc += c
        return acc % self.p

    def elements_chunk(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((stop - start, self.k), dtype=np.int64)
        for d in range(self.k):
            out[:, d] = idx % self.p
            idx //= self.p
        return out

    def is_zero(self, a) -> np.ndarray:
        return (a == 0).all(axis=-1)

    def eq_scalar(self, a, s) -> np.ndarray:
        return (a == self.lift(s)).all(axis=-1)

    # --- subfield norm machinery (used for power residue classes) ---

    def frobenius_matrix(self, j: int) -> np.ndarray:
        """Matrix of x -> x^(p^j) in the coefficient basis."""
        cols = []
        for i in range(self.k):
            e = self.ctx.gen ** i
            cols.append((e ** (self.p ** j)).coeffs)
        return np.array(cols, dtype=np.int64).T % self.p

    def apply_matrix(self, M, a) -> np.ndarray:
        return np.einsum("ij,...j->...i", M, a) % self.p

    def _subfield_data(self, k0: int):
        """Embedding basis, projection matrix and residue tables for F_{p^k0}."""
        from .field import embed

        sub = make_extension(self.p, k0)
        basis = []
        g_img = embed(sub.gen, self.ctx) if k0 > 1 else self.ctx.one
        acc = self.ctx.one
        for _ in range(k0):
            basis.append(acc.coeffs)
            acc = acc * g_img
        M = np.array(basis, dtype=np.int64).T % self.p  # k x k0
        # left inverse of M over F_p by Gaussian elimination on [M | I]
        aug = np.concatenate([M, np.eye(self.k, dtype=np.int64)], axis=1) % self.p
        r = 0
        pivots = []
        for c in range(k0):
            piv = None
            for rr in range(r, self.k):
                if aug[rr, c] % self.p:
                    piv = rr
                    break
            if piv is None:
                raise RuntimeError("embedding basis not independent")
            aug[[r, piv]] = aug[[piv, r]]
            inv = pow(int(aug[r, c]), -1, self.p)
            aug[r] = aug[r] * inv % self.p
            for rr in range(self.k):
                if rr != r and aug[rr, c]:
                    aug[rr] = (aug[rr] - aug[rr, c] * aug[r]) % self.p
            pivots.append(r)
            r += 1
        proj = aug[pivots, k0:] % self.p  # k0 x k, proj @ M = I
        return sub, M, proj

    def power_residue_ind(self, v, d: int):
        """Boolean array: v a nonzero d-th power residue (v == 0 gives False).

        d must divide q - 1.
        """
        if (self.q - 1) % d != 0:
            raise ValueError("d must divide q - 1")
        # reduce to the smallest subfield whose unit group has d-torsion
        k0 = self.k
        for kk in range(1, self.k):
            if self.k % kk == 0 and (self.p ** kk - 1) % d == 0:
                k0 = kk
                break
        if k0 == self.k or self.q <= 1 << 16:
            w = self.pow(v, (self.q - 1) // d)
            return self.eq_scalar(w, self.ctx.one) & ~self.is_zero(v)
        sub, _M, proj = self._subfield_data(k0)
        q0 = sub.q
        table = np.zeros(q0, dtype=bool)
        e0 = (q0 - 1) // d
        for i in range(1, q0):
            el = sub.from_index(i)
            table[i] = (el ** e0) == sub.one
        # norm to the subfield: product of sigma^(k0*i)(v), i = 0..t-1
        t = self.k // k0
        frob = self.frobenius_matrix(k0)
        w = v
        fi = frob
        for _ in range(t - 1):
            w = self.mul(w, self.apply_matrix(fi, v))
            fi = (fi @ frob) % self.p
        coords = np.einsum("ij,...j->...i", proj, w) % self.p  # (..., k0)
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for dpos in range(k0 - 1, -1, -1):
            idx = idx * self.p + coords[..., dpos]
        return table[idx] & ~self.is_zero(v)


def count_ys(bf: BatchField, vals: np.ndarray, n: int) -> int:
    """Sum over the entries v of #{y in F_q : y^n = v}."""
    from math import gcd

    d = gcd(n, bf.q - 1)
    nzero = int(bf.is_zero(vals).sum())
    hits = int(bf.power_residue_ind(vals, d).sum())
    return nzero + d * hits


def affine_hyperelliptic_count(ctx: FieldCtx, coeffs, chunk: int = 1 << 17) -> int:
    """#{(x, y) in F_q^2 : y^2 = f(x)} for f given by FieldElem coefficients."""
    bf = BatchField(ctx)
    cs = [bf.lift(c) for c in coeffs]
    total = 0
    for start in range(0, ctx.q, chunk):
        xs = bf.elements_chunk(start, min(start + chunk, ctx.q))
        vals = bf.eval_poly(cs, xs)
        total += count_ys(bf, vals, 2)
    return total


def affine_superelliptic_count(ctx: FieldCtx, coeffs, n: int, chunk: int = 1 << 17) -> int:
    """#{(x, y) in F_q^2 : y^n = f(x)} by fibers; zeros of f each contribute 1.

    The caller is responsible for replacing the fibers over zeros of f by
    the correct normalized counts.
    """
    bf = BatchField(ctx)
    cs = [bf.lift(c) for c in coeffs]
    total = 0
    for start in range(0, ctx.q, chunk):
        xs = bf.elements_chunk(start, min(start + chunk, ctx.q))
        vals = bf.eval_poly(cs, xs)
        total += count_ys(bf, vals, n)
    return total


def _batch_degrees(A: np.ndarray) -> np.ndarray:
    """Degrees of batched polynomials, shape (B, D+1, k) -> (B,); zero -> -1."""
    nz = (A != 0).any(axis=-1)  # (B, D+1)
    has = nz.any(axis=1)
    deg = A.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(has, deg, -1)


def _batch_gcd_degree(bf: BatchField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Degrees of gcd(A_i, B_i) for batches of polynomials over F_q.

    A, B have shape (batch, D+1, k).  gcd with 0 is the other argument;
    gcd(0, 0) reports degree -1.
    """
    A = A.copy()
    B = B.copy()
    dA = _batch_degrees(A)
    dB = _batch_degrees(B)
    n = A.shape[0]
    rows = np.arange(n)
    D = max(A.shape[1], B.shape[1])
    if A.shape[1] < D:
        A = np.concatenate([A, np.zeros((n, D - A.shape[1], bf.k), dtype=np.int64)], axis=1)
    if B.shape[1] < D:
        B = np.concatenate([B, np.zeros((n, D - B.shape[1], bf.k), dtype=np.int64)], axis=1)
    while True:
        active = dB >= 0
        if not active.any():
            break
        # keep deg A >= deg B on active entries
        sw = active & (dA < dB)
        if sw.any():
            tmp = A[sw].copy()
            A[sw] = B[sw]
            B[sw] = tmp
            tmpd = dA[sw].copy()
            dA[sw] = dB[sw]
            dB[sw] = tmpd
        act = dB >= 0
        ia = rows[act]
        if ia.size == 0:
            break
        sa = dA[ia]
        sb = dB[ia]
        shift = sa - sb
        lcA = A[ia, sa]  # (m, k)
        lcB = B[ia, sb]
        # A <- lcB * A - lcA * x^shift * B  (kills the leading term of A)
        Asub = bf.mul(lcB[:, None, :], A[ia])
        Bsh = np.zeros_like(Asub)
        cols = np.arange(D)[None, :]
        src = cols - shift[:, None]
        valid = src >= 0
        src_clipped = np.clip(src, 0, D - 1)
        gathered = np.take_along_axis(B[ia], src_clipped[:, :, None], axis=1)
        Bsh = np.where(valid[:, :, None], gathered, 0)
        Anew = (Asub - bf.mul(lcA[:, None, :], Bsh)) % bf.p
        A[ia] = Anew
        dA[ia] = _batch_degrees(Anew)
    return dA


def plane_quartic_affine_rootcount(ctx: FieldCtx, coeff_rows, chunk: int = 1 << 15) -> int:
    """Sum over x in F_q of #{y : F(x, y, 1) = 0}, for F with a4(x) constant.

    coeff_rows[j] is the list of FieldElem coefficients of a_j(x), where
    F(x, y, 1) = sum_j a_j(x) y^j; a_4 must be a nonzero constant.
    """
    bf = BatchField(ctx)
    p, k, q = bf.p, bf.k, bf.q
    a4 = coeff_rows[4]
    if len(a4) != 1 or a4[0].is_zero():
        raise ValueError("leading y-coefficient must be a nonzero constant")
    inv_a4 = bf.lift(a4[0].inverse())
    rows = [[bf.lift(c) for c in r] for r in coeff_rows]
    total = 0
    for start in range(0, q, chunk):
        xs = bf.elements_chunk(start, min(start + chunk, q))
        m = xs.shape[0]
        # monic quartic in y: f = y^4 + sum_{j<4} b_j(x) y^j
        f = np.zeros((m, 4, k), dtype=np.int64)
        for j in range(4):
            val = bf.eval_poly(rows[j], xs) if rows[j] else bf.zeros((m,))
            f[:, j] = bf.mul(val, inv_a4)
        # r = y^q mod f by square and multiply (y has degree 1 < 4)
        base = np.zeros((m, 4, k), dtype=np.int64)
        base[:, 1, 0] = 1
        r = base.copy()
        for b in bin(q)[3:]:
            r = _polymulmod_monic4(bf, r, r, f)
            if b == "1":
                r = _polyshiftmod_monic4(bf, r, f)
        # h = y^q - y
        h = r.copy()
        h[:, 1] = (h[:, 1] - base[:, 1]) % p
        fmonic = np.zeros((m, 5, k), dtype=np.int64)
        fmonic[:, :4] = f
        fmonic[:, 4, 0] = 1
        deg = _batch_gcd_degree(bf, fmonic, h)
        # gcd(f, y^q - y) is squarefree and splits; its degree counts roots
        total += int(deg[deg > 0].sum())
    return total


def _polymulmod_monic4(bf: BatchField, u, v, f):
    """(u * v) mod (y^4 + f), u, v of y-degree <= 3, f the low part (m,4,k)."""
    m = u.shape[0]
    k = bf.k
    c = np.zeros((m, 7, k), dtype=np.int64)
    for i in range(4):
        ui = u[:, i]
        if not ui.any():
            continue
        for j in range(4):
            c[:, i + j] = (c[:, i + j] + bf.mul(ui, v[:, j])) % bf.p
    for d in range(6, 3, -1):
        cd = c[:, d]
        if not cd.any():
            continue
        red = bf.mul(cd[:, None, :], f)  # (m,4,k)
        c[:, d - 4 : d] = (c[:, d - 4 : d] - red) % bf.p
        c[:, d] = 0
    return c[:, :4].copy()


def _polyshiftmod_monic4(bf: BatchField, u, f):
    """(u * y) mod (y^4 + f)."""
    m = u.shape[0]
    k = bf.k
    c = np.zeros((m, 4, k), dtype=np.int64)
    c[:, 1:4] = u[:, 0:3]
    top = u[:, 3]
    if top.any():
        red = bf.mul(top[:, None, :], f)
        c = (c - red) % bf.p
    return c
