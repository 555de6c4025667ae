"""Side constructions in genus 3 and 4, plus the moduli numerology.

A supersingular genus-2 curve with an extra involution gives, through
the Kani-Rosen decomposition of the cover's Jacobian, supersingular
curves of genus 3 (unramified double cover) and genus 4 (cover branched
at two points).  The curves themselves are certified through their
decomposition factors.
"""

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import List, Optional, Tuple

from . import curves as C
from .field import FieldCtx, FieldElem, make_extension


@dataclass
class AuxCertificate:
    kind: str  # genus3 | genus4
    p: int
    parameter: FieldElem
    components: List[Tuple[str, C.LPolynomial]]
    hit_count: int  # parameters over F_p that work

    def slope_lists(self) -> List[List[str]]:
        out = []
        for _name, L in self.components:
            slopes = []
            for s, m in C.newton_polygon(L):
                slopes.extend([f"{s.numerator}/{s.denominator}"] * m)
            out.append(slopes)
        return out

    def payload(self) -> dict:
        return {
            "kind": self.kind,
            "p": str(self.p),
            "parameter_field_k": str(self.parameter.ctx.k),
            "parameter": self.parameter.to_str(),
            "components": [
                {"name": n, "L": [str(c) for c in L.coeffs], "q": str(L.q)}
                for n, L in self.components
            ],
            "slopes": self.slope_lists(),
            "hit_count": str(self.hit_count),
        }


def _genus2_is_ss(model, budget) -> Optional[C.LPolynomial]:
    try:
        L = C.lpolynomial(model, budget)
    except C.BudgetExceeded:
        raise
    return L if C.is_supersingular(L) else None


def _scan(p: int, make_model, budget: int, max_extension: int = 4):
    """First parameter (base field first, then extensions) whose genus-2
    curve is supersingular, plus the exhaustive F_p hit count."""
    first = None
    hits = 0
    for k in range(1, max_extension + 1):
        ctx = make_extension(p, k) if k > 1 else FieldCtx(p)
        for i in range(ctx.q):
            par = ctx.from_index(i)
            try:
                model = make_model(ctx, par)
            except ValueError:
                continue  # degenerate parameter
            L = _genus2_is_ss(model, budget)
            if L is None:
                continue
            if k == 1:
                hits += 1
            if first is None:
                first = (par, L)
        if first is not None and k >= 1:
            break
    if first is None:
        raise RuntimeError(f"no supersingular parameter below degree {max_extension}")
    return first, hits


def genus3_double_cover(p: int, budget: Optional[int] = None) -> AuxCertificate:
    """A genus-2 curve X: y^2 = x(x^2-1)(x^2-beta) that is supersingular.

    The unramified double cover Y -> X attached to the square root of
    (x^2-1) has Jac(Y) ~ Jac(X) x Jac(E) with E: y^2 = x(x^2-1), and E
    is supersingular exactly when p = 3 mod 4, so Y is a supersingular
    smooth curve of genus 3.
    """
    if p % 4 != 3:
        raise ValueError("the cover needs p = 3 mod 4")
    budget = budget if budget is not None else C.Config().counting_budget

    def model(ctx, beta):
        one = ctx.one
        # x (x^2 - 1)(x^2 - beta); squarefree-ness rejects beta in {0, 1}
        rhs = [ctx.zero, beta, ctx.zero, -(one + beta), ctx.zero, one]
        return C.HyperellipticSextic(ctx, tuple(rhs))

    (beta, LX), hits = _scan(p, model, budget)
    ctx = beta.ctx
    E = C.EllipticWeierstrass(ctx, (ctx.zero, ctx.elem(-1), ctx.zero, ctx.one))
    LE = C.lpolynomial(E, budget)
    assert C.is_supersingular(LE), "y^2 = x^3 - x must be supersingular here"
    assert C.is_supersingular(LX)
    return AuxCertificate("genus3", p, beta, [("X", LX), ("E", LE)], hits)


def genus4_branched_cover(p: int, budget: Optional[int] = None) -> AuxCertificate:
    """A genus-2 curve X: y^2 = (x^3-1)(x^3-alpha) that is supersingular.

    The double cover branched at the two points over x = infinity has
    Jac(Y') ~ Jac(X) x Jac(E) x Jac(E') with E: y^2 = x^3 - 1 and
    E': y^2 = x^3 - alpha, both supersingular for p = 5 mod 6, so Y' is
    a supersingular smooth curve of genus 4.
    """
    if p % 6 != 5:
        raise ValueError("the cover needs p = 5 mod 6")
    budget = budget if budget is not None else C.Config().counting_budget

    def model(ctx, alpha):
        one = ctx.one
        # (x^3 - 1)(x^3 - alpha) = x^6 - (1 + alpha) x^3 + alpha
        rhs = [alpha, ctx.zero, ctx.zero, -(one + alpha), ctx.zero, ctx.zero, one]
        return C.HyperellipticSextic(ctx, tuple(rhs))

    (alpha, LX), hits = _scan(p, model, budget)
    ctx = alpha.ctx
    E = C.EllipticWeierstrass(ctx, (ctx.elem(-1), ctx.zero, ctx.zero, ctx.one))
    Ep = C.EllipticWeierstrass(ctx, (-alpha, ctx.zero, ctx.zero, ctx.one))
    LE = C.lpolynomial(E, budget)
    LEp = C.lpolynomial(Ep, budget)
    for L in (LE, LEp, LX):
        assert C.is_supersingular(L)
    return AuxCertificate(
        "genus4", p, alpha, [("X", LX), ("E", LE), ("E'", LEp)], hits
    )


@dataclass
class HeuristicReport:
    p: int
    f1: int
    f2: int
    N_p: Fraction

    def payload(self) -> dict:
        return {
            "p": str(self.p),
            "f1": str(self.f1),
            "f2": str(self.f2),
            "N_p": f"{self.N_p.numerator}/{self.N_p.denominator}",
        }


def bernoulli(n: int) -> Fraction:
    """B_n by the defining recurrence (B_1 = +1/2 convention; only even
    indices are used here, where the conventions agree)."""
    from math import comb

    B = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        B[m] = Fraction(1)
        for k in range(m):
            B[m] -= comb(m, k) * B[k] / (m - k + 1)
    return B[n]


def _zeta_neg(m: int) -> Fraction:
    """zeta(-m) = -B_{m+1}/(m+1) for odd m."""
    return -bernoulli(m + 1) / (m + 1)


def heuristic_intersection_number(p: int) -> HeuristicReport:
    """Expected number of supersingular intersection points on the plane
    of Kummer sections: N_p = f1 f2 / 46080, cross-checked against the
    zeta-value form of the tautological degree."""
    if p < 2:
        raise ValueError("p must be at least 2")
    f1 = (p - 1) * (p ** 2 - 1)
    f2 = (p - 1) ** 2 * (p ** 3 - 1) * (p ** 4 - 1)
    N = Fraction(f1 * f2, 46080)
    alt = 63 * f1 * f2 * Fraction(1, 8) * _zeta_neg(1) * _zeta_neg(3) * _zeta_neg(5)
    assert N == alt, "the two evaluation routes must agree exactly"
    return HeuristicReport(p, f1, f2, N)


def condition_dimensions(g: int, which: int = 1) -> Tuple[int, int]:
    """(upper bound, actual dimension count) for the two moduli-space
    conditions; the construction can only work when bound >= count."""
    if g < 2:
        raise ValueError("g must be at least 2")
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    lhs = 2 * g - 3 if which == 1 else 2 * g - 1
    rhs = g * (g - 1) // 2 - (g - 1) ** 2 // 4
    return lhs, rhs
