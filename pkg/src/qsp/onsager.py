"""iota-divided powers, the Theta resummation, classical coefficients and q -> 1."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .qring import Coeff, LaurentPoly, QContext, RatFunc, q_factorial, q_integer, rat_eval_at_one
from .combinat import even_odd


def _elementary(values, k):
    """k-th elementary symmetric function of a list (works for ints and LaurentPoly)."""
    if k < 0 or k > len(values):
        return 0
    e = [1] + [0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


@lru_cache(maxsize=None)
def _alpha_sk(k, N, s, eps):
    if k == 0:
        return LaurentPoly.const(1)
    if k < 0 or k > N + s:
        return LaurentPoly()
    vals = [q_integer(2 * l + s, eps) ** 2 for l in range(1 - s, N + 1)]
    return LaurentPoly._lift(_elementary(vals, k))


def alpha_sk(k: int, N: int, s: int, ctx: QContext) -> LaurentPoly:
    if s not in (0, 1):
        raise ValueError("s must be 0 or 1")
    return _alpha_sk(k, N, s, ctx.eps_i)


@dataclass(frozen=True)
class DividedPower:
    r: int
    variant: int
    coeffs: dict = field(hash=False)

    def terms(self):
        """(power of B_i, Coeff) pairs."""
        return [(self.r - 2 * k, c) for k, c in sorted(self.coeffs.items())]


def divided_power(r: int, variant: int, ctx: QContext) -> DividedPower:
    r_e, r_p = even_odd(r)
    fact = q_factorial(r, ctx.eps_i)
    coeffs = {}
    for k in range(r_e + 1):
        a = alpha_sk(k, r_e + r_p * (1 - variant) - 1, variant, ctx)
        if a:
            coeffs[k] = Coeff(k, RatFunc(a.shift(ctx.eps_i * k), fact))
    return DividedPower(r, variant, coeffs)


def clw_expansion(variant: int, ctx: QContext, mirror: bool = False) -> dict:
    """[1-a]! sum_m (-1)^m B^(m) y B^(1-a-m), collected as (left power, right power) -> Coeff.

    With ``mirror`` the summands are read right to left, which swaps the roles of the two
    divided-power families.
    """
    a = ctx.a_ij
    a_p = a % 2
    left_v, right_v = ((a_p, 0) if variant == 0 else (1 - a_p, 1))
    full = RatFunc(q_factorial(1 - a, ctx.eps_i))
    out = {}
    for m in range(2 - a):
        lhs = divided_power(m, left_v, ctx)
        rhs = divided_power(1 - a - m, right_v, ctx)
        sign = (-1) ** m
        for p, c1 in lhs.terms():
            for p2, c2 in rhs.terms():
                key = (p2, p) if mirror else (p, p2)
                c = Coeff(c1.c_power + c2.c_power, c1.value * c2.value * full * sign)
                if key in out:
                    c = out[key] + c
                if c.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = c
    return out


def clw_target(variant: int, ctx: QContext) -> dict:
    """sum_{m, l} (-1)^m (q_i c_i)^l Theta_{m, 1-a-m-2l} x^m y x^{1-a-m-2l}."""
    from .relations import theta_constant

    a = ctx.a_ij
    out = {}
    for m in range(2 - a):
        for l in range((1 - a - m) // 2 + 1):
            mp = 1 - a - m - 2 * l
            th = theta_constant(m, mp, variant, ctx)
            if th:
                out[(m, mp)] = Coeff(l, RatFunc(th.shift(ctx.eps_i * l) * (-1) ** m))
    return out


def clw_collapse_check(variant: int, ctx: QContext) -> bool:
    return clw_expansion(variant, ctx) == clw_target(variant, ctx)


def clw_leading_matches_fij(variant: int, ctx: QContext) -> bool:
    """The c-free part of the expansion is (-1)^{1-a} times the quantum Serre polynomial."""
    from .relations import fij_free

    a = ctx.a_ij
    exp = clw_expansion(variant, ctx)
    f = fij_free(ctx)
    sign = (-1) ** ((1 - a) % 2)
    lead = {("x" * p + "y" + "x" * p2): c.value for (p, p2), c in exp.items() if c.c_power == 0}
    return lead == {w: c * sign for w, c in f.terms.items()}


# ---------------------------------------------------------------- classical coefficients

def classical_c_closed(s: int, r: int, form: int = 1) -> int:
    if not 0 <= s <= r:
        raise ValueError("need 0 <= s <= r")
    if form not in (1, 2):
        raise ValueError("form must be 1 or 2")
    if (r - s) % 2:
        return 0
    n = (r - s) // 2
    r_e, r_p = even_odd(r)
    if form == 1:
        vals = [(2 * l + 1 - r_p) ** 2 for l in range(r_p, r_e + r_p)]
        return _elementary(vals, n) if n <= len(vals) else 0
    total = 0
    for m in range(n + 1):
        pre = comb(r, 2 * m)
        for k in range(m + 1):
            pre *= (2 * k - 1) ** 2
        vals = [(2 * l + r_p) ** 2 for l in range(1 - r_p, r_e - m)]
        total += pre * (_elementary(vals, n - m) if n - m <= len(vals) else 0)
    return total


@lru_cache(maxsize=None)
def classical_c_recursion(s: int, r: int) -> int:
    """The recursion with boundary values, evaluated as written. Diagnostic only."""
    if s < 0:
        return 0
    if s > r:
        raise ValueError("need s <= r")
    if s == r:
        return 1
    if s == r - 1:
        return 0
    return classical_c_recursion(s - 1, r - 1) + (r - 1) * classical_c_recursion(s, r - 2)


def recursion_first_mismatch(r_max: int = 14):
    """First (s, r), in order of increasing r, where the recursion and closed form disagree."""
    for r in range(r_max + 1):
        for s in range(r + 1):
            if classical_c_recursion(s, r) != classical_c_closed(s, r, 1):
                return s, r
    return None


def specialize_rho_q1(m: int, m_prime: int, ctx: QContext) -> Fraction:
    from .relations import rho_case1_projection

    rho = rho_case1_projection(m, m_prime, ctx)
    if rho.is_zero():
        return Fraction(0)
    w = (1 - ctx.a_ij - m - m_prime) // 2
    return rat_eval_at_one(rho.value) * (-1) ** w


@dataclass(frozen=True)
class ClassicalTable:
    r: int
    values: dict = field(hash=False)

    def __post_init__(self):
        if self.values.get(self.r) != 1 or (self.r >= 1 and self.values.get(self.r - 1) != 0):
            raise ValueError("boundary values c_r[r] = 1, c_{r-1}[r] = 0 violated")


def classical_table(r: int, form: int = 1) -> ClassicalTable:
    return ClassicalTable(r, {s: classical_c_closed(s, r, form) for s in range(r + 1)})


@dataclass(frozen=True)
class ClassicalRelation:
    """(ad b_i)^{1-a} b_j = sum of the lower terms, in two equivalent layouts."""

    a_ij: int
    terms: dict = field(hash=False)  # (m, m') -> coefficient of b_i^m b_j b_i^m'
    ad_form: dict = field(hash=False)  # s -> coefficient of (ad b_i)^s b_j


def classical_relation(a: int) -> ClassicalRelation:
    if a > 0:
        raise ValueError("a_ij must be non-positive")
    r = 1 - a
    table = classical_table(r)
    terms = {}
    for m in range(-a):
        for mp in range(-a - m):
            v = (-1) ** ((a + m) % 2) * comb(m + mp, mp) * table.values[m + mp]
            if v:
                terms[(m, mp)] = v
    ad_form = {s: (-1) ** ((a + s) % 2) * table.values[s] for s in range(r) if table.values[s]}
    return ClassicalRelation(a, terms, ad_form)


def ad_form_expanded(rel: ClassicalRelation) -> dict:
    """Expand sum_s coeff_s (ad b_i)^s b_j into b_i^m b_j b_i^m' monomials."""
    out = {}
    for s, v in rel.ad_form.items():
        for mp in range(s + 1):
            key = (s - mp, mp)
            out[key] = out.get(key, 0) + v * (-1) ** mp * comb(s, mp)
    return {k: v for k, v in out.items() if v}
