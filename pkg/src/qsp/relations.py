"""Closed-form structure constants and assembly of complete relation tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .combinat import (
    enumerate_L, enumerate_Lp, enumerate_S_case1, enumerate_S_case2, enumerate_Sp,
    even_odd, kappa_exponent, nvector, s_slot, theta_exponent, zeta,
)
from .qring import (
    Coeff, LaurentPoly, QContext, RatFunc, alpha_coeff, gamma_coeff, q_binomial,
    q_modified_square, q_pochhammer,
)

KINDS = ("ZBB", "ZBBZ", "ZWKZB", "BZ_tau")
CASES = ("case1", "case2", "tau", "split", "classical")


@dataclass(frozen=True, order=True)
class TermShape:
    kind: str
    m: int
    m_prime: int | None = None
    t: int | None = None
    z_power: int = 0

    def sort_key(self):
        return (KINDS.index(self.kind), self.m, -1 if self.m_prime is None else self.m_prime,
                -1 if self.t is None else self.t, self.z_power)


@dataclass
class RelationTable:
    ctx: QContext
    case_tag: str
    terms: dict = field(default_factory=dict)

    def ordered(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def get(self, kind, m, m_prime=None, t=None):
        for shape, c in self.terms.items():
            if shape.kind == kind and shape.m == m and shape.m_prime == m_prime and shape.t == t:
                return c
        return Coeff.zero()

    def __eq__(self, other):
        return (isinstance(other, RelationTable) and self.ctx == other.ctx
                and self.case_tag == other.case_tag and self.terms == other.terms)


# ---------------------------------------------------------------- free algebra on x, y

class FreeBiPoly:
    """Noncommutative polynomial in x, y; words are strings over {x, y}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            if isinstance(c, LaurentPoly):
                c = RatFunc(c)
            c = RatFunc._lift(c)
            if not c.is_zero():
                self.terms[w] = c

    @classmethod
    def var(cls, name):
        return cls({name: 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeBiPoly(out)

    def __neg__(self):
        return FreeBiPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FreeBiPoly):
            return FreeBiPoly({w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return FreeBiPoly(out)

    def __rmul__(self, other):
        return FreeBiPoly({w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FreeBiPoly) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({c}){w}" for w, c in sorted(self.terms.items())) or "0"


def fij_free(ctx: QContext) -> FreeBiPoly:
    n = 1 - ctx.a_ij
    return FreeBiPoly({
        "x" * (n - l) + "y" + "x" * l: q_binomial(n, l, ctx.eps_i) * (-1) ** l
        for l in range(n + 1)
    })


def nested_qcomm(ctx: QContext, A: str = "x", B: str = "y") -> FreeBiPoly:
    """Ordered product of ad_{q_i^m}(A), m = a/2 .. -a/2, applied to B.

    Half-integer m is handled by computing in t = q^{1/2} and halving at the end.
    """
    a = ctx.a_ij
    cur = {B: LaurentPoly.const(1)}
    for k in range(1 - a):  # the ad-operators commute, so the order is immaterial
        two_m = a + 2 * k  # 2m
        e = two_m * ctx.eps_i
        nxt = {}
        for w, c in cur.items():
            for w2, c2 in ((A + w, c.shift(e)), (w + A, -c.shift(-e))):
                v = nxt.get(w2, LaurentPoly()) + c2
                if v:
                    nxt[w2] = v
                else:
                    nxt.pop(w2, None)
        cur = nxt
    out = {}
    for w, c in cur.items():
        if any(e % 2 for e, _ in c.items()):
            raise ArithmeticError("half-integer q-power survived in nested q-commutator")
        out[w] = LaurentPoly({e // 2: v for e, v in c.items()})
    return FreeBiPoly(out)


# ---------------------------------------------------------------- Case 1

def _w(a, m, mp):
    return (1 - a - m - mp) // 2


def _check_case1(m, m_prime, ctx):
    if m < 0 or m_prime < 0 or m + m_prime > -1 - ctx.a_ij:
        raise ValueError(f"need m + m' <= -1 - a_ij, got ({m}, {m_prime}) for a_ij={ctx.a_ij}")


def theta_constant(m: int, m_prime: int, variant: int, ctx: QContext) -> LaurentPoly:
    from .onsager import alpha_sk

    a = ctx.a_ij
    if m + m_prime > 1 - a or (a + m + m_prime) % 2 == 0:
        raise ValueError("theta_constant needs m + m' <= 1 - a_ij with a_ij + m + m' odd")
    w = _w(a, m, m_prime)
    a_e, a_p = even_odd(a)
    m_e, m_p = even_odd(m)
    total = LaurentPoly()
    for r in range(w + 1):
        binom = q_binomial(1 - a, m + 2 * r, ctx.eps_i)
        if variant == 0:
            f1 = alpha_sk(r, r + m_e + m_p - 1, 0, ctx)
            f2 = alpha_sk(w - r, -a_e - a_p - r - m_e - m_p, a_p, ctx)
        elif variant == 1:
            f1 = alpha_sk(r, r + m_e - 1, 1, ctx)
            f2 = alpha_sk(w - r, -a_e - r - m_e - 1, 1 - a_p, ctx)
        else:
            raise ValueError("variant must be 0 or 1")
        if f1 and f2:
            total = total + binom * f1 * f2
    return total


def rho_case1_theta(m: int, m_prime: int, variant: int, ctx: QContext) -> Coeff:
    _check_case1(m, m_prime, ctx)
    a = ctx.a_ij
    if (a + m + m_prime) % 2 == 0:
        return Coeff.zero()
    w = _w(a, m, m_prime)
    sign = (-1) ** ((a + m + w) % 2)
    return Coeff(w, RatFunc(theta_constant(m, m_prime, variant, ctx).shift(ctx.eps_i * w) * sign))


def _case1_numerator(m, m_prime, ctx, s_sets):
    """Sum over k, l, s of (-1)^{k+1} [1-a; k] q_i^theta prod (zeta+1)_{q_i^2}."""
    a = ctx.a_ij
    total = LaurentPoly()
    for k in range(m_prime, 2 - a - m):
        binom = q_binomial(1 - a, k, ctx.eps_i) * (1 if k % 2 else -1)
        ls = enumerate_L(m, m_prime, k, a)
        if not ls:
            continue
        for s in s_sets(k):
            for l in ls:
                term = binom.shift(ctx.eps_i * theta_exponent(l, s, k, a))
                for r in range(1, 2 - a):
                    if not l[r - 1] and s_slot(l, s, r):
                        term = term * q_modified_square(zeta(l, s, r - 1) + 1, ctx)
                total = total + term
    return total


def rho_case1_projection(m: int, m_prime: int, ctx: QContext) -> Coeff:
    _check_case1(m, m_prime, ctx)
    a = ctx.a_ij
    if (a + m + m_prime) % 2 == 0:
        return Coeff.zero()
    w = _w(a, m, m_prime)
    num = _case1_numerator(m, m_prime, ctx, lambda k: enumerate_S_case1(m, m_prime, a))
    value = num.shift(2 * ctx.eps_i * w).exact_div(ctx.qi_diff ** w)
    return Coeff(w, RatFunc(value))


def rho_case2(m: int, m_prime: int, t: int, ctx: QContext) -> Coeff:
    _check_case1(m, m_prime, ctx)
    a = ctx.a_ij
    if (a + m + m_prime) % 2 == 0:
        return Coeff.zero()
    w = _w(a, m, m_prime)
    if not 0 <= t <= w:
        raise ValueError(f"t must lie in 0..{w}")
    num = _case1_numerator(m, m_prime, ctx, lambda k: enumerate_S_case2(m, m_prime, k, t, a))
    return Coeff(w, RatFunc(num.shift(2 * ctx.eps_i * w), ctx.qi_diff ** w))


# ---------------------------------------------------------------- Case 2, sigma

def _entries(N):
    return N.entries if hasattr(N, "entries") else tuple(N)


def cab_coefficient(a_idx: int, b_idx: int, N, ctx: QContext) -> LaurentPoly:
    """c^{(b)}_{a,N}: sum over p_1 <= ... <= p_{b-a} in 0..a of a product of gammas."""
    if a_idx > b_idx:
        raise ValueError("cab_coefficient needs a <= b")
    if a_idx == b_idx:
        return LaurentPoly.const(1)
    ent = _entries(N)
    N0 = ent[0]

    def cum(p):
        return sum(ent[:p + 1])

    total = LaurentPoly()
    for ps in combinations_with_replacement(range(a_idx + 1), b_idx - a_idx):
        term = LaurentPoly.const(1)
        for r, p in enumerate(ps, start=1):
            term = term * gamma_coeff(N0 - a_idx + p, cum(b_idx - p - r + 1) - (b_idx - p - r), ctx)
            if not term:
                break
        total = total + term
    return total


def _alpha_run(N0, u, ctx):
    out = LaurentPoly.const(1)
    for r in range(u):
        out = out * alpha_coeff(N0 - r, ctx)
    return out


def _sigma_bracket(l, s, k, d, nv, ctx):
    a = ctx.a_ij
    qa = ctx.qi_pow(a)
    T, N0 = nv.T, nv.N0
    z_mid = zeta(l, s, 1 - a - k + d)
    if T == 0:
        N1 = nv.entries[1]
        return alpha_coeff(z_mid, ctx) - qa * (qa * alpha_coeff(N0, ctx) + gamma_coeff(N0, N0 + N1, ctx))
    N_0 = nv.entries[:T + 1]
    N_1 = nv.entries[:T + 2]
    total = LaurentPoly()
    a_mid = alpha_coeff(z_mid, ctx)
    for u in range(max(0, nv.xi0), T):
        omega = (a_mid * cab_coefficient(u, T - 1, N_0, ctx)
                 * (qa * alpha_coeff(N0 - u, ctx) + gamma_coeff(N0 - u, nv.total(0, T) - (T - 1), ctx))
                 * _alpha_run(N0, u, ctx))
        total = total + ctx.qi_pow(a * u) * omega
    for u in range(max(0, nv.xi1), T + 1):
        omega = (-qa * cab_coefficient(u, T, N_1, ctx)
                 * (qa * alpha_coeff(N0 - u, ctx) + gamma_coeff(N0 - u, nv.total(0, T + 1) - T, ctx))
                 * _alpha_run(N0, u, ctx))
        total = total + ctx.qi_pow(a * u) * omega
    return total


def sigma_case2(m: int, t: int, ctx: QContext) -> Coeff:
    a = ctx.a_ij
    if not 0 <= m <= -1 - a:
        raise ValueError(f"m must lie in 0..{-1 - a}")
    if (a + m) % 2 == 0:
        return Coeff.zero()
    w = (1 - a - m) // 2
    if not 0 <= t <= (-1 - a - m) // 2:
        raise ValueError("t out of range")
    total = LaurentPoly()
    for k in range(1, 2 - a):
        binom = q_binomial(1 - a, k, ctx.eps_i) * (1 if k % 2 else -1)
        for d in range(k):
            for mp in range(m + 1):
                ls = enumerate_Lp(m, mp, k, d, a)
                if not ls:
                    continue
                ss = enumerate_Sp(m, mp, k, t, d, a)
                for l in ls:
                    for s in ss:
                        nv = nvector(l, s, k, d, t, ctx)
                        term = binom.shift(ctx.eps_i * kappa_exponent(l, s, k, t, d, mp, nv, a))
                        for r in sorted(nv.R_set):
                            if not l[r - 1] and not s_slot(l, s, r):
                                term = term * alpha_coeff(zeta(l, s, r - 1) - nv.nu[r], ctx)
                        if term:
                            total = total + term * _sigma_bracket(l, s, k, d, nv, ctx)
    return Coeff(w, RatFunc(total, ctx.qi_diff ** w * ctx.qj_diff))


# ---------------------------------------------------------------- tau(i) = j

def c_tau_coefficients(ctx: QContext):
    """Coefficients of B_i^{-a} Z_i and B_i^{-a} Z_j when tau(i) = j != i."""
    a, e = ctx.a_ij, ctx.eps_i
    pref = RatFunc(-1, ctx.qi_diff ** 2)
    zi = pref * q_pochhammer(2 * e, 1 - a).shift(e * (a - 1))
    zj = pref * q_pochhammer(-2 * e, 1 - a).shift(e)
    return Coeff(1, zi), Coeff(1, zj)


# ---------------------------------------------------------------- assembly

def _case1_cells(a):
    for m in range(-a):
        for mp in range(-a - m):
            if (a + m + mp) % 2:
                yield m, mp


def assemble_relation(case_tag: str, ctx: QContext, jobs: int = 1) -> RelationTable:
    tag = {"1": "case1", "2": "case2"}.get(str(case_tag), str(case_tag))
    if tag not in CASES:
        raise ValueError(f"unknown case {case_tag!r}")
    a = ctx.a_ij
    table = RelationTable(ctx, tag)
    if tag in ("case1", "split"):
        cells = list(_case1_cells(a))
        values = _parallel_map(_rho1_cell, [(m, mp, ctx) for m, mp in cells], jobs)
        for (m, mp), c in zip(cells, values):
            w = _w(a, m, mp)
            if tag == "split":
                c = Coeff(c.c_power, c.value * (-1) ** w)
                shape = TermShape("ZBB", m, mp, None, 0)
            else:
                shape = TermShape("ZBB", m, mp, None, w)
            if not c.is_zero():
                table.terms[shape] = c
    elif tag == "case2":
        cells = [(m, mp, t) for m, mp in _case1_cells(a) for t in range(_w(a, m, mp) + 1)]
        values = _parallel_map(_rho2_cell, [(m, mp, t, ctx) for m, mp, t in cells], jobs)
        for (m, mp, t), c in zip(cells, values):
            if not c.is_zero():
                table.terms[TermShape("ZBBZ", m, mp, t, _w(a, m, mp))] = c
        scells = [(m, t) for m in range(-a) if (a + m) % 2 for t in range((-1 - a - m) // 2 + 1)]
        values = _parallel_map(_sigma_cell, [(m, t, ctx) for m, t in scells], jobs)
        for (m, t), c in zip(scells, values):
            if not c.is_zero():
                table.terms[TermShape("ZWKZB", m, None, t, (-1 - a - m) // 2)] = c
    elif tag == "tau":
        zi, zj = c_tau_coefficients(ctx)
        table.terms[TermShape("BZ_tau", -a, None, 0, 1)] = zi
        table.terms[TermShape("BZ_tau", -a, None, 1, 1)] = zj
    else:
        from .onsager import classical_relation

        for (m, mp), v in classical_relation(a).terms.items():
            table.terms[TermShape("ZBB", m, mp, None, 0)] = Coeff(0, RatFunc(v))
    return table


def _rho1_cell(args):
    return rho_case1_projection(*args)


def _rho2_cell(args):
    return rho_case2(*args)


def _sigma_cell(args):
    return sigma_case2(*args)


def _parallel_map(fn, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def check_symmetry(table: RelationTable) -> bool:
    if table.case_tag not in ("case1", "split"):
        raise ValueError("symmetry applies to case1 and split tables")
    a = table.ctx.a_ij
    sign = (-1) ** ((1 - a) % 2)
    for (m, mp) in _case1_cells(a):
        lhs = table.get("ZBB", m, mp)
        rhs = table.get("ZBB", mp, m)
        if lhs != rhs * sign:
            return False
    return True
