"""Brute-force path: free words in E, F, K^{+-1} for two indices, normal ordering
by the defining commutation relations, and the pure-K coefficient extraction.

Letters are short strings: ``Ei Fi Ki Ki- Ej Fj Kj Kj-``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinat import (
    enumerate_L, enumerate_Lp, enumerate_S_case1, enumerate_S_case2, enumerate_Sp,
    partial_sum, s_slot,
)
from .qring import Coeff, LaurentPoly, QContext, RatFunc, q_binomial

LETTERS = ("Ei", "Fi", "Ki", "Ki-", "Ej", "Fj", "Kj", "Kj-")
K_LETTERS = {"Ki": ("i", 1), "Ki-": ("i", -1), "Kj": ("j", 1), "Kj-": ("j", -1)}


def word(text: str) -> tuple:
    """Parse a debug rendering like ``"Fi Kj- Ei Ki-"``."""
    letters = tuple(text.split())
    bad = [x for x in letters if x not in LETTERS]
    if bad:
        raise ValueError(f"unknown letters {bad}")
    return letters


def render(w) -> str:
    return " ".join(w) if w else "1"


class NCPoly:
    """Finite linear combination of words with RatFunc coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = RatFunc._lift(c)
            if not c.is_zero():
                self.terms[tuple(w)] = c

    @classmethod
    def monomial(cls, w, c=1):
        return cls({tuple(w): c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly(out)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return NCPoly({w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return NCPoly(out)

    def __rmul__(self, other):
        return NCPoly({w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({c})*[{render(w)}]" for w, c in sorted(self.terms.items())) or "0"


@dataclass(frozen=True)
class StandardForm:
    """Map (E-word, F-word, kExpI, kExpJ) -> RatFunc."""

    terms: dict

    def coefficient(self, e_word=(), f_word=(), k_i=0, k_j=0):
        return self.terms.get((tuple(e_word), tuple(f_word), k_i, k_j), RatFunc(0))

    def __eq__(self, other):
        return isinstance(other, StandardForm) and self.terms == other.terms

    def to_ncpoly(self):
        out = {}
        for (e, f, ki, kj), c in self.terms.items():
            ks = (("Ki",) * ki if ki > 0 else ("Ki-",) * -ki) + (("Kj",) * kj if kj > 0 else ("Kj-",) * -kj)
            out[e + f + ks] = c
        return NCPoly(out)


def _cartan(ctx: QContext):
    return {("i", "i"): 2, ("i", "j"): ctx.a_ij, ("j", "i"): ctx.a_ji, ("j", "j"): 2}


def _pair(ctx: QContext, k_idx: str, letter: str) -> int:
    """q-exponent picked up when K_{k_idx} moves right past ``letter``."""
    eps = ctx.eps_i if k_idx == "i" else ctx.eps_j
    a = _cartan(ctx)[(k_idx, letter[1])]
    return eps * a if letter[0] == "E" else -eps * a


def _push_k(w, ctx: QContext):
    """Move every K-letter to the right end; returns (EF-word, ki, kj, q-exponent)."""
    ef = []
    ki = kj = 0
    qexp = 0
    pending = []  # K letters seen so far, each must pass every later E/F letter
    for x in w:
        if x in K_LETTERS:
            idx, sgn = K_LETTERS[x]
            pending.append((idx, sgn))
            if idx == "i":
                ki += sgn
            else:
                kj += sgn
        else:
            for idx, sgn in pending:
                qexp += sgn * _pair(ctx, idx, x)
            ef.append(x)
    return tuple(ef), ki, kj, qexp


@lru_cache(maxsize=None)
def _nf(ef: tuple, ctx: QContext):
    """Normal form of an E/F word; numerators only, one implicit 1/(q_a - q_a^{-1}) per contraction."""
    for p in range(len(ef) - 1):
        if ef[p][0] == "F" and ef[p + 1][0] == "E":
            break
    else:
        es = tuple(x for x in ef if x[0] == "E")
        fs = tuple(x for x in ef if x[0] == "F")
        return {(es, fs, 0, 0): LaurentPoly.const(1)}
    fb, ea = ef[p], ef[p + 1]
    out = dict(_nf(ef[:p] + (ea, fb) + ef[p + 2:], ctx))
    if fb[1] == ea[1]:
        idx = ea[1]
        suffix = ef[p + 2:]
        e = sum(_pair(ctx, idx, x) for x in suffix)
        rest = _nf(ef[:p] + suffix, ctx)
        for sgn, c in ((1, LaurentPoly.monomial(e, -1)), (-1, LaurentPoly.monomial(-e, 1))):
            for (es, fs, ki, kj), v in rest.items():
                key = (es, fs, ki + sgn, kj) if idx == "i" else (es, fs, ki, kj + sgn)
                nv = out.get(key, LaurentPoly()) + c * v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    return out


def _denominator(ctx: QContext, n_i: int, n_j: int) -> LaurentPoly:
    return ctx.qi_diff ** n_i * ctx.qj_diff ** n_j


def normal_order(p, ctx: QContext) -> StandardForm:
    if not isinstance(p, NCPoly):
        p = NCPoly.monomial(p)
    acc = {}
    for w, c in p.terms.items():
        ef, ki0, kj0, qexp = _push_k(w, ctx)
        n_ei = ef.count("Ei")
        n_ej = ef.count("Ej")
        for (es, fs, ki, kj), v in _nf(ef, ctx).items():
            den = _denominator(ctx, n_ei - es.count("Ei"), n_ej - es.count("Ej"))
            val = c * RatFunc(v.shift(qexp), den)
            key = (es, fs, ki0 + ki, kj0 + kj)
            acc[key] = acc[key] + val if key in acc else val
    return StandardForm({k: v for k, v in acc.items() if not v.is_zero()})


def counit_project(p, nI: int, nJ: int, ctx: QContext) -> RatFunc:
    """Coefficient of K_i^nI K_j^nJ (no E, no F) in the standard form of p."""
    if not isinstance(p, NCPoly):
        p = NCPoly.monomial(p)
    # group by word so that every contribution shares one denominator
    total = RatFunc(0)
    for w, c in p.terms.items():
        ef, ki0, kj0, qexp = _push_k(w, ctx)
        v = _nf(ef, ctx).get(((), (), nI - ki0, nJ - kj0))
        if v is None:
            continue
        den = _denominator(ctx, ef.count("Ei"), ef.count("Ej"))
        total = total + c * RatFunc(v.shift(qexp), den)
    return total


# ---------------------------------------------------------------- builders

def _t_letters(l, s, r):
    if l[r - 1]:
        return ("Ki-",)
    if s_slot(l, s, r):
        return ("Fi",)
    return ("Ei", "Ki-")


def build_p(l, s, k: int, ctx: QContext) -> NCPoly:
    a = ctx.a_ij
    if len(l) != 1 - a or len(s) != 1 - a - sum(l) or not 0 <= k <= 1 - a:
        raise ValueError("build_p: tuple lengths do not match a_ij")
    w = []
    for r in range(1, 2 - a - k):
        w += _t_letters(l, s, r)
    w.append("Kj-")
    for r in range(2 - a - k, 2 - a):
        w += _t_letters(l, s, r)
    return NCPoly.monomial(w)


def build_r(l, s, k: int, d: int, ctx: QContext) -> NCPoly:
    a = ctx.a_ij
    if len(l) != -a or len(s) != -a - sum(l) or not (1 <= k <= 1 - a and 0 <= d <= k - 1):
        raise ValueError("build_r: tuple lengths do not match a_ij")
    head = []
    for r in range(1, 2 - a - k):
        head += _t_letters(l, s, r)
    head.append("Fj")
    for r in range(2 - a - k, 2 - a - k + d):
        head += _t_letters(l, s, r)
    tail = []
    for r in range(2 - a - k + d, 1 - a):
        tail += _t_letters(l, s, r)
    w0 = tuple(head) + ("Ej", "Ei", "Ki-") + tuple(tail)
    w1 = tuple(head) + ("Ei", "Ej", "Ki-") + tuple(tail)
    return NCPoly({w0: 1, w1: -LaurentPoly.monomial(a * ctx.eps_i)})


# ---------------------------------------------------------------- oracles

def _sign(k):
    return 1 if k % 2 else -1  # (-1)^{k+1}


def _rho_oracle(m, m_prime, ctx, s_sets):
    a = ctx.a_ij
    if (a + m + m_prime) % 2 == 0:
        return Coeff.zero()
    target = (-(1 - a), -1)
    total = RatFunc(0)
    for k in range(m_prime, 2 - a - m):
        binom = q_binomial(1 - a, k, ctx.eps_i) * _sign(k)
        for l in sorted(enumerate_L(m, m_prime, k, a)):
            for s in sorted(s_sets(k)):
                total = total + binom * counit_project(build_p(l, s, k, ctx), *target, ctx)
    return Coeff((1 - a - m - m_prime) // 2, total)


def oracle_rho_case1(m: int, m_prime: int, ctx: QContext) -> Coeff:
    return _rho_oracle(m, m_prime, ctx, lambda k: enumerate_S_case1(m, m_prime, ctx.a_ij))


def oracle_rho_case2(m: int, m_prime: int, t: int, ctx: QContext) -> Coeff:
    return _rho_oracle(m, m_prime, ctx, lambda k: enumerate_S_case2(m, m_prime, k, t, ctx.a_ij))


def oracle_sigma(m: int, t: int, ctx: QContext) -> Coeff:
    a = ctx.a_ij
    if (a + m) % 2 == 0:
        return Coeff.zero()
    target = (-(1 - a), -1)
    total = RatFunc(0)
    for k in range(1, 2 - a):
        binom = q_binomial(1 - a, k, ctx.eps_i) * _sign(k)
        for d in range(k):
            for mp in range(m + 1):
                pref = binom.shift(mp * a * ctx.eps_i)
                for l in sorted(enumerate_Lp(m, mp, k, d, a)):
                    for s in sorted(enumerate_Sp(m, mp, k, t, d, a)):
                        total = total + pref * counit_project(build_r(l, s, k, d, ctx), *target, ctx)
    return Coeff((1 - a - m) // 2, total)


def projection_target(ctx: QContext):
    """K-exponents (i, j) selected by the projection for p- and r-monomials."""
    return -(1 - ctx.a_ij), -1


__all__ = [
    "NCPoly", "StandardForm", "normal_order", "counit_project", "build_p", "build_r",
    "oracle_rho_case1", "oracle_rho_case2", "oracle_sigma", "word", "render", "partial_sum",
]
