"""Exact arithmetic in Q(q) and the scalar q-quantities used by the closed formulas.

Laurent polynomials are stored as ``{exponent: coefficient}`` with integer or
``Fraction`` coefficients.  Rational functions are kept in a canonical reduced
form so that equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentPoly:
    """A Laurent polynomial in one variable q with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = _norm(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls({exp: c})

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- access --
    def items(self):
        return sorted(self._terms.items())

    def coeff(self, e):
        return self._terms.get(e, 0)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def min_exp(self):
        return min(self._terms)

    def max_exp(self):
        return max(self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_const(self):
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    # -- algebra --
    @staticmethod
    def _lift(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Rational)):
            return LaurentPoly.const(x)
        return NotImplemented

    def __eq__(self, other):
        other = LaurentPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = LaurentPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = LaurentPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, LaurentPoly):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self._terms.items()})
        other = LaurentPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: Fraction(1) / Fraction(c) ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale_exponents(self, s):
        """Substitute q -> q^s."""
        return LaurentPoly._raw({e * s: c for e, c in self._terms.items()})

    def eval(self, x):
        x = Fraction(x)
        return _norm(sum((Fraction(c) * x ** e for e, c in self._terms.items()), Fraction(0)))

    # -- division --
    def _dense(self):
        lo, hi = self.min_exp(), self.max_exp()
        return lo, [Fraction(self._terms.get(e, 0)) for e in range(lo, hi + 1)]

    @staticmethod
    def _from_dense(lo, coeffs):
        return LaurentPoly({lo + i: c for i, c in enumerate(coeffs) if c})

    def divmod_laurent(self, other):
        """Divide in the Laurent ring; returns (quotient, remainder-is-zero)."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly(), True
        lo_a, a = self._dense()
        lo_b, b = other._dense()
        quot, rem = _poly_divmod(a, b)
        return LaurentPoly._from_dense(lo_a - lo_b, quot), not any(rem)

    def exact_div(self, other):
        other = LaurentPoly._lift(other)
        quot, exact = self.divmod_laurent(other)
        if not exact:
            raise ArithmeticError(f"non-exact division of {self} by {other}")
        return quot

    # -- io --
    def to_triples(self):
        out = []
        for e, c in self.items():
            c = Fraction(c)
            out.append([e, c.numerator, c.denominator])
        return out

    @classmethod
    def from_triples(cls, triples):
        return cls({int(e): Fraction(int(p), int(d)) for e, p, d in triples})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if e == 0:
                body = str(mag)
            else:
                qpow = "q" if e == 1 else f"q^{e}"
                body = qpow if mag == 1 else f"{mag}*{qpow}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _poly_divmod(a, b):
    """Dense polynomial division over Q, coefficients low to high."""
    a = list(a)
    while b and b[-1] == 0:
        b = b[:-1]
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], a
    quot = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = c / lead
            quot[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return quot, a[:db]


def _strip(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_gcd(a, b):
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _strip(r)
    lead = a[-1]
    return [c / lead for c in a]


def _ordinary(p: LaurentPoly):
    """Split p = q^lo * P(q) with P(0) != 0; returns (lo, dense P)."""
    return p._dense()


class PoleAtOne(ValueError):
    pass


class RatFunc:
    """A reduced quotient num/den of Laurent polynomials.

    Canonical form: ``den`` is an ordinary polynomial with nonzero constant
    term, integer coefficients of content 1 and positive constant term; all
    q-power content sits in ``num``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        num = LaurentPoly._lift(num)
        den = LaurentPoly._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if num.is_zero():
            self.num, self.den = LaurentPoly(), LaurentPoly.const(1)
            return
        lo_n, n = _ordinary(num)
        lo_d, d = _ordinary(den)
        if len(d) > 1:
            g = _poly_gcd(n, d)
            if len(g) > 1:
                n, _ = _poly_divmod(n, g)
                d, _ = _poly_divmod(d, g)
        # make d primitive over Z with positive constant term
        den_l = 1
        for c in d:
            den_l = lcm(den_l, Fraction(c).denominator)
        ints = [int(Fraction(c) * den_l) for c in d]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[0] < 0:
            g = -g
        scale = Fraction(den_l, g)
        d = [Fraction(c) * scale for c in d]
        n = [Fraction(c) * scale for c in n]
        self.num = LaurentPoly._from_dense(lo_n - lo_d, n)
        self.den = LaurentPoly._from_dense(0, d)

    @staticmethod
    def _lift(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (LaurentPoly, int, Rational)):
            return RatFunc(x)
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den == 1

    def as_laurent(self):
        if not self.is_laurent():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num, out.den, out._hash = -self.num, self.den, None
        return out

    def __sub__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc._lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def to_dict(self):
        return {"num": self.num.to_triples(), "den": self.den.to_triples()}

    @classmethod
    def from_dict(cls, d):
        return cls(LaurentPoly.from_triples(d["num"]), LaurentPoly.from_triples(d["den"]))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class Coeff:
    """A scalar c^c_power * value with value in Q(q)."""

    c_power: int
    value: RatFunc

    def __post_init__(self):
        if not isinstance(self.value, RatFunc):
            object.__setattr__(self, "value", RatFunc(self.value))

    @classmethod
    def zero(cls):
        return cls(0, RatFunc(0))

    def is_zero(self):
        return self.value.is_zero()

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.c_power != other.c_power:
            raise ValueError(f"cannot add c-grades {self.c_power} and {other.c_power}")
        return Coeff(self.c_power, self.value + other.value)

    def __neg__(self):
        return Coeff(self.c_power, -self.value)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Coeff):
            return Coeff(self.c_power + other.c_power, self.value * other.value)
        return Coeff(self.c_power, self.value * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Coeff):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.c_power == other.c_power and self.value == other.value

    def __hash__(self):
        if self.is_zero():
            return hash(0)
        return hash((self.c_power, self.value))

    def to_dict(self):
        return {"c_power": self.c_power, **self.value.to_dict()}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["c_power"]), RatFunc.from_dict(d))

    def __str__(self):
        if self.is_zero():
            return "0"
        c = "" if self.c_power == 0 else ("c" if self.c_power == 1 else f"c^{self.c_power}")
        if not c:
            return str(self.value)
        return f"{c}*({self.value})"


@dataclass(frozen=True)
class QContext:
    """Local Cartan data for the ordered pair (i, j)."""

    a_ij: int
    a_ji: int
    eps_i: int = 1
    eps_j: int = 1

    def __post_init__(self):
        if self.a_ij > 0 or self.a_ji > 0:
            raise ValueError("off-diagonal Cartan entries must be non-positive")
        if self.eps_i < 1 or self.eps_j < 1:
            raise ValueError("symmetrizers eps_i, eps_j must be positive")
        if (self.a_ij == 0) != (self.a_ji == 0):
            raise ValueError("a_ij == 0 must hold exactly when a_ji == 0")
        if self.eps_i * self.a_ij != self.eps_j * self.a_ji:
            raise ValueError("symmetrizability eps_i*a_ij == eps_j*a_ji violated")

    @classmethod
    def symmetric(cls, a_ij, eps_i=1, eps_j=None):
        """Context whose a_ji is forced by symmetrizability."""
        if eps_j is None:
            eps_j = eps_i
        num = eps_i * a_ij
        if num % eps_j:
            raise ValueError("symmetrizability eps_i*a_ij == eps_j*a_ji has no integer a_ji")
        return cls(a_ij, num // eps_j, eps_i, eps_j)

    @property
    def qi(self):
        return LaurentPoly.monomial(self.eps_i)

    @property
    def qj(self):
        return LaurentPoly.monomial(self.eps_j)

    def qi_pow(self, n):
        return LaurentPoly.monomial(self.eps_i * n)

    @property
    def qi_diff(self):
        """q_i - q_i^{-1}."""
        return LaurentPoly({self.eps_i: 1, -self.eps_i: -1})

    @property
    def qj_diff(self):
        return LaurentPoly({self.eps_j: 1, -self.eps_j: -1})


# ---------------------------------------------------------------- q-numbers

Q = LaurentPoly.monomial(1)


@lru_cache(maxsize=None)
def q_integer(n: int, scale: int = 1) -> LaurentPoly:
    """[n] in the variable q^scale."""
    if n == 0:
        return LaurentPoly()
    sign = 1 if n > 0 else -1
    m = abs(n)
    return LaurentPoly({scale * (m - 1 - 2 * k): sign for k in range(m)})


@lru_cache(maxsize=None)
def q_factorial(n: int, scale: int = 1) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for k in range(1, n + 1):
        out = out * q_integer(k, scale)
    return out


@lru_cache(maxsize=None)
def q_binomial(N: int, m: int, scale: int = 1) -> LaurentPoly:
    if m < 0 or m > N:
        raise ValueError(f"q_binomial needs 0 <= m <= N, got N={N}, m={m}")
    num = q_factorial(N, scale)
    den = q_factorial(m, scale) * q_factorial(N - m, scale)
    return num.exact_div(den)


@lru_cache(maxsize=None)
def _modified_square(N: int, eps: int) -> LaurentPoly:
    one = LaurentPoly.const(1)
    if N >= 0:
        top = one - LaurentPoly.monomial(2 * eps * N)
        return top.exact_div(one - LaurentPoly.monomial(2 * eps))
    # (1 - x^N)/(1 - x) with x = q^{2 eps}, N < 0: multiply through by x^{-N}
    top = LaurentPoly.monomial(-2 * eps * N) - one
    return top.exact_div(one - LaurentPoly.monomial(2 * eps)).shift(2 * eps * N)


def q_modified_square(N: int, ctx: QContext) -> LaurentPoly:
    """(N)_{q_i^2} = (1 - q_i^{2N})/(1 - q_i^2), for any integer N."""
    return _modified_square(N, ctx.eps_i)


@lru_cache(maxsize=None)
def q_pochhammer(x_exp: int, m: int) -> LaurentPoly:
    """(x;x)_m with x = q^x_exp."""
    out = LaurentPoly.const(1)
    for k in range(1, m + 1):
        out = out * LaurentPoly({0: 1, k * x_exp: -1})
    return out


def alpha_coeff(N: int, ctx: QContext) -> LaurentPoly:
    if N < 0:
        return LaurentPoly()
    return q_modified_square(N, ctx).shift(ctx.eps_i * (2 - 2 * N))


def gamma_coeff(M: int, N: int, ctx: QContext) -> LaurentPoly:
    return q_modified_square(N - M, ctx).shift(ctx.eps_i * (2 - ctx.a_ij - 2 * N))


def rat_eval_at_one(f) -> Fraction:
    """Value at q = 1 of a reduced rational function."""
    f = RatFunc._lift(f)
    d = f.den.eval(1)
    if d == 0:
        raise PoleAtOne(f"{f} has a pole at q = 1")
    return Fraction(f.num.eval(1)) / Fraction(d)
