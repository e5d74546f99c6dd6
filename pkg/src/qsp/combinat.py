"""Binary-tuple bookkeeping: partial sums, zeta statistic, the constrained
enumerators and the exponents attached to each summand.

Tuples are indexed from 1, as in the formulas they encode.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product


class BinaryTuple(tuple):
    """A 0/1 tuple with 1-based accessors."""

    def __new__(cls, bits=()):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"not a binary tuple: {bits}")
        return super().__new__(cls, bits)

    def bit(self, r):
        return self[r - 1]

    def partial(self, r, s):
        return partial_sum(self, r, s)

    def weight(self):
        return sum(self)

    def __repr__(self):
        return "".join(map(str, self)) or "()"


def partial_sum(l, r: int, s: int) -> int:
    """|l|_{r;s}; zero when r > s, indices clipped to the tuple."""
    if r > s:
        return 0
    lo = max(r, 1)
    hi = min(s, len(l))
    if lo > hi:
        return 0
    return sum(l[lo - 1:hi])


def zeta(l, s, r: int) -> int:
    """2|s|_{1;r-|l|_{1;r}} + |l|_{1;r} - r."""
    lr = partial_sum(l, 1, r)
    return 2 * partial_sum(s, 1, r - lr) + lr - r


def s_slot(l, s, r: int) -> int:
    """s_{r-|l|_{1;r}}, the s-bit attached to a position with l_r = 0."""
    return s[r - partial_sum(l, 1, r) - 1]


def even_odd(d: int):
    return d // 2, d % 2


@lru_cache(maxsize=None)
def _cube(n: int):
    return tuple(BinaryTuple(bits) for bits in product((0, 1), repeat=n))


def _ballot(s, shift_from=None):
    """2|s|_{1;p} >= p (+1 from position shift_from on) for every prefix."""
    run = 0
    for p, b in enumerate(s, start=1):
        run += b
        need = p + (1 if shift_from is not None and p >= shift_from else 0)
        if 2 * run < need:
            return False
    return True


def enumerate_L(m: int, m_prime: int, k: int, a: int) -> frozenset:
    n = 1 - a
    cut = 1 - a - k
    return frozenset(
        l for l in _cube(n)
        if partial_sum(l, 1, cut) == m and partial_sum(l, cut + 1, n) == m_prime
    )


def enumerate_S_case1(m: int, m_prime: int, a: int) -> frozenset:
    n = 1 - a - m - m_prime
    if n < 0 or n % 2:
        return frozenset()
    return frozenset(s for s in _cube(n) if sum(s) == n // 2 and _ballot(s))


def enumerate_S_case2(m: int, m_prime: int, k: int, t: int, a: int) -> frozenset:
    cut = 1 - a - k - m
    target = 1 - a - k - m - t
    return frozenset(s for s in enumerate_S_case1(m, m_prime, a) if partial_sum(s, 1, cut) == target)


def enumerate_Lp(m: int, m_prime: int, k: int, d: int, a: int) -> frozenset:
    return frozenset(
        l for l in _cube(-a)
        if sum(l) == m and partial_sum(l, 1, 1 - a - k + d) == m_prime
    )


def enumerate_Sp(m: int, m_prime: int, k: int, t: int, d: int, a: int) -> frozenset:
    n = -a - m
    if n < 0 or (1 - a - m) % 2:
        return frozenset()
    half = (1 - a - m) // 2
    cut = 1 - a - k - m_prime + d
    target = 1 - a - k - m_prime - t + d
    if target == 0:
        return frozenset()
    shift_from = 1 - a - k + d - m_prime
    return frozenset(
        s for s in _cube(n)
        if sum(s) == half and _ballot(s, shift_from) and partial_sum(s, 1, cut) == target
    )


def theta_exponent(l, s, k: int, a: int) -> int:
    return -a * zeta(l, s, 1 - a - k) - 2 * sum(zeta(l, s, r - 1) for r in range(1, 2 - a))


@dataclass(frozen=True)
class NVector:
    """Block data of the word F^{N_0} F_j F^{N_1} E F^{N_2} E ... between F_j and the E_j-insertion."""

    T: int
    entries: tuple
    xi0: int
    xi1: int
    R_set: frozenset
    nu: dict = field(hash=False, compare=False)

    @property
    def N0(self):
        return self.entries[0]

    def total(self, lo: int, hi: int) -> int:
        """|N|_{lo;hi}."""
        if lo > hi:
            return 0
        return sum(self.entries[lo:hi + 1])


def nvector(l, s, k: int, d: int, t: int, ctx) -> NVector:
    a = ctx.a_ij
    first = 1 - a - k
    last_mid = first + d
    N0 = zeta(l, s, first)
    T = N0 + t - partial_sum(s, 1, first - partial_sum(l, 1, first))
    # scan the middle block for the E-slots: |N|_{1;b} counts F-slots before the b-th one
    f_before = []
    f_count = 0
    for r in range(first + 1, last_mid + 1):
        if l[r - 1]:
            continue
        if s_slot(l, s, r):
            f_count += 1
        else:
            f_before.append(f_count)
    if len(f_before) != T:
        raise ValueError(f"inconsistent N-vector: T={T} but {len(f_before)} E-slots in the middle block")
    entries = [N0]
    prev = 0
    for cum in f_before:
        entries.append(cum - prev)
        prev = cum
    entries.append(zeta(l, s, last_mid) + T - N0 - prev)
    if any(n < 0 for n in entries):
        raise ValueError(f"inconsistent N-vector {entries}")
    def cum1(b):
        return sum(entries[1:b + 1])
    xi0 = T - cum1(T) - 1
    xi1 = T - cum1(T + 1)
    middle = set(range(first + 1, last_mid + 1))
    R = frozenset(r for r in range(1, -a + 1) if r not in middle)
    nu = {r: (0 if r <= first else 1) for r in range(1, -a + 1)}
    return NVector(T, tuple(entries), xi0, xi1, R, nu)


def kappa_exponent(l, s, k: int, t: int, d: int, m_prime: int, nv: NVector, a: int) -> int:
    acc = 0
    for r in range(1, -a + 1):
        weight = 1 if l[r - 1] else 1 - s_slot(l, s, r)
        acc += zeta(l, s, r - 1) * weight
    return -2 * acc - a * (nv.N0 - nv.total(1, nv.T + 1) - m_prime + d) + 2 * (k + t - d - 1)
