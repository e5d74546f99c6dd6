"""Classical coefficients c_s[r]: both closed forms, the recursion as written, and the q -> 1
limit of the quantum constants. Marks every cell where the recursion disagrees."""
import sys
from math import comb

from qsp.onsager import classical_c_closed, classical_c_recursion, specialize_rho_q1
from qsp.qring import QContext

R_MAX = int(sys.argv[1]) if len(sys.argv) > 1 else 8

print("r  s  closed1  closed2  recursion")
for r in range(R_MAX + 1):
    for s in range(r, -1, -1):
        c1, c2, rec = classical_c_closed(s, r, 1), classical_c_closed(s, r, 2), classical_c_recursion(s, r)
        flag = "" if c1 == rec else "   <- recursion differs"
        print(f"{r:<2} {s:<2} {c1:>8} {c2:>8} {rec:>10}{flag}")

print("\nq -> 1 of rho_{m,m'} against (-1)^{a+m} binom(m+m', m') c_{m+m'}[1-a]")
for a in range(-1, -R_MAX // 2 - 2, -1):
    ctx = QContext.symmetric(a)
    rows = []
    for m in range(-a):
        for mp in range(-a - m):
            got = specialize_rho_q1(m, mp, ctx)
            want = (-1) ** ((a + m) % 2) * comb(m + mp, mp) * classical_c_closed(m + mp, 1 - a)
            rows.append(f"({m},{mp})={got}" + ("" if got == want else "!"))
    print(f"a={a}: " + " ".join(rows))
