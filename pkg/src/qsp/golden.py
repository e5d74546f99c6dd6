"""Reference tables of structure constants, loaded from data/golden.json.

Each entry carries the transcribed formula as a restricted Python expression over
``c, q, qd, qjd, br``, where ``qd = q - q^-1``, ``qjd = q_j - q_j^-1`` and ``br(n, s)`` is
[n] in the variable q^s. The serialized Coeff stored alongside is checked against it.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field
from importlib import resources

from .qring import Coeff, LaurentPoly, QContext, RatFunc, q_integer

TABLE_CASE = {
    "T1a": ("case1", -1), "T1b": ("case1", -2), "T1c": ("case1", -3), "T4": ("case1", -4),
    "T2a": ("case2", -1), "T2b": ("case2", -2), "T5": ("case2", -3),
    "T3a": ("sigma", -1), "T3b": ("sigma", -2), "T6": ("sigma", -3),
}


class _Graded:
    """Sum over c-grades of RatFunc values; just enough arithmetic for the table formulas."""

    def __init__(self, parts):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}

    @classmethod
    def lift(cls, x):
        if isinstance(x, _Graded):
            return x
        return cls({0: RatFunc._lift(x)})

    def __add__(self, other):
        other = _Graded.lift(other)
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out[k] + v if k in out else v
        return _Graded(out)

    __radd__ = __add__

    def __neg__(self):
        return _Graded({k: -v for k, v in self.parts.items()})

    def __sub__(self, other):
        return self + (-_Graded.lift(other))

    def __rsub__(self, other):
        return _Graded.lift(other) - self

    def __mul__(self, other):
        other = _Graded.lift(other)
        out = {}
        for k1, v1 in self.parts.items():
            for k2, v2 in other.parts.items():
                v = v1 * v2
                out[k1 + k2] = out[k1 + k2] + v if k1 + k2 in out else v
        return _Graded(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _Graded.lift(other)
        if set(other.parts) != {0}:
            raise ValueError("can only divide by c-free quantities")
        inv = other.parts[0].inverse()
        return _Graded({k: v * inv for k, v in self.parts.items()})

    def __pow__(self, n):
        if n < 0:
            return _Graded.lift(1) / self ** (-n)
        out = _Graded.lift(1)
        for _ in range(n):
            out = out * self
        return out

    def to_coeff(self):
        if not self.parts:
            return Coeff.zero()
        if len(self.parts) != 1:
            raise ValueError("expression mixes c-grades")
        (k, v), = self.parts.items()
        return Coeff(k, v)


_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow,
            ast.USub, ast.UAdd, ast.Constant, ast.Name, ast.Load, ast.Call)


def eval_expr(text: str, ctx: QContext | None = None) -> Coeff:
    """Evaluate a transcribed table formula. Only arithmetic and the names above are allowed."""
    ctx = ctx or QContext.symmetric(-1)
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"disallowed syntax in {text!r}: {type(node).__name__}")
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name) and node.func.id == "br"):
            raise ValueError(f"only br(...) calls are allowed in {text!r}")
    env = {
        "c": _Graded({1: RatFunc(1)}),
        "q": _Graded.lift(LaurentPoly.monomial(ctx.eps_i)),
        "qd": _Graded.lift(ctx.qi_diff),
        "qjd": _Graded.lift(ctx.qj_diff),
        "br": lambda n, s=1: _Graded.lift(q_integer(n, s * ctx.eps_i)),
    }
    val = eval(compile(tree, "<golden>", "eval"), {"__builtins__": {}}, env)  # noqa: S307
    return _Graded.lift(val).to_coeff()


@dataclass
class GoldenEntry:
    table: str
    m: int
    m_prime: int | None
    t: int | None
    expr: str
    coeff: Coeff
    cell: str
    erratum: dict | None = None

    def expected(self) -> Coeff:
        """Value the computation must produce (the corrected one when an erratum is recorded)."""
        if self.erratum:
            return Coeff.from_dict(self.erratum["coeff"])
        return self.coeff

    def key(self):
        return (self.table, self.m, self.m_prime, self.t)


@dataclass
class GoldenTable:
    id: str
    case: str
    a_ij: int
    entries: list = field(default_factory=list)


def _read_raw(path=None):
    if path is not None:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files("qsp").joinpath("data/golden.json").read_text())


def load_golden(path=None) -> dict:
    raw = _read_raw(path)
    tables = {}
    for tid, body in raw["tables"].items():
        case, a = TABLE_CASE[tid]
        tab = GoldenTable(tid, case, a)
        resolved = {}
        pending = []
        for e in body["entries"]:
            if "ref" in e:
                pending.append(e)
                continue
            ent = GoldenEntry(tid, e["m"], e.get("m_prime"), e.get("t"), e["expr"],
                              Coeff.from_dict(e["coeff"]), e["cell"], e.get("erratum"))
            resolved[(e["m"], e.get("m_prime"), e.get("t"))] = ent
            tab.entries.append(ent)
        for e in pending:
            r = e["ref"]
            src = resolved[(r["m"], r.get("m_prime"), r.get("t"))]
            scale = e.get("scale", 1)
            err = None
            if src.erratum:
                err = dict(src.erratum, coeff=(src.expected() * scale).to_dict(),
                           expr=f"{scale}*({src.erratum['expr']})")
            tab.entries.append(GoldenEntry(tid, e["m"], e.get("m_prime"), e.get("t"),
                                           f"{scale}*({src.expr})", src.coeff * scale, e["cell"], err))
        tables[tid] = tab
    return tables


def computed_value(entry: GoldenEntry, ctx: QContext) -> Coeff:
    from .relations import rho_case1_projection, rho_case2, sigma_case2

    case = TABLE_CASE[entry.table][0]
    if case == "case1":
        return rho_case1_projection(entry.m, entry.m_prime, ctx)
    if case == "case2":
        return rho_case2(entry.m, entry.m_prime, entry.t, ctx)
    return sigma_case2(entry.m, entry.t, ctx)


def compare_tables(tables: dict, ids=None):
    """Yield (entry, ok, computed) for every entry of the selected tables."""
    for tid, tab in tables.items():
        if ids is not None and tid not in ids:
            continue
        ctx = QContext.symmetric(tab.a_ij)
        for e in tab.entries:
            got = computed_value(e, ctx)
            yield e, got == e.expected(), got
