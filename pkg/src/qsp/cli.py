"""Command-line front end: ``qsp relations`` and ``qsp verify``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .qring import Coeff, LaurentPoly, QContext, RatFunc
from .relations import RelationTable, TermShape, assemble_relation

CASE_ALIASES = {"1": "case1", "2": "case2", "tau": "tau", "split": "split", "classical": "classical"}


@dataclass
class RunConfig:
    command: str
    a_ij: int = -1
    a_ji: int | None = None
    eps_i: int = 1
    eps_j: int | None = None
    case: str = "case1"
    format: str = "text"
    out: str | None = None
    depth: int = 4
    jobs: int = 1
    golden: str | None = None

    def context(self) -> QContext:
        eps_j = self.eps_i if self.eps_j is None else self.eps_j
        if self.a_ji is None:
            if (self.eps_i * self.a_ij) % eps_j:
                raise ValueError(f"no integer a_ji with eps_i*a_ij == eps_j*a_ji for eps_j={eps_j}")
            a_ji = self.eps_i * self.a_ij // eps_j
        else:
            a_ji = self.a_ji
        return QContext(self.a_ij, a_ji, self.eps_i, eps_j)


# ---------------------------------------------------------------- rendering

def _sign_split(p: LaurentPoly):
    """Pull an overall minus sign out when the leading coefficient is negative."""
    items = p.items()
    if items and items[-1][1] < 0:
        return "-", -p
    return "", p


def _poly_text(p: LaurentPoly) -> str:
    return str(p).replace("*", " ")


def split_denominator(v: RatFunc, ctx: QContext, limit: int = 8):
    """Write v as num / ((q_i - q_i^-1)^ki (q_j - q_j^-1)^kj) with ki + kj minimal, if possible."""
    for total in range(limit + 1):
        for kj in range(total + 1):
            ki = total - kj
            if ctx.qi_diff == ctx.qj_diff and kj:
                continue
            w = v * RatFunc(ctx.qi_diff ** ki * ctx.qj_diff ** kj)
            if w.is_laurent():
                return w.num, ki, kj
    return None


def _den_text(ki, kj, ctx, latex=False):
    out = []
    for k, eps, name in ((ki, ctx.eps_i, "i"), (kj, ctx.eps_j, "j")):
        if not k:
            continue
        if latex:
            base = f"(q_{name} - q_{name}^{{-1}})" if ctx.eps_i == 1 and eps == 1 else f"(q^{{{eps}}} - q^{{-{eps}}})"
            out.append(base if k == 1 else f"{base}^{{{k}}}")
        else:
            base = "(q - q^-1)" if eps == 1 else f"(q^{eps} - q^-{eps})"
            out.append(base if k == 1 else f"{base}^{k}")
    return "".join(out)


def _value_text(v: RatFunc, ctx: QContext | None = None):
    """(sign, body) with body empty for the constant 1."""
    if not v.is_laurent() and ctx is not None:
        hit = split_denominator(v, ctx)
        if hit:
            num, ki, kj = hit
            sign, num = _sign_split(num)
            return sign, f"({_poly_text(num)})/{_den_text(ki, kj, ctx)}"
    if v.is_laurent():
        sign, num = _sign_split(v.num)
        if num == LaurentPoly.const(1):
            return sign, ""
        if num.is_monomial():
            return sign, _poly_text(num)
        return sign, f"({_poly_text(num)})"
    sign, num = _sign_split(v.num)
    return sign, f"({_poly_text(num)})/({_poly_text(v.den)})"


def coeff_text(c: Coeff, c_symbol: str = "c", ctx: QContext | None = None) -> str:
    sign, body = _value_text(c.value, ctx)
    cpart = "" if c.c_power == 0 else (c_symbol if c.c_power == 1 else f"{c_symbol}^{c.c_power}")
    parts = [x for x in (cpart, body) if x]
    return sign + (" ".join(parts) if parts else "1")


def _pow(sym, n):
    if n == 0:
        return ""
    return sym if n == 1 else f"{sym}^{n}"


def monomial_text(shape: TermShape, a: int, case: str) -> str:
    bits = []
    b = "b" if case == "classical" else "B"
    if shape.kind == "ZBB":
        bits = [_pow("Z", shape.z_power), _pow(f"{b}_i", shape.m), f"{b}_j", _pow(f"{b}_i", shape.m_prime)]
    elif shape.kind == "ZBBZ":
        w = shape.z_power
        bits = [_pow("Z", shape.t), _pow("B_i", shape.m), "B_j", _pow("B_i", shape.m_prime), _pow("Z", w - shape.t)]
    elif shape.kind == "ZWKZB":
        w = shape.z_power
        bits = [_pow("Z", shape.t), "W K_j", _pow("Z", w - shape.t), _pow("B_i", shape.m)]
    elif shape.kind == "BZ_tau":
        bits = [_pow("B_i", shape.m), "Z_i" if shape.t == 0 else "Z_j"]
    return " ".join(x for x in bits if x)


def render_text(table: RelationTable) -> str:
    a = table.ctx.a_ij
    if table.case_tag == "classical":
        from .onsager import classical_relation

        rel = classical_relation(a)
        rhs = []
        for s in sorted(rel.ad_form, reverse=True):
            v = rel.ad_form[s]
            ad = _pow("(ad b_i)", s)
            term = f"{ad} b_j" if ad else "b_j"
            rhs.append((v, term))
        if not rhs:
            body = "0"
        else:
            body = ""
            for n, (v, term) in enumerate(rhs):
                mag = abs(v)
                txt = term if mag == 1 else f"{mag} {term}"
                if n == 0:
                    body = ("-" if v < 0 else "") + txt
                else:
                    body += (" - " if v < 0 else " + ") + txt
        return f"{_pow('(ad b_i)', 1 - a)} b_j = {body}\n"
    lhs = "F_ij(B_i,B_j)"
    pieces = []
    for shape, c in table.ordered():
        sym = "c_j" if shape.kind == "BZ_tau" and shape.t == 1 else "c"
        ct = coeff_text(c, sym, table.ctx)
        pieces.append((ct, monomial_text(shape, a, table.case_tag)))
    if not pieces:
        return f"{lhs} = 0\n"
    out = f"{lhs} = "
    for n, (ct, mono) in enumerate(pieces):
        neg = ct.startswith("-")
        ct = ct[1:] if neg else ct
        term = f"{ct} {mono}" if ct != "1" else mono
        if n == 0:
            out += ("-" if neg else "") + term
        else:
            out += (" - " if neg else " + ") + term
    return out + "\n"


def table_to_json(table: RelationTable) -> dict:
    ctx = table.ctx
    terms = []
    for shape, c in table.ordered():
        d = c.to_dict()
        terms.append({
            "kind": shape.kind, "m": shape.m, "m_prime": shape.m_prime, "t": shape.t,
            "z_power": shape.z_power, "c_power": d["c_power"], "num": d["num"], "den": d["den"],
        })
    return {"case": table.case_tag, "a_ij": ctx.a_ij, "eps_i": ctx.eps_i, "eps_j": ctx.eps_j, "terms": terms}


def table_from_json(doc) -> RelationTable:
    if isinstance(doc, str):
        doc = json.loads(doc)
    a, ei, ej = doc["a_ij"], doc["eps_i"], doc["eps_j"]
    ctx = QContext(a, ei * a // ej, ei, ej)
    table = RelationTable(ctx, doc["case"])
    for t in doc["terms"]:
        shape = TermShape(t["kind"], t["m"], t["m_prime"], t["t"], t["z_power"])
        table.terms[shape] = Coeff.from_dict(t)
    return table


def render_json(table: RelationTable) -> str:
    return json.dumps(table_to_json(table), sort_keys=True, indent=1) + "\n"


def _poly_latex(p: LaurentPoly, var="q") -> str:
    parts = []
    for e, c in sorted(p.items(), key=lambda x: -x[0]):
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{{{e}}}")
        body = (str(mag) if mag != 1 or not mono else "") + mono
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def coeff_latex(c: Coeff, c_symbol="c_i", ctx: QContext | None = None) -> str:
    if c.is_zero():
        return "0"
    var = "q_i" if ctx is None or ctx.eps_i == 1 else "q"

    def _poly_latex_v(p):
        return _poly_latex(p, var)

    cpart = "" if c.c_power == 0 else (c_symbol if c.c_power == 1 else f"{c_symbol}^{{{c.c_power}}}")
    v = c.value
    sign, num = _sign_split(v.num)
    hit = None if v.is_laurent() or ctx is None else split_denominator(v, ctx)
    if hit:
        num, ki, kj = hit
        sign, num = _sign_split(num)
        return sign + cpart + f"\\dfrac{{{_poly_latex_v(num)}}}{{{_den_text(ki, kj, ctx, latex=True)}}}"
    if v.is_laurent():
        if num == LaurentPoly.const(1):
            body = cpart or "1"
        elif num.is_monomial():
            body = cpart + _poly_latex_v(num)
        else:
            body = cpart + f"\\left({_poly_latex_v(num)}\\right)"
    else:
        body = cpart + f"\\dfrac{{{_poly_latex_v(num)}}}{{{_poly_latex_v(v.den)}}}"
    return sign + body


def render_latex(table: RelationTable) -> str:
    a = table.ctx.a_ij
    rows = []
    if table.case_tag in ("case1", "split", "classical"):
        n = max(-a, 1)
        head = " & ".join(str(x) for x in range(n))
        rows.append(f"\\begin{{tabular}}{{c|{'c' * n}}}")
        rows.append(f"$m \\backslash m'$ & {head} \\\\ \\hline")
        for m in range(-a):
            cells = []
            for mp in range(-a - m):
                cells.append(f"${coeff_latex(table.get('ZBB', m, mp), ctx=table.ctx)}$")
            cells += [""] * (n - len(cells))
            rows.append(f"{m} & " + " & ".join(cells) + " \\\\")
        rows.append("\\end{tabular}")
    elif table.case_tag == "case2":
        w_max = (1 - a) // 2
        rows.append(f"\\begin{{tabular}}{{c|{'c' * (w_max + 1)}}}")
        rows.append("$(m,m') \\backslash t$ & " + " & ".join(str(t) for t in range(w_max + 1)) + " \\\\ \\hline")
        cells = {}
        for shape, c in table.ordered():
            if shape.kind == "ZBBZ":
                cells.setdefault((shape.m, shape.m_prime), {})[shape.t] = c
        for (m, mp), row in sorted(cells.items()):
            vals = [f"${coeff_latex(row[t], ctx=table.ctx)}$" if t in row else "" for t in range(w_max + 1)]
            rows.append(f"$({m},{mp})$ & " + " & ".join(vals) + " \\\\")
        rows.append("\\end{tabular}")
        sig = {}
        for shape, c in table.ordered():
            if shape.kind == "ZWKZB":
                sig.setdefault(shape.m, {})[shape.t] = c
        if sig:
            tmax = max(t for row in sig.values() for t in row)
            rows.append("")
            rows.append(f"\\begin{{tabular}}{{c|{'c' * (tmax + 1)}}}")
            rows.append("$m \\backslash t$ & " + " & ".join(str(t) for t in range(tmax + 1)) + " \\\\ \\hline")
            for m, row in sorted(sig.items()):
                vals = [f"${coeff_latex(row[t], ctx=table.ctx)}$" if t in row else "" for t in range(tmax + 1)]
                rows.append(f"{m} & " + " & ".join(vals) + " \\\\")
            rows.append("\\end{tabular}")
    else:
        rows.append("\\begin{tabular}{cc}")
        for shape, c in table.ordered():
            sym = "c_j" if shape.t == 1 else "c_i"
            zed = "\\mathcal{Z}_i" if shape.t == 0 else "\\mathcal{Z}_j"
            rows.append(f"$B_i^{{{shape.m}}}{zed}$ & ${coeff_latex(c, sym, table.ctx)}$ \\\\")
        rows.append("\\end{tabular}")
    return "\n".join(rows) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "latex": render_latex}


def cmd_relations(cfg: RunConfig) -> str:
    ctx = cfg.context()
    table = assemble_relation(cfg.case, ctx, jobs=cfg.jobs)
    return RENDERERS[cfg.format](table)


# ---------------------------------------------------------------- verify

@dataclass
class CheckResult:
    name: str
    status: str  # pass, fail, skipped, diagnostic
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerifyReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def render(self) -> str:
        lines = []
        for r in self.results:
            tag = r.status.upper()
            lines.append(f"{tag:<10} {r.name:<34} {r.seconds:7.2f}s  {r.detail}".rstrip())
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"


def _timed(name, fn):
    t0 = time.perf_counter()
    try:
        status, detail = fn()
    except Exception as exc:  # a crash inside a check is a failure of that check
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(name, status, detail, time.perf_counter() - t0)


def _verdict(bad, good_detail=""):
    if bad:
        shown = ", ".join(map(str, bad[:5]))
        more = f" (+{len(bad) - 5} more)" if len(bad) > 5 else ""
        return "fail", f"mismatch at {shown}{more}"
    return "pass", good_detail


def _check_golden(cfg: RunConfig, ids):
    from .golden import compare_tables, load_golden

    tables = load_golden(cfg.golden)
    bad, errata, n = [], [], 0
    for e, ok, _ in compare_tables(tables, ids):
        n += 1
        if not ok:
            bad.append(e.key())
        elif e.erratum:
            errata.append(f"{e.table}({e.m},{e.m_prime})")
    note = f"{n} entries"
    if errata:
        note += "; errata applied at " + ", ".join(errata)
    return _verdict(bad, note)


def _valid_cells(a):
    for m in range(-a):
        for mp in range(-a - m):
            yield m, mp


def _check_oracle(depth):
    from . import ncoracle as O
    from . import relations as R

    bad = []
    for a in range(0, -depth - 1, -1):
        ctx = QContext.symmetric(a)
        for m, mp in _valid_cells(a):
            if R.rho_case1_projection(m, mp, ctx) != O.oracle_rho_case1(m, mp, ctx):
                bad.append(("rho", a, m, mp))
            if (a + m + mp) % 2:
                for t in range((1 - a - m - mp) // 2 + 1):
                    if R.rho_case2(m, mp, t, ctx) != O.oracle_rho_case2(m, mp, t, ctx):
                        bad.append(("rho_t", a, m, mp, t))
        for m in range(-a):
            if (a + m) % 2:
                for t in range((-1 - a - m) // 2 + 1):
                    if R.sigma_case2(m, t, ctx) != O.oracle_sigma(m, t, ctx):
                        bad.append(("sigma", a, m, t))
    return _verdict(bad, f"a_ij = 0..{-depth}")


def _check_theta(depth):
    from .relations import rho_case1_projection, rho_case1_theta, theta_constant

    bad = []
    for a in range(0, -depth - 1, -1):
        ctx = QContext.symmetric(a)
        for m in range(2 - a):
            for mp in range(2 - a - m):
                if (a + m + mp) % 2 and theta_constant(m, mp, 0, ctx) != theta_constant(m, mp, 1, ctx):
                    bad.append((a, m, mp))
        for m, mp in _valid_cells(a):
            if a >= -5 and rho_case1_theta(m, mp, 0, ctx) != rho_case1_projection(m, mp, ctx):
                bad.append(("rho", a, m, mp))
    return _verdict(bad, f"a_ij = 0..{-depth}")


def _check_symmetry(depth):
    from .relations import check_symmetry

    bad = [a for a in range(0, -depth - 1, -1)
           if not check_symmetry(assemble_relation("case1", QContext.symmetric(a)))]
    return _verdict(bad, f"a_ij = 0..{-depth}")


def _check_tcollapse(depth):
    from .relations import rho_case1_projection, rho_case2

    bad = []
    for a in range(0, -depth - 1, -1):
        ctx = QContext.symmetric(a)
        for m, mp in _valid_cells(a):
            if (a + m + mp) % 2 == 0:
                continue
            total = Coeff.zero()
            for t in range((1 - a - m - mp) // 2 + 1):
                total = total + rho_case2(m, mp, t, ctx)
            if total != rho_case1_projection(m, mp, ctx):
                bad.append((a, m, mp))
    return _verdict(bad, f"a_ij = 0..{-depth}")


def _check_clw(depth):
    from .onsager import clw_collapse_check

    bad = [(a, v) for a in range(0, -depth - 1, -1) for v in (0, 1)
           if not clw_collapse_check(v, QContext.symmetric(a))]
    return _verdict(bad, f"a_ij = 0..{-depth}, both variants")


def _check_classical(depth):
    from math import comb

    from .onsager import classical_c_closed, classical_relation, specialize_rho_q1

    bad = [("forms", s, r) for r in range(15) for s in range(r + 1)
           if classical_c_closed(s, r, 1) != classical_c_closed(s, r, 2)]
    for a in range(0, -depth - 1, -1):
        ctx = QContext.symmetric(a)
        for m, mp in _valid_cells(a):
            want = (-1) ** ((a + m) % 2) * comb(m + mp, mp) * classical_c_closed(m + mp, 1 - a, 1)
            if specialize_rho_q1(m, mp, ctx) != want:
                bad.append(("q->1", a, m, mp))
    if classical_relation(-2).ad_form != {1: -4}:
        bad.append(("dolan-grady", -2))
    return _verdict(bad, f"forms r <= 14; q -> 1 for a_ij = 0..{-depth}")


def _check_recursion():
    from .onsager import recursion_first_mismatch

    hit = recursion_first_mismatch(14)
    if hit is None:
        return "diagnostic", "recursion agrees with the closed form for r <= 14"
    return "diagnostic", f"recursion first disagrees with the closed form at (s,r)={hit}"


def cmd_verify(cfg: RunConfig) -> VerifyReport:
    from .golden import TABLE_CASE

    if cfg.depth < 1:
        raise ValueError("--depth must be >= 1")
    d = cfg.depth
    wide, mid = 2 * d, d + 2
    report = VerifyReport()
    ids = {tid for tid, (_, a) in TABLE_CASE.items() if -a <= d}
    skipped = sorted(set(TABLE_CASE) - ids)
    report.results.append(_timed("golden tables " + ",".join(sorted(ids)), lambda: _check_golden(cfg, ids)))
    if skipped:
        report.results.append(CheckResult("golden tables " + ",".join(skipped), "skipped",
                                          f"beyond depth {d}"))
    report.results.append(_timed("oracle equivalence", lambda: _check_oracle(d)))
    report.results.append(_timed("theta variants", lambda: _check_theta(wide)))
    report.results.append(_timed("symmetry", lambda: _check_symmetry(wide)))
    report.results.append(_timed("t-collapse", lambda: _check_tcollapse(mid)))
    report.results.append(_timed("clw resummation", lambda: _check_clw(mid)))
    report.results.append(_timed("classical cross-checks", lambda: _check_classical(mid)))
    report.results.append(_timed("recursion diagnostic", _check_recursion))
    return report


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsp", description="Inhomogeneous quantum Serre relations of QSP coideal subalgebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("relations", "verify"):
        s = sub.add_parser(name)
        s.add_argument("--case", choices=sorted(CASE_ALIASES), default="1")
        s.add_argument("--aij", type=int, default=-1)
        s.add_argument("--aji", type=int, default=None)
        s.add_argument("--epsi", type=int, default=1)
        s.add_argument("--epsj", type=int, default=None)
        s.add_argument("--format", choices=sorted(RENDERERS), default="text")
        s.add_argument("--depth", type=int, default=4)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--out", default=None)
        if name == "verify":
            s.add_argument("--golden", default=None, help="alternative golden data file")
    return p


def parse_config(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(
        command=ns.command, a_ij=ns.aij, a_ji=ns.aji, eps_i=ns.epsi, eps_j=ns.epsj,
        case=CASE_ALIASES[ns.case], format=ns.format, out=ns.out, depth=ns.depth, jobs=ns.jobs,
        golden=getattr(ns, "golden", None),
    )
    try:
        cfg.context()
    except ValueError as exc:
        parser.error(str(exc))
    if cfg.depth < 1:
        parser.error("--depth must be >= 1")
    if cfg.jobs < 1:
        parser.error("--jobs must be >= 1")
    return cfg


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    cfg = parse_config(argv)
    if cfg.command == "relations":
        _emit(cmd_relations(cfg), cfg.out)
        return 0
    report = cmd_verify(cfg)
    _emit(report.render(), cfg.out)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
