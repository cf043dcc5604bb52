"""Serialization of dossiers and tables: canonical JSON, CSV, plain text."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import asdict
from fractions import Fraction

from .bsd_invariants import BsdReport
from .context import TwistContext

SCHEMA_VERSION = 1


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def bs_str(x: float) -> str:
    return f"{x:.15g}"


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, float) or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if abs(v) < 2**53 else str(v)
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, big integers as decimal strings."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def epsilon_histogram(table: list[dict], key: str) -> list[dict]:
    counts = Counter((row["size"], row[key]) for row in table)
    return [{"size": s, "zeta6_power": k, "orbits": c} for (s, k), c in sorted(counts.items())]


def dossier(report: BsdReport, ctx: TwistContext | None = None) -> dict:
    p = report.params
    c = report.constants
    out = {
        "schema_version": SCHEMA_VERSION,
        "params": {"p": p.p, "nu": p.nu, "f": p.f, "r": str(p.r), "q": str(p.q)},
        "l_polynomial": {
            "coefficients": [str(c) for c in report.lpoly.coeffs],
            "degree": report.lpoly.degree,
            "sha256": report.lpoly.digest(),
            "functional_equation_sign": report.functional_equation_sign,
        },
        "rank": report.rank,
        "rank_formula": report.rank_formula,
        "rank_formula_corrected": report.rank_formula_corrected,
        "l_star": report.lstar,
        "ord_p_l_star": report.ord_p_lstar,
        "reg_sha": report.reg_sha,
        "reg_sha_meaning": "|Sha|" if report.rank == 0 else "Reg*|Sha|",
        "dim_sha": report.dim_sha,
        "brauer_siegel": {"direct": report.bs.direct, "decomposed": report.bs.decomposed},
        "structural_constants": asdict(c),
        "checks": [{"name": k.name, "passed": k.passed, "expected": k.expected, "actual": k.actual}
                   for k in report.checks],
        "all_checks_passed": report.all_passed,
    }
    if report.epsilon_table:
        # per-orbit values move around with the generator; their histogram does not
        out["epsilon"] = epsilon_histogram(report.epsilon_table, "epsilon")
        out["epsilon_cubic_only"] = epsilon_histogram(report.epsilon_table, "epsilon_cubic_only")
    if ctx is not None:
        out["choices"] = {"generator_rank": ctx.choices.generator_rank,
                          "zeta_p_power": ctx.choices.zeta_p_power,
                          "ambient_degree": ctx.ambient.degree,
                          "ambient_modulus": list(ctx.ambient.modulus)}
    return out


DOSSIER_CSV_FIELDS = ["p", "nu", "f", "q", "degree", "rank", "rank_formula", "l_star",
                      "ord_p_l_star", "reg_sha", "dim_sha", "bs", "all_checks_passed"]


def dossier_row(report: BsdReport) -> dict:
    p = report.params
    return {"p": p.p, "nu": p.nu, "f": p.f, "q": p.q, "degree": report.lpoly.degree,
            "rank": report.rank, "rank_formula": report.rank_formula,
            "l_star": frac_str(report.lstar), "ord_p_l_star": report.ord_p_lstar,
            "reg_sha": frac_str(report.reg_sha), "dim_sha": report.dim_sha,
            "bs": bs_str(report.bs.direct), "all_checks_passed": report.all_passed}


def to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def dossier_text(report: BsdReport) -> str:
    p = report.params
    lines = [
        f"E: y^2 = x^3 + t^{p.q} - t over F_{p.r}(t)   (p={p.p}, nu={p.nu}, f={p.f})",
        f"L(T) degree {report.lpoly.degree}: {list(report.lpoly.coeffs)}",
        f"analytic rank     {report.rank}   (formula {report.rank_formula}, corrected {report.rank_formula_corrected})",
        f"L*                {frac_str(report.lstar)}   ord_p = {report.ord_p_lstar}",
        f"Reg*|Sha|         {frac_str(report.reg_sha)}",
        f"dim Sha           {report.dim_sha}",
        f"Brauer-Siegel     {bs_str(report.bs.direct)}",
        "checks:",
    ]
    for k in report.checks:
        lines.append(f"  [{'PASS' if k.passed else 'FAIL'}] {k.name}")
    return "\n".join(lines) + "\n"
