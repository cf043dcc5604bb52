"""Command-line front end.

Exit codes: 0 ok, 1 verification found a counterexample, 2 invalid input,
3 a size cap was exceeded, 4 an exact identity failed.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import report as rep
from .bsd_invariants import build_report
from .context import Choices, TwistContext
from .errors import CapExceeded, IdentityFailure, TwistError, ValidationError
from .ff_core import DEFAULT_AMBIENT_CAP
from .char_sums import DEFAULT_ENUM_CAP
from .l_function import power_sums
from .orbit_space import TwistParams
from .point_count import DEFAULT_ORACLE_CAP, l_taylor_oracle
from .sha_dimension import sha_orbits
from .verify import DEFAULT_GRID, SUITES, run_point, summarize

ENV_CAPS = {
    "cap_ambient": "TWISTBSD_CAP_AMBIENT",
    "cap_enum": "TWISTBSD_CAP_ENUM",
    "cap_oracle": "TWISTBSD_CAP_ORACLE",
}
DEFAULT_CAPS = {"cap_ambient": DEFAULT_AMBIENT_CAP, "cap_enum": DEFAULT_ENUM_CAP,
                "cap_oracle": DEFAULT_ORACLE_CAP}


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    return [_positive_int(t) for t in text.split(",")]


def _grid(text: str) -> list[tuple[int, int, int]]:
    out = []
    for item in text.split(";"):
        parts = _int_list(item)
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"grid points are p,nu,f triples: {item!r}")
        out.append(tuple(parts))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cap-ambient", type=_positive_int, help="max ambient field size")
    common.add_argument("--cap-enum", type=_positive_int, help="max enumerated field size")
    common.add_argument("--cap-oracle", type=_positive_int, help="max oracle field size")
    common.add_argument("--generator-rank", type=int, default=0, help="which field generator to use")
    common.add_argument("--zeta-p-power", type=int, default=1, help="psi_p(1) = zeta_p^k")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--p", type=int, required=True)
    point.add_argument("--nu", type=_positive_int, default=1)
    point.add_argument("--f", type=_positive_int, default=1)
    point.add_argument("--n", type=_positive_int, default=6, help="character order (orbits accepts 2, 3, 6)")

    parser = argparse.ArgumentParser(prog="twistbsd",
                                     description="L-functions and BSD data of y^2 = x^3 + t^q - t over F_r(t).")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("lfun", parents=[common, point], help="full dossier for one (p, nu, f)")

    v = sub.add_parser("verify", parents=[common], help="run the invariant suites on a grid")
    v.add_argument("--grid", type=_grid, help="points as 'p,nu,f;p,nu,f;...'")
    v.add_argument("--only", action="append", choices=SUITES, help="restrict to these suites")
    v.add_argument("--oracle-max", type=int, default=4)
    v.add_argument("--jobs", type=_positive_int, help="worker processes (default: one per CPU)")

    sub.add_parser("orbits", parents=[common, point], help="orbit table")

    sub.add_parser("sha", parents=[common, point], help="orbit statistics of the Sha index set")

    s = sub.add_parser("sweep", parents=[common], help="Brauer-Siegel trend table at fixed r")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--nu", type=_positive_int, default=1)
    s.add_argument("--fs", type=_int_list, default=[1, 2, 3], help="comma-separated f values")

    c = sub.add_parser("oracle", parents=[common, point], help="Taylor prefix from point counts")
    c.add_argument("--oracle-max", type=int, default=4)
    c.add_argument("--method", choices=("transform", "naive"), default="transform")
    return parser


def resolve_caps(args) -> dict[str, int]:
    caps = {}
    for key, env in ENV_CAPS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            caps[key] = flag
        elif env in os.environ:
            try:
                caps[key] = _positive_int(os.environ[env])
            except argparse.ArgumentTypeError as exc:
                raise ValidationError(f"{env}: {exc}") from None
        else:
            caps[key] = DEFAULT_CAPS[key]
    return caps


def _context(args, caps, params=None) -> TwistContext:
    params = params or TwistParams(args.p, args.nu, args.f)
    return TwistContext(params, Choices(args.generator_rank, args.zeta_p_power),
                        ambient_cap=caps["cap_ambient"], enum_cap=caps["cap_enum"])


def _require_sextic(args):
    if args.n != 6:
        raise ValidationError("only n = 6 defines the L-function")


def cmd_lfun(args, caps) -> tuple[int, str]:
    _require_sextic(args)
    ctx = _context(args, caps)
    r = build_report(ctx)
    if args.format == "json":
        return 0, rep.dumps(rep.dossier(r, ctx))
    if args.format == "csv":
        return 0, rep.to_csv([rep.dossier_row(r)], rep.DOSSIER_CSV_FIELDS)
    return 0, rep.dossier_text(r)


def _verify_point(point, **kwargs):
    return run_point(TwistParams(*point), **kwargs)


def cmd_verify(args, caps) -> tuple[int, str]:
    grid = args.grid or DEFAULT_GRID
    suites = tuple(args.only) if args.only else SUITES
    points = sorted(set(grid))
    for point in points:
        TwistParams(*point)  # validate the whole grid before any work
    task = partial(_verify_point, suites=suites, oracle_max=args.oracle_max,
                   enum_cap=caps["cap_enum"], oracle_cap=caps["cap_oracle"])
    jobs = min(args.jobs or os.cpu_count() or 1, len(points))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(zip(points, pool.map(task, points)))
    else:
        results = {pt: task(pt) for pt in points}
    summary = summarize(results)
    code = 0 if summary["all_passed"] else 1
    if args.format == "json":
        return code, rep.dumps(summary)
    rows = [{"p": e["p"], "nu": e["nu"], "f": e["f"], "suite": name, "check": c["name"], "passed": c["passed"]}
            for e in summary["points"] for name, cs in e["suites"].items() for c in cs]
    if args.format == "csv":
        return code, rep.to_csv(rows, ["p", "nu", "f", "suite", "check", "passed"])
    lines = [f"{'PASS' if r['passed'] else 'FAIL'} ({r['p']},{r['nu']},{r['f']}) {r['suite']}: {r['check']}"
             for r in rows]
    if summary["first_counterexample"]:
        lines.append(f"first counterexample: {summary['first_counterexample']}")
    return code, "\n".join(lines) + "\n"


def cmd_orbits(args, caps) -> tuple[int, str]:
    ctx = _context(args, caps)
    rows = []
    for o in ctx.space.orbits(args.n):
        rows.append({"n": o.n, "i": o.i, "alpha_log": o.alpha_log, "alpha": o.alpha.value,
                     "size": o.size, "elements": [list(e) for e in o.elements]})
    if args.format == "json":
        return 0, rep.dumps({"schema_version": rep.SCHEMA_VERSION, "params": _params(ctx.params),
                             "n": args.n, "orbits": rows})
    fields = ["n", "i", "alpha_log", "alpha", "size"]
    if args.format == "csv":
        return 0, rep.to_csv([{k: r[k] for k in fields} for r in rows], fields)
    return 0, "".join(f"({r['i']}, g^{r['alpha_log']})  |o| = {r['size']}\n" for r in rows)


def _params(p: TwistParams) -> dict:
    return {"p": p.p, "nu": p.nu, "f": p.f, "r": str(p.r), "q": str(p.q)}


def cmd_sha(args, caps) -> tuple[int, str]:
    params = TwistParams(args.p, args.nu, args.f)
    orbs = sha_orbits(params)
    rows = [{"start_b": o.elements[0].b, "start_a": o.elements[0].a, "size": o.size,
             "n_s0": o.n_s0, "n_s1": o.n_s1, "d": o.d} for o in orbs]
    total = sum(o.d for o in orbs)
    if args.format == "json":
        return 0, rep.dumps({"schema_version": rep.SCHEMA_VERSION, "params": _params(params),
                             "orbits": rows, "dim_sha": total, "floor_q_over_6": params.q // 6})
    fields = ["start_b", "start_a", "size", "n_s0", "n_s1", "d"]
    if args.format == "csv":
        return 0, rep.to_csv(rows, fields)
    lines = [f"({r['start_b']},{r['start_a']}) size {r['size']}  S0 {r['n_s0']}  S1 {r['n_s1']}  d {r['d']}"
             for r in rows]
    lines.append(f"dim Sha = {total}  (floor(q/6) = {params.q // 6})")
    return 0, "\n".join(lines) + "\n"


SWEEP_FIELDS = ["p", "nu", "f", "q", "rank", "log_r_lstar", "bs", "log_r_reg_sha",
                "floor_q6_nu", "ord_p_reg_sha", "status"]


def cmd_sweep(args, caps) -> tuple[int, str]:
    import math

    from .cyclo_ring import padic_ord_rational

    rows = []
    for f in sorted(set(args.fs)):
        params = TwistParams(args.p, args.nu, f)
        try:
            r = build_report(_context(args, caps, params))
        except CapExceeded:
            rows.append({"p": params.p, "nu": params.nu, "f": f, "q": params.q, "status": "skipped"})
            continue
        log_r = params.nu * math.log(params.p)
        log_l = math.log(r.lstar.numerator) - math.log(r.lstar.denominator)
        log_rs = math.log(r.reg_sha.numerator) - math.log(r.reg_sha.denominator)
        rows.append({"p": params.p, "nu": params.nu, "f": f, "q": params.q, "rank": r.rank,
                     "log_r_lstar": rep.bs_str(log_l / log_r), "bs": rep.bs_str(r.bs.direct),
                     "log_r_reg_sha": rep.bs_str(log_rs / log_r),
                     "floor_q6_nu": (params.q // 6) * params.nu,
                     "ord_p_reg_sha": padic_ord_rational(r.reg_sha, params.p), "status": "ok"})
    if args.format == "json":
        return 0, rep.dumps({"schema_version": rep.SCHEMA_VERSION, "rows": rows})
    if args.format == "csv":
        return 0, rep.to_csv(rows, SWEEP_FIELDS)
    return 0, "".join(" ".join(f"{k}={row.get(k, '')}" for k in SWEEP_FIELDS) + "\n" for row in rows)


def cmd_oracle(args, caps) -> tuple[int, str]:
    from .l_function import l_poly_orbit

    params = TwistParams(args.p, args.nu, args.f)
    got = l_taylor_oracle(params, args.oracle_max, caps["cap_oracle"], args.method)
    want = power_sums(l_poly_orbit(_context(args, caps, params)), args.oracle_max)
    code = 0 if got == want else 4
    if args.format == "json":
        return code, rep.dumps({"schema_version": rep.SCHEMA_VERSION, "params": _params(params),
                                "method": args.method, "point_count": [str(c) for c in got],
                                "from_l_polynomial": [str(c) for c in want], "agree": got == want})
    rows = [{"n": i + 1, "point_count": a, "from_l_polynomial": b} for i, (a, b) in enumerate(zip(got, want))]
    if args.format == "csv":
        return code, rep.to_csv(rows, ["n", "point_count", "from_l_polynomial"])
    return code, "".join(f"c_{r['n']} = {r['point_count']}  (L: {r['from_l_polynomial']})\n" for r in rows)


COMMANDS = {"lfun": cmd_lfun, "verify": cmd_verify, "orbits": cmd_orbits, "sha": cmd_sha,
            "sweep": cmd_sweep, "oracle": cmd_oracle}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        caps = resolve_caps(args)
        code, text = COMMANDS[args.command](args, caps)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except IdentityFailure as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return 4
    except TwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
