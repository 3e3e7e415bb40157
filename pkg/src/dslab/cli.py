"""Command-line surface: experiments, verification suites, and report
emission.

Reports are deterministic: identical (config, seed) produce byte-equal
output.  Exact rationals are serialized as "num/den" strings and
enclosures as exact endpoint pairs; asserted verdicts never rely on
decimal approximations.  Wall-clock timing is attached only with
--timing, because it would break byte-determinism.

Exit codes: 0 all verdicts pass, 1 some asserted inequality failed
(operands in the report), 2 invalid input or configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from . import blocks as bl
from . import borel_cantelli as bc
from . import circle as ci
from . import laurent as la
from . import padic as pa
from . import series_dimfn as sd
from .enclosure import Enc
from .psi import PsiSpec, generate_psi
from .verify import SUITES, frac_str

SCHEMA = "dslab-report.v1"


def _fail(msg: str) -> "NoReturn":
    raise SystemExit2(msg)


class SystemExit2(Exception):
    """Invalid input/config; mapped to exit code 2."""


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        _fail(f"not a rational: {text!r}")


def parse_json_arg(text: str):
    """Inline JSON or @path to a JSON file."""
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            _fail(f"cannot read {text[1:]}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"bad JSON: {exc}")


def parse_psi(args, seed: int) -> PsiSpec:
    if args.psi is not None:
        desc = parse_json_arg(args.psi)
        try:
            return generate_psi(desc, seed=seed)
        except (ValueError, KeyError, TypeError) as exc:
            _fail(f"bad psi descriptor: {exc}")
    _fail("a --psi descriptor is required")


def parse_fraction_list(text: str) -> list[Fraction]:
    return [parse_fraction(tok) for tok in text.split(",") if tok.strip()]


def parse_scheme(args) -> bl.BlockScheme:
    desc = parse_json_arg(args.scheme) if args.scheme else {"kind": "canonical"}
    try:
        return bl.scheme_from_descriptor(desc)
    except (ValueError, KeyError, TypeError) as exc:
        _fail(f"bad scheme descriptor: {exc}")


def parse_poly(q: int, text: str) -> la.Poly:
    try:
        return la.Poly.make(q, [int(t) for t in text.split(",")])
    except ValueError as exc:
        _fail(f"bad polynomial coefficients {text!r}: {exc}")


def parse_poly_psi(arg: str) -> la.PolyPsiSpec:
    desc = parse_json_arg(arg)
    try:
        q = int(desc["q"])
        values = {parse_poly(q, key): parse_fraction(val)
                  for key, val in desc["values"].items()}
        return la.PolyPsiSpec(q, values)
    except (KeyError, ValueError, TypeError) as exc:
        _fail(f"bad polynomial psi descriptor: {exc}")


def enc_obj(e: Enc) -> dict:
    return {"lo": frac_str(e.lo), "hi": frac_str(e.hi),
            "approx": f"{float(e.mid):.15g}"}


# ---------------------------------------------------------------- handlers


def cmd_en_measure(args, seed):
    n = args.n
    psi_n = parse_fraction(args.psi_value)
    s = ci.coprime_arcs(n, psi_n)
    meas = s.measure()
    from .numtheory import euler_phi

    lo = min(psi_n * euler_phi(n) / n, Fraction(1, 2))
    hi = min(2 * psi_n * euler_phi(n) / n, Fraction(1))
    items = [{"n": n, "psi": frac_str(psi_n), "measure": frac_str(meas),
              "arcs": len(s.ivs)}]
    verdicts = [{"name": "two-sided-bound", "ok": lo <= meas <= hi,
                 "lower": frac_str(lo), "measure": frac_str(meas),
                 "upper": frac_str(hi)}]
    return {"n": n, "psi": frac_str(psi_n)}, items, verdicts


def cmd_overlap(args, seed):
    if args.psi_value is not None:
        c = parse_fraction(args.psi_value)
        psi = PsiSpec(kind="constant", values={args.m: c, args.n: c})
    else:
        psi = parse_psi(args, seed)
    try:
        ov = ci.arc_overlap(args.m, args.n, psi)
    except ValueError as exc:
        _fail(str(exc))
    items = [{"m": args.m, "n": args.n,
              "measure": frac_str(ov.measure),
              "ds_bound": frac_str(8 * psi.value(args.m) * psi.value(args.n)),
              "D": frac_str(ov.params_d), "B": ov.params_b,
              "P": frac_str(ov.params_p),
              "pv_ratio": frac_str(ov.pv_ratio) if ov.pv_ratio is not None else ""}]
    verdicts = [{"name": "overlap-upper-bound", "ok": ov.ds_bound_ok,
                 "measure": frac_str(ov.measure)},
                {"name": "small-D-empty", "ok": ov.empty_by_d,
                 "D": frac_str(ov.params_d)}]
    return {"m": args.m, "n": args.n, "psi": psi.descriptor()}, items, verdicts


def cmd_union_z(args, seed):
    psi = parse_psi(args, seed)
    z = ci.arc_union(psi)
    total = sum((ci.coprime_arcs(n, psi.value(n)).measure()
                 for n in psi.support), Fraction(0))
    meas = z.measure()
    items = [{"measure": frac_str(meas), "support_size": len(psi.support),
              "component_sum": frac_str(total)}]
    verdicts = [{"name": "subadditivity", "ok": meas <= min(total, 1),
                 "measure": frac_str(meas),
                 "bound": frac_str(min(total, 1))}]
    return {"psi": psi.descriptor()}, items, verdicts


def cmd_scaling(args, seed):
    t = parse_fraction(args.t)
    if args.field == "real":
        psi = parse_psi(args, seed)
        r = ci.check_union_scaling(psi, t)
        items = [{"lhs": frac_str(r.lhs), "rhs": frac_str(r.rhs)}]
        verdicts = [{"name": "union-scaling", "ok": r.holds,
                     "lhs": frac_str(r.lhs), "rhs": frac_str(r.rhs)}]
        config = {"field": "real", "t": frac_str(t), "psi": psi.descriptor()}
    elif args.field == "padic":
        if args.p is None:
            _fail("--p is required for the padic field")
        psi = parse_psi(args, seed)
        r = pa.check_ball_union_scaling(args.p, psi, t)
        items = [{"lhs": frac_str(r.lhs), "rhs": frac_str(r.rhs),
                  "equality": r.equality, "pt_bound_ok": r.pt_bound_ok}]
        verdicts = [{"name": "ball-union-scaling", "ok": r.holds,
                     "lhs": frac_str(r.lhs), "rhs": frac_str(r.rhs)}]
        config = {"field": "padic", "p": args.p, "t": frac_str(t),
                  "psi": psi.descriptor()}
    else:
        if args.psi_poly is None:
            _fail("--psi-poly is required for the laurent field")
        psi = parse_poly_psi(args.psi_poly)
        r = la.check_cube_union_scaling(psi, t, args.d)
        items = [{"lhs": frac_str(r.lhs), "base": frac_str(r.rhs),
                  "bound": frac_str(r.bound)}]
        verdicts = [{"name": "cube-union-scaling", "ok": r.holds,
                     "lhs": frac_str(r.lhs), "bound": frac_str(r.bound)}]
        config = {"field": "laurent", "q": psi.q, "d": args.d,
                  "t": frac_str(t), "psi": parse_json_arg(args.psi_poly)}
    return config, items, verdicts


def _stats_row(st: bl.BlockStats) -> dict:
    def nd(x):
        return ("", "") if x is None else (str(x.numerator), str(x.denominator))

    s_n, s_d = nd(st.s)
    b_n, b_d = nd(st.b)
    q_n, q_d = nd(st.q)
    r_n, r_d = nd(st.r)
    return {"h": st.h, "S_num": s_n, "S_den": s_d, "B_num": b_n, "B_den": b_d,
            "Q_num": q_n, "Q_den": q_d, "R_num": r_n, "R_den": r_d,
            "exact": str(st.exact).lower()}


def cmd_blocks(args, seed):
    psi = parse_psi(args, seed)
    scheme = parse_scheme(args)
    items = []
    verdicts = []
    for h in args.h:
        if args.mc:
            st = bl.block_stats_mc(psi, scheme, h, samples=args.samples,
                                   seed=seed)
            row = _stats_row(st)
            row["b_halfwidth"] = frac_str(st.b_halfwidth)
            items.append(row)
        else:
            try:
                st = bl.block_stats_exact(psi, scheme, h)
            except bl.FeasibilityError as exc:
                _fail(str(exc))
            items.append(_stats_row(st))
            upper_ok = st.b <= min(2 * st.s, 1)
            verdicts.append({"name": f"block-{h}-upper", "ok": upper_ok,
                             "B": frac_str(st.b),
                             "bound": frac_str(min(2 * st.s, 1))})
            if st.s + (st.q or 0) > 0:
                lower = bl.cauchy_schwarz_lower(st.s, st.q)
                verdicts.append({"name": f"block-{h}-second-moment-lower",
                                 "ok": st.b >= lower, "B": frac_str(st.b),
                                 "bound": frac_str(lower)})
    config = {"psi": psi.descriptor(), "scheme": scheme.descriptor(),
              "h": list(args.h), "mc": bool(args.mc)}
    if args.mc:
        config["samples"] = args.samples
    return config, items, verdicts


def cmd_bc_bound(args, seed):
    desc = parse_json_arg(args.events)
    try:
        es = bc.EventSystem.from_measures(
            [parse_fraction(x) for x in desc["p"]],
            [[parse_fraction(x) for x in row] for row in desc["pp"]],
            [parse_fraction(x) for x in desc.get("weights", [])] or None)
    except (KeyError, ValueError, TypeError) as exc:
        _fail(f"bad event system: {exc}")
    items = []
    for prefix in range(1, es.n + 1):
        try:
            items.append({"prefix": prefix,
                          "bound": frac_str(bc.bc_lower_bound(es, prefix))})
        except bc.ZeroDenominatorError:
            items.append({"prefix": prefix, "bound": ""})
    best, arg = bc.best_bc_lower_bound(es)
    items.append({"prefix": "best", "bound": frac_str(best),
                  "argmax": arg if arg is not None else ""})
    return {"events": desc}, items, []


def cmd_criterion(args, seed):
    psi = parse_psi(args, seed)
    scheme = parse_scheme(args)
    rows = bc.divergence_criterion(psi, scheme, args.h_max)
    items = [{"h": r.h, "S": frac_str(r.s), "term": enc_obj(r.term),
              "partial": enc_obj(r.partial)} for r in rows]
    config = {"psi": psi.descriptor(), "scheme": scheme.descriptor(),
              "h_max": args.h_max}
    return config, items, []


def cmd_convolution(args, seed):
    psi = parse_psi(args, seed)
    scheme = parse_scheme(args)
    try:
        plan = bc.convolution_select(psi, scheme, args.h)
    except ValueError as exc:
        _fail(str(exc))
    items = [{"h": plan.h, "S": frac_str(plan.s),
              "classes": {str(j): frac_str(v) for j, v in plan.a.items()},
              "y": enc_obj(plan.y), "k": plan.k, "k_max": plan.k_max,
              "omega": enc_obj(plan.omega),
              "f_l1": frac_str(plan.f_l1), "g_l1": frac_str(plan.g_l1),
              "conv_l1": frac_str(plan.conv_l1)}]
    verdicts = [
        {"name": "shift-within-log-mass", "ok": plan.k <= plan.k_max,
         "k": plan.k, "k_max": plan.k_max},
        {"name": "block-weight-in-unit-interval",
         "ok": plan.omega.lo >= 0 and plan.omega.hi <= 1,
         "omega": enc_obj(plan.omega)},
        {"name": "convolution-l1-bound", "ok": plan.young_ok,
         "conv_l1": frac_str(plan.conv_l1),
         "bound": frac_str(plan.f_l1 * plan.g_l1)},
    ]
    config = {"psi": psi.descriptor(), "scheme": scheme.descriptor(), "h": args.h}
    return config, items, verdicts


def cmd_series(args, seed):
    items = []
    verdicts = []
    config = {}
    if args.b:
        b = parse_fraction_list(args.b)
        ys = sd.slow_divergent_transform(b)
        items.append({"kind": "slow-divergent",
                      "y": [frac_str(y) for y in ys]})
        verdicts.append({"name": "y-strictly-decreasing",
                         "ok": all(x > y for x, y in zip(ys, ys[1:]))})
        config["b"] = args.b
    if args.a is not None:
        a = parse_fraction_list(args.a)
        tail = parse_fraction(args.tail_upper)
        acc = sd.accelerate_convergent_transform(a, tail)
        items.append({"kind": "accelerated",
                      "x": [enc_obj(x) for x in acc.x],
                      "z": [enc_obj(z) for z in acc.z]})
        verdicts.append({"name": "x-strictly-increasing",
                         "ok": all(c1 > c2 for c1, c2 in
                                   zip(acc.heads, acc.heads[1:]))})
        config["a"] = args.a
        config["tail_upper"] = args.tail_upper
    if not items:
        _fail("need --b and/or --a")
    return config, items, verdicts


def cmd_dimfn(args, seed):
    nodes = parse_json_arg(args.nodes)
    try:
        g = sd.StepFn.from_pairs([(int(i), parse_fraction(str(v)))
                                  for i, v in nodes],
                                 increasing=(args.mode == "log"))
        f = sd.DimFn(mode=args.mode, g=g)
    except (ValueError, TypeError) as exc:
        _fail(f"bad dimension function: {exc}")
    chk = sd.check_dimfn_grid(f, args.i_max, base=args.base)
    items = [{"i": i, "r": f"1/{args.base**i}", "f": enc_obj(v),
              "ratio": enc_obj(rv)}
             for i, (v, rv) in enumerate(zip(chk.values, chk.ratios))]
    verdicts = [{"name": "f-monotone", "ok": chk.monotone_ok},
                {"name": "ratio-direction", "ok": chk.ratio_ok}]
    config = {"mode": args.mode, "nodes": nodes, "i_max": args.i_max,
              "base": args.base}
    return config, items, verdicts


def cmd_padic(args, seed):
    items = []
    verdicts = []
    psi = parse_psi(args, seed)
    config = {"p": args.p, "psi": psi.descriptor()}
    if args.t is not None:
        t = parse_fraction(args.t)
        r = pa.check_ball_union_scaling(args.p, psi, t)
        items.append({"kind": "scaling", "lhs": frac_str(r.lhs),
                      "rhs": frac_str(r.rhs), "equality": r.equality,
                      "pt_bound_ok": r.pt_bound_ok})
        verdicts.append({"name": "ball-union-scaling", "ok": r.holds,
                         "lhs": frac_str(r.lhs), "rhs": frac_str(r.rhs)})
        config["t"] = args.t
    if args.chain:
        try:
            m, n = (int(x) for x in args.chain.split(","))
            res = pa.overlap_chain(args.p, m, n, psi)
        except ValueError as exc:
            _fail(str(exc))
        items.append({"kind": "overlap-chain", "lower": frac_str(res.lower),
                      "mid": frac_str(res.mid), "upper": frac_str(res.upper)})
        verdicts.append({"name": "overlap-chain", "ok": res.chain_ok,
                         "lower": frac_str(res.lower),
                         "mid": frac_str(res.mid),
                         "upper": frac_str(res.upper)})
        config["chain"] = args.chain
    if not items:
        _fail("need --t and/or --chain")
    return config, items, verdicts


def cmd_laurent(args, seed):
    items = []
    verdicts = []
    config = {"q": args.q, "d": args.d}
    if args.theta_q:
        Q = parse_poly(args.q, args.theta_q)
        try:
            count = la.coprime_tuple_count(Q, args.d)
        except ValueError as exc:
            _fail(str(exc))
        brute = la.brute_coprime_tuple_count(Q, args.d)
        items.append({"kind": "coprime-count", "Q": str(Q), "count": count,
                      "enumeration": brute})
        verdicts.append({"name": "coprime-count-vs-enumeration",
                         "ok": count == brute, "count": count,
                         "enumeration": brute})
        config["theta_q"] = args.theta_q
    if args.overlap:
        try:
            q1, q2 = args.overlap.split(";")
        except ValueError:
            _fail("--overlap wants 'coeffs1;coeffs2'")
        Q1, Q2 = parse_poly(args.q, q1), parse_poly(args.q, q2)
        c = parse_fraction(args.psi_value or "1/2")
        psi = la.PolyPsiSpec(args.q, {Q1: c, Q2: c})
        try:
            ov = la.cube_overlap(Q1, Q2, psi, args.d)
        except ValueError as exc:
            _fail(str(exc))
        items.append({"kind": "overlap", "Q": str(Q1), "Q2": str(Q2),
                      "measure": frac_str(ov.measure),
                      "quasi_constant": frac_str(ov.quasi_constant)
                      if ov.quasi_constant is not None else ""})
        verdicts.append({"name": "overlap-product-bound",
                         "ok": ov.product_bound_ok,
                         "measure": frac_str(ov.measure),
                         "bound": frac_str(ov.product_bound)})
        if ov.quasi_bound_ok is not None:
            verdicts.append({"name": "overlap-quasi-constant",
                             "ok": ov.quasi_bound_ok,
                             "quasi": frac_str(ov.quasi_constant),
                             "bound": "256/9"})
        config["overlap"] = args.overlap
        config["psi_value"] = args.psi_value or "1/2"
    if args.l76:
        try:
            z1, z2, dg = (int(x) for x in args.l76.split(","))
        except ValueError:
            _fail("--l76 wants 'z1,z2,deg_g'")
        r = la.shifted_cube_overlap_sum(args.q, args.d, z1, z2, dg)
        items.append({"kind": "shifted-overlap", "total": frac_str(r.total),
                      "bound": frac_str(r.bound),
                      "contributing": r.contributing})
        verdicts.append({"name": "shifted-overlap-bound", "ok": r.holds,
                         "total": frac_str(r.total),
                         "bound": frac_str(r.bound)})
        config["l76"] = args.l76
    if not items:
        _fail("need --theta-q, --overlap and/or --l76")
    return config, items, verdicts


def cmd_verify(args, seed):
    suite = SUITES.get(args.field)
    if suite is None:
        _fail(f"unknown field {args.field!r}")
    kwargs = {}
    if args.field == "real":
        kwargs = {"max_n": args.max_n, "seed": seed}
    elif args.field in ("padic", "bc", "blocks"):
        kwargs = {"seed": seed}
    verdicts = suite(**kwargs)
    config = {"field": args.field, "seed": seed}
    if args.field == "real":
        config["max_n"] = args.max_n
    return config, [], verdicts


# ---------------------------------------------------------------- emission

BLOCKS_CSV_COLUMNS = ["h", "S_num", "S_den", "B_num", "B_den",
                      "Q_num", "Q_den", "R_num", "R_den", "exact"]

CSV_COLUMNS = {
    "blocks": BLOCKS_CSV_COLUMNS,
    "criterion": ["h", "S", "term_lo", "term_hi", "partial_lo", "partial_hi"],
    "verify": ["name", "ok"],
}


def emit_json(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode()


def emit_csv(report: dict) -> bytes:
    command = report["command"]
    columns = CSV_COLUMNS.get(command)
    if columns is None:
        _fail(f"csv output is not defined for {command!r}; use json")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    rows = report["verdicts"] if command == "verify" else report["items"]
    for row in rows:
        if command == "criterion":
            writer.writerow([row["h"], row["S"],
                             row["term"]["lo"], row["term"]["hi"],
                             row["partial"]["lo"], row["partial"]["hi"]])
        else:
            writer.writerow([row.get(c, "") for c in columns])
    return buf.getvalue().encode()


def make_report(command: str, config: dict, items: list, verdicts: list,
                timing: float | None) -> dict:
    return {
        "schema": SCHEMA,
        "tool": "dslab",
        "version": __version__,
        "command": command,
        "config": config,
        "items": items,
        "verdicts": verdicts,
        "pass": all(v.get("ok", True) for v in verdicts),
        "timing_s": timing,
    }


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dslab",
        description="Exact measures and classical bounds for coprime "
                    "approximation sets on the circle, the p-adic integers, "
                    "and formal Laurent series.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, psi=False):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timing", action="store_true",
                       help="attach wall-clock timing (breaks byte determinism)")
        if psi:
            p.add_argument("--psi", default=None,
                           help="psi family descriptor, inline JSON or @file")

    p = sub.add_parser("en-measure", help="exact measure of one arc system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--psi-value", required=True, help="rational like 1/2")
    common(p)

    p = sub.add_parser("overlap", help="exact pairwise overlap and bounds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--psi-value", default=None)
    common(p, psi=True)

    p = sub.add_parser("union-z", help="exact union measure over a psi family")
    common(p, psi=True)

    p = sub.add_parser("scaling", help="union scaling comparison")
    p.add_argument("--field", choices=("real", "padic", "laurent"),
                   default="real")
    p.add_argument("--t", required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--psi-poly", default=None,
                   help='laurent psi, JSON like {"q":2,"values":{"0,1":"1/2"}}')
    common(p, psi=True)

    p = sub.add_parser("blocks", help="block statistics S, B, Q, R")
    p.add_argument("--h", type=int, nargs="+", required=True)
    p.add_argument("--scheme", default=None)
    p.add_argument("--mc", action="store_true")
    p.add_argument("--samples", type=int, default=2000)
    common(p, psi=True)

    p = sub.add_parser("bc-bound", help="weighted second-moment lower bounds")
    p.add_argument("--events", required=True,
                   help='JSON {"p": [...], "pp": [[...]], "weights": [...]}')
    common(p)

    p = sub.add_parser("criterion", help="block divergence criterion terms")
    p.add_argument("--h-max", type=int, required=True)
    p.add_argument("--scheme", default=None)
    common(p, psi=True)

    p = sub.add_parser("convolution", help="block shift selection and weights")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--scheme", default=None)
    common(p, psi=True)

    p = sub.add_parser("series", help="series rate transforms")
    p.add_argument("--b", default=None, help="comma-separated rationals")
    p.add_argument("--a", default=None, help="comma-separated rationals")
    p.add_argument("--tail-upper", default="0")
    common(p)

    p = sub.add_parser("dimfn", help="dimension-function grid checks")
    p.add_argument("--mode", choices=("log", "sqrt"), required=True)
    p.add_argument("--nodes", required=True,
                   help='JSON [[index, "value"], ...]')
    p.add_argument("--i-max", type=int, default=16)
    p.add_argument("--base", type=int, default=2)
    common(p)

    p = sub.add_parser("padic", help="p-adic scaling and overlap chain")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", default=None)
    p.add_argument("--chain", default=None, help="m,n")
    common(p, psi=True)

    p = sub.add_parser("laurent", help="polynomial-field checks")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--theta-q", default=None, help="coeffs, ascending")
    p.add_argument("--overlap", default=None, help="coeffs1;coeffs2")
    p.add_argument("--psi-value", default=None)
    p.add_argument("--l76", default=None, help="z1,z2,deg_g")
    common(p)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--field", required=True,
                   choices=("real", "padic", "laurent", "blocks", "bc", "series"))
    p.add_argument("--max-n", type=int, default=300)
    common(p)

    return parser


HANDLERS = {
    "en-measure": cmd_en_measure,
    "overlap": cmd_overlap,
    "union-z": cmd_union_z,
    "scaling": cmd_scaling,
    "blocks": cmd_blocks,
    "bc-bound": cmd_bc_bound,
    "criterion": cmd_criterion,
    "convolution": cmd_convolution,
    "series": cmd_series,
    "dimfn": cmd_dimfn,
    "padic": cmd_padic,
    "laurent": cmd_laurent,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    t0 = time.monotonic()
    try:
        config, items, verdicts = HANDLERS[args.command](args, args.seed)
        timing = round(time.monotonic() - t0, 6) if args.timing else None
        report = make_report(args.command, config, items, verdicts, timing)
        payload = emit_json(report) if args.format == "json" else emit_csv(report)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
