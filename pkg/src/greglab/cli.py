"""greglab command line.

Exit codes: 0 when everything checked passes, 1 when something fails or is
inconclusive, 2 for usage errors.  Numbers are printed as exact rationals or
decimal strings, never as binary floats.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import numkernel as nk
from .identities import (
    FINITE_IDENTITIES,
    FAMILIES,
    LAGUERRE,
    DomainError,
    evaluate_laguerre_series,
    run_suite,
    select,
    suite_passed,
)
from .newtonquad import SampledFunction, newton_derivative, newton_quadrature
from .precision import (
    ConstantStore,
    constants,
    decimal_string,
    psi_taylor_series,
    to_bigfloat,
    workprec,
    xz_over_gamma_coeffs,
    zeta,
)

FORMATS = ("json", "csv", "text")
DEFAULT_TERMS = 10_000
DEFAULT_PREC = 128
QUAD_DEFAULT_TERMS = 100
QUAD_MAX_TERMS = 5000
NUMBERS_MAX = 1000
NUMBER_FAMILIES = ("cauchy", "gregory", "stirling1", "stirling1u", "stirling2", "harmonic", "harmonic-p", "skew")
BUILTINS = ("monomial", "rational-shift", "inv-square", "harmonic", "harmonic2", "laguerre-source")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    terms: int
    precision_bits: int
    tolerance: float | None = None
    id_filter: str | None = None
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.terms < 1:
            raise UsageError("--terms must be >= 1")
        if self.precision_bits < 32:
            raise UsageError("--prec must be >= 32")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _config(args, default_terms=DEFAULT_TERMS):
    terms = args.terms if args.terms is not None else _env_int("GREGLAB_TERMS") or default_terms
    prec = args.prec if args.prec is not None else _env_int("GREGLAB_PREC") or DEFAULT_PREC
    return RunConfig(args.command, terms, prec, args.tolerance, getattr(args, "id", None), args.format, args.out)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _rational_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def canonical_json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv_text(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# -- numbers -----------------------------------------------------------------


def _number_rows(family, n_max, p):
    if family in ("stirling1", "stirling1u", "stirling2"):
        fn = {"stirling1": nk.stirling_first, "stirling1u": nk.stirling_first_unsigned,
              "stirling2": nk.stirling_second}[family]
        return [[fn(n, k) for k in range(n + 1)] for n in range(n_max + 1)]
    fn = {
        "cauchy": nk.cauchy_number,
        "gregory": nk.gregory_coefficient,
        "harmonic": nk.harmonic,
        "harmonic-p": lambda n: nk.harmonic_p(n, p),
        "skew": nk.skew_harmonic,
    }[family]
    return [fn(n) for n in range(n_max + 1)]


def cmd_numbers(args):
    cfg = _config(args)
    if args.family not in NUMBER_FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(NUMBER_FAMILIES)}")
    if args.n_max_pos < 0:
        raise UsageError("n_max must be >= 0")
    if args.family == "harmonic-p" and (args.p is None or args.p < 1):
        raise UsageError("harmonic-p needs --p >= 1")
    if args.n_max_pos > NUMBERS_MAX:
        raise UsageError(f"n_max is capped at {NUMBERS_MAX}")
    rows = _number_rows(args.family, args.n_max_pos, args.p)
    triangle = isinstance(rows[0], list)
    if cfg.fmt == "json":
        recs = [{"n": n, "value": [str(v) for v in r] if triangle else _rational_str(r)} for n, r in enumerate(rows)]
        text = canonical_json(recs)
    elif cfg.fmt == "csv":
        text = _csv_text([[str(v) for v in r] if triangle else [_rational_str(r)] for r in rows])
    else:
        text = "".join(
            f"{n}\t{' '.join(str(v) for v in r) if triangle else _rational_str(r)}\n" for n, r in enumerate(rows)
        )
    _emit(cfg, text)
    return 0


# -- verify / laguerre -------------------------------------------------------


REPORT_FIELDS = ("id", "kind", "params", "N", "precision_bits", "partial", "last_term", "tail_estimate",
                 "reference", "abs_error", "rel_error", "verdict")


def _render_reports(cfg, reports):
    dicts = [r.to_dict() for r in reports]
    if cfg.fmt == "json":
        return canonical_json(dicts)
    if cfg.fmt == "csv":
        keys = []
        for d in dicts:
            keys += [k for k in d if k not in keys]
        rows = [keys] + [[json.dumps(d[k]) if isinstance(d.get(k), (dict, list)) else ("" if d.get(k) is None else d[k])
                          for k in keys] for d in dicts]
        return _csv_text(rows)
    lines = []
    for d in dicts:
        params = ",".join(f"{k}={v}" for k, v in d["params"].items()) if isinstance(d["params"], dict) else ""
        if "partial" in d:
            lines.append(f"{d['verdict']:<12} {d['id']:<14} {params:<12} N={d['N']} err={d['abs_error']} "
                         f"tail={d['tail_estimate']} partial={d['partial'][:24]}")
        else:
            lines.append(f"{d['verdict']:<12} {d['id']:<14} n_max={d['n_max']} cases={d['cases']}")
    passed = suite_passed(reports)
    lines.append(f"{'PASS' if passed else 'FAIL'}: {sum(r.verdict == 'pass' for r in reports)}/{len(reports)}")
    return "\n".join(lines) + "\n"


def _parse_params(items):
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        try:
            v = Fraction(value)
        except ValueError:
            raise UsageError(f"parameter {key} is not rational: {value!r}") from None
        params[key] = int(v) if v.denominator == 1 and key != "x" else v
    return params


def cmd_verify(args):
    cfg = _config(args)
    if args.id and args.kind:
        raise UsageError("give --id or --kind, not both")
    params = _parse_params(args.param)
    if args.id:
        if args.id not in FINITE_IDENTITIES and args.id not in FAMILIES:
            raise UsageError(f"unknown identity id {args.id!r}")
        filt = args.id
    else:
        filt = args.kind or "all"
        if params:
            raise UsageError("--param needs --id")
    ids = select(filt, include_errata=args.include_errata)
    if not ids:
        raise UsageError(f"nothing matches {filt!r}")
    try:
        reports = run_suite(filt, N=cfg.terms, prec=cfg.precision_bits, n_max=args.n_max,
                            tolerance=cfg.tolerance, include_errata=args.include_errata,
                            workers=args.jobs, params=params or None)
    except (DomainError, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, _render_reports(cfg, reports))
    return 0 if suite_passed(reports) else 1


def cmd_laguerre(args):
    cfg = _config(args)
    ident = args.id or "eq26"
    if ident not in FAMILIES or FAMILIES[ident].kind != LAGUERRE:
        raise UsageError(f"{ident!r} is not a Laguerre series id")
    params = {"m": args.m} if args.m is not None else {}
    try:
        report = evaluate_laguerre_series(ident, args.x, cfg.terms, cfg.precision_bits, params=params,
                                          tolerance=cfg.tolerance)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, _render_reports(cfg, [report]))
    return 0 if report.verdict == "pass" else 1


# -- quad / deriv ------------------------------------------------------------


def _require(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"builtin {args.builtin!r} needs --{name}")
    return v


def build_sampled(args, N):
    """SampledFunction and parameter dict for a builtin."""
    b = args.builtin
    if b == "monomial":
        p = _require(args, "p")
        if p < 0:
            raise UsageError("--p must be >= 0")
        return SampledFunction([Fraction(k) ** p for k in range(N + 1)], f"k^{p}", degree=p), {"p": p}
    if b == "rational-shift":
        y = _require(args, "y")
        if y <= 0:
            raise UsageError("--y must be > 0")
        return SampledFunction([y / (y + k) for k in range(N + 1)], f"{y}/({y}+k)"), {"y": _rational_str(y)}
    if b == "inv-square":
        s = args.shift if args.shift is not None else getattr(args, "shift_alias", None)
        if s is None:
            raise UsageError("inv-square needs --shift")
        if s <= 0:
            raise UsageError("--shift must be > 0")
        return SampledFunction([1 / (k + s) ** 2 for k in range(N + 1)], f"1/(k+{s})^2"), {"shift": _rational_str(s)}
    if b == "harmonic":
        return SampledFunction([nk.harmonic(k) for k in range(N + 1)], "H_k"), {}
    if b == "harmonic2":
        return SampledFunction([nk.harmonic_p(k, 2) for k in range(N + 1)], "H^(2)_k"), {}
    if b == "laguerre-source":
        x = _require(args, "x")
        if x <= 0:
            raise UsageError("--x must be > 0")
        samples, term = [], Fraction(1)
        for k in range(N + 1):
            if k:
                term = term * x / k
            samples.append(term)
        return SampledFunction(samples, f"{x}^k/k!"), {"x": _rational_str(x)}
    raise UsageError(f"unknown builtin {b!r}")


def quad_reference(builtin, params, prec):
    """Independent value of the integral over [0,1]."""
    with workprec(prec):
        if builtin == "monomial":
            return to_bigfloat(Fraction(1, params["p"] + 1))
        if builtin == "rational-shift":
            y = to_bigfloat(Fraction(params["y"]))
            return y * mpmath.log1p(1 / y)
        if builtin == "inv-square":
            s = Fraction(params["shift"])
            return to_bigfloat(1 / s - 1 / (s + 1))
        if builtin == "harmonic":
            return constants.get("gamma", prec)
        if builtin == "harmonic2":
            return zeta(2, prec) - 1
        if builtin == "laguerre-source":
            coeffs = xz_over_gamma_coeffs(Fraction(params["x"]), 80, prec)
            return mpmath.fsum(c / (m + 1) for m, c in enumerate(coeffs))
    return None


def deriv_reference(builtin, params, m, prec):
    """Independent Taylor coefficient f^(m)(0)/m!."""
    with workprec(prec):
        if builtin == "monomial":
            return mpmath.mpf(1 if m == params["p"] else 0)
        if builtin == "rational-shift":
            return to_bigfloat(Fraction((-1) ** m) / Fraction(params["y"]) ** m)
        if builtin == "inv-square":
            s = Fraction(params["shift"])
            return to_bigfloat(Fraction((-1) ** m * (m + 1)) / s ** (m + 2))
        if builtin == "harmonic":
            return psi_taylor_series(max(m, 1), prec)[m]
        if builtin == "harmonic2":
            if m == 0:
                return mpmath.mpf(0)
            return (-1) ** (m + 1) * (m + 1) * zeta(m + 2, prec)
        if builtin == "laguerre-source":
            return xz_over_gamma_coeffs(Fraction(params["x"]), m, prec)[m]
    return None


def _value_fields(value, prec):
    out = {"value": decimal_string(to_bigfloat(value) if isinstance(value, Fraction) else value, prec)}
    if isinstance(value, Fraction):
        text = _rational_str(value)
        out["rational"] = text if len(text) <= 200 else None
    return out


def _numeric_report(cfg, head, value, reference, extra):
    prec = cfg.precision_bits
    rec = dict(head)
    rec.update(_value_fields(value, prec))
    rec.update(extra)
    with workprec(prec):
        v = to_bigfloat(value) if isinstance(value, Fraction) else value
        rec["reference"] = decimal_string(reference, prec)
        rec["abs_error"] = mpmath.nstr(abs(v - reference), 12)
    return rec


def _render_record(cfg, rec):
    if cfg.fmt == "json":
        return canonical_json(rec)
    if cfg.fmt == "csv":
        keys = list(rec)
        return _csv_text([keys, [json.dumps(rec[k]) if isinstance(rec[k], (dict, list)) else rec[k] for k in keys]])
    return "".join(f"{k}: {v}\n" for k, v in rec.items())


def _quad_terms(args):
    cfg = _config(args, default_terms=QUAD_DEFAULT_TERMS)
    if cfg.terms > QUAD_MAX_TERMS:
        raise UsageError(f"--terms is capped at {QUAD_MAX_TERMS} for quad/deriv")
    return cfg


def cmd_quad(args):
    cfg = _quad_terms(args)
    f, params = build_sampled(args, cfg.terms)
    res = newton_quadrature(f, cfg.precision_bits)
    ref = quad_reference(args.builtin, params, cfg.precision_bits)
    head = {"builtin": args.builtin, "params": params, "N": f.N, "precision_bits": cfg.precision_bits}
    with workprec(cfg.precision_bits):
        last = to_bigfloat(res.last_term) if isinstance(res.last_term, Fraction) else res.last_term
        extra = {"terms_used": res.terms_used, "last_term": mpmath.nstr(last, 12), "exact": res.exact}
    _emit(cfg, _render_record(cfg, _numeric_report(cfg, head, res.value, ref, extra)))
    return 0


def cmd_deriv(args):
    cfg = _quad_terms(args)
    if args.m is None or args.m < 0:
        raise UsageError("deriv needs --m >= 0")
    f, params = build_sampled(args, cfg.terms)
    if args.m > f.N:
        raise UsageError("--m must not exceed --terms")
    value = newton_derivative(f, args.m, cfg.precision_bits)
    ref = deriv_reference(args.builtin, params, args.m, cfg.precision_bits)
    head = {"builtin": args.builtin, "params": params, "m": args.m, "N": f.N, "precision_bits": cfg.precision_bits}
    _emit(cfg, _render_record(cfg, _numeric_report(cfg, head, value, ref, {})))
    return 0


# -- constants ---------------------------------------------------------------

CONSTANT_NAMES = ("gamma", "ln2", "m1") + tuple(f"zeta{s}" for s in range(2, 13))


def cmd_constants(args):
    cfg = _config(args)
    names = args.names or list(CONSTANT_NAMES)
    bad = [n for n in names if n not in CONSTANT_NAMES]
    if bad:
        raise UsageError(f"unknown constant(s) {bad}; choose from {', '.join(CONSTANT_NAMES)}")
    prec = cfg.precision_bits
    recs = [{"name": n, "value": decimal_string(constants.get(n, prec), prec), "precision_bits": prec} for n in names]
    if cfg.fmt == "json":
        text = canonical_json(recs)
    elif cfg.fmt == "csv":
        text = _csv_text([["name", "value", "precision_bits"]] + [[r["name"], r["value"], prec] for r in recs])
    else:
        text = "".join(f"{r['name']}\t{r['value']}\n" for r in recs)
    _emit(cfg, text)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, help="series terms N (env GREGLAB_TERMS, default 10000)")
    common.add_argument("--prec", type=int, help="precision in bits (env GREGLAB_PREC, default 128)")
    common.add_argument("--tolerance", type=float, help="override the per-identity tolerance")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="greglab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("numbers", parents=[common], help="exact tables of special numbers")
    p.add_argument("family", help=" | ".join(NUMBER_FAMILIES))
    p.add_argument("n_max_pos", metavar="n_max", type=int)
    p.add_argument("--p", type=int, help="order for harmonic-p")
    p.set_defaults(func=cmd_numbers)

    p = sub.add_parser("verify", parents=[common], help="check identities")
    p.add_argument("--id")
    p.add_argument("--kind", help="finite | cauchy | stirling | laguerre | series | errata | all")
    p.add_argument("--n-max", type=int, default=100, help="largest n for finite identities")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="identity parameter (with --id)")
    p.add_argument("--include-errata", action="store_true", help="also run the known-erratum forms")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (("quad", cmd_quad, "integral over [0,1] from integer samples"),
                                 ("deriv", cmd_deriv, "Taylor coefficient at 0 from integer samples")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("builtin", choices=BUILTINS)
        p.add_argument("--p", type=int, help="monomial degree")
        p.add_argument("--y", type=_fraction, help="rational-shift parameter")
        p.add_argument("--shift", type=_fraction, help="inv-square shift")
        p.add_argument("--x", type=_fraction, help="laguerre-source x")
        if name == "deriv":
            p.add_argument("--m", type=int, help="derivative order")
        else:
            p.add_argument("--m", dest="shift_alias", type=_fraction, help="alias of --shift")
        p.set_defaults(func=func)

    p = sub.add_parser("laguerre", parents=[common], help="evaluate a Laguerre series identity")
    p.add_argument("--id", help="eq25 | eq26 | eq27 | eq28 (default eq26)")
    p.add_argument("--x", type=_fraction, required=True)
    p.add_argument("--m", type=int, help="order for eq25")
    p.set_defaults(func=cmd_laguerre)

    p = sub.add_parser("constants", parents=[common], help="reference constants as decimal strings")
    p.add_argument("names", nargs="*", help=" ".join(CONSTANT_NAMES))
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, nk.CapacityError) as exc:
        print(f"greglab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
