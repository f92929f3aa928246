"""Command-line interface.

Exit codes: 0 success, 1 oracle disagreement (``moments --verify``),
2 I/O or parse error, 3 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, analytic, mc, oracle, svg
from .errors import DomainError, NoConvergenceError
from .estimate import EstimateResult, as_sample, estimate, median, upper_median
from .regions import build_region

EXIT_OK, EXIT_MISMATCH, EXIT_IO, EXIT_DOMAIN = 0, 1, 2, 3
# relative agreement required between closed forms and quadrature
VERIFY_RTOL = 1e-7


class DataFileError(Exception):
    def __init__(self, path, lineno, msg):
        super().__init__(f"{path}:{lineno}: {msg}" if lineno else f"{path}: {msg}")


def read_datafile(path: str) -> np.ndarray:
    """One real per line; blank lines and ``#`` comments are skipped."""
    try:
        if path == "-":
            lines = sys.stdin.read().splitlines()
        else:
            with open(path, encoding="ascii") as fh:
                lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFileError(path, 0, str(exc)) from None
    values = []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            v = float(text)
        except ValueError:
            raise DataFileError(path, lineno, f"not a number: {text!r}") from None
        if not math.isfinite(v):
            raise DataFileError(path, lineno, f"non-finite value {text!r}")
        if v == 0.0:
            raise DataFileError(path, lineno, "zero datum (log undefined)")
        values.append(v)
    return np.array(values, dtype=float)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def repr_num(v: float) -> str:
    # shortest round-trip text, the same digits json.dumps emits
    return repr(float(v))


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)


# -- estimate ---------------------------------------------------------------

def _estimate_doc(args) -> tuple[dict, list]:
    x = read_datafile(args.input)
    x = as_sample(x, min_size=2)
    kinds = ["disc", "square", "intervals"] if args.region == "all" else [args.region]
    shift, degenerate = 0.0, False
    if args.subtract_median != "off":
        shift = median(x) if args.subtract_median == "paired" else upper_median(x)
        degenerate = bool(np.any(x == shift))
    if degenerate:
        est = EstimateResult(complex(0.0, 0.0), 0.0, int(x.size), args.v_formula)
    else:
        est = estimate(x - shift if shift else x, args.v_formula)
    regions = [build_region(k, est, args.alpha) for k in kinds]
    if shift:
        regions = [r.translated(shift) for r in regions]
    p = est.p_n + shift
    doc = {
        "tool_version": __version__,
        "n": est.n,
        "p_n": {"re": p.real, "im": p.imag},
        "v_n": est.v_n,
        "v_formula": est.v_formula,
        "alpha": float(args.alpha),
        "region": regions[0].to_dict() if len(regions) == 1 else [r.to_dict() for r in regions],
    }
    if args.subtract_median != "off":
        doc["shift"] = {"kind": args.subtract_median, "value": shift, "degenerate": degenerate}
    return doc, regions


CSV_FIELDS = ["kind", "n", "p_re", "p_im", "v_n", "v_formula", "alpha", "center_re", "center_im",
              "radius", "half_side", "mu_lo", "mu_hi", "sigma_lo", "sigma_hi"]


def _estimate_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    regions = doc["region"] if isinstance(doc["region"], list) else [doc["region"]]
    for r in regions:
        row = dict.fromkeys(CSV_FIELDS, "")
        row.update(kind=r["kind"], n=doc["n"], p_re=repr_num(doc["p_n"]["re"]), p_im=repr_num(doc["p_n"]["im"]),
                   v_n=repr_num(doc["v_n"]), v_formula=doc["v_formula"], alpha=repr_num(doc["alpha"]))
        if "center" in r:
            row.update(center_re=repr_num(r["center"]["re"]), center_im=repr_num(r["center"]["im"]))
        if "radius" in r:
            row["radius"] = repr_num(r["radius"])
        if "half_side" in r:
            row["half_side"] = repr_num(r["half_side"])
        if "mu" in r:
            row.update(mu_lo=repr_num(r["mu"][0]), mu_hi=repr_num(r["mu"][1]),
                       sigma_lo=repr_num(r["sigma"][0]), sigma_hi=repr_num(r["sigma"][1]))
        w.writerow(row)
    return buf.getvalue()


def cmd_estimate(args) -> int:
    doc, regions = _estimate_doc(args)
    if args.format == "json":
        text = _dump(doc)
    elif args.format == "csv":
        text = _estimate_csv(doc)
    else:
        truth = complex(*args.truth) if args.truth else None
        text = svg.render(regions, truth, title=f"N={doc['n']}, alpha={doc['alpha']:g}")
    _write(text, args.output)
    return EXIT_OK


# -- simulate ---------------------------------------------------------------

def cmd_simulate(args) -> int:
    if args.n < 1:
        raise DomainError("--n must be >= 1")
    if args.distribution == "cauchy":
        x = mc.sample_cauchy(analytic.CauchyParams(args.mu, args.sigma), args.n, args.seed)
    else:
        x = mc.sample_gaussian(args.mu, args.sigma, args.n, args.seed)
    if args.replace_last is not None:
        if args.replace_last == 0.0:
            raise DomainError("--replace-last 0 would write a zero datum")
        x[-1] = args.replace_last
    header = (f"# {args.distribution} mu={_fmt(args.mu)} sigma={_fmt(args.sigma)} "
              f"n={args.n} seed={args.seed}\n")
    _write(header + "".join(_fmt(v) + "\n" for v in x), args.out)
    return EXIT_OK


# -- coverage ---------------------------------------------------------------

def cmd_coverage(args) -> int:
    report = mc.coverage(analytic.CauchyParams(args.mu, args.sigma), args.n, args.trials,
                         args.alpha, args.region, args.v_formula, args.seed)
    doc = {"tool_version": __version__, **report.to_dict()}
    _write(_dump(doc), args.output)
    return EXIT_OK


# -- moments ----------------------------------------------------------------

def _cx(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def cmd_moments(args) -> int:
    g = analytic.CauchyParams(args.mu, args.sigma)
    lm = analytic.log_moments(g)
    doc = {
        "tool_version": __version__,
        "gamma": {"mu": g.mu, "sigma": g.sigma},
        "log_moments": {"e_log_abs": lm.e_log_abs, "e_log_abs_sq": lm.e_log_abs_sq,
                        "var_log_abs": lm.var_log_abs, "var_log": lm.var_log},
    }
    checks = [("e_log_abs", complex(lm.e_log_abs), oracle.IntegrandSpec("log_abs")),
              ("e_log_abs_sq", complex(lm.e_log_abs_sq), oracle.IntegrandSpec("log_abs_sq")),
              ("pseudo_var_log", 0j, oracle.IntegrandSpec("log_complex_sq"))]
    if args.p is not None:
        p = args.p
        doc["p"] = p
        doc["expected_pow"] = _cx(analytic.expected_pow(g, p))
        doc["expected_pow_positive"] = analytic.expected_pow_positive(g, p)
        doc["expected_abs_pow"] = analytic.expected_abs_pow(g, p)
        checks += [
            ("expected_pow", analytic.expected_pow(g, p), oracle.IntegrandSpec("pow", p)),
            ("expected_pow_positive", complex(doc["expected_pow_positive"]),
             oracle.IntegrandSpec("pow_positive", p)),
            ("expected_abs_pow", complex(doc["expected_abs_pow"]), oracle.IntegrandSpec("abs_pow", p)),
        ]
    if args.n is not None:
        doc["n"] = args.n
        doc["gm_component_variance"] = analytic.gm_component_variance(g, args.n)
        doc["gm_component_covariance"] = analytic.gm_component_covariance(g, args.n)
    status = EXIT_OK
    if args.verify is not None:
        rows = []
        for name, exact, spec in checks:
            q = oracle.cauchy_expect(spec, g, args.verify)
            abs_err = abs(q.value - exact)
            # relative error with a unit floor so zero targets are comparable
            rel_err = abs_err / max(abs(exact), 1.0)
            rows.append({"name": name, "analytic": _cx(exact), "oracle": _cx(q.value),
                         "quad_est_error": q.est_error, "evaluations": q.evaluations,
                         "abs_err": abs_err, "rel_err": rel_err})
        worst = max(r["rel_err"] for r in rows)
        ok = worst <= VERIFY_RTOL
        doc["verify"] = {"tol": args.verify, "rtol": VERIFY_RTOL, "checks": rows,
                         "max_rel_err": worst, "ok": ok}
        status = EXIT_OK if ok else EXIT_MISMATCH
    _write(_dump(doc), args.output)
    return status


# -- outlier ----------------------------------------------------------------

def cmd_outlier(args) -> int:
    rows = mc.outlier_experiment(args.samples, args.n, args.outlier, args.alpha, args.seed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample", "variant", "contaminated", "center", "radius", "lo", "hi"])
    for r in rows:
        w.writerow([r.sample_index, r.variant, int(r.contaminated), f"{r.center:.6g}",
                    f"{r.radius:.6g}", f"{r.interval[0]:.6g}", f"{r.interval[1]:.6g}"])
    _write(buf.getvalue(), args.output)
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cauchydisc", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate gamma and a confidence region from a data file")
    p.add_argument("--input", "-i", required=True, help="data file, one value per line ('-' = stdin)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--region", choices=["disc", "square", "intervals", "all"], default="disc")
    p.add_argument("--v-formula", choices=["corrected", "paper"], default="corrected")
    p.add_argument("--subtract-median", choices=["off", "paired", "upper"], default="off")
    p.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    p.add_argument("--truth", type=float, nargs=2, metavar=("MU", "SIGMA"))
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="write a seeded sample to a data file")
    p.add_argument("distribution", choices=["cauchy", "gaussian"])
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replace-last", type=float, metavar="VALUE")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("coverage", help="Monte Carlo coverage of a confidence region")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--region", choices=list(mc.COVERAGE_KINDS), default="disc")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--v-formula", choices=["corrected", "paper"], default="corrected")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("moments", help="closed-form moments, optionally checked by quadrature")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--n", type=int, help="sample size for the geometric-mean variance")
    p.add_argument("--verify", type=float, metavar="TOL")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("outlier", help="t-interval vs geometric-mean interval under one outlier")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--outlier", type=float, default=5.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_outlier)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, NoConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
