"""Command-line front end.

Subcommands: ``approx`` (solve one approximation problem), ``coeff`` (scaled
error sequences over a range of sizes), ``audit`` (compare an empirical data
set against the significand law and the theoretical floor at the same support
size), ``verify`` (built-in consistency suites).

Reports are deterministic: floats are rounded to 12 significant digits and
timing is recorded only when requested, so identical configurations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import coefficients, kantorovich, kolmogorov, levy, oracle
from .distributions import (
    Dist,
    Interval,
    InvalidInputError,
    InvalidParameterError,
    finite_to_dist,
    from_samples,
    make_benford,
    make_beta21,
    make_exponential,
    make_inverse_cantor,
    make_uniform,
    significand,
)
from .metrics import MetricKind, evaluate_distance
from .numerics import NonConvergenceError

DEFAULT_TOL = float(os.environ.get("FINQUANT_TOL", "1e-12"))

_CONFIG_FIELDS = ("command", "dist", "metric", "n", "mode", "positions", "weights",
                  "n_range", "exponent", "data", "b", "metrics", "format")


class RunConfig(dict):
    """Canonical run configuration embedded in every report.

    Built from parsed arguments; serializing and re-parsing a configuration
    reproduces the same canonical mapping, so reports are reproducible keys.
    """

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        out = cls()
        for key in _CONFIG_FIELDS:
            value = getattr(args, key, None)
            if value is not None:
                out[key] = value
        return out


def _r12(v: float) -> float:
    if v is None or isinstance(v, str):
        return v
    if math.isinf(v) or math.isnan(v):
        return v
    return float(f"{v:.12g}")


def parse_dist(spec: str) -> Dist:
    s = spec.strip().lower()
    if s.startswith("benford:"):
        return make_benford(float(s.split(":", 1)[1]))
    if s == "beta21":
        return make_beta21()
    if s == "exponential":
        return make_exponential()
    if s == "inverse-cantor":
        return make_inverse_cantor()
    if s.startswith("inverse-cantor:"):
        return make_inverse_cantor(int(s.split(":", 1)[1]))
    if s.startswith("uniform:"):
        lo, hi = (float(t) for t in s.split(":", 1)[1].split(","))
        return make_uniform(lo, hi)
    if s.startswith("file:"):
        path = spec.strip()[5:]
        data = read_data_file(path)
        lo, hi = min(data), max(data)
        if hi <= lo:
            lo, hi = lo - 0.5, hi + 0.5
        support = Interval(lo, hi)
        return finite_to_dist(from_samples(data, support), support)
    raise InvalidParameterError(f"cannot parse distribution {spec!r}")


def read_data_file(path: str) -> list[float]:
    """One real per line; lines starting with '#' are comments."""
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            values.append(float(line))
    if not values:
        raise InvalidInputError(f"no data in {path}")
    return values


def _certificate_payload(cert) -> dict:
    if cert is None:
        return {}
    out = {"mode": getattr(cert, "mode", ""),
           "L_or_K": _r12(getattr(cert, "value", 0.0)),
           "slacks": [_r12(s) for s in getattr(cert, "slacks", ())]}
    quality = getattr(cert, "quality", None)
    if quality:
        out["quality"] = quality
    boxes = getattr(cert, "boxes", ())
    if boxes:
        out["boxes"] = [[_r12(a), _r12(b)] for a, b in boxes]
    return out


def _result_payload(config: dict, res, wall_ms: float) -> dict:
    diag = res.diagnostics
    return {
        "config": config,
        "result": {
            "x": [_r12(v) for v in res.measure.x],
            "p": [_r12(v) for v in res.measure.p],
            "P": [_r12(v) for v in res.measure.P],
            "distance": _r12(res.distance),
        },
        "certificate": _certificate_payload(res.certificate),
        "diagnostics": {
            "iterations": int(getattr(diag, "iterations", 0)),
            "residual": _r12(float(getattr(diag, "residual", 0.0))),
            "wall_time_ms": _r12(wall_ms),
        },
    }


def _emit(payload: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        text = _payload_to_csv(payload)
    else:
        text = _payload_to_text(payload)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _payload_to_csv(payload: dict) -> str:
    if "rows" in payload:
        header = ",".join(payload["columns"])
        lines = [header] + [",".join(str(v) for v in row) for row in payload["rows"]]
        return "\n".join(lines) + "\n"
    res = payload["result"]
    lines = ["j,x,p,P"]
    for j, (x, p, P) in enumerate(zip(res["x"], res["p"], res["P"][1:]), start=1):
        lines.append(f"{j},{x},{p},{P}")
    lines.append(f"distance,{res['distance']},,")
    return "\n".join(lines) + "\n"


def _payload_to_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _parse_n_range(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


def cmd_approx(args) -> int:
    config = RunConfig.from_args(args)
    mu = parse_dist(args.dist)
    metric = MetricKind.parse(args.metric)
    mode = args.mode
    tol = args.tol
    t0 = time.perf_counter()
    try:
        if mode == "positions-given":
            x = [float(t) for t in args.positions.split(",")]
            if metric.kind == "levy":
                res = levy.best_given_positions(mu, x, tol)
            elif metric.kind == "kolmogorov":
                res = kolmogorov.best_given_positions_K(mu, x, tol)
            else:
                res = kantorovich.best_given_positions_dr(mu, x, metric.r, tol)
        elif mode == "weights-given":
            p = [float(t) for t in args.weights.split(",")]
            if metric.kind == "levy":
                res = levy.best_given_weights(mu, p, tol)
            elif metric.kind == "kolmogorov":
                res = kolmogorov.best_given_weights_K(mu, p, tol)
            else:
                res = kantorovich.best_given_weights_dr(mu, p, metric.r, tol)
        elif mode == "uniform":
            n = args.n
            if metric.kind == "levy":
                res = levy.best_given_weights(mu, levy.uniform_weights(n), tol)
            elif metric.kind == "kolmogorov":
                res = kolmogorov.best_given_weights_K(mu, levy.uniform_weights(n), tol)
            elif metric.kind == "kantorovich":
                res = kantorovich.best_dr_general(mu, n, metric.r, "uniform")
            else:
                res = kantorovich.best_fortet_mourier(mu, n, metric.r, "uniform")
        elif mode == "unconstrained":
            n = args.n
            if metric.kind == "levy":
                res = levy.best_unconstrained(mu, n, tol)
            elif metric.kind == "kolmogorov":
                res = kolmogorov.best_unconstrained_K(mu, n, tol)
            elif metric.kind == "kantorovich":
                if metric.r > 1.0 and hasattr(mu, "b"):
                    res = kantorovich.benford_best_dr_shooting(mu.b, n, metric.r)
                else:
                    res = kantorovich.best_dr_general(mu, n, metric.r, "unconstrained")
            else:
                res = kantorovich.best_fortet_mourier(mu, n, metric.r, "unconstrained")
        else:
            raise InvalidParameterError(f"unknown mode {mode!r}")
    except NonConvergenceError as exc:
        wall = (time.perf_counter() - t0) * 1000.0 if args.timing else 0.0
        state = exc.state
        payload = {"config": config, "error": str(exc),
                   "diagnostics": {
                       "iterations": int(getattr(state, "iterations", 0)),
                       "residual": _r12(float(getattr(state, "residual", math.nan))),
                       "wall_time_ms": _r12(wall)}}
        _emit(payload, args.format, args.out)
        return 3
    wall = (time.perf_counter() - t0) * 1000.0 if args.timing else 0.0
    _emit(_result_payload(config, res, wall), args.format, args.out)
    return 0


def cmd_coeff(args) -> int:
    config = RunConfig.from_args(args)
    mu = parse_dist(args.dist)
    metric = MetricKind.parse(args.metric)
    ns = _parse_n_range(args.n_range)
    exponent = args.exponent if args.exponent is not None \
        else coefficients.default_exponent(mu, metric, args.mode)
    pairs = coefficients.estimate_coefficient(mu, metric, args.mode, ns,
                                              exponent, args.tol)
    known = coefficients.known_coefficient(mu, metric, args.mode)
    limit = known["limit"] if known and known["scaling"] == "n" and exponent == 1.0 \
        else None
    columns = ["n", "d", "scaled"] + (["limit"] if limit is not None else [])
    rows = []
    for n, scaled in pairs:
        d = scaled / n ** exponent
        row = [n, _r12(d), _r12(scaled)]
        if limit is not None:
            row.append(_r12(limit))
        rows.append(row)
    payload = {"config": config, "columns": columns, "rows": rows,
               "exponent": _r12(exponent)}
    _emit(payload, args.format, args.out)
    return 0


def cmd_audit(args) -> int:
    config = RunConfig.from_args(args)
    data = read_data_file(args.data)
    b = args.b
    mu = make_benford(b)
    sig = significand(data, b)
    emp = from_samples([s for s in sig if s > 0.0], Interval(1.0, b))
    n = emp.n
    rows = []
    for name in args.metrics.split(","):
        metric = MetricKind.parse(name)
        d_emp = evaluate_distance(mu, emp, metric)
        d_min = coefficients.solve_distance(mu, metric, "uniform", n, args.tol)
        rows.append([metric.label, _r12(d_emp), _r12(d_min),
                     _r12(d_emp / d_min) if d_min > 0 else math.inf])
    payload = {"config": config, "n_atoms": n,
               "columns": ["metric", "distance", "uniform_floor", "ratio"],
               "rows": rows}
    _emit(payload, args.format, args.out)
    return 0


def _suite_metric_inequalities(rng) -> list[tuple[str, bool, str]]:
    from .distributions import FiniteMeasure
    from .metrics import (kantorovich_distance, kolmogorov_distance,
                          levy_distance)
    support = Interval(1.0, 10.0)
    checks = []
    worst = 0.0
    for _ in range(200):
        k1, k2 = rng.integers(1, 6, size=2)
        m1 = FiniteMeasure(np.sort(rng.uniform(1, 10, k1)), rng.dirichlet(np.ones(k1)))
        m2 = FiniteMeasure(np.sort(rng.uniform(1, 10, k2)), rng.dirichlet(np.ones(k2)))
        d1_ = finite_to_dist(m1, support)
        d2_ = finite_to_dist(m2, support)
        dl = levy_distance(d1_, m2)
        dk = kolmogorov_distance(d1_, m2)
        d1v = kantorovich_distance(d1_, d2_, 1.0)
        d2v = kantorovich_distance(d1_, d2_, 2.0)
        lam, om = 9.0, support.omega
        tolr = 1e-9
        worst = max(worst,
                    d1v - (1 + lam) / (om * lam) * dl - tolr,
                    d1v - d2v - tolr,
                    d1v - dk - tolr,
                    dl - om * dk - tolr,
                    max(dl, dk, d1v, d2v) - 1.0 - tolr)
    checks.append(("inequality-chain", worst <= 0.0, f"max violation {worst:.3e}"))
    return checks


def _suite_fig_regression() -> list[tuple[str, bool, str]]:
    mu = make_benford(10.0)
    checks = []
    v = levy.best_given_weights(mu, levy.uniform_weights(3)).distance
    checks.append(("levy-uniform-3", abs(v - 0.1566) < 5e-4, f"{v:.6f}"))
    v = levy.best_unconstrained(mu, 3).distance
    checks.append(("levy-best-3", abs(v - 0.1439) < 5e-4, f"{v:.6f}"))
    v = kantorovich.best_dr_general(mu, 3, 1.0, "uniform").distance
    checks.append(("d1-uniform-3", abs(v - 0.08232) < 1e-5, f"{v:.6f}"))
    v = kantorovich.benford_best_d1(10.0, 3).distance
    checks.append(("d1-best-3", abs(v - 0.07520) < 1e-5, f"{v:.6f}"))
    return checks


def _suite_oracle_n2() -> list[tuple[str, bool, str]]:
    mu = make_benford(10.0)
    grid = oracle.GridSpec(200, 200, 2)
    checks = []
    for name, solve in [
        ("levy", lambda: levy.best_unconstrained(mu, 2).distance),
        ("d1", lambda: kantorovich.benford_best_d1(10.0, 2).distance),
        ("dK", lambda: kolmogorov.best_unconstrained_K(mu, 2).distance),
    ]:
        metric = MetricKind.parse(name)
        got = oracle.brute_force_best(mu, metric, 2, grid).distance
        want = solve()
        checks.append((f"oracle-{name}", got >= want - 1e-9 and got - want < 5e-3,
                       f"grid {got:.6f} vs solver {want:.6f}"))
    return checks


def _suite_rate_example() -> list[tuple[str, bool, str]]:
    from .distributions import FiniteMeasure
    from .metrics import (kantorovich_distance, kolmogorov_distance,
                          levy_distance)
    support = Interval(0.0, 1.0)
    mu = finite_to_dist(FiniteMeasure([0.0], [1.0]), support)
    ok = True
    detail = ""
    for k in range(1, 21):
        mk = FiniteMeasure([0.0, k ** -2.0], [1 - 1.0 / k, 1.0 / k])
        dl = levy_distance(mu, mk)
        dk = kolmogorov_distance(mu, mk)
        d1v = kantorovich_distance(mu, finite_to_dist(mk, support), 1.0)
        for got, want, tag in [(dl, k ** -2.0, "levy"), (dk, 1.0 / k, "dK"),
                               (d1v, k ** -3.0, "d1")]:
            if abs(got - want) > 1e-12:
                ok = False
                detail = f"k={k} {tag}: {got} vs {want}"
    return [("separation-rates", ok, detail or "exact for k=1..20")]


SUITES = {
    "metric-inequalities": lambda: _suite_metric_inequalities(np.random.default_rng(7)),
    "fig1-fig2": _suite_fig_regression,
    "oracle-n2": _suite_oracle_n2,
    "rate-example": _suite_rate_example,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise InvalidParameterError(f"unknown suite {args.suite!r}; "
                                        f"choose from {sorted(SUITES)} or 'all'")
    failures = []
    report = []
    for name in names:
        for check, ok, detail in SUITES[name]():
            report.append({"suite": name, "check": check, "passed": bool(ok),
                           "detail": detail})
            if not ok:
                failures.append(check)
    payload = {"suites": names, "passed": not failures, "checks": report}
    _emit(payload, args.format, args.out)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finquant",
                                description="Best finite approximations of "
                                            "one-dimensional distributions")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--out", default=None, help="write the report to a file")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--timing", action="store_true",
                        help="record wall time (makes output non-reproducible)")

    sp = sub.add_parser("approx", help="solve one approximation problem")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--metric", required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--mode", default="unconstrained",
                    choices=["positions-given", "weights-given", "uniform",
                             "unconstrained"])
    sp.add_argument("--positions", default=None, help="comma-separated atom positions")
    sp.add_argument("--weights", default=None, help="comma-separated weights")
    common(sp)
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("coeff", help="scaled optimal-error sequences")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--metric", required=True)
    sp.add_argument("--mode", default="best", choices=["best", "uniform"])
    sp.add_argument("--n-range", required=True, help="e.g. 1..64 or 1,2,4,8")
    sp.add_argument("--exponent", type=float, default=None)
    common(sp)
    sp.set_defaults(func=cmd_coeff)

    sp = sub.add_parser("audit", help="empirical significand audit")
    sp.add_argument("--data", required=True)
    sp.add_argument("--b", type=float, default=10.0)
    sp.add_argument("--metrics", default="levy,d1,dK")
    common(sp)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("verify", help="run a built-in consistency suite")
    sp.add_argument("suite", help="suite name or 'all'")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "approx" and args.mode in ("uniform", "unconstrained") \
            and args.n is None:
        print("error: --n is required for this mode", file=sys.stderr)
        return 2
    if args.command == "approx" and args.mode == "positions-given" \
            and not args.positions:
        print("error: --positions is required", file=sys.stderr)
        return 2
    if args.command == "approx" and args.mode == "weights-given" and not args.weights:
        print("error: --weights is required", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InvalidParameterError, InvalidInputError, FileNotFoundError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
