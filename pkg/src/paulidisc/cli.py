"""Command-line front end: ``paulidisc {curve,optimize,scenario,threshold,verify}``.

Exit codes: 0 success, 1 numeric or verification failure, 2 usage error.
Any flag can also be given in a flat ``key = value`` file passed with
``--config``; flags on the command line win over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .discrimination import (
    OracleMismatch,
    Priors,
    brute_force_ent,
    brute_force_no_ent,
    error_prob_ent,
    error_prob_no_ent,
    entanglement_advantage,
    r_vector,
)
from .pauli_dynamics import DecayRates, channel_probabilities, pauli_convolve
from .scenarios import (
    KINDS,
    DegenerateScenario,
    ScenarioSpec,
    closed_form_threshold,
    find_advantage_threshold,
    solve,
)
from .time_opt import OptimizationResult, OptimizerConfig, curve, minimize_error

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_rates(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(x) for x in str(text).split(","))
        return DecayRates(vals).gamma
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid rates {text!r}: {exc}") from None


def read_config(path: str) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


@dataclass
class RunConfig:
    rates1: tuple[float, float, float] = (0.0, 0.0, 1.0)
    rates2: tuple[float, float, float] = (0.0, 0.0, 0.25)
    q1: float = 0.5
    mode: str = "both"
    t_min: float = 1e-3
    t_max: float = 5.0
    n_points: int = 200
    linear: bool = False
    output_format: str = "csv"
    seed: int = 0

    def validate(self):
        if not self.t_min > 0:
            raise UsageError("--t-min must be positive")
        if not self.t_max > self.t_min:
            raise UsageError("--t-max must exceed --t-min")
        if self.n_points < 2:
            raise UsageError("--points must be at least 2")
        if not 0.0 <= self.q1 <= 1.0:
            raise UsageError("--q1 must lie in [0, 1]")
        if self.mode not in ("separable", "entangled", "both"):
            raise UsageError(f"invalid mode {self.mode!r}")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"invalid format {self.output_format!r}")
        return self

    def grid(self) -> np.ndarray:
        if self.linear:
            return np.linspace(self.t_min, self.t_max, self.n_points)
        return np.geomspace(self.t_min, self.t_max, self.n_points)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            rates1=tuple(args.rates1), rates2=tuple(args.rates2), q1=args.q1, mode=args.mode,
            t_min=args.t_min, t_max=args.t_max, n_points=args.points, linear=args.linear,
            output_format=args.format, seed=args.seed,
        ).validate()


def _num(x):
    """JSON-safe float: infinities become the string "infinity", nan becomes null."""
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "infinity" if x > 0 else "-infinity"
    if math.isnan(x):
        return None
    return x


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def format_csv(times, p_no_ent, p_ent) -> str:
    rows = ["t,p_no_ent,p_ent"]
    rows += [f"{t!r},{a!r},{b!r}" for t, a, b in zip(map(float, times), map(float, p_no_ent), map(float, p_ent))]
    return "\n".join(rows) + "\n"


def gnuplot_script(cfg: RunConfig, csv_text: str) -> str:
    data = csv_text.split("\n", 1)[1].replace(",", " ")
    return (
        "$data << EOD\n" + data + "EOD\n"
        f"set title 'rates1 = {cfg.rates1}, rates2 = {cfg.rates2}'\n"
        "set xlabel 't'\nset ylabel 'error probability'\n"
        + ("" if cfg.linear else "set logscale x\n")
        + "plot $data using 1:3 with lines lw 2 title 'entangled', "
        "$data using 1:2 with lines dt 2 lw 2 title 'separable'\n"
    )


def cmd_curve(args) -> int:
    cfg = RunConfig.from_args(args)
    c = curve(cfg.rates1, cfg.rates2, Priors(cfg.q1), cfg.grid())
    if not (np.all(np.isfinite(c.p_ent)) and np.all(np.isfinite(c.p_no_ent))):
        print("error: non-finite error probability", file=sys.stderr)
        return EXIT_FAIL
    csv_text = format_csv(c.times, c.p_no_ent, c.p_ent)
    if cfg.output_format == "csv":
        text = csv_text
    else:
        text = json.dumps({
            "times": [float(x) for x in c.times],
            "p_no_ent": [float(x) for x in c.p_no_ent],
            "p_ent": [float(x) for x in c.p_ent],
            "config": asdict(cfg),
        }) + "\n"
    _write(text, args.out)
    if args.gnuplot:
        _write(gnuplot_script(cfg, csv_text), args.gnuplot)
    return EXIT_OK


def _minimum_dict(m) -> dict:
    return {"t": _num(m.t), "p": _num(m.p), "bracket": [_num(x) for x in m.bracket]}


def result_dict(res: OptimizationResult) -> dict:
    return {
        "mode": res.mode.value,
        "t_star": _num(res.t_star),
        "p_star": _num(res.p_star),
        "method": res.method,
        "bracket": None if res.bracket is None else [_num(x) for x in res.bracket],
        "t_stars": [_num(t) for t in res.t_stars],
        "minima": [_minimum_dict(m) for m in res.minima],
        "local_minima": [_minimum_dict(m) for m in res.local_minima],
        "p_stationary": _num(res.p_stationary),
        "degenerate": res.degenerate,
    }


def _modes(mode: str) -> list[str]:
    return ["separable", "entangled"] if mode == "both" else [mode]


def cmd_optimize(args) -> int:
    cfg = RunConfig.from_args(args)
    opt = OptimizerConfig(t_max_factor=args.t_max_factor, grid_points=args.grid_points,
                          refine_tol=args.refine_tol)
    results = [minimize_error(cfg.rates1, cfg.rates2, Priors(cfg.q1), m, opt) for m in _modes(cfg.mode)]
    report = {
        "rates1": list(cfg.rates1),
        "rates2": list(cfg.rates2),
        "q1": cfg.q1,
        "results": [result_dict(r) for r in results],
    }
    _write(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def _time_deviation(closed: Sequence[float], numeric: Sequence[float]) -> float:
    if len(closed) != len(numeric):
        return math.inf
    devs = []
    for a, b in zip(sorted(closed), sorted(numeric)):
        if math.isinf(a) or math.isinf(b):
            devs.append(0.0 if a == b else math.inf)
        else:
            devs.append(abs(a - b))
    return max(devs)


def cmd_scenario(args) -> int:
    try:
        spec = ScenarioSpec(args.kind, args.gamma1, args.gamma2)
        sol = solve(args.kind, args.gamma1, args.gamma2)
    except (DegenerateScenario, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    r1, r2 = spec.rates
    sep = minimize_error(r1, r2, None, "separable")
    ent = minimize_error(r1, r2, None, "entangled")
    out = {k: (_num(v) if isinstance(v, float) else v) for k, v in sol.as_dict().items()}
    out["t_star_no_ent"] = [_num(t) for t in sol.t_star_no_ent]
    out["numeric_check"] = {
        "separable": result_dict(sep),
        "entangled": result_dict(ent),
        "deviation": {
            "t_no_ent": _num(_time_deviation(sol.t_star_no_ent, sep.t_stars)),
            "p_no_ent": _num(abs(sol.p_star_no_ent - sep.p_star)),
            "t_ent": _num(_time_deviation((sol.t_star_ent,), ent.t_stars)),
            "p_ent": _num(abs(sol.p_star_ent - ent.p_star)),
        },
    }
    _write(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    if args.tol < 1e-6:
        print("error: --tol must be at least 1e-6", file=sys.stderr)
        return EXIT_USAGE
    res = find_advantage_threshold(tol=args.tol)
    report = {
        "ratio": res.ratio,
        "bracket": list(res.bracket),
        "bracket_width": res.bracket[1] - res.bracket[0],
        "iterations": res.iterations,
        "trace": [{"ratio": x, "advantage": ok} for x, ok in res.trace],
        "closed_form_ratio": closed_form_threshold(),
    }
    _write(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def verification_checks(seed: int = 0, n_grid: int = 10_000, n_samples: int = 1000,
                        instances: int = 50, tol: float | None = None) -> list[dict]:
    """Run the closed-form versus brute-force suites; one dict per check.

    ``tol`` replaces every documented tolerance when given.
    """
    rng = np.random.default_rng(seed)

    def t(default):
        return default if tol is None else tol

    p1s = rng.dirichlet(np.ones(4), size=instances)
    p2s = rng.dirichlet(np.ones(4), size=instances)
    qs = rng.uniform(0.0, 1.0, size=instances)
    checks = []

    gaps = []
    for p1, p2, q in zip(p1s, p2s, qs):
        gaps.append(brute_force_no_ent(p1, p2, q, n_grid=n_grid) - error_prob_no_ent(r_vector(q, p1, p2)))
    gaps = np.array(gaps)
    checks.append(dict(name="separable brute force within tolerance of closed form",
                       observed=float(np.max(np.abs(gaps))), tolerance=t(2e-4)))
    checks.append(dict(name="separable brute force never below closed form",
                       observed=float(max(0.0, -gaps.min())), tolerance=t(1e-12)))

    bell_dev, sample_dev = [], []
    for i, (p1, p2, q) in enumerate(zip(p1s, p2s, qs)):
        res = brute_force_ent(p1, p2, q, n_samples=n_samples, seed=seed + i, atol=math.inf)
        bell_dev.append(abs(res.p_bell - res.p_closed_form))
        sample_dev.append(max(0.0, res.p_closed_form - res.p_random_min))
    checks.append(dict(name="Bell input attains entangled closed form",
                       observed=float(max(bell_dev)), tolerance=t(1e-12)))
    checks.append(dict(name="no random two-qubit input beats entangled closed form",
                       observed=float(max(sample_dev)), tolerance=t(1e-10)))

    q = rng.uniform(size=(10_000, 1))
    r = q * rng.dirichlet(np.ones(4), 10_000) - (1 - q) * rng.dirichlet(np.ones(4), 10_000)
    strict = error_prob_ent(r) < error_prob_no_ent(r) - 1e-14
    mismatches = int(np.sum(strict != entanglement_advantage(r)))
    checks.append(dict(name="advantage iff product of r is negative",
                       observed=float(mismatches), tolerance=0.0 if tol is None else tol))
    checks.append(dict(name="entangled error never exceeds separable error",
                       observed=float(max(0.0, np.max(error_prob_ent(r) - error_prob_no_ent(r)))),
                       tolerance=t(1e-15)))

    rates = rng.uniform(0, 3, size=(1000, 3))
    s, u = rng.uniform(0, 2, 1000), rng.uniform(0, 2, 1000)
    semi = max(
        float(np.max(np.abs(channel_probabilities(g, a + b)
                            - pauli_convolve(channel_probabilities(g, a), channel_probabilities(g, b)))))
        for g, a, b in zip(rates, s, u)
    )
    checks.append(dict(name="semigroup composition of channel weights",
                       observed=semi, tolerance=t(1e-12)))

    for c in checks:
        c["passed"] = bool(c["observed"] <= c["tolerance"])
    return checks


def cmd_verify(args) -> int:
    checks = verification_checks(args.seed, args.n_grid, args.n_samples, args.instances, args.tol)
    width = max(len(c["name"]) for c in checks)
    lines = [f"{'check':<{width}}  {'observed':>12}  {'tolerance':>10}  result"]
    for c in checks:
        lines.append(f"{c['name']:<{width}}  {c['observed']:12.3e}  {c['tolerance']:10.1e}  "
                     f"{'PASS' if c['passed'] else 'FAIL'}")
    _write("\n".join(lines) + "\n", args.out)
    failed = [c for c in checks if not c["passed"]]
    if failed:
        print(f"verification failed: {failed[0]['name']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _common(p: argparse.ArgumentParser, grid: bool = True):
    p.add_argument("--rates1", type=parse_rates, default=RunConfig.rates1, help="decay rates a,b,c of process 1")
    p.add_argument("--rates2", type=parse_rates, default=RunConfig.rates2, help="decay rates a,b,c of process 2")
    p.add_argument("--q1", type=float, default=RunConfig.q1, help="prior of process 1 (default 0.5)")
    p.add_argument("--mode", choices=["separable", "entangled", "both"], default="both")
    p.add_argument("--t-min", type=float, default=RunConfig.t_min)
    p.add_argument("--t-max", type=float, default=RunConfig.t_max)
    p.add_argument("--points", type=int, default=RunConfig.n_points)
    p.add_argument("--linear", action="store_true", help="linear instead of geometric time grid")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paulidisc",
        description="Optimal-time discrimination of Pauli dynamical maps.",
    )
    parser.add_argument("--config", help="flat key = value file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="error probabilities on a time grid")
    _common(p)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--gnuplot", default=None, metavar="PATH", help="also write a gnuplot script here")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("optimize", help="optimal discrimination time and error")
    _common(p)
    p.add_argument("--out", default=None)
    p.add_argument("--t-max-factor", type=float, default=OptimizerConfig.t_max_factor)
    p.add_argument("--grid-points", type=int, default=OptimizerConfig.grid_points)
    p.add_argument("--refine-tol", type=float, default=OptimizerConfig.refine_tol)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("scenario", help="closed-form case study with numeric cross-check")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("gamma1", type=float)
    p.add_argument("gamma2", type=float)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("threshold", help="rate ratio below which entanglement helps at finite time")
    p.add_argument("--tol", type=float, default=5e-4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("verify", help="closed forms versus brute-force oracles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-grid", type=int, default=10_000)
    p.add_argument("--n-samples", type=int, default=1000)
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        values = read_config(known.config)
    except OSError as exc:
        parser.error(f"cannot read config: {exc}")
    except UsageError as exc:
        parser.error(str(exc))
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    # "points" and "format" are the dest names of --points and --format
    for name, sp in sub.choices.items():
        dests = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in values.items() if k in dests})
    all_dests = {a.dest for sp in sub.choices.values() for a in sp._actions}
    unknown = sorted(set(values) - all_dests)
    if unknown:
        parser.error(f"unknown config keys: {', '.join(unknown)}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleMismatch, RuntimeError, FloatingPointError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
