"""Command-line harness: parameter sweeps, engine-vs-closed-form comparison,
and Monte Carlo runs.

Subcommands
-----------
sweep    Evaluate one experiment along a swept parameter and emit CSV.
compare  Run the full agreement grid between the operator engine and the
         closed forms; nonzero exit if any point deviates beyond tolerance.
mc       Sample a detection run and report counts and corrected estimates.

Configuration is a JSON object with a `schema_version` field; every value
can be overridden on the command line with repeated `--set key=value`
(dotted paths reach into `sweep`).  Angles cross this boundary in degrees
and are converted to radians internally.  CSV output uses a comma
delimiter, `.` decimal separator, and 15 significant digits, and is
byte-stable for a fixed configuration and seed.

Exit codes: 0 success, 1 invalid configuration, 2 comparison failure,
3 file I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable, Sequence

from . import compare as comparemod
from . import formulas
from .elements import BeamSplitterSpec, PhaseGeometry
from .engine import (
    Arm,
    InputSpec,
    OutcomeKind,
    coincidence_no_polarizers,
    coincidence_probability,
    double_trigger_probability,
    full_outcome_distribution,
    same_arm_probability,
)
from .montecarlo import CountTable, RunConfig, consistency_z, estimate, sample_run

SCHEMA_VERSION = 1

_SQRT_HALF = 1.0 / math.sqrt(2.0)

DEFAULTS: dict[str, Any] = {
    "schema_version": SCHEMA_VERSION,
    "experiment": "coincidence",
    "input": "polarized",
    "theta1p_deg": 0.0,
    "theta2p_deg": 0.0,
    "theta1_deg": 0.0,
    "theta2_deg": 0.0,
    "tx": _SQRT_HALF,
    "ty": _SQRT_HALF,
    "phi_deg": 0.0,
    "psi_deg": 0.0,
    "arm": "side2",
    "n_pairs": 100000,
    "efficiency": 1.0,
    "window_ns": 5.0,
    "seed": 0,
    "sweep": {
        "param": "phi_deg",
        "start": 0.0,
        "stop": 360.0,
        "steps": 73,
    },
}

# Sweepable parameters and accepted input kinds per experiment; experiments
# whose closed form exists only for the 50:50 splitter are marked.
EXPERIMENTS: dict[str, dict[str, Any]] = {
    "coincidence": {
        "params": {"theta1p_deg", "theta2p_deg", "theta1_deg", "theta2_deg", "phi_deg"},
        "inputs": {"polarized"},
        "needs_5050": False,
    },
    "no_polarizers": {
        "params": {"theta1p_deg", "theta2p_deg", "phi_deg"},
        "inputs": {"polarized"},
        "needs_5050": True,
    },
    "same_arm": {
        "params": {"theta1p_deg", "theta2p_deg", "theta1_deg", "theta2_deg", "psi_deg"},
        "inputs": {"polarized"},
        "needs_5050": False,
    },
    "double_trigger": {
        "params": {"theta1p_deg", "theta2p_deg", "theta1_deg"},
        "inputs": {"polarized"},
        "needs_5050": True,
    },
    "unpolarized": {
        "params": {"theta1_deg", "theta2_deg", "phi_deg"},
        "inputs": {"unpolarized"},
        "needs_5050": False,
    },
    "classical": {
        "params": {"theta1_deg", "theta2_deg", "phi_deg"},
        "inputs": {"polarized", "unpolarized"},
        "needs_5050": False,
    },
    "full_distribution": {
        "params": {"theta1p_deg", "theta2p_deg", "theta1_deg", "theta2_deg", "phi_deg", "psi_deg"},
        "inputs": {"polarized", "unpolarized"},
        "needs_5050": False,
    },
    "mc_run": {
        "params": {"theta1p_deg", "theta2p_deg", "theta1_deg", "theta2_deg", "phi_deg", "psi_deg"},
        "inputs": {"polarized", "unpolarized"},
        "needs_5050": False,
    },
}


class ConfigError(Exception):
    """Invalid configuration; `problems` is a list of (field path, message)."""

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = problems
        super().__init__("; ".join(f"{p}: {m}" for p, m in problems))


def _merge(base: dict[str, Any], override: dict[str, Any], path: str, problems: list) -> dict:
    out = dict(base)
    for key, value in override.items():
        here = f"{path}.{key}" if path else key
        if key not in base:
            problems.append((here, "unknown key"))
            continue
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                problems.append((here, "expected an object"))
                continue
            out[key] = _merge(base[key], value, here, problems)
        else:
            out[key] = value
    return out


def _coerce_set_value(key: str, raw: str, template: Any) -> Any:
    if isinstance(template, bool):
        return raw.lower() in ("1", "true", "yes")
    if isinstance(template, int) and not isinstance(template, bool):
        return int(raw)
    if isinstance(template, float):
        return float(raw)
    return raw


def apply_set_overrides(cfg: dict[str, Any], pairs: Sequence[str]) -> dict[str, Any]:
    """Apply repeated --set key=value overrides (dotted paths allowed)."""
    problems: list[tuple[str, str]] = []
    out = json.loads(json.dumps(cfg))  # deep copy of plain data
    for pair in pairs:
        if "=" not in pair:
            problems.append((pair, "expected key=value"))
            continue
        key, raw = pair.split("=", 1)
        node = out
        template = DEFAULTS
        parts = key.split(".")
        ok = True
        for part in parts[:-1]:
            if not isinstance(template.get(part), dict):
                problems.append((key, "unknown key"))
                ok = False
                break
            node = node.setdefault(part, {})
            template = template[part]
        if not ok:
            continue
        leaf = parts[-1]
        if leaf not in template or isinstance(template[leaf], dict):
            problems.append((key, "unknown key"))
            continue
        try:
            node[leaf] = _coerce_set_value(key, raw, template[leaf])
        except ValueError:
            problems.append((key, f"cannot parse {raw!r} as {type(template[leaf]).__name__}"))
    if problems:
        raise ConfigError(problems)
    return out


def parse_config(data: dict[str, Any]) -> dict[str, Any]:
    """Merge user data over defaults and validate every field."""
    problems: list[tuple[str, str]] = []
    if not isinstance(data, dict):
        raise ConfigError([("config", "top level must be a JSON object")])
    cfg = _merge(DEFAULTS, data, "", problems)
    if cfg["schema_version"] != SCHEMA_VERSION:
        problems.append(("schema_version", f"expected {SCHEMA_VERSION}, got {cfg['schema_version']!r}"))
    if cfg["experiment"] not in EXPERIMENTS:
        problems.append(("experiment", f"unknown experiment {cfg['experiment']!r}"))
    if cfg["input"] not in ("polarized", "unpolarized"):
        problems.append(("input", f"must be 'polarized' or 'unpolarized', got {cfg['input']!r}"))
    if cfg["arm"] not in ("side1", "side2"):
        problems.append(("arm", f"must be 'side1' or 'side2', got {cfg['arm']!r}"))
    for key in ("theta1p_deg", "theta2p_deg", "theta1_deg", "theta2_deg", "phi_deg", "psi_deg"):
        v = cfg[key]
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            problems.append((key, f"must be a finite number, got {v!r}"))
    for key in ("tx", "ty"):
        v = cfg[key]
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not 0.0 <= v <= 1.0:
            problems.append((key, f"must lie in [0, 1], got {v!r}"))
    if not isinstance(cfg["n_pairs"], int) or isinstance(cfg["n_pairs"], bool) or cfg["n_pairs"] < 1:
        problems.append(("n_pairs", f"must be a positive integer, got {cfg['n_pairs']!r}"))
    v = cfg["efficiency"]
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not 0.0 <= v <= 1.0:
        problems.append(("efficiency", f"must lie in [0, 1], got {v!r}"))
    v = cfg["window_ns"]
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not v > 0:
        problems.append(("window_ns", f"must be positive, got {v!r}"))
    if not isinstance(cfg["seed"], int) or isinstance(cfg["seed"], bool) or cfg["seed"] < 0:
        problems.append(("seed", f"must be a nonnegative integer, got {cfg['seed']!r}"))
    sweep = cfg["sweep"]
    if not isinstance(sweep.get("steps"), int) or isinstance(sweep.get("steps"), bool) or sweep["steps"] < 1:
        problems.append(("sweep.steps", f"must be an integer >= 1, got {sweep.get('steps')!r}"))
    for key in ("start", "stop"):
        v = sweep.get(key)
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            problems.append((f"sweep.{key}", f"must be a finite number, got {v!r}"))
    exp = EXPERIMENTS.get(cfg["experiment"])
    if exp is not None:
        if sweep.get("param") not in exp["params"]:
            problems.append(
                (
                    "sweep.param",
                    f"{sweep.get('param')!r} is not sweepable for experiment "
                    f"{cfg['experiment']!r} (allowed: {sorted(exp['params'])})",
                )
            )
        if cfg["input"] not in exp["inputs"]:
            problems.append(
                ("input", f"experiment {cfg['experiment']!r} requires input in {sorted(exp['inputs'])}")
            )
        if exp["needs_5050"] and not (
            abs(cfg["tx"] - _SQRT_HALF) <= 1e-12 and abs(cfg["ty"] - _SQRT_HALF) <= 1e-12
        ):
            problems.append(
                ("tx", f"experiment {cfg['experiment']!r} has a closed form only for the 50:50 splitter")
            )
    if problems:
        raise ConfigError(problems)
    return cfg


def config_to_json(cfg: dict[str, Any]) -> str:
    """Serialize a configuration; parse_config(json.loads(...)) round-trips."""
    return json.dumps(cfg, indent=2) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if v is None else _fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _sweep_values(sweep: dict[str, Any]) -> list[float]:
    steps = sweep["steps"]
    if steps == 1:
        return [float(sweep["start"])]
    start, stop = float(sweep["start"]), float(sweep["stop"])
    return [start + (stop - start) * i / (steps - 1) for i in range(steps)]


def _point_values(cfg: dict[str, Any]) -> Callable[[float], tuple]:
    """Build the per-point evaluator for the configured experiment.

    Returns a function mapping the swept value (degrees) to a row tuple; the
    header is attached as an attribute.
    """
    bs = BeamSplitterSpec.from_transmission(cfg["tx"], cfg["ty"])
    experiment = cfg["experiment"]
    param = cfg["sweep"]["param"]
    arm = Arm.SIDE1 if cfg["arm"] == "side1" else Arm.SIDE2
    header = [param, "analytic", "engine", "abs_deviation"]

    def angles(value_deg: float) -> dict[str, float]:
        d = {k: cfg[k] for k in ("theta1p_deg", "theta2p_deg", "theta1_deg", "theta2_deg", "phi_deg", "psi_deg")}
        d[param] = value_deg
        return {k: math.radians(v) for k, v in d.items()}

    def dual(analytic: float, engine: float, value: float) -> tuple:
        return (value, analytic, engine, abs(analytic - engine))

    if experiment == "coincidence":

        def row(value: float) -> tuple:
            a = angles(value)
            ana = formulas.p_coincidence(
                a["theta1p_deg"], a["theta2p_deg"], a["theta1_deg"], a["theta2_deg"], bs, a["phi_deg"]
            )
            eng = coincidence_probability(
                InputSpec.polarized(a["theta1p_deg"], a["theta2p_deg"]),
                a["theta1_deg"],
                a["theta2_deg"],
                bs,
                PhaseGeometry(phi=a["phi_deg"]),
            )
            return dual(ana, eng, value)

    elif experiment == "no_polarizers":

        def row(value: float) -> tuple:
            a = angles(value)
            ana = formulas.p_no_polarizers(a["theta1p_deg"], a["theta2p_deg"], a["phi_deg"])
            eng = coincidence_no_polarizers(
                InputSpec.polarized(a["theta1p_deg"], a["theta2p_deg"]),
                bs,
                PhaseGeometry(phi=a["phi_deg"]),
            )
            return dual(ana, eng, value)

    elif experiment == "same_arm":

        def row(value: float) -> tuple:
            a = angles(value)
            if arm is Arm.SIDE2:
                ana = formulas.p_same_arm(
                    a["theta1p_deg"], a["theta2p_deg"], a["theta1_deg"], a["theta2_deg"], bs, a["psi_deg"]
                )
            else:  # mirror image of the side-2 form
                ana = formulas.p_same_arm(
                    a["theta2p_deg"], a["theta1p_deg"], a["theta2_deg"], a["theta1_deg"], bs, a["psi_deg"]
                )
            eng = same_arm_probability(
                InputSpec.polarized(a["theta1p_deg"], a["theta2p_deg"]),
                arm,
                a["theta1_deg"],
                a["theta2_deg"],
                bs,
                PhaseGeometry(psi=a["psi_deg"]),
            )
            return dual(ana, eng, value)

    elif experiment == "double_trigger":

        def row(value: float) -> tuple:
            a = angles(value)
            ana = formulas.p_double_trigger(a["theta1p_deg"], a["theta2p_deg"], a["theta1_deg"])
            eng = double_trigger_probability(
                InputSpec.polarized(a["theta1p_deg"], a["theta2p_deg"]), arm, a["theta1_deg"], bs
            )
            return dual(ana, eng, value)

    elif experiment == "unpolarized":

        def row(value: float) -> tuple:
            a = angles(value)
            ana = formulas.p_unpolarized(a["theta1_deg"], a["theta2_deg"], bs, a["phi_deg"])
            eng = coincidence_probability(
                InputSpec.unpolarized(),
                a["theta1_deg"],
                a["theta2_deg"],
                bs,
                PhaseGeometry(phi=a["phi_deg"]),
            )
            return dual(ana, eng, value)

    elif experiment == "classical":
        # benchmark rate only; there is no quantum-engine counterpart
        def row(value: float) -> tuple:
            a = angles(value)
            ana = formulas.p_classical(a["theta1_deg"], a["theta2_deg"], a["phi_deg"])
            return (value, ana, None, None)

    elif experiment == "full_distribution":
        # analytic column: the expected total of the exclusive partition
        def row(value: float) -> tuple:
            a = angles(value)
            inp = (
                InputSpec.polarized(a["theta1p_deg"], a["theta2p_deg"])
                if cfg["input"] == "polarized"
                else InputSpec.unpolarized()
            )
            dist = full_outcome_distribution(
                inp,
                a["theta1_deg"],
                a["theta2_deg"],
                bs,
                PhaseGeometry(a["phi_deg"], a["psi_deg"]),
            )
            return dual(1.0, dist.total(), value)

    else:  # mc_run: exact opposite-side total vs its Monte Carlo estimate
        header = [param, "exact", "estimate", "abs_deviation"]

        def row(value: float) -> tuple:
            a = angles(value)
            inp = (
                InputSpec.polarized(a["theta1p_deg"], a["theta2p_deg"])
                if cfg["input"] == "polarized"
                else InputSpec.unpolarized()
            )
            dist = full_outcome_distribution(
                inp,
                a["theta1_deg"],
                a["theta2_deg"],
                bs,
                PhaseGeometry(a["phi_deg"], a["psi_deg"]),
            )
            exact = dist.subtotal(OutcomeKind.OPPOSITE)
            run = RunConfig(cfg["n_pairs"], cfg["efficiency"], cfg["window_ns"], cfg["seed"])
            table = sample_run(dist, run)
            opp = sum(
                table.counts[o] for o in table.counts if o.kind is OutcomeKind.OPPOSITE
            )
            est = opp / (run.n_pairs * run.efficiency**2)
            return (value, exact, est, abs(exact - est))

    row.header = header  # type: ignore[attr-defined]
    return row


def run_sweep(cfg: dict[str, Any]) -> str:
    """Evaluate the configured sweep and return its CSV text."""
    row = _point_values(cfg)
    rows = [row(v) for v in _sweep_values(cfg["sweep"])]
    return _csv(row.header, rows)


def _load_config(args: argparse.Namespace) -> dict[str, Any]:
    data: dict[str, Any] = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    cfg = parse_config(data)
    if args.set:
        cfg = parse_config(apply_set_overrides(cfg, args.set))
    if getattr(args, "seed", None) is not None:
        cfg = parse_config({**cfg, "seed": args.seed})
    return cfg


def _write_out(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    _write_out(run_sweep(cfg), args.out)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    perturbations: dict[str, float] = {}
    for pair in args.perturb or []:
        if "=" not in pair:
            raise ConfigError([(pair, "expected name=value")])
        name, raw = pair.split("=", 1)
        try:
            perturbations[name] = float(raw)
        except ValueError:
            raise ConfigError([(name, f"cannot parse {raw!r} as float")]) from None
    try:
        results = comparemod.run_comparison(perturbations, step=args.step)
    except ValueError as exc:
        raise ConfigError([("perturb", str(exc))]) from None
    tol = comparemod.DEFAULT_TOL
    header = ["check", "n_points", "max_abs_deviation", "mean_abs_deviation", "status"]
    rows = []
    all_ok = True
    for r in results:
        ok = r.passed(tol)
        all_ok &= ok
        rows.append((r.name, r.n_points, r.max_dev, r.mean_dev, "pass" if ok else "FAIL"))
        print(
            f"{r.name:24s} n={r.n_points:6d}  max|dev|={r.max_dev:.3e}  "
            f"mean|dev|={r.mean_dev:.3e}  {'pass' if ok else 'FAIL'}"
        )
    print(f"tolerance {tol:g}: {'all checks passed' if all_ok else 'DISAGREEMENT FOUND'}")
    if args.out is not None:
        _write_out(_csv(header, rows), args.out)
    return 0 if all_ok else 2


def _mc_report(cfg: dict[str, Any], table: CountTable, dist) -> str:
    ests = estimate(table)
    header = ["outcome", "count", "estimate", "stderr", "exact", "z"]
    rows = []
    for outcome in sorted(table.counts, key=lambda o: o.sort_key()):
        est = ests[outcome]
        exact = dist.probabilities[outcome]
        z = consistency_z(est, exact, table.n_emitted, table.efficiency)
        rows.append((outcome.label(), table.counts[outcome], est.probability, est.stderr, exact, z))
    return _csv(header, rows)


def cmd_mc(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    bs = BeamSplitterSpec.from_transmission(cfg["tx"], cfg["ty"])
    inp = (
        InputSpec.polarized(math.radians(cfg["theta1p_deg"]), math.radians(cfg["theta2p_deg"]))
        if cfg["input"] == "polarized"
        else InputSpec.unpolarized()
    )
    dist = full_outcome_distribution(
        inp,
        math.radians(cfg["theta1_deg"]),
        math.radians(cfg["theta2_deg"]),
        bs,
        PhaseGeometry(math.radians(cfg["phi_deg"]), math.radians(cfg["psi_deg"])),
    )
    run = RunConfig(cfg["n_pairs"], cfg["efficiency"], cfg["window_ns"], cfg["seed"])
    try:
        table = sample_run(dist, run)
    except ValueError as exc:
        raise ConfigError([("phi_deg/psi_deg", str(exc))]) from None
    text = _mc_report(cfg, table, dist)
    _write_out(text, args.out)
    if args.out is not None:
        print(f"recorded {sum(table.counts.values())} of {table.n_emitted} pairs -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twophoton",
        description="Two-photon splitter interference: sweeps, cross-checks, Monte Carlo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--out", help="output file path (default: stdout)")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override a configuration value (repeatable; dotted paths, e.g. sweep.steps=5)",
        )

    p_sweep = sub.add_parser("sweep", help="evaluate an experiment along a swept parameter")
    common(p_sweep)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_cmp = sub.add_parser("compare", help="cross-check the engine against the closed forms")
    p_cmp.add_argument("--out", help="write the report as CSV to this path")
    p_cmp.add_argument(
        "--step", type=int, default=1, help="thin the four-angle grids by this stride (default 1)"
    )
    p_cmp.add_argument(
        "--perturb",
        action="append",
        metavar="NAME=VALUE",
        help="override a named analytic constant (negative-control self-test)",
    )
    p_cmp.set_defaults(fn=cmd_compare)

    p_mc = sub.add_parser("mc", help="sample a detection run and report estimates")
    common(p_mc)
    p_mc.set_defaults(fn=cmd_mc)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        for path, message in exc.problems:
            print(f"config error at {path}: {message}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"config error: invalid JSON ({exc})", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
