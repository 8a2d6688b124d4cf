"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 internal error. Diagnostics go to
stderr; stdout carries a report only for ``--format json`` without ``--output``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

from . import bisection, bounds, experiments
from .config_model import (
    DEFAULT_ENUM_CAP,
    multigraph_from_json_obj,
    removed_edge_units,
    sample,
    simplify,
    to_multigraph,
)
from .degree_model import (
    DegreeSequence,
    beta_condition_value,
    beta_limit_at_sigma,
    condition_value,
    ensemble_stats,
    family_from_json_obj,
    from_json_obj,
    solve_beta,
)
from .errors import DegenerateSigma, ValidationError

COMMANDS = ("stats", "condition", "sample", "mbw", "bound", "enumerate", "mc", "sweep")
DEFAULT_ETA_GRID = (0.5, 0.75, 0.9, 0.95, 0.99)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ldpc-mbw",
        description="Bisection-width and energy lower bounds for configuration-model Tanner graphs.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", type=Path, help="degree-sequence or edge-list JSON")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--a-max", type=int, default=None)
    p.add_argument("--beta", type=float, default=None, help="override the solved beta")
    p.add_argument("--lambda-w", type=float, default=1.0)
    p.add_argument("--xi-tech", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("--b", dest="block_b", type=float, default=1.0)
    p.add_argument("--c-s", dest="sason_c", type=float, default=1.0)
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--clock-cycles", type=int, default=1)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--exact-cap", type=int, default=bisection.DEFAULT_EXACT_CAP)
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--simplified", action="store_true", help="bisect the simplified graph in mc")
    return p


def _load_json(path: Path | None) -> Any:
    if path is None:
        raise ValidationError("--input is required for this command")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc})") from exc


def _echo(args: argparse.Namespace, obj: Any = None) -> dict[str, Any]:
    out: dict[str, Any] = {"command": args.command}
    if obj is not None:
        out["input"] = obj
    for key in ("seed", "trials", "a_max", "beta", "lambda_w", "xi_tech", "eta", "rate", "block_b",
                "sason_c", "iterations", "clock_cycles", "exact_cap", "enum_cap", "restarts"):
        out[key] = getattr(args, key)
    return out


def _condition_block(ds: DegreeSequence, beta_override: float | None) -> dict[str, Any]:
    stats = ensemble_stats(ds)
    try:
        cond = condition_value(stats)
    except DegenerateSigma:
        return {"condition": None, "condition_met": False, "beta": None, "note": "sigma == 0"}
    beta = solve_beta(stats)
    out: dict[str, Any] = {
        "condition": cond,
        "condition_met": cond < 0.0,
        "beta": beta,
        "beta_condition_at_beta": beta_condition_value(stats, beta) if beta is not None else None,
        "beta_condition_limit_at_sigma": beta_limit_at_sigma(stats),
    }
    if beta_override is not None:
        out["beta_override"] = beta_override
        out["beta_condition_at_override"] = beta_condition_value(stats, beta_override)
    return out


def cmd_stats(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    ds = from_json_obj(obj)
    return {"inputs": _echo(args, obj), "degrees": ds.to_json(), "stats": ensemble_stats(ds).to_json(),
            **_condition_block(ds, args.beta)}


def cmd_condition(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    ds = from_json_obj(obj)
    stats = ensemble_stats(ds)
    return {"inputs": _echo(args, obj), "delta": float(stats.delta), "sigma": float(stats.sigma),
            **_condition_block(ds, args.beta)}


def cmd_sample(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    ds = from_json_obj(obj)
    c = sample(ds, args.seed)
    g = to_multigraph(c)
    return {"inputs": _echo(args, obj), "configuration": c.to_json(), "multigraph": g.to_json(),
            "simplified": simplify(g).to_json(), "multi_edge_units_removed": removed_edge_units(g)}


def cmd_mbw(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    if isinstance(obj, dict) and "edges" in obj:
        g = multigraph_from_json_obj(obj)
    else:
        g = to_multigraph(sample(from_json_obj(obj), args.seed))
    result = bisection.mbw(g, args.exact_cap, args.restarts, args.seed)
    return {"inputs": _echo(args, obj), **result.to_json(), "graph": g.to_json()}


def cmd_bound(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    ds = from_json_obj(obj)
    stats = ensemble_stats(ds)
    cond = _condition_block(ds, None)
    beta = args.beta if args.beta is not None else cond["beta"]
    omega = (beta or 0.0) * ds.n
    params = bounds.CircuitParams(args.lambda_w, args.xi_tech, args.clock_cycles)

    rows = []
    a_top = math.ceil(stats.sigma_n) - 1
    if args.a_max is not None:
        a_top = min(a_top, args.a_max)
    for a in range(a_top + 1):
        lb = bounds.lemma7_log_bound(stats, ds.n, a)
        rows.append({"a": a, "log_bound": lb, "bound": bounds.clamped_probability(lb)})
    a_eval = min(a_top, math.floor(omega)) if a_top >= 0 else None
    gap = None
    if args.eta is not None:
        cap = bounds.CapacityParams(args.eta, args.rate, args.block_b, args.sason_c, args.iterations)
        gap = bounds.gap_scaling_report(cap, args.lambda_w, beta or 1.0, args.xi_tech)
    report = bounds.BoundReport(
        lemma7_log_prob=rows[a_eval]["log_bound"] if a_eval is not None and a_eval >= 0 else None,
        condition=cond["condition"],
        beta=beta,
        thompson_area=bounds.thompson_area(args.lambda_w, omega),
        nested_area=bounds.nested_bisection_area(args.lambda_w, ds.edges, ds.vertices),
        energy_direct=bounds.direct_energy_bound(params, omega),
        energy_ccn=bounds.ccn_energy_bound(params, omega, ds.n),
        energy_per_bit=gap["energy_per_bit"] if gap else None,
        inputs=_echo(args, obj),
        extra={"lemma7_a": a_eval, "omega_threshold": omega, "lemma7_rows": rows,
               "stats": stats.to_json(), "gap_scaling": gap},
    )
    return report.to_json()


def cmd_enumerate(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    ds = from_json_obj(obj)
    a_max = args.a_max if args.a_max is not None else ds.edges
    rep = experiments.enumerate_bisection_distribution(ds, a_max, args.enum_cap, args.exact_cap)
    return {"inputs": _echo(args, obj), **rep.to_json()}


def cmd_mc(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input)
    family = family_from_json_obj(obj)
    records = experiments.mc_mbw_trend(
        family, args.trials, args.seed, threads=args.threads, exact_cap=args.exact_cap,
        restarts=args.restarts, use_simplified=args.simplified, beta=args.beta,
    )
    return {"inputs": _echo(args, obj), "records": [r.to_row() for r in records],
            "summary": experiments.summarize_trend(records)}


def cmd_sweep(args: argparse.Namespace) -> dict[str, Any]:
    obj = _load_json(args.input) if args.input is not None else None
    if isinstance(obj, dict) and "eta" in obj:
        etas = obj["eta"] if isinstance(obj["eta"], list) else [obj["eta"]]
    elif args.eta is not None:
        etas = [args.eta]
    else:
        etas = list(DEFAULT_ETA_GRID)
    beta = args.beta if args.beta is not None else 1.0
    rows = []
    for eta in etas:
        if isinstance(eta, bool) or not isinstance(eta, (int, float)):
            raise ValidationError(f"eta {eta!r} is not a number")
        cap = bounds.CapacityParams(float(eta), args.rate, args.block_b, args.sason_c, args.iterations)
        rows.append({"eta": float(eta), **bounds.gap_scaling_report(cap, args.lambda_w, beta, args.xi_tech)})
    return {"inputs": _echo(args, obj), "records": rows}


HANDLERS = {
    "stats": cmd_stats,
    "condition": cmd_condition,
    "sample": cmd_sample,
    "mbw": cmd_mbw,
    "bound": cmd_bound,
    "enumerate": cmd_enumerate,
    "mc": cmd_mc,
    "sweep": cmd_sweep,
}


def _flatten(prefix: str, value: Any, out: dict[str, Any]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        out[prefix] = json.dumps(value)
    else:
        out[prefix] = value


def to_csv(report: dict[str, Any]) -> str:
    """Tabular view: ``records``/``rows`` when present, otherwise one flattened row."""
    if "records" in report:
        rows = report["records"]
    elif "rows" in report:
        rows = report["rows"]
    else:
        flat: dict[str, Any] = {}
        _flatten("", report, flat)
        rows = [flat]
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def render(report: dict[str, Any], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    return json.dumps(report, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.trials < 1 or args.threads < 1:
            raise ValidationError("--trials and --threads must be >= 1")
        if args.format == "csv" and args.output is None:
            raise ValidationError("--format csv requires --output")
        report = HANDLERS[args.command](args)
        text = render(report, args.format)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.output is None:
        sys.stdout.write(text)
    else:
        try:
            args.output.write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return 1
    return 0


def main() -> None:
    sys.exit(run())
