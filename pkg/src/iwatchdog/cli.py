"""Command-line front end.

Subcommands: simulate, compare, radius-sweep, table3, report.  Output goes to
``--out``, else ``$IWATCHDOG_OUTPUT_DIR``, else ``./out``.

Exit codes: 0 success, 1 configuration error, 2 table3 mismatch.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, kernels, metrics, simengine
from .config import ConfigError, ScenarioConfig, TechniqueChoice, from_dict, load
from .energy import InsufficientEnergy
from .hierarchy import IdsModel, TopologyError
from .scenarios import SWEEP_THRESHOLDS, Outcome, radius_config, resolution, table3_scenarios
from .watchdog import Technique

log = logging.getLogger("iwatchdog")

OUTPUT_ENV = "IWATCHDOG_OUTPUT_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_MISMATCH = 0, 1, 2


# -- plumbing -------------------------------------------------------------------

def output_dir(arg: str | None) -> Path:
    out = Path(arg or os.environ.get(OUTPUT_ENV) or "out")
    out.mkdir(parents=True, exist_ok=True)
    return out


def dump_json(path: Path, data) -> None:
    path.write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")


def write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def run_manifest(cfg: ScenarioConfig, command: str) -> dict:
    """Replay record embedded in every result: enough to rerun it exactly."""
    return {"tool": "iwatchdog", "version": __version__, "command": command,
            "seed": cfg.seed, "config": cfg.to_dict()}


def write_side_manifest(out: Path, manifest: dict, started: float, outputs: list[Path]) -> None:
    # wall times would break byte-identical results, so they live beside them
    dump_json(out / "manifest.json", {**manifest, "start_wall": started, "end_wall": time.time(),
                                      "outputs": sorted(p.name for p in outputs)})


def resolve_config(args, default: ScenarioConfig | None = None) -> ScenarioConfig:
    """File (or ``default``) first, then flags; flags win."""
    if getattr(args, "config", None):
        cfg = load(args.config)
    else:
        cfg = default or ScenarioConfig()
    changes = {}
    for key, attr in (("seed", "seed"), ("node_count", "nodes"), ("timeout_s", "timeout"),
                      ("duration_s", "duration")):
        v = getattr(args, attr, None)
        if v is not None:
            changes[key] = v
    if getattr(args, "model", None):
        changes["model"] = IdsModel(args.model)
    if getattr(args, "technique", None):
        changes["technique"] = TechniqueChoice(args.technique)
    if changes.get("node_count") is not None and cfg.positions is not None \
            and changes["node_count"] != len(cfg.positions):
        changes["positions"] = None
    data = cfg.to_dict()
    data.update({k: v.value if hasattr(v, "value") else v for k, v in changes.items()})
    for item in getattr(args, "set", None) or []:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ConfigError(item, "expected KEY=JSON")
        try:
            data[key] = json.loads(raw)
        except json.JSONDecodeError:
            data[key] = raw
    return from_dict(data)


def lifetime_rows(result: dict):
    for r in metrics.lifetime_table(result):
        yield [r.node, repr(r.distance_m), repr(r.e_i), repr(r.e_it), repr(r.lifetime_s)]


LIFETIME_HEADER = ["node", "distance_m", "e_i_j", "e_it_j_per_s", "lifetime_s"]


# -- subcommands ----------------------------------------------------------------

def cmd_simulate(args) -> int:
    started = time.time()
    cfg = resolve_config(args)
    out = output_dir(args.out)
    result = simengine.run(cfg, log_events=args.events).data
    log.debug("run finished in %.2f s", time.time() - started)
    events = result.pop("_events", None)
    manifest = run_manifest(cfg, "simulate")
    result["manifest"] = manifest
    written = [out / "result.json", out / "lifetimes.csv"]
    dump_json(written[0], result)
    write_csv(written[1], LIFETIME_HEADER, lifetime_rows(result))
    if events is not None:
        written.append(out / "events.log")
        written[-1].write_text("".join(e + "\n" for e in events))
    write_side_manifest(out, manifest, started, written)
    topo = result["topology"]
    print(f"simulated {cfg.node_count} nodes for {cfg.duration_s:g} s, "
          f"{topo['cluster_heads']} cluster heads, results in {out}")
    return EXIT_OK


def compare_runs(cfg: ScenarioConfig) -> tuple[dict, dict, metrics.ComparisonReport]:
    hier = simengine.run(cfg.replace(model=IdsModel.HIERARCHICAL)).data
    flat = simengine.run(cfg.replace(model=IdsModel.FLAT)).data
    return hier, flat, metrics.compare_models(hier, flat)


def cmd_compare(args) -> int:
    started = time.time()
    cfg = resolve_config(args)
    out = output_dir(args.out)
    hier, flat, report = compare_runs(cfg)
    fl = {n["id"]: n for n in flat["nodes"]}
    rows = []
    for n in hier["nodes"]:
        i = n["id"]
        rows.append([i, n["role"], n["ids_installs"], fl[i]["ids_installs"],
                     repr(n["lifetime_s"]), repr(fl[i]["lifetime_s"]),
                     repr(report.per_node_delta_s[i])])
    write_csv(out / "compare.csv",
              ["node", "role", "installs_hier", "installs_flat", "lifetime_hier_s",
               "lifetime_flat_s", "delta_s"], rows)
    manifest = run_manifest(cfg, "compare")
    dump_json(out / "compare.json", {**report.to_dict(), "manifest": manifest})
    write_side_manifest(out, manifest, started, [out / "compare.csv", out / "compare.json"])
    print(f"total lifetime delta {report.total_delta_s:.3f} s, "
          f"IDS energy saved {report.total_energy_saved_j * 1e3:.3f} mJ, "
          f"largest gain at node {report.max_delta[0]}")
    return EXIT_OK


def _sweep_point(task: tuple[dict, float, int]) -> tuple[float, int, dict]:
    base, threshold, seed = task
    cfg = from_dict(base)
    cfg = cfg.replace(radio=dataclasses.replace(cfg.radio, sense_threshold_db=threshold), seed=seed)
    result = simengine.run(cfg).data
    return threshold, seed, {t: metrics.run_error_rate(result, t) for t in result["techniques"]}


def radius_sweep(base: ScenarioConfig, thresholds, seeds, workers: int = 1) -> list[dict]:
    """Mean error rate per (threshold, technique); identical for any worker count."""
    tasks = [(base.to_dict(), float(t), int(s)) for t in thresholds for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_sweep_point, tasks))
    else:
        points = [_sweep_point(t) for t in tasks]
    points.sort(key=lambda p: (p[0], p[1]))
    rows = []
    for t in sorted({p[0] for p in points}, reverse=True):
        per_tech: dict[str, list[float]] = {}
        for thr, _, rates in points:
            if thr != t:
                continue
            for tech, rate in rates.items():
                per_tech.setdefault(tech, [])
                if rate is not None:
                    per_tech[tech].append(rate)
        for tech in sorted(per_tech):
            vals = per_tech[tech]
            rows.append({"threshold_db": t, "radius_m": dataclasses.replace(base.radio, sense_threshold_db=t).radius,
                         "technique": tech,
                         "mean_error_rate": metrics.mean_error_rate(vals) if vals else None,
                         "runs": len(vals)})
    return rows


def cmd_radius_sweep(args) -> int:
    started = time.time()
    base = resolve_config(args, default=radius_config(SWEEP_THRESHOLDS[0], 1))
    if not args.thresholds or not args.seeds:
        raise ConfigError("thresholds" if not args.thresholds else "seeds", "needs at least one value")
    out = output_dir(args.out)
    rows = radius_sweep(base, args.thresholds, args.seeds, args.workers)
    write_csv(out / "radius_sweep.csv", ["threshold_db", "radius_m", "technique", "mean_error_rate", "runs"],
              [[r["threshold_db"], repr(r["radius_m"]), r["technique"],
                "" if r["mean_error_rate"] is None else repr(r["mean_error_rate"]), r["runs"]]
               for r in rows])
    manifest = run_manifest(base, "radius-sweep")
    manifest.update(thresholds=list(args.thresholds), seeds=list(args.seeds))
    write_side_manifest(out, manifest, started, [out / "radius_sweep.csv"])
    for r in rows:
        rate = "n/a" if r["mean_error_rate"] is None else f"{r['mean_error_rate']:.2f}"
        print(f"{r['threshold_db']:>6g} dB  {r['technique']:<12} {rate}")
    return EXIT_OK


def table3_matrix(timeout_s: float | None = None) -> list[tuple[str, dict, dict]]:
    out = []
    for row in table3_scenarios():
        cfg = row.config if timeout_s is None else row.config.replace(timeout_s=timeout_s).validate()
        result = simengine.run(cfg).data
        got = {t: resolution(result, t) for t in Technique}
        out.append((row.name, row.expected, got))
    return out


def _cell(o: Outcome) -> str:
    # a table cell answers "does the problem remain?"
    return "Yes" if o is Outcome.UNRESOLVED else "No"


def cmd_table3(args) -> int:
    out = output_dir(args.out)
    matrix = table3_matrix(args.timeout)
    width = max(len(name) for name, _, _ in matrix)
    print(f"{'problem':<{width}}  Watchdog  I-Watchdog")
    rows, mismatches = [], []
    for name, expected, got in matrix:
        cells = [_cell(got[t]) for t in (Technique.CONVENTIONAL, Technique.IMPROVED)]
        print(f"{name:<{width}}  {cells[0]:<8}  {cells[1]}")
        rows.append([name, *cells, *(_cell(expected[t]) for t in (Technique.CONVENTIONAL, Technique.IMPROVED))])
        for t in Technique:
            if got[t] is not expected[t]:
                mismatches.append(f"{name} ({t.value}: expected {_cell(expected[t])}, got {_cell(got[t])})")
    write_csv(out / "table3.csv", ["problem", "watchdog", "iwatchdog", "expected_watchdog",
                                   "expected_iwatchdog"], rows)
    if mismatches:
        print("mismatch: " + "; ".join(mismatches), file=sys.stderr)
        return EXIT_MISMATCH
    print("matrix matches")
    return EXIT_OK


def cmd_report(args) -> int:
    path = Path(args.result)
    try:
        result = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("result", str(exc)) from exc
    out = output_dir(args.out)
    write_csv(out / "lifetimes.csv", LIFETIME_HEADER, lifetime_rows(result))
    lives = [r.lifetime_s for r in metrics.lifetime_table(result)]
    hist = metrics.lifetime_histogram(lives)
    write_csv(out / "lifetime_histogram.csv", ["bucket_s", "percent"], [[b, repr(p)] for b, p in hist])
    write_csv(out / "energy_distance.csv", ["distance_m", "e_it_j_per_s"],
              sorted([repr(n["distance_m"]), repr(n["e_it_j_per_s"])] for n in result["nodes"]))
    summary = {
        "network_lifetime_sum_s": metrics.network_lifetime(result, "sum"),
        "network_lifetime_first_ch_death_s": metrics.network_lifetime(result, "first_ch_death"),
        "error_rate_observed": {t: metrics.run_error_rate(result, t) for t in result["techniques"]},
        "error_rate_truth": metrics.truth_error_rate(result),
        "lifetime_histogram": dict(hist),
    }
    dump_json(out / "summary.json", summary)
    for k in ("network_lifetime_sum_s", "network_lifetime_first_ch_death_s"):
        print(f"{k}: {summary[k]:.6g}")
    for t, v in summary["error_rate_observed"].items():
        print(f"error rate ({t}): {'n/a' if v is None else f'{v:.2f}'}")
    return EXIT_OK


# -- entry point ----------------------------------------------------------------

def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON scenario file (a result.json also works)")
    p.add_argument("--seed", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--model", choices=[m.value for m in IdsModel])
    p.add_argument("--technique", choices=[t.value for t in TechniqueChoice])
    p.add_argument("--timeout", type=float, help="watchdog timeout in seconds")
    p.add_argument("--duration", type=float, help="simulated seconds")
    p.add_argument("--set", action="append", metavar="KEY=JSON", help="override any config key")
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./out)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwatchdog", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one scenario")
    _add_overrides(p)
    p.add_argument("--events", action="store_true", help="also write events.log")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="hierarchical vs flat IDS placement")
    _add_overrides(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("radius-sweep", help="error rate against sensing threshold")
    _add_overrides(p)
    p.add_argument("--thresholds", type=float, nargs="*", default=list(SWEEP_THRESHOLDS))
    p.add_argument("--seeds", type=int, nargs="*", default=list(range(1, 11)))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_radius_sweep)

    p = sub.add_parser("table3", help="run the six failure-mode scenarios")
    p.add_argument("--out")
    p.add_argument("--timeout", type=float, help="override the watchdog timeout")
    p.set_defaults(func=cmd_table3)

    p = sub.add_parser("report", help="tables and summary from a result.json")
    p.add_argument("result")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.debug("kernel backend: %s", kernels.BACKEND)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InsufficientEnergy, TopologyError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
