"""Command-line front door.

Subcommands:
  code gen    generate a phase code from one of the bundled families
  optimize    run the genetic optimizer (multi-start)
  eval        deterministic beam metrics + profile/ACF export for a code
  sim         Monte-Carlo spectral-efficiency simulation, optional bounds
  reproduce   regenerate a bundled comparison table and gate against it
  replay      re-run a manifest and verify outputs are byte-identical

Exit codes: 0 success, 2 invalid input, 3 reproduction or replay failure.
Angles are accepted with a unit suffix (30deg, 0.5236rad); bare numbers
are radians.  RISBEAM_OUT_DIR sets the default output directory and
RISBEAM_BACKEND the default compute backend.
"""

from __future__ import annotations

import argparse
import math
import shutil
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import _kernels, codes, formats, ga, metrics, refdata, sesim
from ._version import __version__
from .model import AngularGrid, ArrayGeometry, InvalidInputError, acf, pdaf_values
from .sesim import scenario_preset


def parse_angle(text: str) -> float:
    t = str(text).strip().lower()
    try:
        if t.endswith("deg"):
            return math.radians(float(t[:-3]))
        if t.endswith("rad"):
            return float(t[:-3])
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"cannot parse angle {text!r}; use e.g. 30deg, 0.5236rad, or bare radians"
        ) from None


def _apply_threads(threads: int | None) -> None:
    if threads is None:
        return
    if threads < 1:
        raise InvalidInputError("--threads must be at least 1")
    try:
        import numba

        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
    except ImportError:
        pass


# ------------------------------------------------------------------ runners
#
# Each runner consumes a plain JSON-serializable config dict and writes its
# outputs into out_dir, returning their basenames.  The same runners back
# both the live commands and `replay`, which is what makes manifests
# reproducible.


def _run_code_gen(cfg: dict, out_dir: Path) -> list[str]:
    family = cfg["family"]
    m = int(cfg["m"])
    geom = ArrayGeometry(m, float(cfg["spacing"]), float(cfg["theta_h"]))
    grid = AngularGrid(int(cfg["d"]))
    backend = cfg["backend"]
    params: dict = {}

    if family == "barker":
        code = codes.barker(m, alternate=bool(cfg["alternate"]))
        params = {"alternate": bool(cfg["alternate"])}
    elif family == "frank":
        code = codes.frank(m)
    elif family == "chu":
        if cfg["q"] is None:
            q, code = codes.chu_best_q(m, geom, grid, backend)
            params = {"q": q, "selected_by": "grid-search", "grid_d": grid.d}
        else:
            q = int(cfg["q"])
            code = codes.chu(m, q)
            params = {"q": q}
    elif family == "random":
        code = codes.random_best(
            m, int(cfg["trials"]), int(cfg["seed"]), geom, grid, backend
        )
        params = {"trials": int(cfg["trials"]), "seed": int(cfg["seed"]), "grid_d": grid.d}
    elif family == "max-average":
        code = codes.max_average(m, geom, float(cfg["phi0"]))
        params = {"phi0": float(cfg["phi0"])}
    elif family == "reference":
        if geom.theta_h != 0.0 or geom.spacing_ratio != 0.5:
            raise InvalidInputError(
                "reference codes are designed for theta_h = 0 and spacing 1/2"
            )
        code = codes.reference_code(m)
    else:
        raise InvalidInputError(f"unknown family {family!r}; expected one of {codes.FAMILIES}")

    name = f"code_{family}_m{m}.json"
    formats.write_json(out_dir / name, formats.code_to_dict(code, geom, family, params))
    return [name]


def _run_optimize(cfg: dict, out_dir: Path) -> list[str]:
    geom = ArrayGeometry(int(cfg["m"]), float(cfg["spacing"]), float(cfg["theta_h"]))
    config = ga.GaConfig(
        population_size=int(cfg["population_size"]),
        generations=int(cfg["generations"]),
        grid_d=int(cfg["grid_d"]),
        mutation_scale=float(cfg["mutation_scale"]),
        mutation_prob=float(cfg["mutation_prob"]),
        elitism_count=int(cfg["elitism_count"]),
        seed=int(cfg["seed"]),
    )
    runs = ga.run_multistart(config, geom, int(cfg["runs"]), cfg["backend"])
    best = ga.best_run(runs)

    best_name = "best_code.json"
    formats.write_json(
        out_dir / best_name,
        formats.code_to_dict(
            best.best_code,
            geom,
            "optimized",
            {
                "config": formats.ga_config_to_dict(best.config),
                "runs": int(cfg["runs"]),
                "base_seed": int(cfg["seed"]),
            },
        ),
    )
    runs_name = "ga_runs.json"
    formats.write_json(out_dir / runs_name, [formats.ga_run_to_dict(r) for r in runs])

    trace_name = "convergence.csv"
    header = ["generation"] + [f"run_{i:02d}_best_db" for i in range(len(runs))]
    rows = []
    for g in range(config.generations):
        row: list = [g]
        for r in runs:
            row.append(formats.floored_db(r.trace[g][1])[0])
        rows.append(row)
    formats.write_csv(out_dir / trace_name, header, rows)
    return [best_name, runs_name, trace_name]


def _run_eval(cfg: dict, out_dir: Path) -> list[str]:
    code, geom, family, _ = formats.read_code_file(cfg["code_path"])
    grid = AngularGrid(int(cfg["d"]))
    backend = cfg["backend"]
    report = metrics.metrics_report(code, geom, grid, backend)

    metrics_name = "metrics.json"
    doc = formats.metrics_to_dict(report)
    doc["family"] = family
    formats.write_json(out_dir / metrics_name, doc)

    profile_name = "profile.csv"
    values = pdaf_values(code, geom, grid.points, backend)
    rows = []
    for theta, lin in zip(grid.points, values):
        rows.append([float(theta), float(lin), formats.floored_db(float(lin))[0]])
    formats.write_csv(out_dir / profile_name, ["theta_rad", "pdaf_linear", "pdaf_db"], rows)

    acf_name = "acf.csv"
    seq = acf(code)
    acf_rows = [
        [int(lag), float(val.real), float(val.imag)]
        for lag, val in zip(seq.lags, seq.values)
    ]
    formats.write_csv(out_dir / acf_name, ["lag", "re", "im"], acf_rows)
    return [metrics_name, profile_name, acf_name]


def _run_sim(cfg: dict, out_dir: Path) -> list[str]:
    code, geom, _, _ = formats.read_code_file(cfg["code_path"])
    scenario = formats.scenario_from_dict(cfg["scenario"], origin="scenario config")
    backend = cfg["backend"]
    report = sesim.run_mcmc(code, geom, scenario, backend)

    report_name = "se_report.json"
    formats.write_json(out_dir / report_name, formats.se_report_to_dict(report))

    ecdf_name = "ecdf.csv"
    formats.write_csv(
        out_dir / ecdf_name,
        ["se_bps_hz", "cdf"],
        zip(report.ecdf_values.tolist(), report.ecdf_probs.tolist()),
    )
    outputs = [report_name, ecdf_name]

    if cfg["bounds"]:
        grid = AngularGrid(int(cfg["d"]))
        bounds = sesim.se_mean_bounds(code, geom, scenario, grid, backend)
        bounds_name = "se_bounds.json"
        formats.write_json(out_dir / bounds_name, formats.se_bounds_to_dict(bounds))
        outputs.append(bounds_name)
    return outputs


def _reproduce_table1(out_dir: Path) -> tuple[list[str], bool]:
    rows = []
    ok = True
    for m in sorted(refdata.BARKER_CODES):
        computed = codes.barker_sidelobe_ratio_db(m)
        expected = refdata.BARKER_SIDELOBE_RATIO_DB[m]
        err = abs(computed - expected)
        for variant in range(len(refdata.BARKER_CODES[m])):
            code = codes.barker(m, alternate=bool(variant))
            seq = acf(code)
            off = seq.values[seq.lags != 0]
            max_re = float(np.max(np.abs(off.real))) if off.size else 0.0
            max_im = float(np.max(np.abs(off.imag))) if off.size else 0.0
            passes = err <= 0.05 and max_re <= 1.0 and max_im == 0.0
            ok = ok and passes
            rows.append([m, variant, expected, computed, err, max_re, max_im, passes])
    name = "table1.csv"
    formats.write_csv(
        out_dir / name,
        [
            "m", "variant", "expected_ratio_db", "computed_ratio_db", "ratio_err_db",
            "acf_offpeak_max_abs_re", "acf_max_abs_im", "passes",
        ],
        rows,
    )
    return [name], ok


def _comparison_codes(m: int, backend: str | None, with_random: bool):
    """The per-m family codes used by the bundled comparison tables."""
    geom = ArrayGeometry(m, 0.5, 0.0)
    grid = AngularGrid(1000)
    out = {"reference": codes.reference_code(m)}
    out["chu"] = codes.chu(m, refdata.CHU_BEST_Q[m])
    classical = refdata.CLASSICAL_FAMILY[m]
    out[classical] = codes.barker(m) if classical == "barker" else codes.frank(m)
    if with_random:
        out["random"] = codes.random_best(
            m,
            refdata.RANDOM_BASELINE_TRIALS,
            refdata.RANDOM_BASELINE_SEED,
            geom,
            grid,
            backend,
        )
    return geom, grid, out


def _reproduce_table3(out_dir: Path, backend: str | None) -> tuple[list[str], bool]:
    rows = []
    ok = True
    for m in refdata.COMPARISON_M:
        geom = ArrayGeometry(m, 0.5, 0.0)
        grid = AngularGrid(1000)
        searched_q, _ = codes.chu_best_q(m, geom, grid, backend)
        family_codes = {
            "reference": codes.reference_code(m),
            "chu": codes.chu(m, searched_q),
            refdata.CLASSICAL_FAMILY[m]: (
                codes.barker(m) if refdata.CLASSICAL_FAMILY[m] == "barker" else codes.frank(m)
            ),
        }
        for family, code in family_codes.items():
            expected_a, expected_u = refdata.EXPECTED_PDAF_METRICS[(family, m)]
            a_tol = 0.1 if family == "chu" else 0.05
            a_db = metrics.a_min_db(code, geom, grid, backend)
            u = metrics.u_half(code, geom)
            a_err = abs(a_db - expected_a)
            u_err = abs(u - expected_u)
            passes = a_err <= a_tol and u_err <= 0.002
            if family == "chu":
                passes = passes and searched_q == refdata.CHU_BEST_Q[m]
            ok = ok and passes
            rows.append(
                [
                    family, m,
                    searched_q if family == "chu" else "",
                    refdata.CHU_BEST_Q[m] if family == "chu" else "",
                    a_db, expected_a, a_tol, a_err,
                    u, expected_u, 0.002, u_err,
                    passes,
                ]
            )
    name = "table3.csv"
    formats.write_csv(
        out_dir / name,
        [
            "family", "m", "q", "expected_q",
            "a_min_db", "expected_a_min_db", "a_tol_db", "a_err_db",
            "u_half", "expected_u_half", "u_tol", "u_err",
            "passes",
        ],
        rows,
    )
    return [name], ok


def _reproduce_table4(out_dir: Path, backend: str | None, seeds) -> tuple[list[str], bool]:
    mean_rows = []
    order_rows = []
    ok = True
    required = 8
    for m in refdata.COMPARISON_M:
        geom, _, family_codes = _comparison_codes(m, backend, with_random=True)
        classical = refdata.CLASSICAL_FAMILY[m]
        reports = {
            family: [
                sesim.run_mcmc(code, geom, scenario_preset("sector", seed=s), backend)
                for s in seeds
            ]
            for family, code in family_codes.items()
        }
        for family in ("reference", "chu", classical):
            _, expected_mean, expected_half = refdata.EXPECTED_SE[(family, m)]
            lo, hi = expected_mean - expected_half, expected_mean + expected_half
            overlaps = sum(
                1
                for rep in reports[family]
                if rep.ci95[0] <= hi and rep.ci95[1] >= lo
            )
            passes = overlaps >= required
            ok = ok and passes
            mean_rows.append(
                [family, m, expected_mean, expected_half, overlaps, len(list(seeds)), required, passes]
            )
        for i, s in enumerate(seeds):
            mins = {f: reports[f][i].s_min for f in reports}
            passes = (
                mins["reference"] > mins[classical] > mins["random"] > mins["chu"]
            )
            ok = ok and passes
            order_rows.append(
                [m, s, mins["reference"], mins[classical], mins["random"], mins["chu"], passes]
            )
    mean_name = "table4_mean.csv"
    order_name = "table4_ordering.csv"
    formats.write_csv(
        out_dir / mean_name,
        [
            "family", "m", "expected_mean", "expected_ci_half",
            "overlap_count", "seed_count", "required_overlaps", "passes",
        ],
        mean_rows,
    )
    formats.write_csv(
        out_dir / order_name,
        ["m", "seed", "se_min_reference", "se_min_classical", "se_min_random", "se_min_chu", "passes"],
        order_rows,
    )
    return [mean_name, order_name], ok


def _run_reproduce(cfg: dict, out_dir: Path) -> tuple[list[str], bool]:
    table = int(cfg["table"])
    backend = cfg["backend"]
    if table == 1:
        return _reproduce_table1(out_dir)
    if table == 3:
        return _reproduce_table3(out_dir, backend)
    if table == 4:
        return _reproduce_table4(out_dir, backend, list(cfg["seeds"]))
    raise InvalidInputError("reproducible tables are 1, 3 and 4")


_RUNNERS = {
    "code-gen": _run_code_gen,
    "optimize": _run_optimize,
    "eval": _run_eval,
    "sim": _run_sim,
    "reproduce": _run_reproduce,
}


def _run_replay(manifest_path: str, keep: bool) -> int:
    doc = formats.read_manifest(manifest_path)
    command = doc["command"]
    runner = _RUNNERS.get(command)
    if runner is None:
        raise InvalidInputError(f"manifest names unknown command {command!r}")
    base = Path(manifest_path).resolve().parent
    tmp = Path(tempfile.mkdtemp(prefix="risbeam_replay_"))
    try:
        result = runner(doc["config"], tmp)
        ok = True
        for name in doc["outputs"]:
            orig, fresh = base / name, tmp / name
            if not orig.exists():
                print(f"MISSING   {name} (original not found)")
                ok = False
                continue
            if not fresh.exists():
                print(f"MISSING   {name} (replay produced no such file)")
                ok = False
                continue
            if orig.read_bytes() == fresh.read_bytes():
                print(f"OK        {name}")
            else:
                print(f"MISMATCH  {name}")
                ok = False
        if isinstance(result, tuple):
            # a reproduce manifest also re-gates its table
            ok = ok and result[1]
        print("replay: byte-identical" if ok else "replay: FAILED")
        return 0 if ok else 3
    finally:
        if keep:
            print(f"replay outputs kept in {tmp}")
        else:
            shutil.rmtree(tmp, ignore_errors=True)


# -------------------------------------------------------------- arg parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="risbeam", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"risbeam {__version__}")
    p.add_argument(
        "-o", "--out-dir", default=None,
        help="output directory (default: $RISBEAM_OUT_DIR or '.')",
    )
    p.add_argument(
        "--backend", choices=("auto", "numba", "numpy"), default="auto",
        help="compute backend (default: $RISBEAM_BACKEND or auto)",
    )
    p.add_argument("--threads", type=int, default=None, help="cap worker threads")
    sub = p.add_subparsers(dest="command", required=True)

    code_p = sub.add_parser("code", help="phase-code generation")
    code_sub = code_p.add_subparsers(dest="code_command", required=True)
    gen = code_sub.add_parser("gen", help="generate a code from a bundled family")
    gen.add_argument("--family", required=True, choices=codes.FAMILIES)
    gen.add_argument("--m", required=True, type=int, help="element count")
    gen.add_argument("--q", type=int, default=None, help="Chu parameter (default: grid search)")
    gen.add_argument("--alternate", action="store_true", help="second listed Barker code")
    gen.add_argument("--trials", type=int, default=1000, help="random family: draw count")
    gen.add_argument("--seed", type=int, default=0, help="random family: RNG seed")
    gen.add_argument("--phi0", type=parse_angle, default=0.0, help="max-average phase offset")
    gen.add_argument("--theta-h", type=parse_angle, default=0.0)
    gen.add_argument("--spacing", type=float, default=0.5)
    gen.add_argument("--d", type=int, default=1000, help="selection grid resolution")

    opt = sub.add_parser("optimize", help="run the genetic optimizer")
    opt.add_argument("--m", required=True, type=int)
    opt.add_argument("--pop", type=int, default=2000)
    opt.add_argument("--gens", type=int, default=300)
    opt.add_argument("--d", type=int, default=1000)
    opt.add_argument("--runs", type=int, default=1)
    opt.add_argument("--seed", type=int, default=0)
    opt.add_argument("--mutation-scale", type=float, default=0.2)
    opt.add_argument("--mutation-prob", type=float, default=0.6)
    opt.add_argument("--elitism", type=int, default=1)
    opt.add_argument("--theta-h", type=parse_angle, default=0.0)
    opt.add_argument("--spacing", type=float, default=0.5)

    ev = sub.add_parser("eval", help="deterministic metrics for a code file")
    ev.add_argument("--code", required=True)
    ev.add_argument("--d", type=int, default=1000)

    sim = sub.add_parser("sim", help="Monte-Carlo spectral-efficiency simulation")
    sim.add_argument("--code", required=True)
    sim.add_argument("--preset", choices=sesim.PRESETS, default="sector")
    sim.add_argument("--scenario", default=None, help="TOML scenario file (overrides preset)")
    sim.add_argument("--k", type=int, default=None, help="override UE count")
    sim.add_argument("--seed", type=int, default=None, help="override scenario seed")
    sim.add_argument("--bounds", action="store_true", help="also write analytic mean-SE bounds")
    sim.add_argument("--d", type=int, default=1000, help="grid resolution for the bounds")

    rep = sub.add_parser("reproduce", help="regenerate a bundled comparison table")
    rep.add_argument("--table", required=True, type=int, choices=(1, 3, 4))

    rp = sub.add_parser("replay", help="re-run a manifest and verify outputs")
    rp.add_argument("--manifest", required=True)
    rp.add_argument("--keep", action="store_true", help="keep the replay scratch directory")

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_threads(args.threads)
        backend = None if args.backend == "auto" else args.backend
        resolved_backend = _kernels._resolve(backend)
        out_dir = Path(args.out_dir if args.out_dir is not None else formats.default_out_dir())
        if args.command != "replay":
            out_dir.mkdir(parents=True, exist_ok=True)

        if args.command == "code":
            cfg = {
                "family": args.family,
                "m": args.m,
                "q": args.q,
                "alternate": bool(args.alternate),
                "trials": args.trials,
                "seed": args.seed,
                "phi0": args.phi0,
                "theta_h": args.theta_h,
                "spacing": args.spacing,
                "d": args.d,
                "backend": resolved_backend,
            }
            outputs = _run_code_gen(cfg, out_dir)
            manifest = formats.write_manifest(out_dir, "code-gen", cfg, outputs, resolved_backend)
            print(f"wrote {', '.join(outputs)} and {manifest.name} in {out_dir}")
            return 0

        if args.command == "optimize":
            cfg = {
                "m": args.m,
                "population_size": args.pop,
                "generations": args.gens,
                "grid_d": args.d,
                "runs": args.runs,
                "seed": args.seed,
                "mutation_scale": args.mutation_scale,
                "mutation_prob": args.mutation_prob,
                "elitism_count": args.elitism,
                "theta_h": args.theta_h,
                "spacing": args.spacing,
                "backend": resolved_backend,
            }
            outputs = _run_optimize(cfg, out_dir)
            manifest = formats.write_manifest(out_dir, "optimize", cfg, outputs, resolved_backend)
            best = formats.read_json(out_dir / "ga_runs.json")
            best_db = max(r["best_fitness_db"] for r in best)
            print(f"best fitness {best_db:.4f} dB over {args.runs} run(s)")
            print(f"wrote {', '.join(outputs)} and {manifest.name} in {out_dir}")
            return 0

        if args.command == "eval":
            cfg = {
                "code_path": str(Path(args.code).resolve()),
                "d": args.d,
                "backend": resolved_backend,
            }
            outputs = _run_eval(cfg, out_dir)
            manifest = formats.write_manifest(out_dir, "eval", cfg, outputs, resolved_backend)
            doc = formats.read_json(out_dir / "metrics.json")
            u_txt = "n/a" if doc["u_half"] is None else f"{doc['u_half']:.4f}"
            print(f"a_min {doc['a_min_db']:.4f} dB, u_half {u_txt}")
            print(f"wrote {', '.join(outputs)} and {manifest.name} in {out_dir}")
            return 0

        if args.command == "sim":
            if args.scenario is not None:
                scenario = formats.read_scenario_toml(args.scenario)
            else:
                scenario = scenario_preset(args.preset)
            if args.k is not None:
                scenario = replace(scenario, ue_count=args.k)
            if args.seed is not None:
                scenario = sesim.with_seed(scenario, args.seed)
            cfg = {
                "code_path": str(Path(args.code).resolve()),
                "scenario": formats.scenario_to_dict(scenario),
                "bounds": bool(args.bounds),
                "d": args.d,
                "backend": resolved_backend,
            }
            outputs = _run_sim(cfg, out_dir)
            manifest = formats.write_manifest(out_dir, "sim", cfg, outputs, resolved_backend)
            doc = formats.read_json(out_dir / "se_report.json")
            print(
                f"s_mean {doc['s_mean']:.4f} bps/Hz "
                f"(95% CI {doc['ci95'][0]:.4f}..{doc['ci95'][1]:.4f}), "
                f"s_min {doc['s_min']:.4g}"
            )
            print(f"wrote {', '.join(outputs)} and {manifest.name} in {out_dir}")
            return 0

        if args.command == "reproduce":
            cfg: dict = {"table": args.table, "backend": resolved_backend}
            if args.table == 3:
                cfg["grid_d"] = 1000
            if args.table == 4:
                cfg.update(
                    {
                        "seeds": list(refdata.COMPARISON_SIM_SEEDS),
                        "ue_count": 10000,
                        "random_trials": refdata.RANDOM_BASELINE_TRIALS,
                        "random_seed": refdata.RANDOM_BASELINE_SEED,
                        "grid_d": 1000,
                    }
                )
            outputs, ok = _run_reproduce(cfg, out_dir)
            formats.write_manifest(out_dir, "reproduce", cfg, outputs, resolved_backend)
            print(f"table {args.table}: {'PASS' if ok else 'FAIL'} ({', '.join(outputs)})")
            return 0 if ok else 3

        if args.command == "replay":
            return _run_replay(args.manifest, args.keep)

        raise InvalidInputError(f"unknown command {args.command!r}")
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
