"""Command-line reporting for the certification toolbox.

Subcommands: ``bound`` prints closed-form criteria, ``solve`` runs the
convex-programming relaxations, ``reproduce`` recomputes the embedded
reference tables and compares against the published digits, ``selftest``
runs quick deterministic sanity checks.

Reported visibilities follow one convention everywhere: the printed value
is the largest visibility at which the noisy state is still compatible
with the stated hypothesis, so an experiment operating strictly above it
certifies the violation.

Output is byte-deterministic for a fixed configuration and package
version, except for the runtime_ms field.  Visibilities are printed with
four decimals, deviations in scientific notation.  The only environment
variable honoured is GMEDIM_THREADS, mirrored into the usual thread-count
variables for the numeric backends.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from .config import DEFAULTS, Settings, load_overrides
from .oracles import intro_tau, projector_residual, qubit_ghz_mixture, tight_dephased_mixture
from .reference import TABLE_IDS, reference_table, reference_version
from .relax import (
    SchmidtVectorHypothesis,
    build_measurement_set,
    lp_gme_dimension,
    lp_schmidt_vector,
    sdp_feasibility_probe,
    sdp_gme_dimension,
    sdp_statistics,
)
from .states import cluster, dephase_diag, ghz
from .witness import (
    fidelity_bound_closed,
    ghz_witness_operator,
    ghz_witness_value,
    minimal_witness_bound,
    tenbasis_vcrit,
    vcrit_cluster,
    vcrit_fidelity_depolarizing,
    vcrit_ghz_dephasing,
    vcrit_ghz_depolarizing,
)

__all__ = ["main"]

KEYS = ("method", "n", "d", "hypothesis", "value", "published", "deviation", "status", "runtime_ms")

BOUND_METHODS = ("fidelity", "minimal-witness", "tenbasis")
SOLVE_METHODS = ("lp", "sdp", "sdp-stats")
SET_LABELS = {"EC": "E_C", "EF": "E_F", "EM": "E_M"}


class ConfigError(Exception):
    """Invalid run configuration; maps to exit code 2."""


def _record(
    method: str,
    n: int,
    d: int,
    hypothesis: str,
    value: Optional[float],
    status: str,
    published: Optional[float] = None,
    deviation: Optional[float] = None,
    runtime_ms: int = 0,
) -> Dict[str, Any]:
    return {
        "method": method,
        "n": n,
        "d": d,
        "hypothesis": hypothesis,
        "value": value,
        "published": published,
        "deviation": deviation,
        "status": status,
        "runtime_ms": runtime_ms,
    }


# ---------------------------------------------------------------- formatting

def _scalar_text(key: str, val: Any) -> str:
    if val is None:
        return ""
    if key in ("value", "published"):
        return f"{val:.4f}"
    if key == "deviation":
        return f"{val:.2e}"
    return str(val)


def _json_text(records: List[Dict[str, Any]]) -> str:
    lines = []
    for rec in records:
        parts = []
        for key in KEYS:
            val = rec[key]
            if val is None:
                parts.append(f'"{key}": null')
            elif key in ("value", "published", "deviation"):
                parts.append(f'"{key}": {_scalar_text(key, val)}')
            elif key in ("n", "d", "runtime_ms"):
                parts.append(f'"{key}": {int(val)}')
            else:
                parts.append(f'"{key}": {json.dumps(val)}')
        lines.append("{" + ", ".join(parts) + "}")
    if len(lines) == 1:
        return lines[0] + "\n"
    return "[\n" + ",\n".join(lines) + "\n]\n"


def _csv_text(records: List[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(KEYS)
    for rec in records:
        writer.writerow([_scalar_text(key, rec[key]) for key in KEYS])
    return buf.getvalue()


def _table_text(records: List[Dict[str, Any]]) -> str:
    widths = {
        key: max([len(key)] + [len(_scalar_text(key, rec[key])) for rec in records])
        for key in KEYS
    }
    lines = ["  ".join(key.ljust(widths[key]) for key in KEYS).rstrip()]
    for rec in records:
        cells = []
        for key in KEYS:
            text = _scalar_text(key, rec[key])
            if key in ("n", "d", "value", "published", "deviation", "runtime_ms"):
                cells.append(text.rjust(widths[key]))
            else:
                cells.append(text.ljust(widths[key]))
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _render(records: List[Dict[str, Any]], fmt: str) -> str:
    if fmt == "json":
        return _json_text(records)
    if fmt == "csv":
        return _csv_text(records)
    return _table_text(records)


def _emit(records: List[Dict[str, Any]], args: argparse.Namespace) -> None:
    text = _render(records, args.format)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------- validation

def _parse_hypothesis(args: argparse.Namespace, d: int, need_rank: bool = True) -> tuple:
    """Returns (r, schmidt) with exactly one of them set."""
    r = getattr(args, "dgme", None)
    schmidt = getattr(args, "schmidt", None)
    if r is not None and schmidt is not None:
        raise ConfigError("give either --dgme/--r or --schmidt, not both")
    if schmidt is not None:
        try:
            caps = tuple(int(tok) for tok in schmidt.split(","))
        except ValueError:
            raise ConfigError(f"could not parse --schmidt {schmidt!r} as comma-separated integers")
        if len(caps) != 3:
            raise ConfigError("--schmidt expects exactly three comma-separated ranks")
        if any(not 1 <= c <= d for c in caps):
            raise ConfigError(f"every Schmidt rank must lie in 1..{d}")
        return None, caps
    if r is None:
        if need_rank:
            raise ConfigError("a dimension hypothesis is required (--dgme or --r)")
        return None, None
    if not 1 <= r <= d:
        raise ConfigError(f"dimension hypothesis {r} must lie in 1..{d}")
    return int(r), None


def _settings_from(args: argparse.Namespace) -> Settings:
    if args.config:
        try:
            return load_overrides(args.config, DEFAULTS)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"could not load --config {args.config}: {exc}")
    return DEFAULTS


def _parse_sets(raw: Optional[str], n: int, d: int) -> list:
    if not raw:
        raise ConfigError("sdp-stats needs --sets, e.g. --sets EC,EF")
    sets = []
    for tok in raw.split(","):
        key = tok.strip().upper().replace("_", "")
        if key not in SET_LABELS:
            raise ConfigError(f"unknown measurement set {tok!r}; choose from EC, EF, EM")
        sets.append(build_measurement_set(SET_LABELS[key], n, d))
    return sets


# ---------------------------------------------------------------- bound

def cmd_bound(args: argparse.Namespace) -> int:
    _settings_from(args)  # validates --config even though bounds ignore tolerances
    method, target, n, d = args.method, args.target, args.n, args.d
    if method not in BOUND_METHODS:
        raise ConfigError(f"method {method!r} is a relaxation; use the solve command")
    if d < 2:
        raise ConfigError(f"local dimension must be at least 2, got {d}")
    if n < 2:
        raise ConfigError(f"particle count must be at least 2, got {n}")
    r, schmidt = _parse_hypothesis(args, d)
    if schmidt is not None:
        raise ConfigError("closed-form bounds take a single --dgme, not a Schmidt vector")
    if method == "tenbasis":
        if n != 3:
            raise ConfigError("the ten-basis witness is defined for n = 3")
        if d % 2 == 0:
            raise ConfigError("the ten-basis witness needs odd local dimension")
        if target != "ghz":
            raise ConfigError("the ten-basis witness targets the ghz state")
    if args.noise == "dephasing":
        if target != "ghz":
            raise ConfigError("dephasing thresholds are available for the ghz target only")
        if method == "tenbasis":
            raise ConfigError("the ten-basis criterion has no dephasing threshold")

    records = []
    t0 = time.perf_counter()
    if method == "fidelity":
        bound_val = fidelity_bound_closed(d, r)
    elif method == "minimal-witness":
        bound_val = minimal_witness_bound(d, r)
    else:
        bound_val = tenbasis_vcrit(d, r)
    ms = int(round((time.perf_counter() - t0) * 1000))
    records.append(_record(method, n, d, str(r), bound_val, "bound", runtime_ms=ms))

    if args.noise:
        t0 = time.perf_counter()
        if args.noise == "dephasing":
            vcrit = vcrit_ghz_dephasing(d, r)
        elif method == "fidelity":
            vcrit = vcrit_fidelity_depolarizing(n, d, r)
        elif method == "minimal-witness":
            vcrit = vcrit_ghz_depolarizing(n, d, r) if target == "ghz" else vcrit_cluster(n, d, r)
        else:
            vcrit = tenbasis_vcrit(d, r)
        ms = int(round((time.perf_counter() - t0) * 1000))
        records.append(
            _record(method, n, d, str(r), vcrit, f"vcrit-{args.noise}", runtime_ms=ms)
        )
    _emit(records, args)
    return 0


# ---------------------------------------------------------------- solve

def cmd_solve(args: argparse.Namespace) -> int:
    settings = _settings_from(args)
    method, target, n, d = args.method, args.target, args.n, args.d
    if method not in SOLVE_METHODS:
        raise ConfigError(f"method {method!r} is a closed-form bound; use the bound command")
    if d < 2:
        raise ConfigError(f"local dimension must be at least 2, got {d}")
    if n < 2:
        raise ConfigError(f"particle count must be at least 2, got {n}")
    if args.noise and args.noise != "depolarizing":
        raise ConfigError("relaxations quantify depolarizing visibility; other noise is unsupported")
    r, schmidt = _parse_hypothesis(args, d)
    if schmidt is not None and method != "lp":
        raise ConfigError("Schmidt vectors are supported by the lp method only")
    if schmidt is not None and n != 3:
        raise ConfigError("Schmidt-vector runs are three-particle (--n 3)")
    if method == "sdp-stats" and target != "ghz":
        raise ConfigError("statistics runs target the ghz state")

    t0 = time.perf_counter()
    try:
        if method == "lp":
            if schmidt is not None:
                res = lp_schmidt_vector(
                    target, n, d, SchmidtVectorHypothesis.triple(*schmidt),
                    sides=args.sides, settings=settings,
                )
            else:
                res = lp_gme_dimension(target, n, d, r, sides=args.sides, settings=settings)
        elif method == "sdp":
            state = ghz(n, d) if target == "ghz" else cluster(n, d)
            res = sdp_gme_dimension(state, r, sides=args.sides, settings=settings)
        else:
            sets = _parse_sets(args.sets, n, d)
            res = sdp_statistics(ghz(n, d), r, sets, sides=args.sides, settings=settings)
    except ValueError as exc:
        raise ConfigError(str(exc))
    ms = int(round((time.perf_counter() - t0) * 1000))
    hyp = ",".join(str(c) for c in schmidt) if schmidt is not None else str(r)
    records = [_record(method, n, d, hyp, res.v_star, res.status, runtime_ms=ms)]
    _emit(records, args)
    return 0


# ---------------------------------------------------------------- reproduce

def _match(computed: float, published, tol: float) -> tuple:
    """Returns (published_scalar, deviation, ok) handling dual-valued cells."""
    if isinstance(published, list):
        devs = [abs(computed - cand) for cand in published]
        best = int(devs.index(min(devs)))
        return float(published[best]), float(devs[best]), devs[best] <= tol
    dev = abs(computed - float(published))
    return float(published), float(dev), dev <= tol


def _reproduce_lp_tables(table_id: str, budget: str, settings: Settings) -> tuple:
    table = reference_table(table_id)
    tol = float(table["tolerance"])
    records, failed = [], False
    for row in table["rows"]:
        n, d, r = row["n"], row["d"], row["r"]
        if row["budget"] == "extended" and budget != "extended":
            for col, method in (("v_ghz_lp", "lp"), ("v_cluster_lp", "lp"), ("v_fidelity", "fidelity")):
                if isinstance(row[col], str):
                    continue
                records.append(_record(method, n, d, str(r), None, "skipped-extended",
                                       published=_first(row[col])))
            continue
        for col, kind in (("v_ghz_lp", "ghz"), ("v_cluster_lp", "cluster")):
            published = row[col]
            if published == "*":
                records.append(_record("lp", n, d, str(r), None, "lu-equivalent"))
                continue
            if published == "-":
                records.append(_record("lp", n, d, str(r), None, "not-published"))
                continue
            t0 = time.perf_counter()
            res = lp_gme_dimension(kind, n, d, r, settings=settings)
            ms = int(round((time.perf_counter() - t0) * 1000))
            pub, dev, ok = _match(res.v_star, published, tol)
            failed |= not ok
            records.append(_record("lp", n, d, str(r), res.v_star,
                                   "match" if ok else "mismatch",
                                   published=pub, deviation=dev, runtime_ms=ms))
        t0 = time.perf_counter()
        vfid = vcrit_fidelity_depolarizing(n, d, r)
        ms = int(round((time.perf_counter() - t0) * 1000))
        pub, dev, ok = _match(vfid, row["v_fidelity"], tol)
        failed |= not ok
        records.append(_record("fidelity", n, d, str(r), vfid,
                               "match" if ok else "mismatch",
                               published=pub, deviation=dev, runtime_ms=ms))
    return records, failed


def _first(published) -> Optional[float]:
    if isinstance(published, list):
        return float(published[0])
    if isinstance(published, str):
        return None
    return float(published)


def _reproduce_table2(budget: str, settings: Settings) -> tuple:
    table = reference_table("table2")
    tol = float(table["tolerance"])
    records, failed = [], False
    columns = (
        ("v_fidelity", "fidelity"),
        ("v_min_fidelity", "minimal-witness"),
        ("v_ec_ef", "sdp-stats"),
        ("v_ec_ef_em", "sdp-stats"),
    )
    for row in table["rows"]:
        n, d, r = row["n"], row["d"], row["r"]
        if row["budget"] == "extended" and budget != "extended":
            for col, method in columns:
                records.append(_record(method, n, d, str(r), None, "skipped-extended",
                                       published=_first(row[col])))
            continue
        row_settings = settings
        if "stats_eps" in row:
            row_settings = dataclasses.replace(settings, sdp_stats_eps=float(row["stats_eps"]))
        state = ghz(n, d)
        for col, method in columns:
            t0 = time.perf_counter()
            if col == "v_fidelity":
                computed = vcrit_fidelity_depolarizing(n, d, r)
            elif col == "v_min_fidelity":
                computed = vcrit_ghz_depolarizing(n, d, r)
            else:
                labels = ["E_C", "E_F"] if col == "v_ec_ef" else ["E_C", "E_F", "E_M"]
                sets = [build_measurement_set(lbl, n, d) for lbl in labels]
                computed = sdp_statistics(state, r, sets, sides="S-only",
                                          settings=row_settings).v_star
            ms = int(round((time.perf_counter() - t0) * 1000))
            pub, dev, ok = _match(computed, row[col], tol)
            failed |= not ok
            records.append(_record(method, n, d, str(r), computed,
                                   "match" if ok else "mismatch",
                                   published=pub, deviation=dev, runtime_ms=ms))
    return records, failed


def _reproduce_sm9(budget: str, settings: Settings) -> tuple:
    table = reference_table("sm9")
    tol = float(table["tolerance"])
    records, failed = [], False
    for row in table["rows"]:
        n, d, caps = row["n"], row["d"], tuple(row["schmidt"])
        hyp = ",".join(str(c) for c in caps)
        t0 = time.perf_counter()
        res = lp_schmidt_vector("ghz", n, d, SchmidtVectorHypothesis.triple(*caps),
                                settings=settings)
        ms = int(round((time.perf_counter() - t0) * 1000))
        pub, dev, ok = _match(res.v_star, row["v_ghz_lp"], tol)
        failed |= not ok
        records.append(_record("lp", n, d, hyp, res.v_star,
                               "match" if ok else "mismatch",
                               published=pub, deviation=dev, runtime_ms=ms))
    return records, failed


def cmd_reproduce(args: argparse.Namespace) -> int:
    settings = _settings_from(args)
    if args.table not in TABLE_IDS:
        raise ConfigError(f"unknown table {args.table!r}; valid ids: {', '.join(TABLE_IDS)}")
    if args.table in ("table1", "sm8"):
        records, failed = _reproduce_lp_tables(args.table, args.budget, settings)
    elif args.table == "table2":
        records, failed = _reproduce_table2(args.budget, settings)
    else:
        records, failed = _reproduce_sm9(args.budget, settings)
    _emit(records, args)
    return 1 if failed else 0


# ---------------------------------------------------------------- selftest

def cmd_selftest(args: argparse.Namespace) -> int:
    settings = _settings_from(args)
    checks = []

    def run(name: str, n: int, d: int, fn, target: float, tol: float) -> None:
        t0 = time.perf_counter()
        got = float(fn())
        ms = int(round((time.perf_counter() - t0) * 1000))
        dev = abs(got - target)
        checks.append(_record("selftest", n, d, name, got,
                              "PASS" if dev <= tol else "FAIL",
                              published=target, deviation=dev, runtime_ms=ms))

    run("ghz-depolarizing-closed", 4, 3,
        lambda: vcrit_ghz_depolarizing(4, 3, 2), 35.0 / 44.0, 1e-12)
    run("cluster-depolarizing-closed", 4, 3,
        lambda: vcrit_cluster(4, 3, 2), 13.0 / 16.0, 1e-12)
    run("ghz-dephasing-closed", 3, 3,
        lambda: vcrit_ghz_dephasing(3, 2), 0.5, 1e-12)
    run("witness-correlation", 3, 3,
        lambda: ghz_witness_value(ghz(3, 3).density()), 2.0, 1e-10)
    run("projector-residual", 3, 3,
        lambda: projector_residual(ghz_witness_operator(3, 3), ghz(3, 3)), 0.0, 1e-9)
    run("intro-simulation", 3, 3,
        lambda: float(abs(intro_tau(0.5).mat - qubit_ghz_mixture().mat).max()), 0.0, 1e-14)
    run("tight-mixture", 3, 3,
        lambda: float(abs(tight_dephased_mixture(3, 2, 3).mat
                          - dephase_diag(ghz(3, 3), 0.5).mat).max()), 0.0, 1e-12)
    run("lp-qubit-row", 3, 2,
        lambda: lp_gme_dimension("ghz", 3, 2, 1, settings=settings).v_star, 3.0 / 7.0, 1e-6)
    run("mixed-point-feasible", 3, 2,
        lambda: sdp_feasibility_probe(ghz(3, 2), 0.0, 1, settings=settings)[1],
        0.0, settings.sdp_feas_tol)

    _emit(checks, args)
    return 0 if all(rec["status"] == "PASS" for rec in checks) else 1


# ---------------------------------------------------------------- wiring

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "table"), default="table")
    parser.add_argument("--out", default=None, help="write the report to a file (json/csv)")
    parser.add_argument("--config", default=None, help="key-value file overriding tolerances")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmedim",
        description="Certify the entanglement dimensionality of noisy qudit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="closed-form fidelity and witness thresholds")
    p_bound.add_argument("--method", required=True,
                         choices=BOUND_METHODS + SOLVE_METHODS, metavar="METHOD")
    p_bound.add_argument("--target", choices=("ghz", "cluster"), default="ghz")
    p_bound.add_argument("--n", type=int, default=3)
    p_bound.add_argument("--d", type=int, required=True)
    p_bound.add_argument("--dgme", "--r", dest="dgme", type=int, default=None)
    p_bound.add_argument("--noise", choices=("depolarizing", "dephasing"), default=None)
    _add_common(p_bound)
    p_bound.set_defaults(fn=cmd_bound)

    p_solve = sub.add_parser("solve", help="convex-programming relaxations")
    p_solve.add_argument("--method", required=True,
                         choices=BOUND_METHODS + SOLVE_METHODS, metavar="METHOD")
    p_solve.add_argument("--target", choices=("ghz", "cluster"), default="ghz")
    p_solve.add_argument("--n", type=int, default=3)
    p_solve.add_argument("--d", type=int, required=True)
    p_solve.add_argument("--dgme", "--r", dest="dgme", type=int, default=None)
    p_solve.add_argument("--schmidt", default=None, help="per-bipartition ranks, e.g. 1,1,2")
    p_solve.add_argument("--sets", default=None, help="measurement sets, e.g. EC,EF,EM")
    p_solve.add_argument("--sides", choices=("both", "S-only"), default="both")
    p_solve.add_argument("--noise", choices=("depolarizing", "dephasing"), default=None)
    _add_common(p_solve)
    p_solve.set_defaults(fn=cmd_solve)

    p_rep = sub.add_parser("reproduce", help="recompute an embedded reference table")
    p_rep.add_argument("table", choices=TABLE_IDS)
    p_rep.add_argument("--budget", choices=("desk", "extended"), default="desk")
    _add_common(p_rep)
    p_rep.set_defaults(fn=cmd_reproduce)

    p_self = sub.add_parser("selftest", help="quick deterministic sanity checks")
    _add_common(p_self)
    p_self.set_defaults(fn=cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    threads = os.environ.get("GMEDIM_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.out and args.format == "table":
            raise ConfigError("--out requires --format json or csv")
        return args.fn(args)
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
