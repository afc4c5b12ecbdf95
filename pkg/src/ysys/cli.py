"""Command-line front end.

Exit status: 0 when every selected check passes, 1 on a failed check, 2 on
rejected input.  Reports are JSON (stable key order, no timestamps).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any

from . import geometry as geo
from . import schedule as sch
from . import solutions, svg, tsystems, ysystems
from .contfrac import KINDS, RSG, SG, build_table, parse_sequence, verify_cf_identities
from .errors import RejectedInput, YSysError
from .labels import label_to_json
from .report import Report

log = logging.getLogger("ysys")


@dataclass(frozen=True)
class RunConfig:
    kind: str
    n: tuple[int, ...]
    mode: str
    seed: int
    window: tuple[int, int] | None
    json_path: str | None
    svg_path: str | None


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO..HI, got {text!r}") from None


def _config(args: argparse.Namespace) -> RunConfig:
    n = parse_sequence(args.n)
    return RunConfig(args.system, n, getattr(args, "mode", "exact"), getattr(args, "seed", 0),
                     getattr(args, "window", None), args.json, getattr(args, "svg", None))


def _emit(cfg: RunConfig, payload: dict[str, Any]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _first_failure(reports: list) -> str | None:
    for rep in reports:
        fails = rep.data.get("relation_failures") if isinstance(rep, Report) else None
        if fails:
            f = fails[0]
            return f"first failing (a,m,u) = ({f['a']},{f['m']},{f['u']})"
        if not rep.passed:
            bad = rep.failures[0]
            return f"{rep.title}: {bad.name} {bad.detail}".strip()
    return None


def _finish(cfg: RunConfig, payload: dict, reports: list) -> int:
    ok = all(rep.passed for rep in reports)
    payload["passed"] = ok
    _emit(cfg, payload)
    if not ok:
        msg = _first_failure(reports)
        if msg:
            print(msg, file=sys.stderr)
        return 1
    return 0


def _table(cfg: RunConfig):
    return build_table(cfg.n, cfg.kind)


def _default_window(table) -> tuple[int, int]:
    return sch.default_window(table, None, periods=2)


def _run(cfg: RunConfig, table, *, y=True, x=False, tropical=False, check=False, keep_gammas=False, window=None):
    n_labels = len(geo.build(table, cfg.kind).arcs)
    engines = sch.make_engines(n_labels, mode=cfg.mode, seed=cfg.seed, y=y, x=x, tropical=tropical)
    window = window or cfg.window or _default_window(table)
    log.info("running %s%s over %s", cfg.kind, cfg.n, window)
    return sch.build_and_run(table, cfg.kind, window, engines, check=check, keep_gammas=keep_gammas)


# ---------------------------------------------------------------------------
# commands


def cmd_cf(cfg: RunConfig, args) -> int:
    table = _table(cfg)
    rep = verify_cf_identities(table)
    return _finish(cfg, {"table": table.to_dict(), "identities": rep.to_dict()}, [rep])


def cmd_triangulate(cfg: RunConfig, args) -> int:
    table = _table(cfg)
    tri = geo.build(table, cfg.kind)
    sched = sch.derive_schedule(tri, table, cfg.kind)
    rep = Report("triangulation")
    want = table.r() - 3 if cfg.kind == RSG else table.r()
    rep.add("arc count", len(tri.arcs) == want, f"{len(tri.arcs)} vs {want}")
    rep.add("is a triangulation", geo.is_triangulation(tri))
    for u in (-1, 0):
        rep.add(f"quasi-symmetric about Z({u})", geo.quasi_symmetry_check(tri, geo.axis_at(table, u)))
    if cfg.svg_path:
        _write_svg(cfg, table, tri, sched, 0)
    payload = {
        "triangulation": tri.to_json(),
        "S(-1)": [label_to_json(lab) for lab in sorted(sched.S_minus1)],
        "S(0)": [label_to_json(lab) for lab in sorted(sched.S_0)],
        "checks": rep.to_dict(),
    }
    return _finish(cfg, payload, [rep])


def _write_svg(cfg: RunConfig, table, tri, sched, u: int) -> None:
    title = f"{cfg.kind.upper()}{cfg.n}: Gamma({u}) of the {table.r()}-gon"
    text = svg.render(tri, axes=[geo.axis_at(table, u - 1), geo.axis_at(table, u)],
                      circles=sched.S(u), crosses=sched.S(u - 1), title=title)
    with open(cfg.svg_path, "w") as fh:
        fh.write(text)


def cmd_render(cfg: RunConfig, args) -> int:
    if not cfg.svg_path:
        raise RejectedInput("render needs --svg PATH")
    table = _table(cfg)
    tri0 = geo.build(table, cfg.kind)
    sched = sch.derive_schedule(tri0, table, cfg.kind)
    u = args.u
    tri = tri0
    if u:
        lo, hi = (min(u, 0), max(u, 0))
        traj = sch.run(tri0, sched, (lo, hi), None, check=False, keep_gammas=True)
        tri = traj.gammas[u]
    _write_svg(cfg, table, tri, sched, u)
    rep = Report("render")
    rep.add("svg written", True, cfg.svg_path)
    return _finish(cfg, {"svg": cfg.svg_path, "u": u}, [rep])


def cmd_run(cfg: RunConfig, args) -> int:
    table = _table(cfg)
    window = cfg.window or (0, 2 * table.r())
    traj = _run(cfg, table, check=True, keep_gammas=True, window=window)
    rep = Report("schedule")
    rep.add("schedule laws", True, "compatibility, reflection, exchange matrices and rotation checked per step")
    per_label = {}
    for lab in traj.labels:
        times = traj.forward_times(lab)
        gaps = {b - a for a, b in zip(times, times[1:])}
        per_label[str(lab)] = sorted(gaps)
        if gaps and gaps != {2 * table.p(lab.a)}:
            rep.add(f"label period {lab}", False, f"gaps {sorted(gaps)}")
    rep.add("label periods 2 p_a", not rep.failures)
    payload = {
        "n": list(cfg.n), "kind": cfg.kind, "window": list(window),
        "mutations": sum(len(s) for u, s in traj.forward.items() if window[0] <= u < window[1]),
        "occurrences": len(traj.occ_label),
        "checks": rep.to_dict(),
    }
    return _finish(cfg, payload, [rep])


def _verify_ysystem(cfg, table, args) -> tuple[dict, list]:
    traj = _run(cfg, table)
    rels = ysystems.generate_relations(table, cfg.kind)
    rep = ysystems.verify_relations(traj, rels)
    payload = {"relation_failures": rep.data["relation_failures"], "instances": rep.data["instances"],
               "checks": rep.to_dict()}
    reports = [rep]
    if getattr(args, "period_check", "full") != "none":
        per = ysystems.verify_periodicity(traj, cfg.kind)
        payload["period"] = per.data.get("period")
        payload["periodicity"] = per.to_dict()
        reports.append(per)
    return payload, reports


def _verify_tsystem(cfg, table, args) -> tuple[dict, list]:
    traj = _run(cfg, table, y=False, x=True)
    rels = tsystems.generate_t_relations(table, cfg.kind)
    rep = tsystems.verify_t(traj, rels)
    per = tsystems.verify_t_periodicity(traj)
    return ({"relation_failures": rep.data["relation_failures"], "instances": rep.data["instances"],
             "period": per.data.get("period"), "checks": rep.to_dict(), "periodicity": per.to_dict()},
            [rep, per])


def _verify_periodicity(cfg, table, args) -> tuple[dict, list]:
    traj = _run(cfg, table)
    per = ysystems.verify_periodicity(traj, cfg.kind)
    reports = [per]
    payload = {"period": per.data.get("period"), "periodicity": per.to_dict()}
    if cfg.kind == RSG and table.F == 1 and table.n_(1) > 3:
        half = ysystems.half_period_check(traj)
        payload["half_period"] = half.to_dict()
        reports.append(half)
    return payload, reports


def _verify_dilog(cfg, table, args) -> tuple[dict, list]:
    runs = []
    reports = []
    for s in range(cfg.seed, cfg.seed + args.seeds):
        d = solutions.run_dilog(table, cfg.kind, seed=s)
        runs.append({"seed": s, **d.to_dict()})
        reports.append(d.report)
    return {"runs": runs}, reports


def _verify_crossratio(cfg, table, args) -> tuple[dict, list]:
    if cfg.kind != RSG:
        raise RejectedInput("the cross-ratio solution is checked for RSG systems only")
    reports = [solutions.time_index_report(table)]
    for s in range(cfg.seed, cfg.seed + args.seeds):
        reports.append(solutions.cross_ratio_check(table, RSG, seed=s))
    return {"reports": [rep.to_dict() for rep in reports]}, reports


_VERIFIERS = {
    "ysystem": _verify_ysystem,
    "tsystem": _verify_tsystem,
    "periodicity": _verify_periodicity,
    "dilog": _verify_dilog,
    "crossratio": _verify_crossratio,
}


def cmd_verify(cfg: RunConfig, args) -> int:
    table = _table(cfg)
    what = args.what
    if what == "all":
        payload: dict[str, Any] = {}
        reports: list = []
        for name, fn in _VERIFIERS.items():
            if name == "crossratio" and cfg.kind != RSG:
                continue
            if name == "periodicity":
                continue  # covered by ysystem
            p, reps = fn(cfg, table, args)
            payload[name] = p
            reports += reps
    else:
        payload, reports = _VERIFIERS[what](cfg, table, args)
    payload.update({"n": list(cfg.n), "kind": cfg.kind, "mode": cfg.mode, "seed": cfg.seed})
    return _finish(cfg, payload, reports)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", choices=sorted(KINDS), default=RSG, help="system kind (default rsg)")
    common.add_argument("--n", required=True, help="continued fraction digits, e.g. 6,4,3")
    common.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")

    running = argparse.ArgumentParser(add_help=False)
    running.add_argument("--mode", choices=["exact", "float"], default="exact", help="semifield for values")
    running.add_argument("--seed", type=int, default=0, help="RNG seed for initial values")
    running.add_argument("--window", type=_window, metavar="LO..HI", help="time window of the run")

    p = argparse.ArgumentParser(prog="ysys", description="Polygon realizations of RSG/SG Y-systems.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("cf", parents=[common], help="continued fraction table and identities")
    sp.set_defaults(func=cmd_cf)

    sp = sub.add_parser("triangulate", parents=[common], help="initial triangulation and mutation sets")
    sp.add_argument("--svg", metavar="PATH", help="also draw Gamma(0)")
    sp.set_defaults(func=cmd_triangulate)

    sp = sub.add_parser("run", parents=[common, running], help="run the schedule with per-step checks")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("render", parents=[common], help="draw Gamma(u) as SVG")
    sp.add_argument("--svg", metavar="PATH", required=True, help="output file")
    sp.add_argument("--u", type=int, default=0, help="time u (default 0)")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("verify", parents=[common, running], help="verify identities on a trajectory")
    sp.add_argument("what", choices=[*_VERIFIERS, "all"])
    sp.add_argument("--period-check", choices=["none", "full"], default="full",
                    help="include the periodicity check in 'ysystem'")
    sp.add_argument("--seeds", type=int, default=3, help="number of seeds for dilog/crossratio")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("YSYS_LOG", "").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING) if level else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(cfg, args)
    except RejectedInput as exc:
        print(f"rejected input: {exc}", file=sys.stderr)
        return 2
    except YSysError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
