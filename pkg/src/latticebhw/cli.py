"""Command line interface.

Exit codes: 0 all checks pass, 1 verification failure, 2 invalid input,
3 hypothesis violation.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import linalg as la
from .bhw import body_minima, check_minkowski_second, q_values, verify_theorem1
from .core import FlagBasis, coefficient_ball
from .enumeration import INFINITE, count_ball, enumerate_ball, oracle_count
from .errors import CapacityError, InvalidInputError, LatticeError
from .instances import MODES, CampaignConfig, generate_instance, instance_to_dict, parse_instance, strong_setup
from .slicing import StrongInstance, verify_strong, verify_theorem1_via_strong
from .translation import translate_spheres, verify_translation

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_HYPOTHESIS = 0, 1, 2, 3
DEFAULT_T_SAMPLES = "1,3/2,2,5/2,7"


def _r(x):
    return "inf" if x == INFINITE else la.format_rational(x)


def _v(v):
    return [_r(x) for x in v]


def report_count(inst):
    counts = [count_ball(inst.lattice, b) for b in inst.balls]
    return {"command": "count", "counts": counts, "total": sum(counts), "ok": True}


def report_minima(inst):
    ball = inst.single_ball()
    prof = body_minima(inst.lattice, ball)
    return {
        "command": "minima",
        "lambda_sq": _v(prof.lambda_sq),
        "witnesses": [list(w) for w in prof.witnesses],
        "ok": True,
    }


def report_qvalues(inst):
    ball = inst.single_ball()
    prof = body_minima(inst.lattice, ball)
    q = q_values(prof)
    return {"command": "qvalues", "lambda_sq": _v(prof.lambda_sq), "q": list(q.q), "bound": q.bound, "ok": True}


def report_bhw(inst, via_strong=False):
    ball = inst.single_ball()
    rep = verify_theorem1(inst.lattice, ball)
    out = {
        "command": "verify-bhw",
        "count": rep.count,
        "lambda_sq": _v(rep.minima.lambda_sq),
        "q": list(rep.q.q),
        "bound": rep.bound,
        "first_theorem_bound": rep.first_theorem_bound,
        "holds": rep.holds,
        "holds_first": rep.holds_first,
    }
    if ball.radius_sq > 0:
        out["minkowski_second"] = check_minkowski_second(inst.lattice, ball)
    ok = rep.holds and rep.holds_first
    if via_strong:
        vs = verify_theorem1_via_strong(inst.lattice, ball)
        out["via_strong"] = {"ok": vs.ok, "count": vs.count, "bound": vs.bound, "failures": vs.failures + vs.strong.failures}
        ok = ok and vs.ok
    out["ok"] = ok
    return out


def report_translate(inst, t_samples):
    pack = inst.sphere_pack()
    res = translate_spheres(pack)
    ver = verify_translation(res, pack, t_samples)
    return {
        "command": "translate",
        "u": [_v(u) for u in res.u],
        "shifts": [list(s) for s in res.shifts],
        "d_sq": [_v(row) for row in res.d_sq],
        "certified_all_t": res.certified_all_t,
        "pairs": [
            {
                "i": p.i,
                "j": p.j,
                "d_sq": _r(p.d_sq),
                "certified": p.certified,
                "samples": [{"t": _r(s["t"]), "dt_sq": _r(s["dt_sq"]), "ok": s["ok"]} for s in p.samples],
            }
            for p in ver.pairs
        ],
        "ok": res.certified_all_t and ver.ok,
    }


def report_strong(inst, with_trace=True):
    flag_e, q = strong_setup(inst)
    flag = FlagBasis(inst.lattice, tuple(flag_e), ())
    if not flag.is_unimodular():
        raise InvalidInputError("flag is not a basis of the lattice", "flag")
    rep = verify_strong(StrongInstance(inst.balls, flag, q))
    out = {"command": "verify-strong", "q": list(q), "total": rep.total, "bound": rep.bound,
           "failures": rep.failures, "ok": rep.ok}
    if with_trace:
        out["trace"] = rep.trace
    return out


def report_oracle_diff(inst, capacity):
    out = {"command": "oracle-diff", "balls": []}
    ok = True
    for b in inst.balls:
        G, t, R_sq = coefficient_ball(inst.lattice, b)
        oracle = oracle_count(G, t, R_sq, capacity)
        enum = len(enumerate_ball(G, t, R_sq))
        out["balls"].append({"enumerated": enum, "oracle": oracle, "agree": enum == oracle})
        ok = ok and enum == oracle
    out["ok"] = ok
    return out


def _campaign_job(args):
    cfg, index, t_samples, capacity = args
    inst = generate_instance(cfg, index)
    try:
        if cfg.mode == "theorem1":
            rep = report_bhw(inst, via_strong=True)
        elif cfg.mode == "strong":
            rep = report_strong(inst, with_trace=False)
        elif cfg.mode == "translation":
            rep = report_translate(inst, t_samples)
        else:
            try:
                rep = report_oracle_diff(inst, capacity)
            except CapacityError as exc:
                # infeasible for brute force: skipped, not a disagreement
                rep = {"command": "oracle-diff", "skipped": str(exc), "ok": True}
        status = EXIT_OK if rep["ok"] else EXIT_FAIL
    except LatticeError as exc:
        rep = {"error": str(exc), "ok": False}
        status = exc.exit_code
    return {"index": index, "status": status, "instance": instance_to_dict(inst), "report": rep}


def run_campaign(cfg, t_samples=None, capacity=10**5, workers=1):
    if t_samples is None:
        t_samples = parse_t_samples(DEFAULT_T_SAMPLES)
    jobs = [(cfg, i, t_samples, capacity) for i in range(cfg.count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_campaign_job, jobs, chunksize=4))
    else:
        results = [_campaign_job(j) for j in jobs]
    results.sort(key=lambda r: r["index"])
    statuses = {r["status"] for r in results}
    status = max(statuses - {EXIT_OK}, default=EXIT_OK)
    summary = {
        "mode": cfg.mode,
        "seed": cfg.seed,
        "count": cfg.count,
        "passed": sum(r["status"] == EXIT_OK for r in results),
        "failed": sum(r["status"] != EXIT_OK for r in results),
        "skipped": sum("skipped" in r["report"] for r in results),
    }
    return status, {"command": "campaign", "summary": summary, "results": results, "ok": status == EXIT_OK}


def parse_dims(text):
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            dims = tuple(range(lo, hi + 1))
        else:
            dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInputError(f"bad dimension list {text!r}", "dim") from None
    if not dims:
        raise InvalidInputError("empty dimension list", "dim")
    return dims


def parse_t_samples(text):
    return tuple(la.to_rational(x, "t_samples") for x in text.split(",") if x.strip())


def _text_lines(report):
    if report.get("command") == "campaign":
        s = report["summary"]
        lines = [f"campaign mode={s['mode']} seed={s['seed']} count={s['count']} passed={s['passed']} failed={s['failed']} skipped={s['skipped']}"]
        lines.append(f"{'index':>6}  {'status':>6}  summary")
        for r in report["results"]:
            rep = r["report"]
            brief = ", ".join(f"{k}={rep[k]}" for k in ("count", "bound", "total") if k in rep)
            lines.append(f"{r['index']:>6}  {r['status']:>6}  {brief or rep.get('error', '')}")
        return lines
    lines = []
    for key, value in report.items():
        if key == "trace":
            continue
        lines.append(f"{key:>20}: {json.dumps(value) if isinstance(value, (list, dict)) else value}")
    return lines


def _emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write("\n".join(_text_lines(report)) + "\n")


def build_parser():
    parser = argparse.ArgumentParser(prog="latticebhw", description="Exact lattice-point bounds for ellipsoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    needs_input = argparse.ArgumentParser(add_help=False)
    needs_input.add_argument("--input", required=True, metavar="FILE", help="instance JSON file ('-' for stdin)")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common, needs_input], help="count lattice points in each body")
    sub.add_parser("minima", parents=[common, needs_input], help="successive minima with witnesses")
    sub.add_parser("qvalues", parents=[common, needs_input], help="q-values and their product")
    p = sub.add_parser("verify-bhw", parents=[common, needs_input], help="check |E ∩ Λ| <= prod q_i")
    p.add_argument("--via-strong", action="store_true", help="also replay the slicing induction")
    p = sub.add_parser("translate", parents=[common, needs_input], help="simultaneous translation of spheres")
    p.add_argument("--t-samples", default=DEFAULT_T_SAMPLES, metavar="LIST")
    sub.add_parser("verify-strong", parents=[common, needs_input], help="replay the slicing induction with a trace")
    p = sub.add_parser("oracle-diff", parents=[common, needs_input], help="enumeration vs brute force")
    p.add_argument("--capacity", type=int, default=10**5)
    p = sub.add_parser("campaign", parents=[common], help="seeded batch of random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--dim", default="2-4", metavar="D", help="dimension, list '2,3' or range '2-4'")
    p.add_argument("--entry-bound", type=int, default=5)
    p.add_argument("--mode", choices=MODES, default="theorem1")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--t-samples", default=DEFAULT_T_SAMPLES, metavar="LIST")
    p.add_argument("--capacity", type=int, default=10**5)
    return parser


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}", "input") from None


def run_command(argv, out=None):
    """Run the CLI; returns ``(exit_code, report)``."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "campaign":
            cfg = CampaignConfig(seed=args.seed, count=args.count, dims=parse_dims(args.dim),
                                 entry_bound=args.entry_bound, mode=args.mode)
            code, report = run_campaign(cfg, parse_t_samples(args.t_samples), args.capacity, args.workers)
        else:
            inst = parse_instance(_read(args.input))
            if args.command == "count":
                report = report_count(inst)
            elif args.command == "minima":
                report = report_minima(inst)
            elif args.command == "qvalues":
                report = report_qvalues(inst)
            elif args.command == "verify-bhw":
                report = report_bhw(inst, args.via_strong)
            elif args.command == "translate":
                report = report_translate(inst, parse_t_samples(args.t_samples))
            elif args.command == "verify-strong":
                report = report_strong(inst)
            else:
                report = report_oracle_diff(inst, args.capacity)
            code = EXIT_OK if report["ok"] else EXIT_FAIL
    except LatticeError as exc:
        report = {"command": args.command, "error": str(exc), "ok": False}
        if getattr(exc, "field", None):
            report["field"] = exc.field
        code = exc.exit_code
    _emit(report, args.format, out)
    return code, report


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
