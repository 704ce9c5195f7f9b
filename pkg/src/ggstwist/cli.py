"""Command line front end: ``ggstwist enumerate | classify | solve-r0 | build | verify | report``.

Exit codes: 0 all pass, 1 some check failed, 2 usage or config error,
3 internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .r0 import R0Matrix, canonical_r0, residuals, solve_r0, trace_zero_kernel
from .triples import (
    DEFAULT_N_CAP,
    BDTriple,
    EnumerationCapExceeded,
    classify,
    enumerate_triples,
    parse_triple,
    triple_to_json,
    validate,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

FLAG_ALIASES = {
    "disjoint": "disjoint",
    "gd": "generalized_disjoint",
    "generalized_disjoint": "generalized_disjoint",
    "ogd": "orthogonal_generalized_disjoint",
    "orthogonal_generalized_disjoint": "orthogonal_generalized_disjoint",
    "generalized_cg": "generalized_CG",
    "gcg": "generalized_CG",
    "cg": "CG",
    "decomposable": "decomposable",
    "indecomposable": "!decomposable",
    "empty": "empty",
    "nonempty": "!empty",
}


class UsageError(Exception):
    pass


def _parse_filter(text: str | None) -> list[str]:
    if not text:
        return []
    out = []
    for raw in text.split(","):
        key = raw.strip().lower().replace("-", "_")
        if not key:
            continue
        neg = key.startswith("!") or key.startswith("not_")
        key = key.lstrip("!").removeprefix("not_")
        if key not in FLAG_ALIASES:
            raise UsageError(f"unknown filter {raw.strip()!r}; known: {', '.join(sorted(FLAG_ALIASES))}")
        flag = FLAG_ALIASES[key]
        if neg:
            flag = flag[1:] if flag.startswith("!") else "!" + flag
        out.append(flag)
    return out


def _matches(t: BDTriple, flags: list[str]) -> bool:
    have = set(classify(t))
    if t.is_empty():
        have.add("empty")
    for f in flags:
        if f.startswith("!"):
            if f[1:] in have:
                return False
        elif f not in have:
            return False
    return True


def _ns(args) -> list[int]:
    if args.n is not None and args.n_max is not None:
        raise UsageError("give either --n or --n-max, not both")
    if args.n is not None:
        ns = [args.n]
    elif args.n_max is not None:
        ns = list(range(2, args.n_max + 1))
    else:
        ns = []
    for n in ns:
        if n < 2:
            raise UsageError("n must be at least 2")
        if n > args.cap:
            raise UsageError(f"n={n} exceeds the safety cap {args.cap} (raise it with --cap)")
    return ns


def select_triples(args) -> list[BDTriple]:
    """Triples named by ``--triple`` or enumerated from ``--n``/``--n-max``, then filtered."""
    flags = _parse_filter(getattr(args, "filter", None))
    if args.triple:
        out = []
        for text in args.triple:
            try:
                t = parse_triple(text, args.n)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            bad = validate(t)
            if bad:
                raise UsageError(f"{t}: " + "; ".join(map(str, bad)))
            if t.n > args.cap:
                raise UsageError(f"n={t.n} exceeds the safety cap {args.cap}")
            out.append(t)
    else:
        ns = _ns(args)
        if not ns:
            raise UsageError("need --n, --n-max or --triple")
        out = []
        for n in ns:
            try:
                out.extend(enumerate_triples(n, cap=args.cap))
            except EnumerationCapExceeded as exc:
                raise UsageError(str(exc)) from None
    return [t for t in out if _matches(t, flags)]


# output ------------------------------------------------------------------------------
def _open_out(path: str | None):
    if not path or path == "-":
        return sys.stdout, False
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    return open(p, "w", encoding="utf-8", newline=""), True


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# subcommands --------------------------------------------------------------------------
def cmd_enumerate(args) -> int:
    triples = select_triples(args)
    fh, close = _open_out(args.out)
    try:
        if args.format == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["triple", "n", "gamma1", "tau"])
            for t in triples:
                j = triple_to_json(t)
                w.writerow([str(t), t.n, " ".join(map(str, j["gamma1"])), _dump(j["tau"])])
        else:
            fh.write(_dump({"count": len(triples), "triples": [triple_to_json(t) | {"text": str(t)} for t in triples]}) + "\n")
    finally:
        if close:
            fh.close()
    print(f"{len(triples)} triple(s)", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    triples = select_triples(args)
    fh, close = _open_out(args.out)
    try:
        if args.format == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["triple", "classification"])
            for t in triples:
                w.writerow([str(t), " ".join(sorted(classify(t)))])
        else:
            for t in triples:
                fh.write(_dump({"triple": str(t), "classification": sorted(classify(t))}) + "\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_solve_r0(args) -> int:
    triples = select_triples(args)
    fh, close = _open_out(args.out)
    try:
        for t in triples:
            r0, kernel = solve_r0(t)
            fh.write(_dump({"triple": str(t), "r0": canonical_r0(t).to_json(),
                            "particular": r0.to_json(), "kernel_dim": len(kernel)}) + "\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_build(args) -> int:
    from .ggs import epsilon_matrix, ggs_rmatrix
    from .tensor import build_a, classical_r
    from .twist import build_twist, k_values, rj_matrix

    triples = select_triples(args)
    fh, close = _open_out(args.out)
    what = args.what
    try:
        for t in triples:
            r0 = canonical_r0(t)
            rec = {"triple": str(t), "object": what, "r0": r0.to_json()}
            if what == "R_GGS":
                rec["entries"] = ggs_rmatrix(t, r0).to_records()
            elif what == "R_J":
                rec["entries"] = rj_matrix(t, r0).to_records()
            elif what == "eps":
                rec["entries"] = epsilon_matrix(t).to_records()
            elif what == "a":
                rec["entries"] = build_a(t).to_records()
            elif what == "r":
                rec["entries"] = classical_r(t, r0).to_records()
            elif what == "K":
                rec["K"] = [{"alpha": a.text(), "beta": b.text(), "K": str(k)}
                            for (a, b), k in sorted(k_values(t).items())]
            elif what == "J":
                J, Jinv, layers = build_twist(t)
                rec["J"] = J.to_records()
                rec["J_inv"] = Jinv.to_records()
                rec["layers"] = layers.to_json()
            fh.write(_dump(rec) + "\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def _perturbed_r0(t: BDTriple, seed: int) -> R0Matrix:
    """Canonical r0 plus a seeded random element of the trace-zero kernel."""
    r0 = canonical_r0(t)
    rng = random.Random(f"{seed}:{t}")
    for k in trace_zero_kernel(t):
        r0 = r0 + k.scale(rng.randint(-3, 3))
    if residuals(t, r0):
        raise AssertionError("kernel perturbation broke the r0 equations")
    return r0


def _verify_one(job):
    text, names, fault, timings, perturb_seed = job
    from .verify import run_checks
    t = parse_triple(text)
    r0 = _perturbed_r0(t, perturb_seed) if perturb_seed is not None else None
    return run_checks(t, names, r0=r0, fault=fault, timings=timings)


def cmd_verify(args) -> int:
    from .verify import FAULTS, expand_checks

    try:
        names = expand_checks(args.checks)
    except KeyError as exc:
        raise UsageError(f"unknown check {exc.args[0]!r}") from None
    if args.inject_fault and args.inject_fault not in FAULTS:
        raise UsageError(f"unknown fault {args.inject_fault!r}")
    triples = select_triples(args)
    seed = args.seed if args.perturb_r0 else None
    jobs = [(str(t), names, args.inject_fault, args.timings, seed) for t in triples]
    width = args.jobs or os.cpu_count() or 1
    fh, close = _open_out(args.out)
    n_fail = 0
    try:
        if width <= 1 or len(jobs) <= 1:
            results = map(_verify_one, jobs)
            pool = None
        else:
            pool = ProcessPoolExecutor(max_workers=width)
            results = pool.map(_verify_one, jobs, chunksize=1)
        try:
            for rec in results:
                if args.format == "csv":
                    rec = _flat_row(rec)
                fh.write(_dump(rec) + "\n")
                fh.flush()
                bad = [k for k, v in rec["checks"].items() if (v["status"] if isinstance(v, dict) else v) == "fail"]
                if bad:
                    n_fail += 1
                    for k in bad:
                        v = rec["checks"][k]
                        wit = v.get("witness") if isinstance(v, dict) else None
                        print(f"FAIL {rec['triple']} {k}: {_dump(wit)}", file=sys.stderr)
        finally:
            if pool is not None:
                pool.shutdown()
    finally:
        if close:
            fh.close()
    print(f"{len(jobs)} triple(s), {n_fail} with failures", file=sys.stderr)
    return EXIT_FAIL if n_fail else EXIT_OK


def _flat_row(rec: dict) -> dict:
    return {"triple": rec["triple"], "classification": rec["classification"],
            "checks": {k: v["status"] for k, v in rec["checks"].items()}, "timing": rec.get("timing")}


# report --------------------------------------------------------------------------------
def load_records(path: str) -> list[dict]:
    """Read JSONL verification records from a file or every ``*.jsonl`` in a directory.

    Later records for the same triple replace earlier ones, so a resumed
    sweep can simply be appended.
    """
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.jsonl"))
    elif p.exists():
        files = [p]
    else:
        raise FileNotFoundError(path)
    by_id: dict[str, dict] = {}
    for f in files:
        for line in f.read_text(encoding="utf-8").splitlines():
            if line.strip():
                rec = json.loads(line)
                by_id[rec["triple"]] = rec
    return [by_id[k] for k in sorted(by_id, key=_triple_sort_key)]


def _triple_sort_key(text: str):
    t = parse_triple(text)
    return (t.n, len(t.tau), t.tau)


def report_rows(records: list[dict]) -> list[dict]:
    rows = []
    for rec in records:
        checks = {k: (v["status"] if isinstance(v, dict) else v) for k, v in rec.get("checks", {}).items()}
        rows.append({"triple": rec["triple"], "classification": list(rec.get("classification", [])),
                     "checks": checks, "timing": rec.get("timing")})
    return rows


def render_report(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"rows": rows, "count": len(rows)}, sort_keys=True, indent=1) + "\n"
    names = []
    for r in rows:
        for k in r["checks"]:
            if k not in names:
                names.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["triple", "classification", *names, "timing"])
    for r in rows:
        w.writerow([r["triple"], " ".join(r["classification"]),
                    *(r["checks"].get(k, "") for k in names),
                    "" if r["timing"] is None else _dump(r["timing"])])
    return buf.getvalue()


def cmd_report(args) -> int:
    if not args.input:
        raise UsageError("report needs an input file or directory")
    try:
        records = load_records(args.input)
    except FileNotFoundError:
        print(f"error: no run artifacts at {args.input}", file=sys.stderr)
        return EXIT_USAGE
    rows = report_rows(records)
    fh, close = _open_out(args.out)
    try:
        fh.write(render_report(rows, args.format))
    finally:
        if close:
            fh.close()
    failed = any(s == "fail" for r in rows for s in r["checks"].values())
    return EXIT_FAIL if failed else EXIT_OK


# parser ----------------------------------------------------------------------------------
def _common(p: argparse.ArgumentParser, select: bool = True):
    if select:
        p.add_argument("--n", type=int, help="dimension n (sl_n)")
        p.add_argument("--n-max", type=int, help="sweep every n from 2 up to this value")
        p.add_argument("--triple", action="append",
                       help='explicit triple, e.g. "n=4; a1->a3" or JSON; repeatable')
        p.add_argument("--filter", help="comma list of flags: disjoint, gd, ogd, gcg, cg, decomposable, empty; prefix ! to negate")
        p.add_argument("--cap", type=int, default=DEFAULT_N_CAP, help="largest n allowed (default %(default)s)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ggstwist", description="Belavin-Drinfeld triples, GGS and twisted R-matrices.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", help="list all triples")
    _common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="classification flags per triple")
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve-r0", help="canonical r0 and kernel dimension")
    _common(p)
    p.set_defaults(func=cmd_solve_r0)

    p = sub.add_parser("build", help="dump an operator as sparse records")
    _common(p)
    p.add_argument("what", choices=["R_GGS", "R_J", "eps", "a", "r", "K", "J"])
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run the verification battery")
    _common(p)
    p.add_argument("--checks", help="comma list of checks or groups (qybe, hecke, classical-limit, core, all)")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (default: CPU count)")
    p.add_argument("--seed", type=int, default=0, help="seed for the r0 kernel perturbation")
    p.add_argument("--perturb-r0", action="store_true",
                   help="add a seeded random trace-zero kernel element to the canonical r0")
    p.add_argument("--timings", action="store_true", help="record per-check wall time (makes output nondeterministic)")
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="aggregate verify output")
    p.add_argument("input", nargs="?", help="JSONL file or directory of *.jsonl")
    _common(p, select=False)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
