"""``erasure-lab`` command line.

Exit status: 0 on success, 1 when a cross-check finds an invariant
violation, 2 on usage, input or budget errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from . import agcode, bounds, code, erasure, randcode
from .errors import BudgetExceeded, ErasureLabError

SEED_ENV = "ERASURE_LAB_SEED"


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _write(path: str | None, text: str) -> None:
    """Write to stdout, or atomically to ``path`` (temp file + rename)."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --------------------------------------------------------------- subcommands

def cmd_ghw(args) -> int:
    C = code.parse_code(_read(args.code))
    hierarchy = code.ghw_hierarchy(C, budget=args.ghw_budget)
    Ls = args.L or [1, C.q]
    rad = {f"L={L}": code.erasure_radius(C, L, budget=args.ghw_budget) for L in Ls}
    out = {
        "q": C.q,
        "n": C.n,
        "k": C.k,
        "d": [g.d_r for g in hierarchy],
        "witnesses": [g.witness.tolist() for g in hierarchy],
        "rad": rad,
    }
    _write(args.output, _dump(out))
    return 0


def cmd_decode(args) -> int:
    C, query = erasure.parse_decode_request(_read(args.request))
    result = erasure.list_decode(C, query, cap=args.cap)
    _write(args.output, result.to_json() + "\n")
    return 0


def cmd_trial(args) -> int:
    trial_kw = dict(trials=args.trials, pattern_samples=args.patterns, seed=args.seed)
    if args.epsilon is not None:
        if args.s is not None or args.ell is not None:
            raise UsageError("give either --epsilon or both --s and --ell, not both")
        params = randcode.thm33_params(args.q, args.n, args.k, args.epsilon, **trial_kw)
    else:
        if args.s is None or args.ell is None:
            raise UsageError("trial needs --epsilon, or both --s and --ell")
        if not 1 <= args.k < args.n or not 0 <= args.s <= args.n:
            raise UsageError("need 1 <= k < n and 0 <= s <= n")
        params = randcode.TrialParams(args.q, args.n, args.k, ell=args.ell, s=args.s, **trial_kw)
    report = randcode.decodability_trial(params, workers=args.threads)
    out = {
        "params": {
            "q": params.q, "n": params.n, "k": params.k, "epsilon": params.epsilon,
            "ell": params.ell, "s": params.s, "trials": params.trials,
            "pattern_samples": params.pattern_samples, "vacuous": params.vacuous,
            "degenerate": params.degenerate,
        },
        "report": report.to_dict(),
    }
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["code", "rejections", "violations"])
        for row in report.per_code:
            w.writerow([row["code"], row["rejections"], row["violations"]])
        _write(args.csv, buf.getvalue())
    _write(args.output, _dump(out))
    return 0


def cmd_ag_build(args) -> int:
    if args.family == "hermitian":
        if args.q0 is None or args.m is None:
            raise UsageError("hermitian codes need --q0 and --m")
        curve = agcode.hermitian_curve(args.q0)
        _, C = agcode.hermitian_code(curve, args.m)
        sidecar = agcode.hermitian_summary(args.q0, args.m, ts=range(1, args.max_t + 1))
    else:
        if None in (args.q, args.n, args.k):
            raise UsageError("rs codes need --q, --n and --k")
        C = agcode.rs_code(args.q, args.n, args.k)
        degG = args.k - 1
        sidecar = {"q": args.q, "n": args.n, "k": args.k, "genus": 0, "degG": degG, "s_max": {}, "ghw_lb": {}}
        for t in range(1, min(args.max_t, args.k) + 1):
            s_max, e = agcode.ag_erasure_radius(args.n, args.q + 1, degG, args.q, t)
            sidecar["s_max"][str(t)] = {"s_max": s_max, "list_size": args.q**e}
            sidecar["ghw_lb"][str(t)] = agcode.ag_ghw_lb(args.n, degG, args.q, t, k=args.k)
    _write(args.output, code.format_code(C))
    sidecar_path = args.sidecar or (args.output + ".json" if args.output and args.output != "-" else None)
    if sidecar_path:
        _write(sidecar_path, _dump(sidecar))
    elif not args.output or args.output == "-":
        sys.stdout.write(_dump(sidecar))
    return 0


def cmd_bounds_table(args) -> int:
    rows = [
        bounds.bounds_row(q, tau, args.epsilon, args.L)
        for q in args.q
        for tau in bounds.tau_grid(args.steps)
    ]
    _write(args.output, bounds.bounds_csv(rows))
    return 0


def run_check(C: code.LinearCode, ghw_budget: int, pattern_budget: int) -> dict:
    """Cross-method agreement and radius consistency for one code."""
    problems: list[str] = []
    Ls = sorted({1, C.q, C.q**2})
    checked = 0
    for L in Ls:
        verdicts = {}
        for s in range(C.n + 1):
            row = {
                m: code.is_erasure_list_decodable(
                    C, s, L, m, ghw_budget=ghw_budget, pattern_budget=pattern_budget
                )
                for m in code.METHODS
            }
            checked += 1
            if len(set(row.values())) != 1:
                problems.append(f"methods disagree at s={s}, L={L}: {row}")
            verdicts[s] = row["rank"]
        rad = code.erasure_radius(C, L, budget=ghw_budget)
        if not verdicts[rad] or (rad < C.n and verdicts[rad + 1]):
            problems.append(f"radius {rad} for L={L} inconsistent with decodability table")
        for s in range(1, C.n + 1):
            if verdicts[s] and not verdicts[s - 1]:
                problems.append(f"decodability not monotone in s at s={s}, L={L}")
    return {"q": C.q, "n": C.n, "k": C.k, "cases": checked, "problems": problems, "ok": not problems}


def cmd_check(args) -> int:
    C = code.parse_code(_read(args.code))
    result = run_check(C, args.ghw_budget, args.pattern_budget)
    _write(args.output, _dump(result))
    if not result["ok"]:
        for p in result["problems"]:
            print(p, file=sys.stderr)
        return 1
    return 0


# ------------------------------------------------------------------- parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erasure-lab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--ghw-budget", type=int, default=code.GHW_BUDGET)
    common.add_argument("--pattern-budget", type=int, default=code.PATTERN_BUDGET)
    common.add_argument("--threads", type=int, default=1, help="worker cap for parallel steps")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ghw", parents=[common], help="GHW hierarchy and erasure radii of a code file")
    p.add_argument("code")
    p.add_argument("--L", type=int, action="append", help="list size for a radius (repeatable)")
    p.set_defaults(func=cmd_ghw)

    p = sub.add_parser("decode", parents=[common], help="erasure list decode a request file")
    p.add_argument("request")
    p.add_argument("--cap", type=int, default=1024, help="maximum list size returned")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("trial", parents=[common], help="random-code decodability trial")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--s", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--patterns", type=int, default=10**4)
    p.add_argument("--csv", help="also write one CSV row per sampled code")
    p.set_defaults(func=cmd_trial)

    p = sub.add_parser("ag-build", parents=[common], help="build an RS or one-point Hermitian code")
    p.add_argument("--family", choices=["hermitian", "rs"], default="hermitian")
    p.add_argument("--q0", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--max-t", type=int, default=2)
    p.add_argument("--sidecar", help="JSON sidecar path (default: OUTPUT.json)")
    p.set_defaults(func=cmd_ag_build)

    p = sub.add_parser("bounds-table", parents=[common], help="CSV of rate bounds over a tau grid")
    p.add_argument("--q", type=int, action="append", help="alphabet size (repeatable, default 16)")
    p.add_argument("--steps", type=int, default=99)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--L", type=int, default=1)
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("check", parents=[common], help="cross-check all decodability criteria on a code file")
    p.add_argument("code")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        if getattr(args, "q", None) is None and args.subcommand == "bounds-table":
            args.q = [16]
        return args.func(args)
    except (UsageError, BudgetExceeded, ErasureLabError, ValueError) as exc:
        print(f"erasure-lab {args.subcommand}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
