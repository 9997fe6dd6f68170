"""Command-line front end.

Exit codes: 0 when every executed check passed or was skipped, 1 on any
failure, 2 on usage errors (including unknown ids).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import identities, padic, theorems
from .congruence import FAIL, PASS, SKIPPED, CheckResult
from .numeric import Inadmissible, PrecisionExhausted

SCHEMA_VERSION = 1
DEFAULT_SEED = theorems.DEFAULT_SEED
DEFAULT_PRIMES = (5, 7, 11, 13)


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """'3..9' (inclusive), '3,5,7' or a mix such as '3..7,11'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                lo_i, hi_i = int(lo), int(hi)
                if hi_i < lo_i:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo_i, hi_i + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"bad range {text!r}")
    return out


# ---------------------------------------------------------------------------
# jobs (top level so they pickle for the process pool)


def _record(id: str, instance: dict, modulus: str, res: CheckResult, timing: bool) -> dict:
    return {
        "id": id,
        "instance": instance,
        "modulus": modulus,
        "verdict": res.verdict,
        "detail": [d.as_dict() for d in res.detail],
        "time_ms": round(res.time_ms, 1) if timing else 0,
        "_reason": res.reason,
    }


def run_job(job: tuple) -> dict:
    kind = job[0]
    if kind == "check":
        _, id, n, family, mode, samples, seed, timing = job
        spec = theorems.get(id)
        res = theorems.check_statement(id, n, family=family, mode=mode, samples=samples, seed=seed)
        params = {spec.family[0]: family} if spec.family else {}
        if spec.sampled or mode == theorems.SAMPLED:
            params.update({"mode": mode, "samples": samples})
        return _record(id, {"n": n, "p": None, "params": params}, spec.modulus or "identity", res, timing)
    if kind == "identity":
        _, id, mode, n, points, prec, tol, seed, timing = job
        try:
            res = identities.verify_identity(id, mode, n=n, points=points, prec=prec, tol=tol, seed=seed)
        except (Inadmissible, PrecisionExhausted) as e:
            res = CheckResult(FAIL, f"{type(e).__name__}: {e}")
        mode = mode or identities.get_identity(id).modes[0]
        params = {"mode": mode}
        if mode == identities.NUMERIC:
            params.update({"points": points, "prec": prec, "tol": tol})
        modulus = "exact" if mode == identities.EXACT else f"|LHS-RHS| <= {tol:g}"
        return _record(id, {"n": n, "p": None, "params": params}, modulus, res, timing)
    if kind == "padic":
        _, id, p, m, timing = job
        t = padic.get_target(id)
        res = padic.check_padic(id, p, m)
        power = m if m is not None else t.power
        modulus = f"{power} digits" if t.kind == padic.NUMERIC else f"p^{power}"
        return _record(id, {"n": None, "p": p if t.kind != padic.NUMERIC else None, "params": {}}, modulus, res, timing)
    raise ValueError(kind)


def _workers() -> int:
    env = os.environ.get("QCONG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError("QCONG_THREADS must be an integer") from None
    return os.cpu_count() or 1


def execute(jobs: list[tuple]) -> list[dict]:
    """Run jobs, in parallel when allowed; results come back in job order."""
    workers = min(_workers(), len(jobs))
    if workers <= 1:
        return [run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_job, jobs, chunksize=1))


# ---------------------------------------------------------------------------
# job construction


def check_jobs(id: str, ns: Sequence[int], args) -> list[tuple]:
    spec = theorems.get(id)
    fams = [args.family] if getattr(args, "family", None) is not None else (list(spec.family[1]) if spec.family else [None])
    return [("check", id, n, v, args.mode, args.samples, args.seed, args.timing) for n in ns for v in fams]


def identity_jobs(id: str, args, modes=None, n=None) -> list[tuple]:
    spec = identities.get_identity(id)
    modes = modes or ([args.mode] if getattr(args, "mode", None) else list(spec.modes))
    for m in modes:
        if m not in spec.modes:
            raise UsageError(f"{id} has no {m} check (available: {', '.join(spec.modes)})")
    return [("identity", id, m, n if m == identities.EXACT else None, args.points, args.prec,
             args.tol, args.seed, args.timing) for m in modes]


def padic_jobs(id: str, primes: Sequence[int], power, timing: bool) -> list[tuple]:
    t = padic.get_target(id)
    if t.kind == padic.NUMERIC:
        return [("padic", id, None, power, timing)]
    jobs = []
    for p in primes:
        why = t.domain_error(p)
        if why:
            raise UsageError(f"{id} at p={p}: {why}")
        jobs.append(("padic", id, p, power, timing))
    return jobs


# ---------------------------------------------------------------------------
# reports


def _tally(results: list[dict]) -> dict:
    out = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for r in results:
        out[r["verdict"]] += 1
    return out


def _public(r: dict) -> dict:
    return {k: v for k, v in r.items() if not k.startswith("_")}


def render_json(results: list[dict], seed: int) -> str:
    doc = {"version": SCHEMA_VERSION, "seed": seed, "results": [_public(r) for r in results]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _instance_text(inst: dict) -> str:
    parts = []
    if inst.get("n") is not None:
        parts.append(f"n={inst['n']}")
    if inst.get("p") is not None:
        parts.append(f"p={inst['p']}")
    for k, v in sorted(inst.get("params", {}).items()):
        parts.append(f"{k}={v}")
    return " ".join(parts)


def _detail_text(detail: list[dict]) -> str:
    return ", ".join(f"{d['factor']}:{d['achieved']}/{d['required']}" for d in detail)


def render_text(results: list[dict], conjectures: set[str] = frozenset()) -> str:
    rows = [("ID", "INSTANCE", "MODULUS", "VERDICT", "DETAIL")]
    for r in results:
        detail = _detail_text(r["detail"])
        if r["_reason"] and r["verdict"] != PASS:
            detail = (detail + "  " if detail else "") + r["_reason"]
        rows.append((r["id"], _instance_text(r["instance"]), r["modulus"], r["verdict"].upper(), detail))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(row[i].ljust(widths[i]) for i in range(4)) + "  " + row[4] for row in rows]
    lines = [ln.rstrip() for ln in lines]
    counts = _tally(results)
    lines.append("-" * min(100, max(len(ln) for ln in lines)))
    lines.append(f"pass={counts[PASS]} fail={counts[FAIL]} skipped={counts[SKIPPED]}")
    for r in results:
        if r["verdict"] == FAIL and r["id"] in conjectures:
            lines.append(f"POTENTIAL COUNTEREXAMPLE: {r['id']} {_instance_text(r['instance'])}")
    return "\n".join(lines) + "\n"


def emit_report(results: list[dict], fmt: str, path: str | None, seed: int, conjectures=frozenset()) -> None:
    if not results:
        raise UsageError("nothing was run")
    text = render_json(results, seed) if fmt == "json" else render_text(results, set(conjectures))
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _conjecture_ids() -> set[str]:
    ids = {s.id for s in theorems.list_statements() if s.kind == theorems.CONJECTURE}
    ids |= {t.id for t in padic.list_targets() if t.kind == padic.CONJECTURE}
    return ids


# ---------------------------------------------------------------------------
# commands


def cmd_list(args) -> int:
    entries = []
    if args.kind in ("all", "statements"):
        for s in theorems.list_statements():
            entries.append(("statement", s.summary()))
    if args.kind in ("all", "identities"):
        for s in identities.list_identities():
            entries.append(("identity", s.summary()))
    if args.kind in ("all", "padic"):
        for t in padic.list_targets():
            entries.append(("padic", t.summary()))
    if args.format == "json":
        doc = {"version": SCHEMA_VERSION, "entries": [{"type": k, **v} for k, v in entries]}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        rows = []
        for k, v in entries:
            extra = v.get("modulus") or ",".join(v.get("modes", [])) or (f"p^{v['power']}" if "power" in v else "")
            rows.append((v["id"], k, v.get("kind", ""), extra, v["anchor"]))
        w = [max(len(r[i]) for r in rows) for i in range(4)]
        text = "\n".join("  ".join(r[i].ljust(w[i]) for i in range(4)) + "  " + r[4] for r in rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _finish(results, args, conj=None) -> int:
    emit_report(results, args.format, args.out, args.seed, conj if conj is not None else _conjecture_ids())
    return 1 if any(r["verdict"] == FAIL for r in results) else 0


def cmd_check(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    return _finish(execute(check_jobs(args.id, parse_range(args.n), args)), args)


def cmd_identity(args) -> int:
    return _finish(execute(identity_jobs(args.id, args, n=args.n)), args)


def cmd_padic(args) -> int:
    primes = parse_range(args.p) if args.p else list(DEFAULT_PRIMES)
    return _finish(execute(padic_jobs(args.id, primes, args.power, args.timing)), args)


def cmd_scan(args) -> int:
    if args.id.startswith("P-"):
        t = padic.get_target(args.id)
        # inadmissible primes in a scan range are dropped rather than rejected
        primes = [p for p in (parse_range(args.p) if args.p else range(3, 14)) if t.domain_error(p) is None]
        jobs = padic_jobs(t.id, primes, args.power, args.timing)
    else:
        theorems.get(args.id)
        jobs = check_jobs(args.id, parse_range(args.n or "1..15"), args)
    return _finish(execute(jobs), args)


def cmd_all(args) -> int:
    ns = parse_range(args.n)
    primes = parse_range(args.p) if args.p else list(DEFAULT_PRIMES)
    jobs: list[tuple] = []
    for s in theorems.list_statements():
        if args.proved_only and s.kind == theorems.CONJECTURE:
            continue
        jobs += check_jobs(s.id, ns, args)
    for spec in identities.list_identities():
        jobs += identity_jobs(spec.id, args, modes=list(spec.modes))
    for t in padic.list_targets():
        if args.proved_only and t.kind == padic.CONJECTURE:
            continue
        ps = [p for p in primes if t.domain_error(p) is None]
        if t.kind == padic.NUMERIC:
            jobs.append(("padic", t.id, None, None, args.timing))
        elif ps:
            jobs += padic_jobs(t.id, ps, None, args.timing)
    return _finish(execute(jobs), args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcong", description="Check q-supercongruences and related identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report to this file")
        p.add_argument("--timing", action="store_true", help="record wall time per result (breaks byte-identical output)")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    def check_opts(p):
        p.add_argument("--mode", choices=(theorems.SYMBOLIC, theorems.SAMPLED), default=theorems.SYMBOLIC)
        p.add_argument("--samples", type=int, default=3)
        p.add_argument("--family", type=int, help="only this value of d (or r) for family statements")

    def numeric_opts(p):
        p.add_argument("--points", type=int, default=5)
        p.add_argument("--prec", type=int, default=256)
        p.add_argument("--tol", type=float, default=1e-25)

    p = sub.add_parser("list", help="show the registry")
    p.add_argument("--kind", choices=("all", "statements", "identities", "padic"), default="all")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("check", help="check a statement over a range of n")
    p.add_argument("id")
    p.add_argument("--n", help="A..B or a comma list")
    check_opts(p)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("identity", help="verify a summation or transformation formula")
    p.add_argument("id")
    p.add_argument("--mode", choices=(identities.EXACT, identities.NUMERIC))
    p.add_argument("--n", type=int, help="single n for exact checks")
    numeric_opts(p)
    common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("padic", help="check a supercongruence at primes")
    p.add_argument("id")
    p.add_argument("--p", help="primes, e.g. 5,7,11")
    p.add_argument("--power", type=int, help="modulus exponent (default: the statement's)")
    common(p)
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("scan", help="scan a conjecture over n (or primes for P- ids)")
    p.add_argument("id")
    p.add_argument("--n")
    p.add_argument("--p")
    p.add_argument("--power", type=int)
    check_opts(p)
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("all", help="run the whole registry")
    p.add_argument("--proved-only", action="store_true")
    p.add_argument("--n", default="3..11")
    p.add_argument("--p")
    check_opts(p)
    numeric_opts(p)
    common(p)
    p.set_defaults(func=cmd_all, mode=theorems.SYMBOLIC, family=None)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"qcong: {e}", file=sys.stderr)
        return 2
    except (theorems.UnknownStatement, identities.UnknownIdentity, padic.UnknownTarget) as e:
        print(f"qcong: unknown id {e.args[0]}", file=sys.stderr)
        return 2
    except (padic.PrimeOutOfDomain, Inadmissible, ValueError) as e:
        print(f"qcong: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
