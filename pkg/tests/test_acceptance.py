"""End-to-end acceptance checks, one test per criterion.

Each criterion test records a single pass/fail line that is printed in the
terminal summary.  Known failures of statements taken literally are pinned
by the ``*_known_failures`` tests, which are strict xfails.
"""

import json
import random
import time

import pytest
from mpmath import mpf

from qcong import cli
from qcong.congruence import FAIL, PASS, SKIPPED, check_congruent
from qcong.exact_core import Cyclotomic, Modulus
from qcong.identities import verify_identity, verify_linearF, verify_rogers_linearization
from qcong.padic import admissible_primes, check_padic, ram5_check
from qcong.theorems import Ctx, qab_sides, scan

NUMERIC_TOL = 1e-25
NUMERIC_PREC = 256
NUMERIC_POINTS = 5
EXACT_SAMPLES = 3
RAM5_DIGITS = 30
SEED = 20181

QDIXON5_FAILING = [9, 13, 17, 21, 25]
D2_FAILING_PRIMES = [5, 11]

pytestmark = pytest.mark.slow


def odd(lo, hi):
    return [n for n in range(lo, hi + 1) if n % 2]


def scan_all(jobs):
    """jobs: (id, ns, kwargs) -> {label: ScanReport}"""
    out = {}
    for sid, ns, kw in jobs:
        label = sid + (f"[{next(iter(kw.values()))}]" if kw else "")
        out[label] = scan(sid, ns, **kw)
    return out


def failures(reports):
    return {k: [n for n, r in rep.instances if r.verdict == FAIL] for k, rep in reports.items()
            if any(r.verdict == FAIL for _, r in rep.instances)}


def _count_tested(reports):
    return sum(rep.tested for rep in reports.values())


def cli_json(*argv):
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.run(list(argv) + ["--format", "json"])
    return code, json.loads(buf.getvalue())


def test_criterion_1(criterion):
    start = time.perf_counter()
    results = []
    codes = []
    for sid in ("S-FIRST-FULL", "S-FIRST-HALF", "S-SECOND-FULL", "S-SECOND-HALF"):
        code, doc = cli_json("check", sid, "--n", "3..21")
        codes.append(code)
        results += [r for r in doc["results"] if r["instance"]["n"] % 2]
    elapsed = time.perf_counter() - start
    ok = all(c == 0 for c in codes) and len(results) == 40 and all(r["verdict"] == PASS for r in results)
    ok &= elapsed < 600
    criterion(1, ok, f"S-FIRST/S-SECOND full and half, odd n=3..21 mod [n]Phi_n^2: "
                     f"{sum(r['verdict'] == PASS for r in results)}/40 pass via CLI in {elapsed:.1f}s (limit 600s)")
    assert ok


def test_criterion_2(criterion):
    ns = odd(3, 11)
    rep = scan("S-QAB", ns)
    sym_ok = rep.counts[PASS] == len(ns)
    spec_ok = []
    for n in ns:
        lhs, rhs = qab_sides(Ctx(n, None, {}))
        r = check_congruent(lhs.specialize({"a": 1, "b": 1}), rhs.specialize({"a": 1, "b": 1}),
                            Modulus([(Cyclotomic(n), 3)]))
        spec_ok.append(r.verdict == PASS)
    ok = sym_ok and all(spec_ok)
    criterion(2, ok, f"S-QAB symbolic a,b mod Phi_n(1-aq^n)(a-q^n), odd n=3..11: {rep.counts[PASS]}/{len(ns)}; "
                     f"a=b=1 specialization mod Phi_n^3: {sum(spec_ok)}/{len(ns)}")
    assert ok


def test_criterion_3(criterion):
    jobs = [("S-THIRD", [n for n in range(2, 21) if n % 3], {})]
    for d in (3, 4, 5):
        jobs += [("S-FOURTH", range(1, 21), {"family": d}), ("S-QD2", range(1, 21), {"family": d})]
    reps = scan_all(jobs)
    third = reps["S-THIRD"]
    ok = not failures(reps) and third.counts[PASS] == len(third.instances)
    criterion(3, ok, f"S-THIRD (both branches, n=2..20 coprime to 3) and S-FOURTH/S-QD2 for d=3,4,5, n<=20: "
                     f"{_count_tested(reps)} instances tested, failures {failures(reps) or 'none'}")
    assert ok


def test_criterion_4(criterion):
    ids = ["S-4KM1-5A", "S-4KM1-5", "S-TH4-A", "S-TH4", "S-6TH-A", "S-6TH", "S-7TH-A", "S-8TH", "S-4K1-7"]
    reps = scan_all([(s, odd(3, 15), {}) for s in ids])
    exact = scan_all([("S-4K1-8", range(0, 31), {}), ("S-8K1-QBINO", range(0, 31), {})])
    exact_ok = all(rep.counts[PASS] == 31 for rep in exact.values())
    ok = not failures(reps) and exact_ok and all(rep.tested for rep in reps.values())
    criterion(4, ok, f"nine statements over odd n=3..15 ({_count_tested(reps)} instances tested, failures "
                     f"{failures(reps) or 'none'}); two exact identities for N=0..30: "
                     f"{sum(rep.counts[PASS] for rep in exact.values())}/62")
    assert ok


def test_criterion_5(criterion):
    ns = odd(1, 11)
    reps = scan_all([("S-3PAR", ns, {"samples": EXACT_SAMPLES}), ("S-3PAR2", ns, {})])
    ok = not failures(reps) and all(rep.counts[PASS] == len(ns) for rep in reps.values())
    criterion(5, ok, f"S-3PAR (symbolic a, {EXACT_SAMPLES} sampled (b,c), limits n-1 and (n-1)/2) and S-3PAR2 mod [n], "
                     f"odd n<=11: {_count_tested(reps)} instances, failures {failures(reps) or 'none'}")
    assert ok


CRIT6_IDS = ["S-8K1-1", "S-8K1-2", "S-QUARTIC-1", "S-QUARTIC-2", "S-6K1-1", "S-6K1-2", "S-6K1-3", "S-6KM1-1",
             "S-6KM1-2", "S-6KM1-3", "S-QDIXON-1", "S-QDIXON-2", "S-QDIXON-3", "S-QDIXON-4", "S-QDIXON-5",
             "S-QDIXON-3PAR", "S-QDIXON-6", "S-IRS5A"]


def test_criterion_6(criterion):
    reps = scan_all([(s, range(1, 26), {}) for s in CRIT6_IDS] + [("S-TAURASO-Q", range(0, 51), {})])
    fails = failures(reps)
    ok = not fails
    expected = {"S-QDIXON-5": QDIXON5_FAILING}
    note = (f"; S-QDIXON-5 as stated fails at n={','.join(map(str, QDIXON5_FAILING))} (pinned as strict xfail)"
            if fails == expected else "")
    criterion(6, ok, f"{len(CRIT6_IDS)} statements over their domains n<=25 plus S-TAURASO-Q n<=50: "
                     f"{_count_tested(reps)} instances tested, failures {fails or 'none'}{note}")
    # every statement other than the known failures must pass
    assert fails == expected
    assert all(rep.tested for rep in reps.values())


@pytest.mark.xfail(strict=True, reason="S-QDIXON-5 as stated fails for n = 1 mod 4, n >= 9")
def test_criterion_6_known_failures():
    rep = scan("S-QDIXON-5", QDIXON5_FAILING)
    assert rep.counts[PASS] == len(QDIXON5_FAILING)


def test_criterion_7(criterion):
    parts = {}
    for iid in ("I-WATSON", "I-14PHI13", "I-CORTF"):
        parts[iid] = verify_identity(iid, "exact", samples=EXACT_SAMPLES, seed=SEED)
    rogers = {(m, n): verify_rogers_linearization(m, n) for n in range(5) for m in range(n + 1)}
    ok = all(r.verdict == PASS for r in parts.values()) and all(r.verdict == PASS for r in rogers.values())
    desc = ", ".join(f"{k} {len(v.detail)} checks {v.verdict}" for k, v in parts.items())
    criterion(7, ok, f"exact identities with {EXACT_SAMPLES} rational tuples: {desc}; Rogers linearization "
                     f"0<=m<=n<=4: {sum(r.verdict == PASS for r in rogers.values())}/{len(rogers)}")
    assert ok


NUMERIC_IDS = ["I-NEWTF", "I-CORA2", "I-CORA3", "I-CORA2B", "I-RAHMAN-QUAD", "I-GR-CUBIC", "I-GR-QUARTIC",
               "I-GASPER-QSUM", "I-QDIXON", "I-IRS", "I-IRS54", "I-9F8"]


def linearF_points(count, seed):
    rng = random.Random(f"{seed}:linearF")
    pts = []
    while len(pts) < count:
        mu = mpf(rng.randint(1, 40)) / 8
        nu = mpf(rng.randint(1, 40)) / 8
        q = mpf(rng.randint(10, 60)) / 100
        beta = mpf(rng.randint(10, 80)) / 100
        z = mpf(rng.randint(-90, 90)) / 100
        # generic degrees: mu, nu and mu + nu off the integers
        if abs(q * z * z / beta) < 1 and all(x != int(x) for x in (mu, nu, mu + nu)):
            pts.append((mu, nu, {"z": z, "beta": beta, "q": q}))
    return pts


def test_criterion_8(criterion):
    start = time.perf_counter()
    res = {}
    for iid in NUMERIC_IDS:
        res[iid] = verify_identity(iid, "numeric", points=NUMERIC_POINTS, prec=NUMERIC_PREC, tol=NUMERIC_TOL, seed=SEED)
    lf = [verify_linearF(mu, nu, pt, prec=NUMERIC_PREC, tol=NUMERIC_TOL) for mu, nu, pt in linearF_points(NUMERIC_POINTS, SEED)]
    elapsed = time.perf_counter() - start
    worst = min(min(d.achieved for d in r.detail) for r in list(res.values()) + lf)
    counts = [len(r.detail) for r in res.values()]
    ok = all(r.verdict == PASS for r in res.values()) and all(r.verdict == PASS for r in lf)
    ok &= all(c == NUMERIC_POINTS for c in counts) and elapsed < 300
    bad = [k for k, r in res.items() if r.verdict != PASS] + (["linearF"] if any(r.verdict != PASS for r in lf) else [])
    criterion(8, ok, f"{len(NUMERIC_IDS)} numeric identities + linearF at {NUMERIC_POINTS} seeded points, "
                     f"{NUMERIC_PREC} bits, tol {NUMERIC_TOL:g}: worst residual 1e-{worst}, failing {bad or 'none'}, "
                     f"{elapsed:.0f}s (limit 300s)")
    assert ok


PADIC_CRIT9 = [("P-A2", [5, 7, 11, 13]), ("P-H2", [5, 7, 11, 13]), ("P-M2", None), ("P-LONG", [5, 7, 11, 13]),
               ("P-D2", [5, 7, 11, 13]), ("P-DIV1", None), ("P-ZUD55", None), ("P-4KM1COR", None), ("P-2P3COR", None)]


def test_criterion_9(criterion):
    fails, total = {}, 0
    for pid, primes in PADIC_CRIT9:
        primes = primes or [p for p in admissible_primes(pid, 13) if p >= 5]
        for p in primes:
            r = check_padic(pid, p)
            total += 1
            if r.verdict != PASS:
                fails.setdefault(pid, []).append(p)
    corr = {p: check_padic("P-D2-CORR", p).verdict for p in D2_FAILING_PRIMES}
    expected = {"P-D2": D2_FAILING_PRIMES}
    note = ""
    if fails == expected:
        note = (f"; stated P-D2 branch for p=5 mod 6 fails at p={','.join(map(str, D2_FAILING_PRIMES))} "
                f"(strict xfail), corrected constant -10p^4/27 passes: {all(v == PASS for v in corr.values())}")
    criterion(9, not fails, f"p-adic supercongruences, {total} (statement, prime) pairs with p<=13: failures "
                            f"{fails or 'none'}{note}")
    assert fails == expected
    assert all(v == PASS for v in corr.values())


@pytest.mark.xfail(strict=True, reason="stated P-D2 constant -p^4/27 fails for p = 5 mod 6")
def test_criterion_9_known_failures():
    assert all(check_padic("P-D2", p).verdict == PASS for p in D2_FAILING_PRIMES)


def test_criterion_10(criterion):
    r = ram5_check(RAM5_DIGITS)
    ok = r.verdict == PASS
    criterion(10, ok, f"alternating (4k+1)((1/2)_k/k!)^5 series vs 2/Gamma(3/4)^4: {r.detail[0].achieved} digits "
                      f"(need {RAM5_DIGITS})")
    assert ok


def test_criterion_11(criterion):
    jobs = [("C-WITHB", range(1, 16), {}), ("C-112", range(1, 16), {}), ("C-113", range(1, 16), {}),
            ("C-4K1DIXONF", range(1, 16), {})]
    jobs += [(c, range(1, 13), {"family": r}) for c in ("C-QHAMME-A", "C-QHAMME-B") for r in (1, 2, 3)]
    jobs += [("C-2DK1NEW", range(1, 13), {"family": d}) for d in (3, 4)]
    jobs += [(f"C-IRS-{i}", range(1, 15), {}) for i in range(1, 6)]
    reps = scan_all(jobs)
    fails = failures(reps)
    pfails, ptotal = {}, 0
    for pid in ("P-3KM1", "P-75", "P-76"):
        code, doc = cli_json("scan", pid, "--p", "3..13")
        for r in doc["results"]:
            ptotal += 1
            if r["verdict"] == FAIL:
                pfails.setdefault(pid, []).append(r["instance"]["p"])
    ok = not fails and not pfails
    criterion(11, ok, f"conjecture scans: {_count_tested(reps)} q-instances and {ptotal} p-adic instances, "
                      f"potential counterexamples {({**fails, **pfails}) or 'none'}")
    assert ok
    assert all(rep.tested for rep in reps.values())
