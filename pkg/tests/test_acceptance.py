"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in
the terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import collections
import random
import sys
import time
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from grsq.bounds import conformance_check  # noqa: E402
from grsq.codec import DecodeFailure, corrupt, decode, encode, forney, solve_key_equation, syndrome  # noqa: E402
from grsq.construction import (GeneratorKind, Preset, choose_alphas,  # noqa: E402
                               enumerate_min_locators, make_code)
from grsq.exact import (RatMatrix, RatPoly, bitwidth_int, bitwidth_matrix, bitwidth_poly,  # noqa: E402
                        bitwidth_rat, bitwidth_vector, dot, rat)
from grsq.experiments import (ExperimentConfig, random_error, run_stats, runtime_trend,  # noqa: E402
                              sample_rational, summarize)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

PRESETS = (Preset.V_PRIME_ONE, Preset.CAUCHY_UNIT, Preset.V_ONE)
KINDS = tuple(GeneratorKind)


def report(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


# ------------------------------------------------------------------ 1 and 5

def _roundtrip_instance(i: int):
    rng = random.Random(f"acceptance-roundtrip:{i}")
    n = 4 + i % 61                        # spans 4..64
    k = rng.randint(1, n - 1)
    preset = PRESETS[i % 3]
    kind = KINDS[(i // 3) % 2]
    choice = ("min", "1..n", "random")[(i // 6) % 3]
    if choice == "random":
        alphas = set()
        while len(alphas) < n:
            alphas.add(sample_rational(rng.randint(1, 8), rng))
        alphas = sorted(alphas)
    else:
        alphas = choose_alphas(choice, n)
    code = make_code(n, k, alphas, preset)
    u = [sample_rational(rng.randint(1, 64), rng) for _ in range(k)]
    e = random_error(n, rng.randint(0, code.radius), rng.randint(1, 64), rng)
    return code, kind, u, e


@pytest.fixture(scope="module")
def roundtrip_runs():
    runs, failures = [], []
    start = time.perf_counter()
    for i in range(500):
        code, kind, u, e = _roundtrip_instance(i)
        c = encode(code, kind, u)
        try:
            out = decode(code, corrupt(c, e))
        except DecodeFailure as exc:
            failures.append((i, str(exc)))
            continue
        if out.codeword != c or out.error != e.to_vector(code.n):
            failures.append((i, "wrong result"))
        runs.append((code, kind, u, c, e, out))
    return runs, failures, time.perf_counter() - start


def test_criterion_1_roundtrip(roundtrip_runs):
    runs, failures, elapsed = roundtrip_runs
    combos = {(code.preset, kind) for code, kind, *_ in runs}
    ns = {code.n for code, *_ in runs}
    ok = not failures and len(runs) == 500 and elapsed < 120 and len(combos) == 6
    report(1, ok, f"{len(runs) - len(failures)}/500 exact roundtrips, n in {min(ns)}..{max(ns)}, "
                  f"{len(combos)} preset/generator pairs, {elapsed:.1f}s (limit 120s)")
    assert ok, failures[:5]


def test_criterion_5_bound_conformance(roundtrip_runs):
    runs, _, _ = roundtrip_runs
    strict, recounted = collections.Counter(), collections.Counter()
    floored = 0
    decoder_checked = 0
    for code, kind, u, c, e, out in runs:
        enc = conformance_check(code, kind=kind, u=u, c=c)
        rep = out.report.merged(enc)
        fixed = out.report.merged(conformance_check(code, kind=kind, u=u, c=c, corrected=True))
        floored += bool(rep.floored)
        decoder_checked += "Lambda" in rep.bounds
        for q in rep.violations():
            strict[(code.preset.value, kind.value, q)] += 1
        for q in fixed.violations():
            recounted[(code.preset.value, kind.value, q)] += 1
    ok = not strict
    detail = (f"{sum(strict.values())} violations of the tabulated bounds over {len(runs)} runs "
              f"({decoder_checked} with tau >= 1 decoder checks, {floored} with a zero-valued "
              f"matrix cell floored at 1)")
    if strict:
        detail += "; by cell: " + ", ".join(f"{'/'.join(k)}={v}" for k, v in sorted(strict.items()))
    detail += f"; with the recounted c_i d_j = 1 generator cell: {sum(recounted.values())} violations"
    report(5, ok, detail)
    assert ok, strict


# ------------------------------------------------------------------------ 2

def test_criterion_2_worked_example():
    code = make_code(3, 1, [1, 2, 3], Preset.V_PRIME_ONE)
    e = tuple(rat(x) for x in (0, 3, 0))
    s = syndrome(code, e)
    results = []
    for method in ("fraction_free", "classical"):
        sol = solve_key_equation(RatPoly(s), code.d, method)
        out = decode(code, e, method)
        results.append(sol.locator == RatPoly([1, -2]) and sol.evaluator == RatPoly([-3])
                       and forney(code, sol) == e and out.error == e)
    ok = s == (rat(-3), rat(-6)) and all(results)
    report(2, ok, "s=(-3,-6), Lambda=1-2x, Omega=-3, e_2=3 on both EEA routes")
    assert ok


# ------------------------------------------------------------------------ 3

def test_criterion_3_duality_and_mds():
    rng = random.Random("acceptance-duality")
    dual_bad = 0
    for _ in range(200):
        n = rng.randint(2, 32)
        alphas = set()
        while len(alphas) < n:
            alphas.add(sample_rational(rng.randint(1, 8), rng))
        code = make_code(n, rng.randint(1, n - 1), sorted(alphas), rng.choice(PRESETS))
        G, H = oracles.grs_matrices(code.alphas, code.v, code.v_prime, code.k)
        ok_pkg = all((code.generator(kd) @ code.H.T).is_zero() for kd in KINDS)
        ok_ref = all(sum(g * h for g, h in zip(gr, hr)) == 0 for gr in G for hr in H)
        dual_bad += not (ok_pkg and ok_ref)
    minors, mds_bad = 0, 0
    for n in range(2, 11):
        for k in range(1, n):
            code = make_code(n, k, enumerate_min_locators(n), Preset.V_PRIME_ONE)
            rows = [[oracles.F(x) for x in r] for r in code.G.to_rows()]
            for cols in combinations(range(n), k):
                minors += 1
                mds_bad += oracles.det([[r[j] for j in cols] for r in rows]) == 0
    ok = dual_bad == 0 and mds_bad == 0
    report(3, ok, f"G H^T = 0 for {200 - dual_bad}/200 random codes (both generators); "
                  f"{minors - mds_bad}/{minors} k x k minors nonzero for n <= 10")
    assert ok


# ------------------------------------------------------------------------ 4

def _rand_int_poly(rng):
    return RatPoly([rng.randint(-2**rng.randint(1, 80), 2**rng.randint(1, 80))
                    for _ in range(rng.randint(1, 8))])


def _rand_rat(rng, t=80):
    return sample_rational(rng.randint(1, t), rng)


def test_criterion_4_growth_rules():
    rng = random.Random("acceptance-growth")
    violations = collections.Counter()
    checks = 0
    for _ in range(1000):
        a, b = _rand_int_poly(rng), _rand_int_poly(rng)
        while not a or not b:
            a, b = _rand_int_poly(rng), _rand_int_poly(rng)
        c, d = _rand_rat(rng), _rand_rat(rng)
        la, lb, lc, ld = bitwidth_poly(a), bitwidth_poly(b), bitwidth_rat(c), bitwidth_rat(d)
        n = rng.randint(1, 8)
        x = [_rand_rat(rng, 40) for _ in range(n)]
        y = [_rand_rat(rng, 40) for _ in range(n)]
        r_, m_ = rng.randint(1, 4), rng.randint(1, 4)
        A = RatMatrix.from_rows([[_rand_rat(rng, 30) for _ in range(n)] for _ in range(r_)])
        B = RatMatrix.from_rows([[_rand_rat(rng, 30) for _ in range(m_)] for _ in range(n)])
        rules = {
            "poly sum": bitwidth_poly(a + b) <= max(la, lb) + 1,
            "poly product": bitwidth_poly(a * b) <= la + lb + bitwidth_int(min(a.deg, b.deg) + 1),
            "rat product": bitwidth_rat(c * d) <= lc + ld,
            "rat quotient": bitwidth_rat(c / d) <= lc + ld,
            "rat sum": bitwidth_rat(c + d) <= lc + ld + 1,
            "dot product": bitwidth_rat(dot(x, y)) <= n * (bitwidth_vector(x) + bitwidth_vector(y) + 1),
            "matrix product": bitwidth_matrix(A @ B) <= n * (bitwidth_matrix(A) + bitwidth_matrix(B) + 1),
        }
        for name, holds in rules.items():
            checks += 1
            violations[name] += not holds
    bad = sum(violations.values())
    report(4, bad == 0, f"1000 random trials x 7 rules = {checks} checks, {bad} violations")
    assert bad == 0, violations


# ------------------------------------------------------------------------ 6

def test_criterion_6_totient_identity():
    loc = enumerate_min_locators(4 * sum(oracles.totient(i) for i in range(1, 52)))
    levels = collections.Counter(oracles.level(x) for x in loc)
    mismatches = []
    running = 0
    for lv in range(1, 51):
        running += levels[lv]
        expected = 4 * sum(oracles.totient(i) for i in range(1, lv + 1)) - 2
        if running != expected:
            mismatches.append(lv)
    prefix = enumerate_min_locators(6) == tuple(rat(x) for x in (1, -1, "1/2", "-1/2", 2, -2))
    ok = not mismatches and prefix
    report(6, ok, f"level counts match 4*sum(phi)-2 for l <= 50 ({50 - len(mismatches)}/50); "
                  f"n=6 prefix {'matches' if prefix else 'differs'}")
    assert ok


# ------------------------------------------------------------------------ 7

def test_criterion_7_width_trend():
    start = time.perf_counter()
    ns = (30, 60, 90, 120)
    means = {}
    for choice in ("min", "1..n"):
        for preset in PRESETS:
            for kind in KINDS:
                cfg = ExperimentConfig(trials=100, n_values=ns, info_bits=100,
                                       alpha_choice=choice, preset=preset, genkind=kind, seed=0)
                rows = summarize(run_stats(cfg))
                means[(choice, preset.value, kind.value)] = [r.mean_lambda_c for r in rows]
    elapsed = time.perf_counter() - start
    matrices = sorted({(p, g) for _, p, g in means})

    not_increasing = [key for key, m in means.items() if not all(x < y for x, y in zip(m, m[1:]))]
    order_fail = [(p, g, ns[i]) for p, g in matrices for i in range(len(ns))
                  if means[("min", p, g)][i] > means[("1..n", p, g)][i]]
    best_fail = []
    for choice in ("min", "1..n"):
        at120 = {(p, g): means[(choice, p, g)][-1] for p, g in matrices}
        best = min(at120, key=at120.get)
        if best != ("cauchyunit", "cauchy"):
            best_fail.append((choice, best))
    a, b, c = not not_increasing, not order_fail, not best_fail
    ok = a and b and c and elapsed < 300
    detail = (f"(a) increasing in n for {len(means) - len(not_increasing)}/{len(means)} curves; "
              f"(b) min <= 1..n at {len(matrices) * len(ns) - len(order_fail)}/{len(matrices) * len(ns)} "
              f"(matrix, n) points")
    if order_fail:
        detail += " [fails: " + ", ".join(f"{p}/{g}@n={n}" for p, g, n in order_fail) + "]"
    detail += (f"; (c) cauchyunit/cauchy smallest at n=120 for "
               f"{2 - len(best_fail)}/2 locator choices; {elapsed:.0f}s (limit 300s)")
    report(7, ok, detail)
    assert ok, (not_increasing, order_fail, best_fail)


# ------------------------------------------------------------------------ 8

def test_criterion_8_runtime_trend():
    cfg = ExperimentConfig(trials=1, n_values=(32, 64, 128, 256), info_bits=64, error_bits=32,
                           alpha_choice="min", preset="v1", seed=0)
    res = runtime_trend(cfg, slope_limit=9.0)
    t256 = res.points[-1].mean_time_us / 1e6
    ok = res.slope < 9 and t256 < 60 and all(p.all_ok for p in res.points)
    times = ", ".join(f"n={p.n}: {p.mean_time_us / 1e6:.2f}s" for p in res.points)
    report(8, ok, f"log-log slope {res.slope:.2f} (limit 9); {times}; n=256 tau={res.points[-1].tau} "
                  f"decode {t256:.1f}s (limit 60s)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
