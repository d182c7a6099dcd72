"""Acceptance criteria, one test per criterion, at the stated scales.

Each test prints a PASS/FAIL line (visible with pytest -s or in the tee'd
acceptance log).  Two sub-claims of the source material are provably off
by a small accounting detail and are encoded as strict xfails next to
tests pinning the honestly computed values; the decisions ledger carries
the analysis.  Everything else runs exactly as stated, at the stated
tolerances.
"""

import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest
from gmpy2 import mpz

import hurwitzlab.regions as R
from hurwitzlab.census import (eq3_reference_region, prototype_census,
                               shell_count)
from hurwitzlab.cli import run as cli_run
from hurwitzlab.experiments import (USequenceSpec, bb_experiment,
                                    derive_constants,
                                    estimate_cylinder_measure,
                                    khinchin_experiment, levy_estimate,
                                    ratio_band_check)
from hurwitzlab.fastexpand import expand_rational, iter_digits
from hurwitzlab.gaussian import GaussInt, GaussRational, rat_canonical
from hurwitzlab.reportio import Z99, wilson_ci
from hurwitzlab.rng import SampleSpec, sample_ints

WORKERS = 2


def gi(re, im=0):
    return GaussInt(re, im)


def _line(n, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {n:>2} {name:<28} {status}  {detail}")
    return ok


@pytest.fixture(scope="module")
def census():
    return prototype_census(max_depth=8)


@pytest.fixture(scope="module")
def constants(census):
    return derive_constants(census)


@pytest.fixture(scope="module")
def roundtrip_stats():
    """Criteria 1 and 2 share one sweep of 10^4 random rationals."""
    t0 = time.monotonic()
    failures = 0
    det_fail = 0
    growth_fail = 0
    unterminated = 0
    count = 10_000
    for i in range(count):
        a, b = sample_ints(1001, i, 80)
        d, _ = sample_ints(1002, i, 64)
        den = (d & ((1 << 64) - 1)) | 1  # odd, in [1, 2^64)
        a0, digits, (pr, pi), (qr, qi), term, det_ok, growth_ok = \
            expand_rational(a, b, den, 512)
        if not term:
            unterminated += 1
            continue
        z = GaussRational(GaussInt(a, b), den)
        back = rat_canonical(GaussInt(int(pr), int(pi)),
                             GaussInt(int(qr), int(qi)))
        if back != z:
            failures += 1
        if not det_ok:
            det_fail += 1
        if not growth_ok:
            growth_fail += 1
    elapsed = time.monotonic() - t0
    return {"count": count, "failures": failures, "det_fail": det_fail,
            "growth_fail": growth_fail, "unterminated": unterminated,
            "elapsed": elapsed}


def test_criterion_1_round_trip(roundtrip_stats):
    s = roundtrip_stats
    ok = (s["failures"] == 0 and s["unterminated"] == 0
          and s["elapsed"] < 10.0)
    assert _line(1, "exact round-trip", ok,
                 f"{s['count']} rationals, {s['failures']} failures, "
                 f"{s['elapsed']:.2f}s")
    assert s["failures"] == 0
    assert s["unterminated"] == 0
    assert s["elapsed"] < 10.0


def test_criterion_2_prop21_identities(roundtrip_stats):
    s = roundtrip_stats
    ok = s["det_fail"] == 0 and s["growth_fail"] == 0
    assert _line(2, "determinant and q-growth", ok,
                 f"det violations {s['det_fail']}, "
                 f"growth violations {s['growth_fail']}")
    assert ok


def test_criterion_3_lemma2_bound():
    # certified scaled error over 10^4 trajectories at depth 30
    bits = 64
    depth = 30
    count = 10_000
    W2 = mpz(1) << (2 * bits)
    worst = 0.0
    violations = 0
    for i in range(count):
        j, k = sample_ints(303, i, bits)
        qr_prev, qi_prev = mpz(0), mpz(0)
        qr, qi = mpz(1), mpz(0)
        pr_prev, pi_prev = mpz(1), mpz(0)
        pr, pi = mpz(0), mpz(0)
        for ar, ai in iter_digits(j, k, bits, depth):
            na = ar * ar + ai * ai
            # e_n^2 = N((j+ik) q_n - p_n W) N(a_(n+1)) N(q_n) / W^2
            ur = j * qr - k * qi - (pr << bits)
            ui = j * qi + k * qr - (pi << bits)
            nq = qr * qr + qi * qi
            lhs = (ur * ur + ui * ui) * na * nq
            # exact test lhs/W^2 <= 24 + 16 sqrt 2
            d = lhs - 24 * W2
            certified = d <= 0 or d * d <= 512 * W2 * W2
            if not certified:
                violations += 1
            e_sq = int((lhs * 10**12) // W2) / 1e12
            worst = max(worst, e_sq)
            qr, qi, qr_prev, qi_prev = (ar * qr - ai * qi + qr_prev,
                                        ar * qi + ai * qr + qi_prev, qr, qi)
            pr, pi, pr_prev, pi_prev = (ar * pr - ai * pi + pr_prev,
                                        ar * pi + ai * pr + pi_prev, pr, pi)
    bound = 4 + 2 * math.sqrt(2)
    ok = violations == 0
    assert _line(3, "scaled error ceiling", ok,
                 f"max e_n = {math.sqrt(worst):.6f} < {bound:.6f}, "
                 f"{violations} violations")
    assert ok
    assert math.sqrt(worst) < bound


def test_criterion_4_shell_counts_exact():
    t0 = time.monotonic()
    F = R.base_region_F()
    ref = eq3_reference_region()
    ok = shell_count(F, 2) == 14
    ok &= shell_count(ref, 2) == 3
    for m in range(3, 51):
        ok &= shell_count(F, m) == 8 * m
    elapsed = time.monotonic() - t0
    assert _line(4, "shell counts (F, ref m=2)", ok and elapsed < 1.0,
                 f"F(2)=14, ref(2)=3, F(m)=8m; {elapsed:.3f}s "
                 "(ref m>=3 handled separately: source says 2m-1, truth 2m+1)")
    assert ok
    assert elapsed < 1.0


@pytest.mark.xfail(strict=True,
                   reason="stated count 2m-1 is off for m >= 3: the lattice "
                          "points m and im lie in iota[int F_1(1-i)] because "
                          "1/m and -i/m are strictly inside the shape once "
                          "1/m < 1/2; the exact count is 2m+1 (see ledger)")
def test_criterion_4_reference_shells_as_stated():
    ref = eq3_reference_region()
    for m in range(3, 51):
        assert shell_count(ref, m) == 2 * m - 1, m


def test_criterion_4_reference_shells_truth():
    ref = eq3_reference_region()
    ok = all(shell_count(ref, m) == 2 * m + 1 for m in range(3, 51))
    assert _line(4, "ref shells truth (2m+1)", ok, "m in 3..50")
    assert ok


def test_criterion_5_cylinder_facts(census):
    empties = all(R.cylinder_region([a]).is_empty
                  for a in (gi(0), gi(1), gi(-1), gi(0, 1), gi(0, -1)))
    full_iff = True
    for re in range(-4, 5):
        for im in range(-4, 5):
            a = gi(re, im)
            n = re * re + im * im
            if n < 2:
                continue
            cls = R.region_classify(R.cylinder_region([a]))
            full_iff &= (cls == R.FULL_SQUARE) == (n >= 8)
    degen = all(
        R.region_classify(R.cylinder_region([gi(-1, 1), gi(1, -n)]))
        == R.DEGENERATE for n in range(2, 11))
    stabilized = (census.stabilization_depth is not None
                  and census.levels[-1] == 0)
    ok = empties and full_iff and degen and stabilized
    assert _line(5, "cylinder facts + census", ok,
                 f"stabilized at depth {census.stabilization_depth}, "
                 f"{len(census.nonempty_shapes())} shapes, "
                 f"depth-1 forms {census.report()['depth1_forms']}")
    assert empties and full_iff and degen and stabilized


@pytest.mark.xfail(strict=True,
                   reason="the census finds 3 interior classes modulo "
                          "rotation excluding the full square (two adjacent "
                          "edge bites / one edge bite / one corner bite); "
                          "the stated 4 matches only when the full square "
                          "is included (see ledger)")
def test_criterion_5_depth1_classes_as_stated(census):
    assert len(census.interior_classes_mod_rotation(depth=1)) == 4


def test_criterion_5_depth1_classes_truth(census):
    three = len(census.interior_classes_mod_rotation(depth=1))
    four = len(census.interior_classes_mod_rotation(depth=1,
                                                    include_full=True))
    forms = census.report()["depth1_forms"]
    ok = three == 3 and four == 4 and forms == 14
    assert _line(5, "depth-1 classes truth", ok,
                 f"14 boundary forms, {three} classes excl. full, "
                 f"{four} incl. full")
    assert ok


# ---------------------------------------------------------------- crit 6

C6_SEED = 1020


@pytest.fixture(scope="module")
def c6_spec():
    return SampleSpec(seed=C6_SEED, count=10_000_000, bits=64, depth=8)


def test_criterion_6_measure_and_ratio_bands(c6_spec, constants):
    t0 = time.monotonic()
    all_ok = True
    details = []
    for prefix in ([gi(3)], [gi(1, -1)], [gi(0, 2)]):
        rep = estimate_cylinder_measure(prefix, c6_spec, workers=WORKERS)
        p = rep["payload"]
        all_ok &= p["verdict"] == "pass"
        details.append(f"{''.join(str(d) for d in prefix)}:{p['verdict']}")
    ratios = {}
    for b in (gi(3), gi(4, 1), gi(6)):
        rep = ratio_band_check([gi(3)], b, c6_spec, workers=WORKERS)
        p = rep["payload"]
        ratios[(b.re, b.im)] = p
        all_ok &= p["verdict"] == "pass"
        details.append(f"b={b}:{p['verdict']}")
    h3 = ratios[(3, 0)]["hits_extended"]
    h6 = ratios[(6, 0)]["hits_extended"]
    ratio_of_ratios = h6 / h3
    se = math.sqrt(1 / h6 + 1 / h3)
    ci = (ratio_of_ratios * math.exp(-Z99 * se),
          ratio_of_ratios * math.exp(Z99 * se))
    scaling_ok = ci[0] <= 1 / 16 <= ci[1]
    all_ok &= scaling_ok
    elapsed = time.monotonic() - t0
    all_ok &= elapsed < 300
    assert _line(6, "measure/ratio bands", all_ok,
                 f"{' '.join(details)}; r6/r3={ratio_of_ratios:.4f} "
                 f"ci=({ci[0]:.4f},{ci[1]:.4f}) ni 1/16={1 / 16:.4f}; "
                 f"{elapsed:.0f}s")
    assert scaling_ok
    assert all_ok


# ---------------------------------------------------------------- crit 7

BB_WINDOWS = [(16, 32), (32, 64), (64, 128), (128, 256), (256, 512)]


@pytest.fixture(scope="module")
def bb_spec():
    return SampleSpec(seed=7, count=100_000, bits=2048, depth=512)


def test_criterion_7_borel_bernstein(bb_spec, constants):
    t0 = time.monotonic()
    rep_n = bb_experiment(USequenceSpec("power", 1), bb_spec, BB_WINDOWS,
                          constants, workers=WORKERS)
    rows = rep_n["payload"]["windows"]
    fracs = [w["frac_mod"] for w in rows]
    decreasing = all(a > b for a, b in zip(fracs, fracs[1:]))
    under_bound = all(wilson_ci(w["hits_mod"], w["covered"])[0]
                      <= w["tail_bound"] for w in rows)
    sandwich_n = rep_n["payload"]["sandwich_ok"]

    rep_s = bb_experiment(USequenceSpec("power", Fraction(1, 2)), bb_spec,
                          BB_WINDOWS, constants, workers=WORKERS)
    cum = {c["depth"]: c["frac_mod"] for c in rep_s["payload"]["cumulative"]}
    cum_vals = [cum[d] for d in (64, 128, 256, 512)]
    cum_ok = cum_vals[-1] >= 0.9 and all(
        a <= b for a, b in zip(cum_vals, cum_vals[1:]))
    sandwich_s = rep_s["payload"]["sandwich_ok"]

    rep_c = bb_experiment(USequenceSpec("constant", Fraction(141, 100)),
                          bb_spec, BB_WINDOWS, constants, workers=WORKERS)
    const_one = all(w["frac_mod"] == 1.0 for w in rep_c["payload"]["windows"])
    sandwich_c = rep_c["payload"]["sandwich_ok"]

    elapsed = time.monotonic() - t0
    ok = (decreasing and under_bound and cum_ok and const_one
          and sandwich_n and sandwich_s and sandwich_c and elapsed < 600)
    assert _line(7, "Borel-Bernstein zero-one", ok,
                 f"windows {['%.4f' % f for f in fracs]}, "
                 f"cum512={cum_vals[-1]:.4f}, const=1 {const_one}; "
                 f"{elapsed:.0f}s")
    assert decreasing and under_bound
    assert cum_ok
    assert const_one
    assert sandwich_n and sandwich_s and sandwich_c
    assert elapsed < 600


# ---------------------------------------------------------------- crit 8

def test_criterion_8_levy_concentration():
    spec_a = SampleSpec(seed=88, count=1000, bits=4096, depth=1000)
    spec_b = SampleSpec(seed=880, count=1000, bits=4096, depth=1000)
    cps = [125, 250, 500, 1000]
    rep_a = levy_estimate(spec_a, cps, workers=WORKERS)
    rep_b = levy_estimate(spec_b, [1000], workers=WORKERS)
    pa = rep_a["payload"]
    rel_sd = pa["relative_sd_final"]
    b_a = pa["levy_b"]
    b_b = rep_b["payload"]["levy_b"]
    agree = abs(b_a - b_b) / b_a
    ok = rel_sd <= 0.05 and agree <= 0.01 and b_a > 0
    assert _line(8, "Levy concentration", ok,
                 f"B={b_a:.6f} vs {b_b:.6f} (rel diff {agree:.4%}), "
                 f"rel sd {rel_sd:.4%}")
    assert rel_sd <= 0.05
    assert agree <= 0.01
    assert b_a > 0


# ---------------------------------------------------------------- crit 9

def test_criterion_9_khinchin(constants):
    spec = SampleSpec(seed=99, count=800, bits=2048, depth=512)
    rep2 = khinchin_experiment(2, spec, big_d=1.5, checkpoints=(256, 512),
                               workers=WORKERS)
    p2 = rep2["payload"]
    grew_ok = p2["grew_fraction"] >= 0.9
    sound2 = p2["verified_violations"] == 0

    rep3 = khinchin_experiment(3, spec, big_d=1.5, checkpoints=(256, 512),
                               workers=WORKERS)
    p3 = rep3["payload"]
    flat_ok = p3["flat"] / spec.count >= 0.9
    sound3 = p3["verified_violations"] == 0
    ok = grew_ok and flat_ok and sound2 and sound3
    assert _line(9, "Khinchin certificates", ok,
                 f"beta=2 grew {p2['grew_fraction']:.3f} "
                 f"({p2['fired_total']} fired), beta=3 flat "
                 f"{p3['flat'] / spec.count:.3f} ({p3['fired_total']} fired), "
                 f"0 violations {sound2 and sound3}")
    assert grew_ok and sound2
    assert flat_ok and sound3


# --------------------------------------------------------------- crit 10

GOLDEN_COMMANDS = [
    ["expand", "--z", "2/5", "--no-meta"],
    ["cylinder", "--digits=-1+1i,1-2i", "--no-meta"],
    ["shells", "--region", "F", "--m", "2", "--no-meta"],
    ["measure", "--prefix", "3", "--seed", "11", "--count", "30000",
     "--bits", "64", "--depth", "8", "--no-meta"],
    ["bb", "--u", "power:0.5", "--seed", "7", "--count", "3000",
     "--depth", "64", "--bits", "256", "--windows", "8:16,16:32,32:64",
     "--no-constants", "--no-meta"],
]


def test_criterion_10_reproducibility(capsys):
    ok = True
    for cmd in GOLDEN_COMMANDS:
        outs = []
        for workers in (None, None, "2"):
            args = list(cmd)
            if workers and cmd[0] in ("measure", "bb"):
                args += ["--workers", workers]
            code = cli_run(args)
            outs.append(capsys.readouterr().out)
            assert code == 0, cmd
        ok &= outs[0] == outs[1] == outs[2]
    with capsys.disabled():
        assert _line(10, "CLI reproducibility", ok,
                     f"{len(GOLDEN_COMMANDS)} commands x 2 runs x workers")
    assert ok


def test_criterion_10_subprocess_identical():
    cmd = [sys.executable, "-m", "hurwitzlab.cli", "levy", "--seed", "3",
           "--count", "100", "--bits", "512", "--depth", "128",
           "--checkpoints", "64,128", "--no-meta"]
    a = subprocess.run(cmd, capture_output=True, text=True).stdout
    b = subprocess.run(cmd + ["--workers", "2"], capture_output=True,
                       text=True).stdout
    assert a == b
    assert json.loads(a)["payload"]["levy_b"] > 0
