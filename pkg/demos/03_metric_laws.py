"""Desk-scale versions of the Monte Carlo experiments.

Run:  python demos/03_metric_laws.py            (about a minute)

The acceptance suite runs the same experiments at full scale; here the
sample counts are trimmed so the whole story plays out quickly.
"""

from fractions import Fraction

from hurwitzlab.experiments import (USequenceSpec, bb_experiment,
                                    derive_constants,
                                    estimate_cylinder_measure,
                                    khinchin_experiment, levy_estimate,
                                    next_digit_cap_check, ratio_band_check)
from hurwitzlab.gaussian import GaussInt
from hurwitzlab.rng import SampleSpec

gi = GaussInt

print("deriving explicit constants from the census (one-time, ~15 s)...")
constants = derive_constants()
print({k: round(v, 8) for k, v in constants.to_json().items()})

# ---------------------------------------------------------------------------
# Cylinder measures: the hit fraction for a digit prefix lands between the
# two-sided Jacobian band around area(F_n(a)) / |q_n|^4.

spec = SampleSpec(seed=2024, count=400_000, bits=64, depth=8)
for prefix in ([gi(3)], [gi(1, -1)]):
    rep = estimate_cylinder_measure(prefix, spec, workers=2)
    p = rep["payload"]
    label = ",".join(str(d) for d in prefix)
    print(f"\nmeasure prefix ({label}): estimate {p['estimate']:.6f} "
          f"in band [{p['band'][0]:.2e}, {p['band'][1]:.2e}]  -> {p['verdict']}")

rep = ratio_band_check([gi(3)], gi(3), spec, workers=2)
p = rep["payload"]
print(f"ratio P(b=3 | prefix 3) = {p['ratio']:.6f} -> {p['verdict']}")

# The next-digit cap bound: most of the conditional mass escapes any
# sup-norm cap M, quantitatively 1 - c_bb/(M+1)^2.
rep = next_digit_cap_check([gi(3)], 3, spec, constants, workers=2)
p = rep["payload"]
print(f"P(||b|| <= 3 | prefix 3) = {p['fraction']:.6f} "
      f"<= {p['upper_bound']:.8f} -> {p['verdict']}")

# ---------------------------------------------------------------------------
# Borel-Bernstein zero-one law.  u_n = n (sum u^-2 converges): window hit
# fractions die off.  u_n = sqrt(n) (diverges): cumulative fraction heads
# to 1.  u_n = 1.41 < sqrt(2): every window hits with probability 1.

bspec = SampleSpec(seed=5, count=20_000, bits=512, depth=256)
windows = [(16, 32), (32, 64), (64, 128), (128, 256)]
for label, u in [("n", USequenceSpec("power", 1)),
                 ("sqrt(n)", USequenceSpec("power", Fraction(1, 2))),
                 ("1.41", USequenceSpec("constant", Fraction(141, 100)))]:
    rep = bb_experiment(u, bspec, windows, constants, workers=2)
    pl = rep["payload"]
    fr = ["%.4f" % w["frac_mod"] for w in pl["windows"]]
    cum = pl["cumulative"][-1]["frac_mod"]
    print(f"\nu_n = {label:<8} window fractions {fr}  cumulative {cum:.4f}"
          f"  sandwich {pl['sandwich_ok']}")

# ---------------------------------------------------------------------------
# The Levy constant: (1/n) log |q_n| concentrates around B ~ 1.09.

lspec = SampleSpec(seed=31, count=400, bits=2048, depth=500)
rep = levy_estimate(lspec, [62, 125, 250, 500], workers=2)
for row in rep["payload"]["checkpoints"]:
    print(f"n={row['checkpoint']:>4}: mean {row['mean']:.6f} "
          f"sd {row['sd']:.6f}")
print(f"B estimate: {rep['payload']['levy_b']:.6f} "
      f"ci99 {rep['payload']['levy_b_ci_99']}")

# ---------------------------------------------------------------------------
# Khinchin: psi(x) = x^-2 (divergent comparison series) keeps producing
# certified approximations; psi(x) = x^-3 stops almost immediately.

kspec = SampleSpec(seed=77, count=300, bits=1024, depth=400)
for beta in (2, 3):
    rep = khinchin_experiment(beta, kspec, big_d=1.5, checkpoints=(200, 400),
                              workers=2)
    p = rep["payload"]
    print(f"\npsi = x^-{beta}: mean certified counts at depths (200, 400) = "
          f"{['%.2f' % c for c in p['mean_counts']]}, grew for "
          f"{p['grew_fraction']:.1%} of samples, "
          f"{p['verified_violations']} exact-check violations")
